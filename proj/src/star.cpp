#include "starcat/star.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcat {

StarBicategory::StarBicategory(int n, bool zigzag) : n_(n), zigzag_(zigzag) {
    alg_ = std::make_shared<FiniteDimAlgebra>(zigzag ? build_zigzag(n) : build_star_quotient(n));
    gens_.push_back(std::make_shared<Bimodule>(regular_bimodule(*alg_)));
    for (int k = 0; k <= n; ++k)
        gens_.push_back(std::make_shared<Bimodule>(projective_bimodule(*alg_, k, 0)));
    homs_.resize(nlabels());
    for (int a = 0; a < nlabels(); ++a) {
        homs_[a].reserve(nlabels());
        for (int b = 0; b < nlabels(); ++b) homs_[a].push_back(hom_space(*gens_[a], *gens_[b]));
    }
    comp_.resize(nlabels());
    for (int a = 0; a < nlabels(); ++a) comp_[a].resize(nlabels());
}

std::string StarBicategory::label_name(int l) const {
    if (l == 0) return "Reg";
    return "F" + std::to_string(l - 1);
}

std::vector<const Bimodule*> StarBicategory::catalog() const {
    std::vector<const Bimodule*> c;
    for (const auto& g : gens_) c.push_back(g.get());
    return c;
}

const GenObjAction& StarBicategory::composition(int a, int b) const {
    auto& slot = const_cast<StarBicategory*>(this)->comp_[a][b];
    if (!slot) {
        auto ga = std::make_unique<GenObjAction>();
        ga->tensor = tensor_over(*gens_[a], *gens_[b]);
        ga->dec = decompose(ga->tensor.bim, catalog());
        int off = 0;
        for (int c = 0; c < nlabels(); ++c)
            for (int t = 0; t < ga->dec.multiplicity[c]; ++t) {
                ga->pieces.push_back(c);
                ga->offsets.push_back(off);
                off += gens_[c]->dim;
            }
        slot = std::move(ga);
    }
    return *slot;
}

OneMorphism StarBicategory::compose_labels(int a, int b) const {
    return OneMorphism{composition(a, b).dec.multiplicity};
}

QMat StarBicategory::quotient_transport(const StarBicategory& target, int a, int b,
                                        const QMat& f) const {
    if (!zigzag_ || target.zigzag_ || target.n_ != n_)
        throw std::invalid_argument("quotient_transport: needs zigzag source, star target");
    // basis maps: by algebra element names (c_k dies, everything else keeps
    // its name); for pair bases, both slots must survive
    auto algebra_proj = [&](int zi) -> int {
        auto idx = target.alg_->basis_index_by_name(alg_->basis[zi].name);
        return idx ? *idx : -1;
    };
    auto label_maps = [&](int l) {
        const Bimodule &src = *gens_[l], &tgt = *target.gens_[l];
        QMat P(tgt.dim, src.dim), S(src.dim, tgt.dim);
        if (l == 0) {
            for (int i = 0; i < src.dim; ++i) {
                int t = algebra_proj(i);
                if (t >= 0) {
                    P(t, i) = Rational::one();
                    S(i, t) = Rational::one();
                }
            }
        } else {
            std::map<std::pair<int, int>, int> tgt_pairs;
            for (int i = 0; i < tgt.dim; ++i) tgt_pairs[tgt.pair_basis[i]] = i;
            for (int i = 0; i < src.dim; ++i) {
                auto [p, q] = src.pair_basis[i];
                int tp = algebra_proj(p), tq = algebra_proj(q);
                if (tp < 0 || tq < 0) continue;
                int t = tgt_pairs.at({tp, tq});
                P(t, i) = Rational::one();
                S(i, t) = Rational::one();
            }
        }
        return std::pair<QMat, QMat>{P, S};
    };
    auto [Pb, Sb] = label_maps(b);
    auto [Pa, Sa] = label_maps(a);
    return Pb * f * Sa;
}

Biideal build_biideal_I(const StarBicategory& zig) {
    if (!zig.zigzag()) throw std::invalid_argument("build_biideal_I: needs the zigzag side");
    const FiniteDimAlgebra& lam = zig.algebra();
    const int nl = zig.nlabels();
    Biideal I;
    I.bicat = &zig;
    I.comp.resize(nl);
    for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) I.comp[a].push_back(Subspace(zig.hom(a, b).dim()));

    // (Reg, Reg): the central leaf loops c_k
    {
        std::vector<QVec> gens;
        for (int k = 1; k <= zig.n(); ++k) {
            int ck = *lam.basis_index_by_name("c" + std::to_string(k));
            QMat m = zig.gen(0).left_action_of_basis(ck);
            gens.push_back(zig.hom(0, 0).coords(m));
        }
        I.comp[0][0] = Subspace::span(zig.hom(0, 0).dim(), gens);
    }
    // (F_j, F_j), j >= 1: c_j (x) e_0 and c_j (x) c
    int c0 = *lam.basis_index_by_name("c");
    for (int j = 1; j <= zig.n(); ++j) {
        const int lab = j + 1;
        const Bimodule& fj = zig.gen(lab);
        int cj = *lam.basis_index_by_name("c" + std::to_string(j));
        int e0 = lam.idempotent[0];
        auto generator_morphism = [&](int u, int v) {
            // e_j (x) e_0 -> u (x) v:  p (x) q -> (p u) (x) (v q)
            QMat m(fj.dim, fj.dim);
            for (int col = 0; col < fj.dim; ++col) {
                auto [p, q] = fj.pair_basis[col];
                QVec pu = lam.mul(lam.coords_of_basis(p), lam.coords_of_basis(u));
                QVec vq = lam.mul(lam.coords_of_basis(v), lam.coords_of_basis(q));
                for (int pi = 0; pi < lam.dim; ++pi) {
                    if (pu[pi].is_zero()) continue;
                    for (int qi = 0; qi < lam.dim; ++qi) {
                        if (vq[qi].is_zero()) continue;
                        auto it = std::find(fj.pair_basis.begin(), fj.pair_basis.end(),
                                            std::pair<int, int>{pi, qi});
                        if (it == fj.pair_basis.end()) continue;
                        int row = static_cast<int>(it - fj.pair_basis.begin());
                        m(row, col) += pu[pi] * vq[qi];
                    }
                }
            }
            return m;
        };
        std::vector<QVec> gens;
        gens.push_back(zig.hom(lab, lab).coords(generator_morphism(cj, e0)));
        gens.push_back(zig.hom(lab, lab).coords(generator_morphism(cj, c0)));
        I.comp[lab][lab] = Subspace::span(zig.hom(lab, lab).dim(), gens);
    }
    return I;
}

namespace {

bool in_component(const Biideal& I, int a, int b, const QMat& m) {
    const StarBicategory& bc = *I.bicat;
    QVec coords = bc.hom(a, b).coords(m);  // throws if not a morphism at all
    return I.comp[a][b].contains(coords);
}

}  // namespace

BiidealCheck verify_biideal(const Biideal& I) {
    const StarBicategory& bc = *I.bicat;
    BiidealCheck out;
    auto record = [&](const std::string& what, bool pass) {
        out.certificate.push_back({what, pass});
        if (!pass && out.ok) {
            out.ok = false;
            out.first_failure = what;
        }
    };
    const int nl = bc.nlabels();
    // vertical ideal closure
    for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) {
            for (const auto& v : I.comp[a][b].basis()) {
                QMat gamma = bc.hom(a, b).from_coords(v);
                for (int c = 0; c < nl; ++c) {
                    for (const auto& h : bc.hom(b, c).basis)
                        record("post " + bc.label_name(a) + "->" + bc.label_name(b) + "->" +
                                   bc.label_name(c),
                               in_component(I, a, c, h * gamma));
                    for (const auto& h : bc.hom(c, a).basis)
                        record("pre " + bc.label_name(c) + "->" + bc.label_name(a) + "->" +
                                   bc.label_name(b),
                               in_component(I, c, b, gamma * h));
                }
            }
        }
    // whiskering by every generator label, both sides
    for (int g = 0; g < nl; ++g)
        for (int a = 0; a < nl; ++a)
            for (int b = 0; b < nl; ++b) {
                if (I.comp[a][b].dim() == 0) continue;
                const GenObjAction &ga = bc.composition(g, a), &gb = bc.composition(g, b);
                const GenObjAction &ag = bc.composition(a, g), &bg = bc.composition(b, g);
                for (const auto& v : I.comp[a][b].basis()) {
                    QMat gamma = bc.hom(a, b).from_coords(v);
                    BimoduleMorphism gm{&bc.gen(a), &bc.gen(b), gamma};
                    // left whisker: G . gamma
                    {
                        BimoduleMorphism w = whisker_left(ga.tensor, gb.tensor, gm);
                        QMat blocks = gb.dec.to_sum.m * w.m * ga.dec.from_sum.m;
                        bool pass = true;
                        for (size_t s = 0; s < ga.pieces.size() && pass; ++s)
                            for (size_t t = 0; t < gb.pieces.size() && pass; ++t) {
                                QMat blk(bc.gen(gb.pieces[t]).dim, bc.gen(ga.pieces[s]).dim);
                                for (int r = 0; r < blk.rows(); ++r)
                                    for (int c = 0; c < blk.cols(); ++c)
                                        blk(r, c) = blocks(gb.offsets[t] + r, ga.offsets[s] + c);
                                if (!blk.is_zero())
                                    pass = in_component(I, ga.pieces[s], gb.pieces[t], blk);
                            }
                        record("whisker-left " + bc.label_name(g) + " . gamma(" +
                                   bc.label_name(a) + "," + bc.label_name(b) + ")",
                               pass);
                    }
                    // right whisker: gamma . G
                    {
                        BimoduleMorphism w = whisker_right(ag.tensor, bg.tensor, gm);
                        QMat blocks = bg.dec.to_sum.m * w.m * ag.dec.from_sum.m;
                        bool pass = true;
                        for (size_t s = 0; s < ag.pieces.size() && pass; ++s)
                            for (size_t t = 0; t < bg.pieces.size() && pass; ++t) {
                                QMat blk(bc.gen(bg.pieces[t]).dim, bc.gen(ag.pieces[s]).dim);
                                for (int r = 0; r < blk.rows(); ++r)
                                    for (int c = 0; c < blk.cols(); ++c)
                                        blk(r, c) = blocks(bg.offsets[t] + r, ag.offsets[s] + c);
                                if (!blk.is_zero())
                                    pass = in_component(I, ag.pieces[s], bg.pieces[t], blk);
                            }
                        record("whisker-right gamma(" + bc.label_name(a) + "," +
                                   bc.label_name(b) + ") . " + bc.label_name(g),
                               pass);
                    }
                }
            }
    return out;
}

Biideal biideal_power(const Biideal& I, int m) {
    const StarBicategory& bc = *I.bicat;
    const int nl = bc.nlabels();
    Biideal P = I;
    for (int step = 1; step < m; ++step) {
        Biideal next;
        next.bicat = I.bicat;
        next.comp.resize(nl);
        for (int a = 0; a < nl; ++a)
            for (int c = 0; c < nl; ++c) {
                std::vector<QVec> gens;
                for (int b = 0; b < nl; ++b)
                    for (const auto& va : P.comp[a][b].basis())
                        for (const auto& vb : I.comp[b][c].basis()) {
                            QMat prod = bc.hom(b, c).from_coords(vb) *
                                        bc.hom(a, b).from_coords(va);
                            gens.push_back(bc.hom(a, c).coords(prod));
                        }
                next.comp[a].push_back(Subspace::span(bc.hom(a, c).dim(), gens));
            }
        P = next;
    }
    return P;
}

int biideal_nilpotency_degree(const Biideal& I) {
    for (int m = 1; m <= 10; ++m) {
        Biideal P = biideal_power(I, m);
        bool zero = true;
        for (const auto& row : P.comp)
            for (const auto& s : row)
                if (s.dim() > 0) zero = false;
        if (zero) return m;
    }
    throw std::runtime_error("biideal nilpotency degree exceeds 10");
}

DimIdentityReport quotient_dimension_identity(const StarBicategory& zig,
                                              const StarBicategory& star, const Biideal& I) {
    DimIdentityReport out;
    const int nl = zig.nlabels();
    for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) {
            DimIdentityReport::Row row;
            row.src = a;
            row.tgt = b;
            row.dim_zigzag = zig.hom(a, b).dim();
            row.dim_quotient = star.hom(a, b).dim();
            row.dim_ideal = I.comp[a][b].dim();
            row.match = row.dim_zigzag == row.dim_quotient + row.dim_ideal;
            // surjectivity of the transported basis
            std::vector<QVec> images;
            for (const auto& f : zig.hom(a, b).basis) {
                QMat qf = zig.quotient_transport(star, a, b, f);
                images.push_back(star.hom(a, b).coords(qf));
            }
            row.transport_onto =
                Subspace::span(star.hom(a, b).dim(), images).dim() == row.dim_quotient;
            out.rows.push_back(row);
            if (!row.match || !row.transport_onto) out.ok = false;
        }
    return out;
}

Birepresentation cell_birepresentation(const StarBicategory& star) {
    Birepresentation rep;
    rep.base = &star.algebra();
    for (int k = 0; k <= star.n(); ++k)
        rep.objects.push_back(std::make_shared<Bimodule>(left_module(star.algebra(), k)));
    for (int l = 0; l < star.nlabels(); ++l) {
        rep.gen_images.push_back(
            std::make_shared<Bimodule>(star.gen(l)));  // copy; stable ownership
        rep.gen_labels.push_back(star.label_name(l));
    }
    return rep;
}

Birepresentation defining_birepresentation(const StarBicategory& bc) {
    return cell_birepresentation(bc);
}

Birepresentation subrep_N(const StarBicategory& star) {
    Birepresentation rep;
    rep.base = &star.algebra();
    for (int k = 0; k <= star.n(); ++k)
        rep.objects.push_back(std::make_shared<Bimodule>(star.gen(k + 1)));
    for (int l = 0; l < star.nlabels(); ++l) {
        rep.gen_images.push_back(std::make_shared<Bimodule>(star.gen(l)));
        rep.gen_labels.push_back(star.label_name(l));
    }
    return rep;
}

StableIdeal ev_ideal(const RepAnalysis& ra, const Biideal& I, const TwoMorphismTransport& t2) {
    std::vector<RepAnalysis::Seed> seeds;
    const StarBicategory& bc = *I.bicat;
    for (int a = 0; a < bc.nlabels(); ++a)
        for (int b = 0; b < bc.nlabels(); ++b)
            for (const auto& v : I.comp[a][b].basis()) {
                QMat alpha = bc.hom(a, b).from_coords(v);
                QMat alpha_rep = t2(a, b, alpha);
                for (int i = 0; i < ra.nobj(); ++i)
                    for (const auto& tr : ra.evaluate_2morphism(a, b, alpha_rep, i))
                        if (!tr.m.is_zero()) seeds.push_back({tr.src_obj, tr.tgt_obj, tr.m});
            }
    return ra.closure(seeds);
}

QMat action_matrix(const RepAnalysis& ra, int label) { return ra.action_matrix(label); }

StableIdeal subrep_N_maximal_ideal(const RepAnalysis& ra) {
    auto rep = ra.simple_transitive_check();
    if (rep.proper_nonzero.empty())
        throw std::runtime_error("subrep_N_maximal_ideal: no proper nonzero stable ideal");
    // maximal by total dimension
    const StableIdeal* best = &rep.proper_nonzero[0];
    for (const auto& I : rep.proper_nonzero)
        if (I.total_dim() > best->total_dim()) best = &I;
    return *best;
}

StableIdeal pullback_ideal(const RepTransformation& theta, const StableIdeal& ideal_tgt) {
    const RepAnalysis& src = *theta.src;
    const RepAnalysis& tgt = *theta.tgt;
    StableIdeal out;
    out.comp.resize(src.nobj());
    for (int i = 0; i < src.nobj(); ++i)
        for (int j = 0; j < src.nobj(); ++j) {
            const int oi = theta.obj_map[i], oj = theta.obj_map[j];
            const QMat& T = theta.hom_map[i][j];
            const Subspace& I = ideal_tgt.comp[oi][oj];
            // preimage of I under T: kernel of (residual of T modulo I)
            const int dsrc = src.hom(i, j).dim();
            const int dtgt = tgt.hom(oi, oj).dim();
            QMat res(dtgt, dsrc);
            for (int c2 = 0; c2 < dsrc; ++c2) {
                QVec v = I.reduce(T.col(c2));
                for (int r2 = 0; r2 < dtgt; ++r2) res(r2, c2) = v[r2];
            }
            out.comp[i].push_back(kernel(res));
        }
    return out;
}

RepTransformation cone_transformation(const RepAnalysis& cell, const RepAnalysis& model,
                                      const FiniteDimAlgebra& an, const FiniteDimAlgebra& ar,
                                      const std::vector<int>& block_of) {
    RepTransformation t;
    t.src = &cell;
    t.tgt = &model;
    for (int k = 0; k < cell.nobj(); ++k) t.obj_map.push_back(block_of[k]);
    // transport a module morphism Ae_i -> Ae_j (right multiplication by an
    // element of e_i A e_j) along the generator relabelling a_i -> a_{P(i)},
    // b_i -> b_{P(i)}, c -> c
    auto transport_element = [&](int i, const QVec& z) {
        QVec out2(ar.dim);
        for (int b = 0; b < an.dim; ++b) {
            if (z[b].is_zero()) continue;
            std::string name = an.basis[b].name;
            std::string mapped;
            if (name[0] == 'e') {
                mapped = "e" + std::to_string(block_of[std::stoi(name.substr(1))]);
            } else if (name == "c") {
                mapped = "c";
            } else {
                mapped = name.substr(0, 1) + std::to_string(block_of[std::stoi(name.substr(1))]);
            }
            auto idx = ar.basis_index_by_name(mapped);
            if (!idx) throw std::logic_error("cone_transformation: missing image element");
            out2[*idx] += z[b];
        }
        (void)i;
        return out2;
    };
    t.hom_map.resize(cell.nobj());
    for (int i = 0; i < cell.nobj(); ++i)
        for (int j = 0; j < cell.nobj(); ++j) {
            const HomSpaceBasis& hs = cell.hom(i, j);
            const HomSpaceBasis& ht = model.hom(block_of[i], block_of[j]);
            QMat T(ht.dim(), hs.dim());
            // recover the algebra element from the image of the cyclic
            // generator e_i (the unique empty-word basis element)
            const Bimodule& msrc = *cell.rep().objects[i];
            const Bimodule& mtgt_src = *model.rep().objects[block_of[i]];
            int gen_src = -1, gen_tgt = -1;
            for (int b = 0; b < msrc.dim; ++b)
                if (msrc.basis_names[b] == "e" + std::to_string(i)) gen_src = b;
            for (int b = 0; b < mtgt_src.dim; ++b)
                if (mtgt_src.basis_names[b] == "e" + std::to_string(block_of[i])) gen_tgt = b;
            if (gen_src < 0 || gen_tgt < 0)
                throw std::logic_error("cone_transformation: cyclic generator not found");
            // module bases of Ae_j / Ae_i over both algebras, enumeration order
            std::vector<int> mod_src, mod_tgt, mod_tgt_i;
            for (int b = 0; b < an.dim; ++b)
                if (an.basis[b].src == j) mod_src.push_back(b);
            for (int b = 0; b < ar.dim; ++b)
                if (ar.basis[b].src == block_of[j]) mod_tgt.push_back(b);
            for (int b = 0; b < ar.dim; ++b)
                if (ar.basis[b].src == block_of[i]) mod_tgt_i.push_back(b);
            for (int c2 = 0; c2 < hs.dim(); ++c2) {
                // f(e_i) as an algebra element of e_i A e_j
                QVec z(an.dim);
                for (int r2 = 0; r2 < static_cast<int>(mod_src.size()); ++r2)
                    z[mod_src[r2]] = hs.basis[c2](r2, gen_src);
                QVec zt = transport_element(i, z);
                // image morphism: x -> x * zt on the target module
                const Bimodule& mt = *model.rep().objects[block_of[i]];
                QMat img(model.rep().objects[block_of[j]]->dim, mt.dim);
                for (int col = 0; col < mt.dim; ++col) {
                    QVec x(ar.dim);
                    x[mod_tgt_i[col]] = Rational::one();
                    QVec xz = ar.mul(x, zt);
                    for (int r2 = 0; r2 < static_cast<int>(mod_tgt.size()); ++r2)
                        img(r2, col) = xz[mod_tgt[r2]];
                }
                QVec coords = ht.coords(img);
                for (int r2 = 0; r2 < ht.dim(); ++r2) T(r2, c2) = coords[r2];
            }
            t.hom_map[i].push_back(T);
        }
    return t;
}

}  // namespace starcat
