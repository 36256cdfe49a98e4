#include "starcat/classification.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "starcat/parallel.hpp"

namespace starcat {

CWRModel build_CWRModel_impl(int n, const SetPartition& p) {
    CWRModel m;
    m.partition = p;
    const int r = p.rank();
    m.base = std::make_shared<FiniteDimAlgebra>(build_star_quotient(std::max(r, 1)));
    Birepresentation& rep = m.rep;
    rep.base = m.base.get();
    for (int k = 0; k <= r; ++k)
        rep.objects.push_back(std::make_shared<Bimodule>(left_module(*m.base, k)));
    rep.gen_images.push_back(std::make_shared<Bimodule>(regular_bimodule(*m.base)));
    rep.gen_labels.push_back("Reg");
    for (int k = 0; k <= n; ++k) {
        rep.gen_images.push_back(
            std::make_shared<Bimodule>(projective_bimodule(*m.base, p.block_of[k], 0)));
        rep.gen_labels.push_back("F" + std::to_string(k));
    }
    return m;
}

CWRModel build_CWR_model(int n, const SetPartition& p) { return build_CWRModel_impl(n, p); }

bool rows_match_partition(const RepAnalysis& ra, const SetPartition& p) {
    const int n = p.n;
    std::vector<QMat> mats;
    for (int k = 0; k <= n; ++k) mats.push_back(ra.action_matrix(k + 1));
    for (int k = 0; k <= n; ++k)
        for (int k2 = 0; k2 <= n; ++k2) {
            bool same = mats[k] == mats[k2];
            if (same != (p.block_of[k] == p.block_of[k2])) return false;
        }
    return true;
}

bool action_matrices_equivalent(const std::vector<QMat>& a, const std::vector<QMat>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const int m = a[0].rows();
    if (b[0].rows() != m) return false;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool all = true;
        for (size_t g = 0; g < a.size() && all; ++g) {
            for (int i = 0; i < m && all; ++i)
                for (int j = 0; j < m && all; ++j)
                    if (a[g](perm[i], perm[j]) != b[g](i, j)) all = false;
        }
        if (all) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

ClassificationReport classify(int n, bool with_presentations) {
    ClassificationReport out;
    out.n = n;
    out.bell = bell_number(n);
    auto partitions = enumerate_partitions(n);
    out.classes.resize(partitions.size());
    std::vector<std::string> errors(partitions.size());
    parallel_for(static_cast<long>(partitions.size()), [&](long i) {
        try {
            const SetPartition& p = partitions[i];
            ClassEntry& e = out.classes[i];
            e.partition = p;
            e.rank = p.rank();
            CWRModel model = build_CWR_model(n, p);
            RepAnalysis ra(model.rep);
            for (int g = 0; g < ra.ngen(); ++g) e.action_matrices.push_back(ra.action_matrix(g));
            auto st = ra.simple_transitive_check();
            e.transitive = st.transitive;
            e.simple_transitive = st.transitive && st.simple;
            if (!rows_match_partition(ra, p)) throw std::runtime_error("row/partition mismatch");
            if (with_presentations) {
                e.presentation_checked = true;
                e.presentation_consistent = consistency_CWR_presentation_vs_model(n, p);
            }
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
        }
    });
    for (size_t i = 0; i < partitions.size(); ++i)
        if (!errors[i].empty())
            throw std::runtime_error("classify: partition " + partitions[i].str() + ": " +
                                     errors[i]);
    out.pairwise_inequivalent = true;
    for (size_t i = 0; i < out.classes.size() && out.pairwise_inequivalent; ++i)
        for (size_t j = i + 1; j < out.classes.size() && out.pairwise_inequivalent; ++j)
            if (action_matrices_equivalent(out.classes[i].action_matrices,
                                           out.classes[j].action_matrices))
                out.pairwise_inequivalent = false;
    out.ok = out.pairwise_inequivalent &&
             static_cast<long>(out.classes.size()) == out.bell;
    for (const auto& e : out.classes) {
        out.ok = out.ok && e.simple_transitive;
        if (e.presentation_checked) out.ok = out.ok && e.presentation_consistent;
    }
    return out;
}

std::string classification_report_json(const ClassificationReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["bell_number"] = rep.bell;
    j["classes"] = nlohmann::json::array();
    for (const auto& e : rep.classes) {
        nlohmann::json jc;
        jc["partition"] = e.partition.str();
        jc["base_algebra_rank"] = e.rank;
        jc["simple_transitive"] = e.simple_transitive;
        if (e.presentation_checked)
            jc["presentation_consistent"] = e.presentation_consistent;
        else
            jc["presentation_consistent"] = nullptr;
        nlohmann::json mats = nlohmann::json::array();
        for (const auto& m : e.action_matrices) {
            nlohmann::json rows = nlohmann::json::array();
            for (int r = 0; r < m.rows(); ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (int c2 = 0; c2 < m.cols(); ++c2) row.push_back(m(r, c2).str());
                rows.push_back(row);
            }
            mats.push_back(rows);
        }
        jc["action_matrices"] = mats;
        j["classes"].push_back(jc);
    }
    j["pairwise_inequivalent"] = rep.pairwise_inequivalent;
    return j.dump(2);
}

bool consistency_CWR_presentation_vs_model(int n, const SetPartition& p, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    CoequifierResult r = build_CWR_presentation(n, p);
    if (!r.cat.check_confluence().confluent) return fail("rewriting not confluent at the cap");
    const int rank = p.rank();
    FiniteDimAlgebra ar = build_star_quotient(std::max(rank, 1));
    const int bound = r.cat.length_cap;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            auto h = r.cat.hom_basis_bounded(i, j, bound);
            if (!h.saturated) return fail("hom space does not saturate");
            size_t expect = ar.peirce(p.block_of[i], p.block_of[j]).size();
            if (h.words.size() != expect)
                return fail("hom dimension mismatch at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        }
    EnvelopeSummary env = additive_karoubi_envelope(r.cat, bound);
    if (env.indecomposable_count != rank + 1) return fail("envelope class count differs");

    // transversal restriction: block minima; the cone is the inclusion of
    // the base category, so fullness/faithfulness is dimension equality plus
    // irreducibility of the base words, and density is an invertible chain
    std::vector<int> transversal{0};
    for (size_t b = 1; b < p.blocks.size(); ++b) transversal.push_back(p.blocks[b][0]);
    PresentedLinearCategory base = present_star_proj(n);
    for (int i : transversal)
        for (int j : transversal) {
            auto hb = base.hom_basis_bounded(i, j, bound);
            auto hr = r.cat.hom_basis_bounded(i, j, bound);
            if (hb.words.size() != hr.words.size())
                return fail("transversal restriction not full/faithful");
            for (const auto& w : hb.words)
                if (!r.cat.word_irreducible(w)) return fail("base word collapses in C^WR");
        }
    for (int l = 0; l <= n; ++l) {
        // invertible chain from l to its block minimum
        int target = p.blocks[p.block_of[l]][0];
        if (target == l) continue;
        Word chain;  // application order, from target up to l, then inverted
        const auto& blk = p.blocks[p.block_of[l]];
        for (size_t t = 0; t + 1 < blk.size() && blk[t] < l; ++t) {
            // xi over the adjacent pair (blk[t], blk[t+1])
            for (const auto& pg : r.pairs)
                if (pg.u == blk[t] && pg.v == blk[t + 1]) chain.push_back(pg.xi_arrow);
        }
        Word back;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            back.push_back(r.cat.gens()[*it].inverse);
        Word round = chain;
        round.insert(round.end(), back.begin(), back.end());
        PExpr nf = r.cat.normal_form_word(round);
        if (!(nf.size() == 1 && nf[0].word.empty() && nf[0].coeff.is_one()))
            return fail("xi chain is not invertible");
    }
    return true;
}

// ---- modifications -----------------------------------------------------------

ModificationLab::ModificationLab(int n) : n_(n) {
    star_ = std::make_unique<StarBicategory>(n, false);
    for (int j = 0; j <= n; ++j)
        modules_.push_back(std::make_shared<Bimodule>(left_module(star_->algebra(), j)));
    tens_.resize(n + 1);
    for (int l = 0; l <= n; ++l) {
        tens_[l].resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            tens_[l][j] = std::make_unique<TensorResult>(
                tensor_over(star_->gen(l + 1), *modules_[j]));
        }
    }
}

ModificationLab::Modification ModificationLab::build_s(int j, int k) const {
    if (j < 1 || j > n_ || k < 1 || k > n_)
        throw std::invalid_argument("build_s: leaf indices start at 1");
    Modification m;
    m.j = j;
    m.k = k;
    const FiniteDimAlgebra& alg = star_->algebra();
    // algebra indices of the module bases: module Ae_j basis i <-> algebra
    // basis element with src = j, in enumeration order
    auto module_alg_index = [&](int v) {
        std::vector<int> out;
        for (int i = 0; i < alg.dim; ++i)
            if (alg.basis[i].src == v) out.push_back(i);
        return out;
    };
    for (int l = 0; l <= n_; ++l) {
        const Bimodule& N = star_->gen(l + 1);
        const TensorResult &tj = *tens_[l][j], &tk = *tens_[l][k];
        auto aj = module_alg_index(j), ak = module_alg_index(k);
        // c^j: N (x) Ae_j -> Ne_j, class of (m, a) -> m.a
        auto collapse = [&](const TensorResult& t, const std::vector<int>& amap, int v,
                            std::vector<int>& cols) {
            cols.clear();
            for (int i = 0; i < N.dim; ++i)
                if (N.rv[i] == v) cols.push_back(i);
            QMat out(static_cast<int>(cols.size()), t.bim.dim);
            for (int col = 0; col < t.bim.dim; ++col) {
                auto [mi, ai] = t.matched[t.rep_matched[col]];
                QMat act = N.right_action_of_basis(amap[ai]);
                for (size_t row = 0; row < cols.size(); ++row)
                    out(static_cast<int>(row), col) = act(cols[row], mi);
            }
            return out;
        };
        std::vector<int> cols_j, cols_k;
        QMat cj = collapse(tj, aj, j, cols_j);
        QMat ck = collapse(tk, ak, k, cols_k);
        if (!is_invertible(cj) || !is_invertible(ck))
            throw std::runtime_error("build_s: unit collapse not invertible");
        // (. a_j): Ne_j -> Ne_0 columns, restricted to the c-image
        int ja = *alg.basis_index_by_name("a" + std::to_string(j));
        int ka = *alg.basis_index_by_name("a" + std::to_string(k));
        std::vector<int> cols0;
        for (int i = 0; i < N.dim; ++i)
            if (N.rv[i] == 0) cols0.push_back(i);
        auto right_mult = [&](int arrow_basis, const std::vector<int>& from) {
            QMat act = N.right_action_of_basis(arrow_basis);
            QMat out(static_cast<int>(cols0.size()), static_cast<int>(from.size()));
            for (size_t r2 = 0; r2 < cols0.size(); ++r2)
                for (size_t c2 = 0; c2 < from.size(); ++c2)
                    out(static_cast<int>(r2), static_cast<int>(c2)) = act(cols0[r2], from[c2]);
            return out;
        };
        QMat mj = right_mult(ja, cols_j);  // Ne_j -> Ne_0
        QMat mk = right_mult(ka, cols_k);  // Ne_k -> Ne_0
        // phi = mk^{-1} mj, solved columnwise (the images agree: both are Nc)
        QMat phi(mk.cols(), mj.cols());
        for (int c2 = 0; c2 < mj.cols(); ++c2) {
            auto sol = solve(mk, mj.col(c2));
            if (!sol)
                throw std::runtime_error("build_s: (. a_k) is not onto the image of (. a_j)");
            for (int r2 = 0; r2 < mk.cols(); ++r2) phi(r2, c2) = (*sol)[r2];
        }
        // injectivity of (. a_k) on Ne_k certifies the solution
        if (rank(mk) != mk.cols())
            throw std::runtime_error("build_s: (. a_k) not injective on Ne_k");
        QMat comp = *inverse(ck) * phi * cj;
        m.comp.push_back(comp);
    }
    return m;
}

ModificationLab::AxiomReport ModificationLab::check_modification_axiom(
    const Modification& m) const {
    AxiomReport out;
    const int j = m.j, k = m.k;
    auto record_fail = [&](const std::string& what) {
        if (out.ok) {
            out.ok = false;
            out.first_failure = what;
        }
    };
    // naturality over the subrepresentation N: bimodule morphisms F_l -> F_l2
    for (int l = 0; l <= n_ && out.ok; ++l)
        for (int l2 = 0; l2 <= n_ && out.ok; ++l2) {
            const HomSpaceBasis& h = star_->hom(l + 1, l2 + 1);
            for (const auto& f : h.basis) {
                BimoduleMorphism fm{&star_->gen(l + 1), &star_->gen(l2 + 1), f};
                QMat lhs = m.comp[l2] * whisker_right(*tens_[l][j], *tens_[l2][j], fm).m;
                QMat rhs = whisker_right(*tens_[l][k], *tens_[l2][k], fm).m * m.comp[l];
                ++out.squares_checked;
                if (lhs != rhs) {
                    record_fail("naturality at F" + std::to_string(l) + "->F" +
                                std::to_string(l2));
                    break;
                }
            }
        }
    if (!out.ok) return out;
    // the associator square for every generator pair (M, N)
    for (int g = 0; g <= n_ + 1 && out.ok; ++g) {
        const Bimodule& M = star_->gen(g);
        for (int l = 0; l <= n_ && out.ok; ++l) {
            const Bimodule& N = star_->gen(l + 1);
            TensorResult mn = tensor_over(M, N);
            TensorResult mn_j = tensor_over(mn.bim, *modules_[j]);
            TensorResult mn_k = tensor_over(mn.bim, *modules_[k]);
            TensorResult m_nj = tensor_over(M, tens_[l][j]->bim);
            TensorResult m_nk = tensor_over(M, tens_[l][k]->bim);
            BimoduleMorphism aj = associator(mn, mn_j, *tens_[l][j], m_nj);
            BimoduleMorphism ak = associator(mn, mn_k, *tens_[l][k], m_nk);
            // component at M (x) N, transported through the decomposition
            Decomposition dec = decompose(mn.bim, star_->catalog());
            QMat m_mn(mn_k.bim.dim, mn_j.bim.dim);
            {
                int off = 0;
                for (int c = 0; c < star_->nlabels(); ++c)
                    for (int t = 0; t < dec.multiplicity[c]; ++t) {
                        // piece is F_{c-1}; Reg never appears as a summand
                        if (c == 0) throw std::logic_error("Reg summand in M (x) N");
                        const Bimodule& piece = star_->gen(c);
                        QMat iota(mn.bim.dim, piece.dim), pi(piece.dim, mn.bim.dim);
                        for (int r2 = 0; r2 < mn.bim.dim; ++r2)
                            for (int c2 = 0; c2 < piece.dim; ++c2)
                                iota(r2, c2) = dec.from_sum.m(r2, off + c2);
                        for (int r2 = 0; r2 < piece.dim; ++r2)
                            for (int c2 = 0; c2 < mn.bim.dim; ++c2)
                                pi(r2, c2) = dec.to_sum.m(off + r2, c2);
                        BimoduleMorphism im{&piece, &mn.bim, iota};
                        BimoduleMorphism pm{&mn.bim, &piece, pi};
                        QMat lift_k = whisker_right(*tens_[c - 1][k], mn_k, im).m;
                        QMat drop_j = whisker_right(mn_j, *tens_[c - 1][j], pm).m;
                        m_mn = m_mn + lift_k * m.comp[c - 1] * drop_j;
                        off += piece.dim;
                    }
            }
            BimoduleMorphism msrc{&tens_[l][j]->bim, &tens_[l][k]->bim, m.comp[l]};
            QMat lhs = whisker_left(m_nj, m_nk, msrc).m * aj.m;
            QMat rhs = ak.m * m_mn;
            ++out.squares_checked;
            if (lhs != rhs)
                record_fail("axiom square at (" + star_->label_name(g) + ", F" +
                            std::to_string(l) + ")");
        }
    }
    return out;
}

Subspace ModificationLab::modification_space(int j, int k) const {
    // unknowns: stacked entries of the component matrices
    std::vector<std::pair<int, std::pair<int, int>>> unknowns;  // (l, (row, col))
    std::vector<int> offset(n_ + 2, 0);
    for (int l = 0; l <= n_; ++l) {
        offset[l] = static_cast<int>(unknowns.size());
        const TensorResult &tj = *tens_[l][j], &tk = *tens_[l][k];
        for (int r2 = 0; r2 < tk.bim.dim; ++r2)
            for (int c2 = 0; c2 < tj.bim.dim; ++c2) unknowns.push_back({l, {r2, c2}});
    }
    offset[n_ + 1] = static_cast<int>(unknowns.size());
    const int nu = static_cast<int>(unknowns.size());
    std::vector<QVec> rows;
    auto uid = [&](int l, int r2, int c2) {
        return offset[l] + r2 * tens_[l][j]->bim.dim + c2;
    };
    // naturality: comp[l2] W_j(f) = W_k(f) comp[l]
    for (int l = 0; l <= n_; ++l)
        for (int l2 = 0; l2 <= n_; ++l2) {
            const HomSpaceBasis& h = star_->hom(l + 1, l2 + 1);
            for (const auto& f : h.basis) {
                BimoduleMorphism fm{&star_->gen(l + 1), &star_->gen(l2 + 1), f};
                QMat wj = whisker_right(*tens_[l][j], *tens_[l2][j], fm).m;
                QMat wk = whisker_right(*tens_[l][k], *tens_[l2][k], fm).m;
                const int rows_out = tens_[l2][k]->bim.dim, cols_in = tens_[l][j]->bim.dim;
                for (int r2 = 0; r2 < rows_out; ++r2)
                    for (int c2 = 0; c2 < cols_in; ++c2) {
                        QVec row(nu);
                        bool nz = false;
                        for (int t = 0; t < tens_[l2][j]->bim.dim; ++t)
                            if (!wj(t, c2).is_zero()) {
                                row[uid(l2, r2, t)] += wj(t, c2);
                                nz = true;
                            }
                        for (int t = 0; t < tens_[l][k]->bim.dim; ++t)
                            if (!wk(r2, t).is_zero()) {
                                row[uid(l, t, c2)] -= wk(r2, t);
                                nz = true;
                            }
                        if (nz && !vec_is_zero(row)) rows.push_back(row);
                    }
            }
        }
    // the axiom squares, linear in the components
    for (int g = 0; g <= n_ + 1; ++g) {
        const Bimodule& M = star_->gen(g);
        for (int l = 0; l <= n_; ++l) {
            const Bimodule& N = star_->gen(l + 1);
            TensorResult mn = tensor_over(M, N);
            TensorResult mn_j = tensor_over(mn.bim, *modules_[j]);
            TensorResult mn_k = tensor_over(mn.bim, *modules_[k]);
            TensorResult m_nj = tensor_over(M, tens_[l][j]->bim);
            TensorResult m_nk = tensor_over(M, tens_[l][k]->bim);
            BimoduleMorphism aj = associator(mn, mn_j, *tens_[l][j], m_nj);
            BimoduleMorphism ak = associator(mn, mn_k, *tens_[l][k], m_nk);
            Decomposition dec = decompose(mn.bim, star_->catalog());
            // LHS entries: sum over component entries of F_l; RHS: of pieces
            // lhs = W_left(m_l) a_j ; rhs = a_k sum_piece lift m_piece drop
            const int R = m_nk.bim.dim, C = mn_j.bim.dim;
            // expand both sides of the square over unit component matrices
            const int dj = tens_[l][j]->bim.dim, dk = tens_[l][k]->bim.dim;
            std::vector<std::vector<QMat>> lhs_of_unit(dk, std::vector<QMat>(dj));
            for (int a2 = 0; a2 < dk; ++a2)
                for (int b2 = 0; b2 < dj; ++b2) {
                    QMat unit(dk, dj);
                    unit(a2, b2) = Rational::one();
                    BimoduleMorphism um{&tens_[l][j]->bim, &tens_[l][k]->bim, unit};
                    lhs_of_unit[a2][b2] = whisker_left(m_nj, m_nk, um).m * aj.m;
                }
            // rhs transport of unit components of every piece equal to F_l?
            // the transported m_mn uses the SAME component family: entries of
            // pieces F_{c-1}; assemble coefficient maps per piece index
            struct PieceMap {
                int label;  // F index = c-1
                QMat lift_k, drop_j;
            };
            std::vector<PieceMap> pieces;
            {
                int off = 0;
                for (int c = 0; c < star_->nlabels(); ++c)
                    for (int t = 0; t < dec.multiplicity[c]; ++t) {
                        const Bimodule& piece = star_->gen(c);
                        QMat iota(mn.bim.dim, piece.dim), pi(piece.dim, mn.bim.dim);
                        for (int r3 = 0; r3 < mn.bim.dim; ++r3)
                            for (int c3 = 0; c3 < piece.dim; ++c3)
                                iota(r3, c3) = dec.from_sum.m(r3, off + c3);
                        for (int r3 = 0; r3 < piece.dim; ++r3)
                            for (int c3 = 0; c3 < mn.bim.dim; ++c3)
                                pi(r3, c3) = dec.to_sum.m(off + r3, c3);
                        BimoduleMorphism im{&piece, &mn.bim, iota};
                        BimoduleMorphism pm{&mn.bim, &piece, pi};
                        pieces.push_back({c - 1, whisker_right(*tens_[c - 1][k], mn_k, im).m,
                                          whisker_right(mn_j, *tens_[c - 1][j], pm).m});
                        off += piece.dim;
                    }
            }
            for (int r2 = 0; r2 < R; ++r2)
                for (int c2 = 0; c2 < C; ++c2) {
                    QVec row(nu);
                    bool nz = false;
                    for (int a2 = 0; a2 < dk; ++a2)
                        for (int b2 = 0; b2 < dj; ++b2) {
                            const Rational& v = lhs_of_unit[a2][b2](r2, c2);
                            if (!v.is_zero()) {
                                row[uid(l, a2, b2)] += v;
                                nz = true;
                            }
                        }
                    for (const auto& pc : pieces) {
                        const int pdj = tens_[pc.label][j]->bim.dim;
                        const int pdk = tens_[pc.label][k]->bim.dim;
                        for (int a2 = 0; a2 < pdk; ++a2)
                            for (int b2 = 0; b2 < pdj; ++b2) {
                                // (a_k . lift E drop)(r2, c2)
                                Rational coef;
                                for (int t = 0; t < mn_k.bim.dim; ++t)
                                    if (!ak.m(r2, t).is_zero() && !pc.lift_k(t, a2).is_zero())
                                        coef += ak.m(r2, t) * pc.lift_k(t, a2);
                                if (coef.is_zero()) continue;
                                const Rational& d = pc.drop_j(b2, c2);
                                if (d.is_zero()) continue;
                                row[uid(pc.label, a2, b2)] -= coef * d;
                                nz = true;
                            }
                    }
                    if (nz && !vec_is_zero(row)) rows.push_back(row);
                }
        }
    }
    if (rows.empty()) return Subspace::full(nu);
    QMat sys(static_cast<int>(rows.size()), nu);
    for (int r2 = 0; r2 < static_cast<int>(rows.size()); ++r2) sys.set_row(r2, rows[r2]);
    return kernel(sys);
}

std::optional<Rational> ModificationLab::scalar_proportionality(const Modification& m1,
                                                                const Modification& m2) const {
    std::optional<Rational> lambda;
    for (int l = 0; l <= n_; ++l) {
        const QMat &a = m1.comp[l], &b = m2.comp[l];
        for (int r2 = 0; r2 < a.rows(); ++r2)
            for (int c2 = 0; c2 < a.cols(); ++c2) {
                if (a(r2, c2).is_zero() && b(r2, c2).is_zero()) continue;
                if (a(r2, c2).is_zero()) return std::nullopt;
                Rational q = b(r2, c2) / a(r2, c2);
                if (!lambda)
                    lambda = q;
                else if (*lambda != q)
                    return std::nullopt;
            }
    }
    return lambda;
}

ModificationLab::Modification ModificationLab::scale(const Modification& m,
                                                     const Rational& c) const {
    Modification out = m;
    for (auto& comp : out.comp) comp = c * comp;
    return out;
}

ModificationLab::Modification ModificationLab::normalize_modification(
    const Modification& t2, const Modification& ref) const {
    auto lam = scalar_proportionality(ref, t2);
    if (!lam || lam->is_zero())
        throw std::runtime_error("normalize_modification: no global scalar");
    return scale(t2, lam->inv());
}

// ---- T functors ---------------------------------------------------------------

Rational TFunctor::chi() const {
    Rational x;
    bool first = true;
    for (int i = 1; i <= n; ++i) {
        Rational prod = lambda[i] * mu[i];
        if (first) {
            x = prod;
            first = false;
        } else if (x != prod) {
            throw std::runtime_error("TFunctor: lambda_i mu_i is not constant");
        }
    }
    if (x.is_zero()) throw std::runtime_error("TFunctor: chi vanishes, functor not faithful");
    return x;
}

TFunctor make_tfunctor(int n, const SetPartition& p, const Rational& chi) {
    TFunctor f;
    f.n = n;
    f.p = p;
    f.lambda.assign(n + 1, Rational());
    f.mu.assign(n + 1, Rational());
    for (int i = 1; i <= n; ++i) {
        f.lambda[i] = chi;
        f.mu[i] = Rational::one();
    }
    return f;
}

NatSpace natural_transformation_space(const TFunctor& f, const TFunctor& g) {
    if (f.n != g.n) throw std::invalid_argument("natural_transformation_space: size mismatch");
    const int n = f.n;
    // unknowns: x, y (sigma_0 = x e_0 + y c), z_1..z_n
    const int nu = 2 + n;
    std::vector<QVec> rows;
    const Rational chi_f = f.chi(), chi_g = g.chi();
    // c-naturality: (chi_f - chi_g) x = 0
    {
        QVec row(nu);
        row[0] = chi_f - chi_g;
        if (!vec_is_zero(row)) rows.push_back(row);
    }
    for (int i = 1; i <= n; ++i) {
        // a_i: lambda_i x - lambda'_i z_i = 0
        QVec r1(nu);
        r1[0] = f.lambda[i];
        r1[2 + i - 1] = -g.lambda[i];
        rows.push_back(r1);
        // b_i: mu_i z_i - mu'_i x = 0
        QVec r2(nu);
        r2[2 + i - 1] = f.mu[i];
        r2[0] = -g.mu[i];
        rows.push_back(r2);
    }
    QMat sys(static_cast<int>(rows.size()), nu);
    for (int r2 = 0; r2 < static_cast<int>(rows.size()); ++r2) sys.set_row(r2, rows[r2]);
    NatSpace out;
    out.space = kernel(sys);
    for (const auto& v : out.space.basis())
        if (!v[0].is_zero()) out.has_invertible = true;
    return out;
}

// ---- refinements ---------------------------------------------------------------

namespace {

Word xi_chain(const CoequifierResult& cat, const SetPartition& p, int from, int to) {
    // from and to lie in one block; produce the ascending chain (or inverses)
    Word w;
    if (from == to) return w;
    const auto& blk = p.blocks[p.block_of[from]];
    auto pos = [&](int x) {
        return static_cast<int>(std::find(blk.begin(), blk.end(), x) - blk.begin());
    };
    int a = pos(from), b = pos(to);
    auto arrow = [&](int u, int v) {
        for (const auto& pg : cat.pairs)
            if (pg.u == u && pg.v == v) return pg.xi_arrow;
        throw std::logic_error("xi_chain: missing pair");
    };
    if (a < b)
        for (int t = a; t < b; ++t) w.push_back(arrow(blk[t], blk[t + 1]));
    else
        for (int t = a; t > b; --t)
            w.push_back(cat.cat.gens()[arrow(blk[t - 1], blk[t])].inverse);
    return w;
}

}  // namespace

PFunctor refinement_transformation(const CoequifierResult& fine, const SetPartition& pfine,
                                   const CoequifierResult& coarse, const SetPartition& pcoarse) {
    if (!coarsens(pfine, pcoarse))
        throw std::invalid_argument("refinement_transformation: partitions not nested");
    PFunctor f;
    f.src = &fine.cat;
    f.tgt = &coarse.cat;
    for (int i = 0; i < fine.cat.nobjects(); ++i) f.object_map.push_back(i);
    f.gen_map.resize(fine.cat.gens().size());
    std::vector<bool> done(fine.cat.gens().size(), false);
    for (const auto& pg : fine.pairs) {
        Word chain = xi_chain(coarse, pcoarse, pg.u, pg.v);
        f.gen_map[pg.xi_arrow] = {{Rational::one(), chain}};
        done[pg.xi_arrow] = true;
        int inv = fine.cat.gens()[pg.xi_arrow].inverse;
        Word back;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            back.push_back(coarse.cat.gens()[*it].inverse);
        f.gen_map[inv] = {{Rational::one(), back}};
        done[inv] = true;
    }
    for (size_t g = 0; g < fine.cat.gens().size(); ++g) {
        if (done[g]) continue;
        f.gen_map[g] = {{Rational::one(), Word{coarse.cat.gen_by_name(fine.cat.gens()[g].name)}}};
    }
    return f;
}

bool refinement_composition_agrees(int n, const SetPartition& p0, const SetPartition& p1,
                                   const SetPartition& p2) {
    CoequifierResult c0 = build_CWR_presentation(n, p0);
    CoequifierResult c1 = build_CWR_presentation(n, p1);
    CoequifierResult c2 = build_CWR_presentation(n, p2);
    return refinement_composition_agrees(c0, p0, c1, p1, c2, p2);
}

bool refinement_composition_agrees(const CoequifierResult& c0, const SetPartition& p0,
                                   const CoequifierResult& c1, const SetPartition& p1,
                                   const CoequifierResult& c2, const SetPartition& p2) {
    PFunctor f01 = refinement_transformation(c0, p0, c1, p1);
    PFunctor f12 = refinement_transformation(c1, p1, c2, p2);
    PFunctor f02 = refinement_transformation(c0, p0, c2, p2);
    if (!f01.well_defined() || !f12.well_defined() || !f02.well_defined()) return false;
    for (size_t g = 0; g < c0.cat.gens().size(); ++g) {
        PExpr via = f12.apply(f01.gen_map[g]);
        PExpr direct = c2.cat.normal_form(f02.gen_map[g]);
        if (via != direct) return false;
    }
    return true;
}

// ---- naturality counterexample --------------------------------------------------

namespace {

// the algebra automorphism induced by swapping leaves j and k (relabelling
// a_j <-> a_k, b_j <-> b_k in every basis path)
std::vector<QVec> swap_automorphism(const FiniteDimAlgebra& alg, int j, int k) {
    auto swap_label = [&](const std::string& l) {
        std::string jj = std::to_string(j), kk = std::to_string(k);
        if (l.substr(1) == jj) return l.substr(0, 1) + kk;
        if (l.substr(1) == kk) return l.substr(0, 1) + jj;
        return l;
    };
    std::vector<int> arrow_img(alg.quiver.arrows.size());
    for (size_t a = 0; a < alg.quiver.arrows.size(); ++a)
        arrow_img[a] = alg.quiver.arrow_by_label(swap_label(alg.quiver.arrows[a].label));
    auto swap_vertex = [&](int v) { return v == j ? k : (v == k ? j : v); };
    std::vector<QVec> img;
    for (int i = 0; i < alg.dim; ++i) {
        Path p = alg.basis[i].path;
        Path q;
        q.src = swap_vertex(p.src);
        q.tgt = swap_vertex(p.tgt);
        for (int a : p.word) q.word.push_back(arrow_img[a]);
        img.push_back(alg.reduce_path(q));
    }
    return img;
}

}  // namespace

NaturalityVerdict swap_naturality_check(const FiniteDimAlgebra& alg, int j, int k) {
    NaturalityVerdict out;
    std::vector<QVec> psi = swap_automorphism(alg, j, k);
    auto apply_psi = [&](const QVec& x) {
        QVec out2(alg.dim);
        for (int i = 0; i < alg.dim; ++i)
            if (!x[i].is_zero())
                for (int t = 0; t < alg.dim; ++t) out2[t] += x[i] * psi[i][t];
        return out2;
    };
    auto name_of = [&](const QVec& x) {
        std::string s;
        for (int i = 0; i < alg.dim; ++i) {
            if (x[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            if (!x[i].is_one()) s += x[i].str() + "*";
            s += alg.basis[i].name;
        }
        return s.empty() ? "0" : s;
    };
    // naturality of psi|_{e_0 R e_j}: for all z in e_0 R e_0 and x in e_0 R e_j:
    // psi(z x) = z psi(x)
    out.passes = true;
    for (int zb : alg.peirce(0, 0))
        for (int xb : alg.peirce(0, j)) {
            QVec zx = alg.mul_basis(zb, xb);
            QVec lhs = apply_psi(zx);
            QVec rhs = alg.mul(alg.coords_of_basis(zb), psi[xb]);
            if (lhs != rhs) {
                out.passes = false;
                out.witness_lhs = name_of(rhs);  // z . psi(x)
                out.witness_rhs = name_of(lhs);  // psi(z x)
                return out;
            }
        }
    return out;
}

}  // namespace starcat
