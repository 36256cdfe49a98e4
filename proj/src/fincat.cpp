#include "starcat/fincat.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcat {

bool StableIdeal::is_zero() const {
    for (const auto& row : comp)
        for (const auto& s : row)
            if (s.dim() > 0) return false;
    return true;
}

bool StableIdeal::is_full(const std::vector<std::vector<int>>& hom_dims) const {
    for (size_t i = 0; i < comp.size(); ++i)
        for (size_t j = 0; j < comp[i].size(); ++j)
            if (comp[i][j].dim() != hom_dims[i][j]) return false;
    return true;
}

int StableIdeal::total_dim() const {
    int d = 0;
    for (const auto& row : comp)
        for (const auto& s : row) d += s.dim();
    return d;
}

RepAnalysis::RepAnalysis(const Birepresentation& rep) : rep_(&rep) {
    const int n = nobj();
    homs_.resize(n);
    for (int i = 0; i < n; ++i) {
        homs_[i].reserve(n);
        for (int j = 0; j < n; ++j) homs_[i].push_back(hom_space(*rep.objects[i], *rep.objects[j]));
    }
    auto catalog = rep_->object_catalog();
    act_.resize(ngen());
    for (int g = 0; g < ngen(); ++g) {
        act_[g].resize(n);
        for (int i = 0; i < n; ++i) {
            act_[g][i] = std::make_unique<GenObjAction>();
            GenObjAction& ga = *act_[g][i];
            ga.tensor = tensor_over(*rep.gen_images[g], *rep.objects[i]);
            ga.dec = decompose(ga.tensor.bim, catalog);
            int off = 0;
            for (int c = 0; c < static_cast<int>(catalog.size()); ++c)
                for (int t = 0; t < ga.dec.multiplicity[c]; ++t) {
                    ga.pieces.push_back(c);
                    ga.offsets.push_back(off);
                    off += catalog[c]->dim;
                }
        }
    }
}

std::vector<std::vector<int>> RepAnalysis::hom_dims() const {
    std::vector<std::vector<int>> d(nobj(), std::vector<int>(nobj()));
    for (int i = 0; i < nobj(); ++i)
        for (int j = 0; j < nobj(); ++j) d[i][j] = homs_[i][j].dim();
    return d;
}

Mat<Rational> RepAnalysis::action_matrix(int g) const {
    QMat m(nobj(), nobj());
    for (int i = 0; i < nobj(); ++i)
        for (int a = 0; a < nobj(); ++a)
            m(a, i) = Rational(act_[g][i]->dec.multiplicity[a]);
    return m;
}

std::vector<RepAnalysis::Transported> RepAnalysis::transport(int g, int i, int j,
                                                             const QMat& f) const {
    const GenObjAction &gi = *act_[g][i], &gj = *act_[g][j];
    BimoduleMorphism fm{rep_->objects[i].get(), rep_->objects[j].get(), f};
    BimoduleMorphism w = whisker_left(gi.tensor, gj.tensor, fm);
    QMat b = gj.dec.to_sum.m * w.m * gi.dec.from_sum.m;
    std::vector<Transported> out;
    auto cat = rep_->object_catalog();
    for (size_t s = 0; s < gi.pieces.size(); ++s)
        for (size_t t = 0; t < gj.pieces.size(); ++t) {
            const int so = gi.offsets[s], to = gj.offsets[t];
            const int sd = cat[gi.pieces[s]]->dim, td = cat[gj.pieces[t]]->dim;
            QMat block(td, sd);
            bool nz = false;
            for (int r = 0; r < td; ++r)
                for (int c = 0; c < sd; ++c) {
                    block(r, c) = b(to + r, so + c);
                    if (!block(r, c).is_zero()) nz = true;
                }
            if (nz) out.push_back({gi.pieces[s], gj.pieces[t], block});
        }
    return out;
}

std::vector<RepAnalysis::Transported> RepAnalysis::evaluate_2morphism(int gen_a, int gen_b,
                                                                      const QMat& alpha,
                                                                      int obj_i) const {
    const GenObjAction &ta = *act_[gen_a][obj_i], &tb = *act_[gen_b][obj_i];
    BimoduleMorphism am{rep_->gen_images[gen_a].get(), rep_->gen_images[gen_b].get(), alpha};
    BimoduleMorphism w = whisker_right(ta.tensor, tb.tensor, am);
    QMat b = tb.dec.to_sum.m * w.m * ta.dec.from_sum.m;
    std::vector<Transported> out;
    auto cat = rep_->object_catalog();
    for (size_t s = 0; s < ta.pieces.size(); ++s)
        for (size_t t = 0; t < tb.pieces.size(); ++t) {
            const int so = ta.offsets[s], to = tb.offsets[t];
            const int sd = cat[ta.pieces[s]]->dim, td = cat[tb.pieces[t]]->dim;
            QMat block(td, sd);
            bool nz = false;
            for (int r = 0; r < td; ++r)
                for (int c = 0; c < sd; ++c) {
                    block(r, c) = b(to + r, so + c);
                    if (!block(r, c).is_zero()) nz = true;
                }
            if (nz) out.push_back({ta.pieces[s], tb.pieces[t], block});
        }
    return out;
}

StableIdeal RepAnalysis::zero_ideal() const {
    StableIdeal z;
    z.comp.resize(nobj());
    for (int i = 0; i < nobj(); ++i)
        for (int j = 0; j < nobj(); ++j) z.comp[i].push_back(Subspace(homs_[i][j].dim()));
    return z;
}

StableIdeal RepAnalysis::closure(const std::vector<Seed>& seeds) const {
    StableIdeal I = zero_ideal();
    std::vector<std::vector<std::vector<QVec>>> pending(nobj());
    for (int i = 0; i < nobj(); ++i) pending[i].resize(nobj());
    for (const auto& s : seeds) pending[s.i][s.j].push_back(homs_[s.i][s.j].coords(s.m));

    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < nobj(); ++i)
            for (int j = 0; j < nobj(); ++j) {
                if (pending[i][j].empty()) continue;
                std::vector<QVec> gens = I.comp[i][j].basis();
                for (auto& v : pending[i][j]) gens.push_back(std::move(v));
                pending[i][j].clear();
                Subspace next = Subspace::span(homs_[i][j].dim(), gens);
                if (next.dim() == I.comp[i][j].dim()) continue;
                I.comp[i][j] = next;
                changed = true;
                for (const auto& coords : I.comp[i][j].basis()) {
                    QMat f = homs_[i][j].from_coords(coords);
                    for (int k = 0; k < nobj(); ++k) {
                        for (const auto& g : homs_[j][k].basis)
                            pending[i][k].push_back(homs_[i][k].coords(g * f));
                        for (const auto& g : homs_[k][i].basis)
                            pending[k][j].push_back(homs_[k][j].coords(f * g));
                    }
                    for (int g = 0; g < ngen(); ++g)
                        for (const auto& tr : transport(g, i, j, f))
                            pending[tr.src_obj][tr.tgt_obj].push_back(
                                homs_[tr.src_obj][tr.tgt_obj].coords(tr.m));
                }
            }
    }
    return I;
}

bool RepAnalysis::ideal_is_stable(const StableIdeal& I) const {
    std::vector<Seed> seeds;
    for (int i = 0; i < nobj(); ++i)
        for (int j = 0; j < nobj(); ++j)
            for (const auto& v : I.comp[i][j].basis())
                seeds.push_back({i, j, homs_[i][j].from_coords(v)});
    return closure(seeds) == I;
}

std::vector<RepAnalysis::Seed> RepAnalysis::radical_seeds() const {
    std::vector<Seed> seeds;
    for (int i = 0; i < nobj(); ++i) {
        StructAlgebra end = endomorphism_algebra(*rep_->objects[i], homs_[i][i]);
        Subspace rad = radical_subspace(end);
        for (const auto& r : rad.basis())
            seeds.push_back({i, i, homs_[i][i].from_coords(r)});
        for (int j = 0; j < nobj(); ++j) {
            if (j == i) continue;
            for (const auto& b : homs_[i][j].basis) seeds.push_back({i, j, b});
        }
    }
    return seeds;
}

bool RepAnalysis::is_transitive() const {
    const int n = nobj();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int g = 0; g < ngen(); ++g)
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a)
                if (act_[g][i]->dec.multiplicity[a] > 0) reach[i][a] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

RepAnalysis::SimpleTransitiveReport RepAnalysis::simple_transitive_check() const {
    SimpleTransitiveReport out;
    out.transitive = is_transitive();
    auto dims = hom_dims();
    std::vector<StableIdeal> proper;
    auto consider = [&](const StableIdeal& I) {
        if (I.is_zero() || I.is_full(dims)) return;
        for (const auto& p : proper)
            if (p == I) return;
        proper.push_back(I);
    };
    auto seeds = radical_seeds();
    std::vector<StableIdeal> singles;
    for (const auto& s : seeds) {
        StableIdeal I = closure({s});
        consider(I);
        singles.push_back(I);
    }
    for (size_t a = 0; a < singles.size(); ++a)
        for (size_t b = a + 1; b < singles.size(); ++b) {
            std::vector<Seed> both;
            for (int i = 0; i < nobj(); ++i)
                for (int j = 0; j < nobj(); ++j) {
                    for (const auto& v : singles[a].comp[i][j].basis())
                        both.push_back({i, j, homs_[i][j].from_coords(v)});
                    for (const auto& v : singles[b].comp[i][j].basis())
                        both.push_back({i, j, homs_[i][j].from_coords(v)});
                }
            consider(closure(both));
        }
    out.proper_nonzero = proper;
    out.simple = proper.empty();
    return out;
}

}  // namespace starcat
