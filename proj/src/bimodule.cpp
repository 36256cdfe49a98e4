#include "starcat/bimodule.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcat {

namespace {

QMat path_action(const std::vector<QMat>& arrow_mats, const std::vector<int>& tags,
                 const Path& p, bool left_side, int dim) {
    if (p.word.empty()) {
        QMat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            if (tags[i] == p.src) m(i, i) = Rational::one();
        return m;
    }
    // left action of a path g_m ... g_1 (g_1 applied first): L(g_m)...L(g_1);
    // right action: coords(x * p) = R(g_1) ... R(g_m) coords(x).
    QMat acc;
    bool first = true;
    if (left_side) {
        for (int a : p.word) {
            acc = first ? arrow_mats[a] : arrow_mats[a] * acc;
            first = false;
        }
    } else {
        for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) {
            acc = first ? arrow_mats[*it] : arrow_mats[*it] * acc;
            first = false;
        }
    }
    return acc;
}

}  // namespace

QMat Bimodule::left_idempotent(int v) const {
    QMat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        if (lv[i] == v) m(i, i) = Rational::one();
    return m;
}

QMat Bimodule::right_idempotent(int v) const {
    QMat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        if (rv[i] == v) m(i, i) = Rational::one();
    return m;
}

QMat Bimodule::left_action_of_basis(int i) const {
    return path_action(left_arrow, lv, left->basis[i].path, true, dim);
}

QMat Bimodule::right_action_of_basis(int i) const {
    return path_action(right_arrow, rv, right->basis[i].path, false, dim);
}

QMat Bimodule::left_action(const QVec& x) const {
    QMat out(dim, dim);
    for (int i = 0; i < left->dim; ++i)
        if (!x[i].is_zero()) out = out + x[i] * left_action_of_basis(i);
    return out;
}

QMat Bimodule::right_action(const QVec& x) const {
    QMat out(dim, dim);
    for (int i = 0; i < right->dim; ++i)
        if (!x[i].is_zero()) out = out + x[i] * right_action_of_basis(i);
    return out;
}

bool Bimodule::check_representation() const {
    for (int i = 0; i < left->dim; ++i)
        for (int j = 0; j < left->dim; ++j) {
            QMat lhs = left_action_of_basis(i) * left_action_of_basis(j);
            QMat rhs = left_action(left->mul_basis(i, j));
            if (lhs != rhs) return false;
        }
    for (int i = 0; i < right->dim; ++i)
        for (int j = 0; j < right->dim; ++j) {
            // x * (b_i b_j) = (x * b_i) * b_j
            QMat lhs = right_action_of_basis(j) * right_action_of_basis(i);
            QMat rhs = right_action(right->mul_basis(i, j));
            if (lhs != rhs) return false;
        }
    for (size_t g = 0; g < left->quiver.arrows.size(); ++g)
        for (size_t h = 0; h < right->quiver.arrows.size(); ++h)
            if (left_arrow[g] * right_arrow[h] != right_arrow[h] * left_arrow[g]) return false;
    return true;
}

BimoduleMorphism identity_morphism(const Bimodule& m) {
    return {&m, &m, QMat::identity(m.dim)};
}

BimoduleMorphism compose(const BimoduleMorphism& g, const BimoduleMorphism& f) {
    if (g.src != f.tgt) throw std::invalid_argument("compose: middle object mismatch");
    return {f.src, g.tgt, g.m * f.m};
}

std::optional<BimoduleMorphism> invert(const BimoduleMorphism& f) {
    auto inv = inverse(f.m);
    if (!inv) return std::nullopt;
    return BimoduleMorphism{f.tgt, f.src, *inv};
}

bool BimoduleMorphism::is_intertwiner() const {
    const Bimodule &M = *src, &N = *tgt;
    if (M.left != N.left || M.right != N.right) return false;
    for (int v = 0; v < M.left->vertex_count(); ++v)
        if (m * M.left_idempotent(v) != N.left_idempotent(v) * m) return false;
    for (size_t g = 0; g < M.left->quiver.arrows.size(); ++g)
        if (m * M.left_arrow[g] != N.left_arrow[g] * m) return false;
    for (int v = 0; v < M.right->vertex_count(); ++v)
        if (m * M.right_idempotent(v) != N.right_idempotent(v) * m) return false;
    for (size_t g = 0; g < M.right->quiver.arrows.size(); ++g)
        if (m * M.right_arrow[g] != N.right_arrow[g] * m) return false;
    return true;
}

HomSpaceBasis hom_space(const Bimodule& m, const Bimodule& n) {
    if (m.left != n.left || m.right != n.right)
        throw std::invalid_argument("hom_space: algebra pair mismatch");
    // unknowns: entries X[i in n, j in m] with matching vertex tags; the
    // idempotent part of the intertwining system is solved structurally
    std::vector<std::pair<int, int>> unknowns;
    std::map<std::pair<int, int>, int> uid;
    for (int i = 0; i < n.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            if (n.lv[i] == m.lv[j] && n.rv[i] == m.rv[j]) {
                uid[{i, j}] = static_cast<int>(unknowns.size());
                unknowns.push_back({i, j});
            }
    const int nu = static_cast<int>(unknowns.size());
    std::vector<QVec> rows;
    auto add_equations = [&](const QMat& am, const QMat& an) {
        // X * am - an * X = 0
        for (int i = 0; i < n.dim; ++i)
            for (int j = 0; j < m.dim; ++j) {
                QVec row(nu);
                bool nz = false;
                for (int k = 0; k < m.dim; ++k) {
                    if (am(k, j).is_zero()) continue;
                    auto it = uid.find({i, k});
                    if (it == uid.end()) continue;
                    row[it->second] += am(k, j);
                    nz = true;
                }
                for (int l = 0; l < n.dim; ++l) {
                    if (an(i, l).is_zero()) continue;
                    auto it = uid.find({l, j});
                    if (it == uid.end()) continue;
                    row[it->second] -= an(i, l);
                    nz = true;
                }
                if (nz && !vec_is_zero(row)) rows.push_back(row);
            }
    };
    for (size_t g = 0; g < m.left->quiver.arrows.size(); ++g)
        add_equations(m.left_arrow[g], n.left_arrow[g]);
    for (size_t g = 0; g < m.right->quiver.arrows.size(); ++g)
        add_equations(m.right_arrow[g], n.right_arrow[g]);

    HomSpaceBasis out;
    out.src = &m;
    out.tgt = &n;
    Subspace ker(nu);
    if (rows.empty()) {
        ker = Subspace::full(nu);
    } else {
        QMat sys(static_cast<int>(rows.size()), nu);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) sys.set_row(r, rows[r]);
        ker = kernel(sys);
    }
    for (const auto& v : ker.basis()) {
        QMat x(n.dim, m.dim);
        for (int u = 0; u < nu; ++u)
            if (!v[u].is_zero()) x(unknowns[u].first, unknowns[u].second) = v[u];
        out.basis.push_back(x);
    }
    return out;
}

QVec HomSpaceBasis::coords(const QMat& f) const {
    const int nb = dim();
    std::vector<std::pair<int, int>> support;
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            bool used = !f(i, j).is_zero();
            for (int b = 0; b < nb && !used; ++b) used = !basis[b](i, j).is_zero();
            if (used) support.push_back({i, j});
        }
    QMat sys(static_cast<int>(support.size()), nb);
    QVec rhs(static_cast<int>(support.size()));
    for (int r = 0; r < static_cast<int>(support.size()); ++r) {
        for (int b = 0; b < nb; ++b) sys(r, b) = basis[b](support[r].first, support[r].second);
        rhs[r] = f(support[r].first, support[r].second);
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw std::runtime_error("HomSpaceBasis::coords: morphism outside the span");
    return *sol;
}

QMat HomSpaceBasis::from_coords(const QVec& c) const {
    QMat out(tgt->dim, src->dim);
    for (int b = 0; b < dim(); ++b)
        if (!c[b].is_zero()) out = out + c[b] * basis[b];
    return out;
}

StructAlgebra endomorphism_algebra(const Bimodule& m, const HomSpaceBasis& e) {
    const int n = e.dim();
    std::vector<std::vector<QVec>> table(n, std::vector<QVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[i][j] = e.coords(e.basis[i] * e.basis[j]);
    return struct_algebra_from_table(table, e.coords(QMat::identity(m.dim)));
}

Bimodule regular_bimodule(const FiniteDimAlgebra& a) {
    Bimodule b;
    b.left = &a;
    b.right = &a;
    b.dim = a.dim;
    b.label = "Reg";
    for (int i = 0; i < a.dim; ++i) {
        b.lv.push_back(a.basis[i].tgt);
        b.rv.push_back(a.basis[i].src);
        b.basis_names.push_back(a.basis[i].name);
    }
    for (size_t g = 0; g < a.quiver.arrows.size(); ++g) {
        QMat L(a.dim, a.dim), R(a.dim, a.dim);
        Path pg{{static_cast<int>(g)}, a.quiver.arrows[g].src, a.quiver.arrows[g].tgt};
        QVec gv = a.reduce_path(pg);
        for (int j = 0; j < a.dim; ++j) {
            QVec lx = a.mul(gv, a.coords_of_basis(j));
            QVec rx = a.mul(a.coords_of_basis(j), gv);
            for (int i = 0; i < a.dim; ++i) {
                L(i, j) = lx[i];
                R(i, j) = rx[i];
            }
        }
        b.left_arrow.push_back(L);
        b.right_arrow.push_back(R);
    }
    return b;
}

Bimodule projective_bimodule(const FiniteDimAlgebra& a, int vi, int vj) {
    // A e_vi (x)_k e_vj A
    std::vector<int> pbasis, qbasis;
    for (int i = 0; i < a.dim; ++i) {
        if (a.basis[i].src == vi) pbasis.push_back(i);
        if (a.basis[i].tgt == vj) qbasis.push_back(i);
    }
    Bimodule b;
    b.left = &a;
    b.right = &a;
    b.dim = static_cast<int>(pbasis.size() * qbasis.size());
    b.label = "F" + std::to_string(vi) + (vj == 0 ? "" : ("," + std::to_string(vj)));
    std::map<std::pair<int, int>, int> id;
    for (int p : pbasis)
        for (int q : qbasis) {
            id[{p, q}] = static_cast<int>(b.lv.size());
            b.lv.push_back(a.basis[p].tgt);
            b.rv.push_back(a.basis[q].src);
            b.basis_names.push_back(a.basis[p].name + "(x)" + a.basis[q].name);
            b.pair_basis.push_back({p, q});
        }
    for (size_t g = 0; g < a.quiver.arrows.size(); ++g) {
        QMat L(b.dim, b.dim), R(b.dim, b.dim);
        Path pg{{static_cast<int>(g)}, a.quiver.arrows[g].src, a.quiver.arrows[g].tgt};
        QVec gv = a.reduce_path(pg);
        for (int p : pbasis)
            for (int q : qbasis) {
                int col = id[{p, q}];
                QVec gp = a.mul(gv, a.coords_of_basis(p));
                for (int p2 : pbasis)
                    if (!gp[p2].is_zero()) L(id[{p2, q}], col) = gp[p2];
                QVec qg = a.mul(a.coords_of_basis(q), gv);
                for (int q2 : qbasis)
                    if (!qg[q2].is_zero()) R(id[{p, q2}], col) = qg[q2];
            }
        b.left_arrow.push_back(L);
        b.right_arrow.push_back(R);
    }
    return b;
}

const FiniteDimAlgebra& field_algebra() {
    static const FiniteDimAlgebra k = [] {
        AlgebraPresentation p;
        p.quiver.vertex_count = 1;
        p.arrow_ideal_nilpotency = 1;
        return algebra_from_presentation(p);
    }();
    return k;
}

Bimodule left_module(const FiniteDimAlgebra& a, int v) {
    std::vector<int> pbasis;
    for (int i = 0; i < a.dim; ++i)
        if (a.basis[i].src == v) pbasis.push_back(i);
    Bimodule b;
    b.left = &a;
    b.right = &field_algebra();
    b.dim = static_cast<int>(pbasis.size());
    b.label = "P" + std::to_string(v);
    for (int p : pbasis) {
        b.lv.push_back(a.basis[p].tgt);
        b.rv.push_back(0);
        b.basis_names.push_back(a.basis[p].name);
    }
    for (size_t g = 0; g < a.quiver.arrows.size(); ++g) {
        QMat L(b.dim, b.dim);
        Path pg{{static_cast<int>(g)}, a.quiver.arrows[g].src, a.quiver.arrows[g].tgt};
        QVec gv = a.reduce_path(pg);
        for (int c = 0; c < b.dim; ++c) {
            QVec gp = a.mul(gv, a.coords_of_basis(pbasis[c]));
            for (int r = 0; r < b.dim; ++r) L(r, c) = gp[pbasis[r]];
        }
        b.left_arrow.push_back(L);
    }
    return b;
}

DirectSum direct_sum(const std::vector<const Bimodule*>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("direct_sum: empty");
    DirectSum out;
    Bimodule& s = out.sum;
    s.left = blocks[0]->left;
    s.right = blocks[0]->right;
    s.label = "sum";
    int total = 0;
    for (const Bimodule* b : blocks) {
        if (b->left != s.left || b->right != s.right)
            throw std::invalid_argument("direct_sum: algebra mismatch");
        total += b->dim;
    }
    s.dim = total;
    const int nla = static_cast<int>(s.left->quiver.arrows.size());
    const int nra = static_cast<int>(s.right->quiver.arrows.size());
    s.left_arrow.assign(nla, QMat(total, total));
    s.right_arrow.assign(nra, QMat(total, total));
    int off = 0;
    for (const Bimodule* b : blocks) {
        for (int i = 0; i < b->dim; ++i) {
            s.lv.push_back(b->lv[i]);
            s.rv.push_back(b->rv[i]);
            s.basis_names.push_back(b->label + ":" + b->basis_names[i]);
        }
        for (int g = 0; g < nla; ++g)
            for (int i = 0; i < b->dim; ++i)
                for (int j = 0; j < b->dim; ++j)
                    if (!b->left_arrow[g](i, j).is_zero())
                        s.left_arrow[g](off + i, off + j) = b->left_arrow[g](i, j);
        for (int g = 0; g < nra; ++g)
            for (int i = 0; i < b->dim; ++i)
                for (int j = 0; j < b->dim; ++j)
                    if (!b->right_arrow[g](i, j).is_zero())
                        s.right_arrow[g](off + i, off + j) = b->right_arrow[g](i, j);
        off += b->dim;
    }
    off = 0;
    for (const Bimodule* b : blocks) {
        QMat in(total, b->dim), pr(b->dim, total);
        for (int i = 0; i < b->dim; ++i) {
            in(off + i, i) = Rational::one();
            pr(i, off + i) = Rational::one();
        }
        out.inject.push_back({b, &s, in});
        out.project.push_back({&s, b, pr});
        off += b->dim;
    }
    return out;
}

namespace {

// Incremental reducer for the sparse relation span of a tensor product.
struct SparseReducer {
    std::map<int, std::map<int, Rational>> rows;  // pivot -> rest of row (pivot coeff 1)

    void reduce(std::map<int, Rational>& v) const {
        bool changed = true;
        while (changed) {
            changed = false;
            auto it = v.begin();
            while (it != v.end()) {
                if (it->second.is_zero()) {
                    it = v.erase(it);
                    continue;
                }
                auto rit = rows.find(it->first);
                if (rit != rows.end()) {
                    const Rational f = it->second;
                    it = v.erase(it);
                    for (const auto& [c, rc] : rit->second) v[c] -= f * rc;
                    changed = true;
                    it = v.begin();
                    continue;
                }
                ++it;
            }
        }
        auto it = v.begin();
        while (it != v.end()) it = it->second.is_zero() ? v.erase(it) : std::next(it);
    }

    void insert(std::map<int, Rational> v) {
        reduce(v);
        if (v.empty()) return;
        const int piv = v.begin()->first;
        const Rational inv = v.begin()->second.inv();
        std::map<int, Rational> row;
        for (const auto& [c, x] : v)
            if (c != piv) {
                Rational y = x * inv;
                if (!y.is_zero()) row[c] = y;
            }
        rows[piv] = row;
        // substitute e_piv = -sum(row) into rows that mention piv
        for (auto& [p, r] : rows) {
            if (p == piv) continue;
            auto it = r.find(piv);
            if (it == r.end()) continue;
            const Rational f = it->second;
            r.erase(it);
            for (const auto& [c, x] : row) {
                auto rit = r.find(c);
                if (rit == r.end()) {
                    r[c] = -(f * x);
                } else {
                    rit->second -= f * x;
                    if (rit->second.is_zero()) r.erase(rit);
                }
            }
        }
    }
};

}  // namespace

QVec TensorResult::project(const std::map<int, Rational>& matched_vec) const {
    std::map<int, Rational> v = matched_vec;
    bool changed = true;
    while (changed) {
        changed = false;
        auto it = v.begin();
        while (it != v.end()) {
            if (it->second.is_zero()) {
                it = v.erase(it);
                continue;
            }
            auto rit = relation_rows.find(it->first);
            if (rit != relation_rows.end()) {
                const Rational f = it->second;
                it = v.erase(it);
                for (const auto& [c, rc] : rit->second) v[c] -= f * rc;
                changed = true;
                it = v.begin();
                continue;
            }
            ++it;
        }
    }
    QVec out(bim.dim);
    for (const auto& [c, x] : v) {
        if (x.is_zero()) continue;
        int q = rep_of_col[c];
        if (q < 0) throw std::logic_error("tensor projection: residual on pivot column");
        out[q] += x;
    }
    return out;
}

QVec TensorResult::project_pure(int mi, int ni) const {
    auto it = matched_id.find({mi, ni});
    if (it == matched_id.end()) return QVec(bim.dim);
    return project({{it->second, Rational::one()}});
}

TensorResult tensor_over(const Bimodule& m, const Bimodule& n) {
    if (m.right != n.left) throw std::invalid_argument("tensor_over: middle algebra mismatch");
    const FiniteDimAlgebra& mid = *m.right;
    TensorResult t;
    t.m = &m;
    t.n = &n;
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < n.dim; ++j)
            if (m.rv[i] == n.lv[j]) {
                t.matched_id[{i, j}] = static_cast<int>(t.matched.size());
                t.matched.push_back({i, j});
            }

    SparseReducer red;
    for (size_t g = 0; g < mid.quiver.arrows.size(); ++g) {
        const int gs = mid.quiver.arrows[g].src, gt = mid.quiver.arrows[g].tgt;
        const QMat& Rg = m.right_arrow[g];
        const QMat& Lg = n.left_arrow[g];
        for (int i = 0; i < m.dim; ++i) {
            if (m.rv[i] != gt) continue;
            for (int j = 0; j < n.dim; ++j) {
                if (n.lv[j] != gs) continue;
                std::map<int, Rational> row;
                for (int k = 0; k < m.dim; ++k)
                    if (!Rg(k, i).is_zero()) row[t.matched_id.at({k, j})] += Rg(k, i);
                for (int l = 0; l < n.dim; ++l)
                    if (!Lg(l, j).is_zero()) row[t.matched_id.at({i, l})] -= Lg(l, j);
                red.insert(std::move(row));
            }
        }
    }
    t.relation_rows = red.rows;

    t.rep_of_col.assign(t.matched.size(), -1);
    for (size_t c = 0; c < t.matched.size(); ++c) {
        if (t.relation_rows.count(static_cast<int>(c))) continue;
        t.rep_of_col[c] = static_cast<int>(t.rep_matched.size());
        t.rep_matched.push_back(static_cast<int>(c));
    }

    Bimodule& b = t.bim;
    b.left = m.left;
    b.right = n.right;
    b.dim = static_cast<int>(t.rep_matched.size());
    b.label = m.label + "*" + n.label;
    for (int c : t.rep_matched) {
        auto [i, j] = t.matched[c];
        b.lv.push_back(m.lv[i]);
        b.rv.push_back(n.rv[j]);
        b.basis_names.push_back(m.basis_names[i] + "|" + n.basis_names[j]);
    }
    for (size_t g = 0; g < b.left->quiver.arrows.size(); ++g) {
        QMat L(b.dim, b.dim);
        const QMat& Lg = m.left_arrow[g];
        for (int col = 0; col < b.dim; ++col) {
            auto [i, j] = t.matched[t.rep_matched[col]];
            std::map<int, Rational> vec;
            for (int k = 0; k < m.dim; ++k)
                if (!Lg(k, i).is_zero()) {
                    auto it = t.matched_id.find({k, j});
                    if (it != t.matched_id.end()) vec[it->second] += Lg(k, i);
                }
            QVec q = t.project(vec);
            for (int r = 0; r < b.dim; ++r) L(r, col) = q[r];
        }
        b.left_arrow.push_back(L);
    }
    for (size_t g = 0; g < b.right->quiver.arrows.size(); ++g) {
        QMat R(b.dim, b.dim);
        const QMat& Rg = n.right_arrow[g];
        for (int col = 0; col < b.dim; ++col) {
            auto [i, j] = t.matched[t.rep_matched[col]];
            std::map<int, Rational> vec;
            for (int l = 0; l < n.dim; ++l)
                if (!Rg(l, j).is_zero()) {
                    auto it = t.matched_id.find({i, l});
                    if (it != t.matched_id.end()) vec[it->second] += Rg(l, j);
                }
            QVec q = t.project(vec);
            for (int r = 0; r < b.dim; ++r) R(r, col) = q[r];
        }
        b.right_arrow.push_back(R);
    }
    return t;
}

BimoduleMorphism whisker_left(const TensorResult& src, const TensorResult& tgt,
                              const BimoduleMorphism& f) {
    if (src.m != tgt.m) throw std::invalid_argument("whisker_left: left factor mismatch");
    if (f.src != src.n || f.tgt != tgt.n) throw std::invalid_argument("whisker_left: shape");
    QMat out(tgt.bim.dim, src.bim.dim);
    for (int col = 0; col < src.bim.dim; ++col) {
        auto [i, j] = src.matched[src.rep_matched[col]];
        std::map<int, Rational> vec;
        for (int l = 0; l < f.tgt->dim; ++l)
            if (!f.m(l, j).is_zero()) {
                auto it = tgt.matched_id.find({i, l});
                if (it != tgt.matched_id.end()) vec[it->second] += f.m(l, j);
            }
        QVec q = tgt.project(vec);
        for (int r = 0; r < tgt.bim.dim; ++r) out(r, col) = q[r];
    }
    return {&src.bim, &tgt.bim, out};
}

BimoduleMorphism whisker_right(const TensorResult& src, const TensorResult& tgt,
                               const BimoduleMorphism& f) {
    if (src.n != tgt.n) throw std::invalid_argument("whisker_right: right factor mismatch");
    if (f.src != src.m || f.tgt != tgt.m) throw std::invalid_argument("whisker_right: shape");
    QMat out(tgt.bim.dim, src.bim.dim);
    for (int col = 0; col < src.bim.dim; ++col) {
        auto [i, j] = src.matched[src.rep_matched[col]];
        std::map<int, Rational> vec;
        for (int k = 0; k < f.tgt->dim; ++k)
            if (!f.m(k, i).is_zero()) {
                auto it = tgt.matched_id.find({k, j});
                if (it != tgt.matched_id.end()) vec[it->second] += f.m(k, i);
            }
        QVec q = tgt.project(vec);
        for (int r = 0; r < tgt.bim.dim; ++r) out(r, col) = q[r];
    }
    return {&src.bim, &tgt.bim, out};
}

BimoduleMorphism associator(const TensorResult& mn, const TensorResult& mn_p,
                            const TensorResult& np, const TensorResult& m_np) {
    if (mn_p.m != &mn.bim || m_np.n != &np.bim)
        throw std::invalid_argument("associator: structure mismatch");
    QMat out(m_np.bim.dim, mn_p.bim.dim);
    for (int col = 0; col < mn_p.bim.dim; ++col) {
        auto [tcol, pk] = mn_p.matched[mn_p.rep_matched[col]];
        auto [mi, nj] = mn.matched[mn.rep_matched[tcol]];
        QVec njpk = np.project_pure(nj, pk);
        std::map<int, Rational> vec;
        for (int q = 0; q < np.bim.dim; ++q)
            if (!njpk[q].is_zero()) {
                auto it = m_np.matched_id.find({mi, q});
                if (it != m_np.matched_id.end()) vec[it->second] += njpk[q];
            }
        QVec img = m_np.project(vec);
        for (int r = 0; r < m_np.bim.dim; ++r) out(r, col) = img[r];
    }
    return {&mn_p.bim, &m_np.bim, out};
}

BimoduleMorphism unit_collapse_left(const TensorResult& reg_m) {
    const Bimodule& M = *reg_m.n;
    QMat out(M.dim, reg_m.bim.dim);
    for (int col = 0; col < reg_m.bim.dim; ++col) {
        auto [ai, xj] = reg_m.matched[reg_m.rep_matched[col]];
        QMat act = M.left_action_of_basis(ai);
        for (int r = 0; r < M.dim; ++r) out(r, col) = act(r, xj);
    }
    return {&reg_m.bim, &M, out};
}

BimoduleMorphism unit_collapse_right(const TensorResult& m_reg) {
    const Bimodule& M = *m_reg.m;
    QMat out(M.dim, m_reg.bim.dim);
    for (int col = 0; col < m_reg.bim.dim; ++col) {
        auto [xi, aj] = m_reg.matched[m_reg.rep_matched[col]];
        QMat act = M.right_action_of_basis(aj);
        for (int r = 0; r < M.dim; ++r) out(r, col) = act(r, xi);
    }
    return {&m_reg.bim, &M, out};
}

namespace {

struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    int next(int lo, int hi) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return lo + static_cast<int>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace

std::optional<BimoduleMorphism> iso_search(const Bimodule& m, const Bimodule& n) {
    if (m.dim != n.dim) return std::nullopt;
    HomSpaceBasis h = hom_space(m, n);
    if (h.dim() == 0) return std::nullopt;
    for (int b = 0; b < h.dim(); ++b)
        if (is_invertible(h.basis[b])) return BimoduleMorphism{&m, &n, h.basis[b]};
    Lcg lcg(20240517);
    for (int attempt = 0; attempt < 64; ++attempt) {
        QMat x(n.dim, m.dim);
        for (int b = 0; b < h.dim(); ++b) x = x + Rational(lcg.next(-3, 3)) * h.basis[b];
        if (is_invertible(x)) return BimoduleMorphism{&m, &n, x};
    }
    return std::nullopt;
}

bool is_indecomposable(const Bimodule& m) {
    HomSpaceBasis e = hom_space(m, m);
    return is_local(endomorphism_algebra(m, e));
}

Summand summand_of_idempotent(const Bimodule& m, const QMat& e) {
    // split the image of e into vertex-tag blocks so the summand basis stays
    // tag-homogeneous
    std::map<std::pair<int, int>, std::vector<QVec>> block_gens;
    for (int c = 0; c < m.dim; ++c) {
        QVec col = e.col(c);
        if (vec_is_zero(col)) continue;
        block_gens[{m.lv[c], m.rv[c]}].push_back(col);
    }
    std::vector<QVec> basis;
    std::vector<std::pair<int, int>> tags;
    for (auto& [tag, gens] : block_gens) {
        Subspace s = Subspace::span(m.dim, gens);
        for (const auto& b : s.basis()) {
            basis.push_back(b);
            tags.push_back(tag);
        }
    }
    const int sd = static_cast<int>(basis.size());
    auto sub = std::make_shared<Bimodule>();
    sub->left = m.left;
    sub->right = m.right;
    sub->dim = sd;
    sub->label = m.label + "[e]";
    for (int i = 0; i < sd; ++i) {
        sub->lv.push_back(tags[i].first);
        sub->rv.push_back(tags[i].second);
        sub->basis_names.push_back("s" + std::to_string(i));
    }
    QMat inj(m.dim, sd);
    for (int c = 0; c < sd; ++c)
        for (int r = 0; r < m.dim; ++r) inj(r, c) = basis[c][r];
    // projection: x -> coordinates of e*x in the image basis
    QMat basis_mat(sd, m.dim);
    for (int r = 0; r < sd; ++r) basis_mat.set_row(r, basis[r]);
    QMat proj(sd, m.dim);
    for (int c = 0; c < m.dim; ++c) {
        QVec ex = e.col(c);
        // solve basis_mat^T y = ex
        QMat sys(m.dim, sd);
        for (int r = 0; r < m.dim; ++r)
            for (int k = 0; k < sd; ++k) sys(r, k) = basis[k][r];
        auto sol = solve(sys, ex);
        if (!sol) throw std::logic_error("summand projection failed");
        for (int r = 0; r < sd; ++r) proj(r, c) = (*sol)[r];
    }
    for (size_t g = 0; g < m.left->quiver.arrows.size(); ++g)
        sub->left_arrow.push_back(proj * m.left_arrow[g] * inj);
    for (size_t g = 0; g < m.right->quiver.arrows.size(); ++g)
        sub->right_arrow.push_back(proj * m.right_arrow[g] * inj);
    Summand out;
    out.sub = sub;
    out.inject = {sub.get(), &m, inj};
    out.project = {&m, sub.get(), proj};
    return out;
}

std::vector<Summand> split_indecomposables(const Bimodule& m) {
    HomSpaceBasis e = hom_space(m, m);
    StructAlgebra end = endomorphism_algebra(m, e);
    std::vector<Summand> out;
    for (const auto& idem : primitive_idempotent_decomposition(end))
        out.push_back(summand_of_idempotent(m, e.from_coords(idem)));
    return out;
}

Decomposition decompose(const Bimodule& m, const std::vector<const Bimodule*>& catalog) {
    const int nc = static_cast<int>(catalog.size());
    std::vector<Summand> parts = split_indecomposables(m);

    // identify each indecomposable summand against the catalog
    std::vector<int> which(parts.size(), -1);
    std::vector<std::optional<BimoduleMorphism>> ident(parts.size());  // catalog -> summand
    std::vector<int> unmatched;
    for (size_t t = 0; t < parts.size(); ++t) {
        for (int c = 0; c < nc; ++c) {
            if (catalog[c]->dim != parts[t].sub->dim) continue;
            auto iso = iso_search(*catalog[c], *parts[t].sub);
            if (iso) {
                which[t] = c;
                ident[t] = *iso;
                break;
            }
        }
        if (which[t] < 0) unmatched.push_back(parts[t].sub->dim);
    }
    if (!unmatched.empty())
        throw DecomposeError("decompose: summand matches nothing in the catalog", unmatched);

    Decomposition out;
    out.multiplicity.assign(nc, 0);
    for (int c : which) ++out.multiplicity[c];

    // assemble the sum in catalog-grouped order and the witness pair
    std::vector<size_t> order;  // summand indices grouped by catalog entry
    for (int c = 0; c < nc; ++c)
        for (size_t t = 0; t < parts.size(); ++t)
            if (which[t] == c) order.push_back(t);
    std::vector<const Bimodule*> blocks;
    for (size_t t : order) blocks.push_back(catalog[which[t]]);
    if (blocks.empty()) throw DecomposeError("decompose: zero summands", {});
    DirectSum ds = direct_sum(blocks);
    out.sum = std::make_shared<Bimodule>(std::move(ds.sum));

    QMat phi(m.dim, out.sum->dim);
    int off = 0;
    for (size_t k = 0; k < order.size(); ++k) {
        size_t t = order[k];
        // inject_t o iso_t : catalog block -> m
        QMat piece = parts[t].inject.m * ident[t]->m;
        for (int r = 0; r < m.dim; ++r)
            for (int c = 0; c < piece.cols(); ++c) phi(r, off + c) = piece(r, c);
        off += piece.cols();
    }
    if (!is_invertible(phi))
        throw std::logic_error("decompose: assembled witness is singular");
    out.from_sum = {out.sum.get(), &m, phi};
    out.to_sum = *invert(out.from_sum);
    return out;
}

}  // namespace starcat
