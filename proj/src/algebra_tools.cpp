#include "starcat/algebra_tools.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcat {

QVec StructAlgebra::mul(const QVec& x, const QVec& y) const {
    QVec out(dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i].is_zero()) continue;
        QVec li = left_mult[i].apply(y);
        for (int k = 0; k < dim; ++k)
            if (!li[k].is_zero()) out[k] += x[i] * li[k];
    }
    return out;
}

QMat StructAlgebra::left_mult_of(const QVec& x) const {
    QMat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i].is_zero()) continue;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (!left_mult[i](r, c).is_zero()) m(r, c) += x[i] * left_mult[i](r, c);
    }
    return m;
}

QMat StructAlgebra::right_mult_of(const QVec& x) const {
    QMat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i].is_zero()) continue;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (!right_mult[i](r, c).is_zero()) m(r, c) += x[i] * right_mult[i](r, c);
    }
    return m;
}

bool StructAlgebra::is_associative() const {
    for (int i = 0; i < dim; ++i) {
        QVec bi(dim); bi[i] = Rational::one();
        for (int j = 0; j < dim; ++j) {
            QVec bj(dim); bj[j] = Rational::one();
            QVec ij = mul(bi, bj);
            for (int k = 0; k < dim; ++k) {
                QVec bk(dim); bk[k] = Rational::one();
                QVec l = mul(ij, bk);
                QVec r = mul(bi, mul(bj, bk));
                if (l != r) return false;
            }
        }
    }
    return true;
}

StructAlgebra struct_algebra_from_table(const std::vector<std::vector<QVec>>& table,
                                        const QVec& unit) {
    StructAlgebra a;
    a.dim = static_cast<int>(table.size());
    a.unit = unit;
    a.left_mult.assign(a.dim, QMat(a.dim, a.dim));
    a.right_mult.assign(a.dim, QMat(a.dim, a.dim));
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            const QVec& p = table[i][j];  // b_i * b_j
            for (int k = 0; k < a.dim; ++k) {
                if (p[k].is_zero()) continue;
                a.left_mult[i](k, j) += p[k];
                a.right_mult[j](k, i) += p[k];
            }
        }
    return a;
}

Subspace radical_subspace(const StructAlgebra& a) {
    // Dickson, char 0: Rad = { x : tr(L_x L_y) = 0 for all y }.
    const int n = a.dim;
    QMat gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational t;
            const QMat prod = a.left_mult[i] * a.left_mult[j];
            for (int k = 0; k < n; ++k) t += prod(k, k);
            gram(i, j) = t;
        }
    return kernel(gram);
}

int radical_nilpotency(const StructAlgebra& a) {
    Subspace cur = radical_subspace(a);
    int deg = 1;
    while (cur.dim() > 0) {
        std::vector<QVec> gens;
        const Subspace rad = radical_subspace(a);
        for (const auto& x : cur.basis())
            for (const auto& y : rad.basis()) gens.push_back(a.mul(x, y));
        Subspace next = Subspace::span(a.dim, gens);
        ++deg;
        if (next.dim() == cur.dim() && next == cur)
            throw std::runtime_error("radical_nilpotency: radical is not nilpotent");
        cur = next;
    }
    return deg;
}

bool is_local(const StructAlgebra& a) { return radical_subspace(a).dim() == a.dim - 1; }

namespace {

// Coordinates w.r.t. a complement of Rad: quotient algebra structure.
struct Quotient {
    StructAlgebra s;           // semisimple quotient
    std::vector<QVec> lift;    // basis of the complement, as elements of a
    QMat proj;                 // a -> quotient coordinates
};

Quotient semisimple_quotient(const StructAlgebra& a) {
    const Subspace rad = radical_subspace(a);
    const int n = a.dim;
    // complement: coordinate vectors on non-pivot columns of rad's basis
    std::vector<bool> is_piv(n, false);
    for (int c : rad.pivots()) is_piv[c] = true;
    std::vector<int> comp;
    for (int c = 0; c < n; ++c)
        if (!is_piv[c]) comp.push_back(c);
    const int m = static_cast<int>(comp.size());

    // projection: reduce modulo rad basis, then read complement coordinates
    Quotient q;
    q.proj = QMat(m, n);
    for (int c = 0; c < n; ++c) {
        QVec e(n); e[c] = Rational::one();
        QVec r = rad.reduce(e);
        for (int i = 0; i < m; ++i) q.proj(i, c) = r[comp[i]];
    }
    for (int i = 0; i < m; ++i) {
        QVec v(n); v[comp[i]] = Rational::one();
        q.lift.push_back(v);
    }
    std::vector<std::vector<QVec>> table(m, std::vector<QVec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) table[i][j] = q.proj.apply(a.mul(q.lift[i], q.lift[j]));
    q.s = struct_algebra_from_table(table, q.proj.apply(a.unit));
    return q;
}

// Minimal polynomial roots of L_x that are rational, used to split along
// spectral idempotents. Returns candidate scalars lambda with x - lambda*1
// singular.
std::vector<Rational> rational_singular_shifts(const StructAlgebra& a, const QVec& x) {
    const QMat lx = a.left_mult_of(x);
    std::vector<Rational> out;
    // char poly roots via rational root candidates is overkill here; at these
    // dimensions we can simply test the eigenvalue equation for a fixed
    // candidate list plus all diagonal entries.
    std::vector<Rational> cand = {Rational(0), Rational(1), Rational(-1), Rational(2),
                                  Rational(-2), Rational(1, 2), Rational(-1, 2), Rational(3)};
    for (int i = 0; i < a.dim; ++i) cand.push_back(lx(i, i));
    for (const auto& lam : cand) {
        bool seen = false;
        for (const auto& s : out)
            if (s == lam) { seen = true; break; }
        if (seen) continue;
        QVec y = x;
        for (int j = 0; j < a.dim; ++j) y[j] -= lam * a.unit[j];
        if (rank(a.left_mult_of(y)) < a.dim) out.push_back(lam);
    }
    return out;
}

// In a semisimple algebra: from a singular nonzero element s, produce a
// nontrivial idempotent generating the left ideal S*s.
std::optional<QVec> idempotent_from_singular(const StructAlgebra& s_alg, const QVec& s) {
    const int n = s_alg.dim;
    const QMat rs = s_alg.right_mult_of(s);  // x -> x*s, columns span S*s
    std::vector<QVec> cols;
    for (int j = 0; j < n; ++j) cols.push_back(rs.col(j));
    Subspace ideal = Subspace::span(n, cols);
    if (ideal.dim() == 0 || ideal.dim() == n) return std::nullopt;
    // find e in ideal with x*e = x for all basis x of the ideal
    const int d = ideal.dim();
    QMat sys(n * d, d);
    QVec rhs(n * d);
    for (int bi = 0; bi < d; ++bi) {
        const QVec& x = ideal.basis()[bi];
        const QMat lx = s_alg.left_mult_of(x);  // e -> x*e
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < d; ++c) {
                Rational v;
                for (int k = 0; k < n; ++k)
                    if (!lx(r, k).is_zero() && !ideal.basis()[c][k].is_zero())
                        v += lx(r, k) * ideal.basis()[c][k];
                sys(bi * n + r, c) = v;
            }
            rhs[bi * n + r] = x[r];
        }
    }
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    QVec e(n);
    for (int c = 0; c < d; ++c)
        for (int k = 0; k < n; ++k) e[k] += (*sol)[c] * ideal.basis()[c][k];
    // sanity
    if (s_alg.mul(e, e) != e) return std::nullopt;
    QVec zero(n);
    if (e == zero || e == s_alg.unit) return std::nullopt;
    return e;
}

// Nontrivial idempotent of a semisimple algebra, or nullopt if it is (as far
// as our candidates can tell) a division algebra. Complete for split
// semisimple algebras at these dimensions.
std::optional<QVec> find_nontrivial_idempotent(const StructAlgebra& s) {
    const int n = s.dim;
    std::vector<QVec> candidates;
    for (int i = 0; i < n; ++i) {
        QVec e(n); e[i] = Rational::one();
        candidates.push_back(e);
    }
    // deterministic small combinations and products
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            QVec v(n);
            v[i] = Rational::one(); v[j] = Rational::one();
            candidates.push_back(v);
            v[j] = Rational(-1);
            candidates.push_back(v);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QVec bi(n), bj(n);
            bi[i] = Rational::one();
            bj[j] = Rational::one();
            candidates.push_back(s.mul(bi, bj));
        }
    for (const auto& cand : candidates) {
        bool zero = true;
        for (const auto& c : cand)
            if (!c.is_zero()) { zero = false; break; }
        if (zero) continue;
        for (const auto& lam : rational_singular_shifts(s, cand)) {
            QVec y = cand;
            for (int j = 0; j < n; ++j) y[j] -= lam * s.unit[j];
            bool y_zero = true;
            for (const auto& c : y)
                if (!c.is_zero()) { y_zero = false; break; }
            if (y_zero) continue;
            if (auto e = idempotent_from_singular(s, y)) return e;
        }
    }
    return std::nullopt;
}

// Newton lift: x0 idempotent mod Rad -> exact idempotent.
QVec newton_lift(const StructAlgebra& a, QVec x) {
    for (int iter = 0; iter < 16; ++iter) {
        QVec x2 = a.mul(x, x);
        if (x2 == x) return x;
        QVec x3 = a.mul(x2, x);
        QVec next(a.dim);
        for (int i = 0; i < a.dim; ++i)
            next[i] = Rational(3) * x2[i] - Rational(2) * x3[i];
        x = next;
    }
    throw std::runtime_error("newton_lift: did not converge (element not idempotent mod Rad?)");
}

// Corner algebra e*A*e with unit e.
struct Corner {
    StructAlgebra alg;
    std::vector<QVec> lift;  // corner basis as elements of the parent
};

Corner corner_algebra(const StructAlgebra& a, const QVec& e) {
    const int n = a.dim;
    const QMat le = a.left_mult_of(e), re = a.right_mult_of(e);
    const QMat pe = le * re;  // x -> e x e
    std::vector<QVec> cols;
    for (int j = 0; j < n; ++j) cols.push_back(pe.col(j));
    Subspace img = Subspace::span(n, cols);
    const int m = img.dim();
    Corner c;
    c.lift = img.basis();
    // coordinates in img basis: use pivot columns
    auto coords = [&](const QVec& v) {
        QVec r(m);
        QVec w = v;
        for (int i = 0; i < m; ++i) {
            const Rational f = w[img.pivots()[i]];
            r[i] = f;
            if (f.is_zero()) continue;
            for (int k2 = 0; k2 < n; ++k2)
                if (!img.basis()[i][k2].is_zero()) w[k2] -= f * img.basis()[i][k2];
        }
        return r;
    };
    std::vector<std::vector<QVec>> table(m, std::vector<QVec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) table[i][j] = coords(a.mul(c.lift[i], c.lift[j]));
    c.alg = struct_algebra_from_table(table, coords(e));
    return c;
}

void decompose_idempotent(const StructAlgebra& a, const QVec& e, std::vector<QVec>& out,
                          int depth) {
    if (depth > 64) throw std::runtime_error("idempotent decomposition: depth overflow");
    Corner c = corner_algebra(a, e);
    if (c.alg.dim == 0) throw std::runtime_error("idempotent decomposition: zero corner");
    if (is_local(c.alg)) {
        out.push_back(e);
        return;
    }
    Quotient q = semisimple_quotient(c.alg);
    auto ebar = find_nontrivial_idempotent(q.s);
    if (!ebar)
        throw std::runtime_error("idempotent decomposition: no idempotent found in semisimple quotient");
    // lift to corner coordinates, then Newton-lift to an exact idempotent
    QVec x(c.alg.dim);
    for (int i = 0; i < q.s.dim; ++i)
        for (int k = 0; k < c.alg.dim; ++k) x[k] += (*ebar)[i] * q.lift[i][k];
    x = newton_lift(c.alg, x);
    // back to parent coordinates
    QVec e1(a.dim);
    for (int i = 0; i < c.alg.dim; ++i)
        for (int k = 0; k < a.dim; ++k) e1[k] += x[i] * c.lift[i][k];
    QVec e2(a.dim);
    for (int k = 0; k < a.dim; ++k) e2[k] = e[k] - e1[k];
    decompose_idempotent(a, e1, out, depth + 1);
    decompose_idempotent(a, e2, out, depth + 1);
}

}  // namespace

std::vector<QVec> primitive_idempotent_decomposition(const StructAlgebra& a) {
    std::vector<QVec> out;
    decompose_idempotent(a, a.unit, out, 0);
    // verify: orthogonal, idempotent, sum to 1
    QVec sum(a.dim);
    for (const auto& e : out) {
        if (a.mul(e, e) != e) throw std::runtime_error("idempotent decomposition: not idempotent");
        for (int k = 0; k < a.dim; ++k) sum[k] += e[k];
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j) {
            if (i == j) continue;
            QVec p = a.mul(out[i], out[j]);
            if (!vec_is_zero(p)) throw std::runtime_error("idempotent decomposition: not orthogonal");
        }
    if (sum != a.unit) throw std::runtime_error("idempotent decomposition: does not sum to 1");
    return out;
}

int block_count(const StructAlgebra& a) {
    Quotient q = semisimple_quotient(a);
    // center of the semisimple quotient
    const int m = q.s.dim;
    QMat sys(m * m, m);
    for (int g = 0; g < m; ++g) {
        const QMat d = q.s.left_mult[g] - q.s.right_mult[g];
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) sys(g * m + r, c) = d(r, c);
    }
    return kernel(sys).dim();  // split blocks: dim of the center = #blocks
}

std::vector<int> block_of_idempotents(const StructAlgebra& a, const std::vector<QVec>& idems) {
    // e, f in the same block iff e A f and f A e pair to recover e (i.e. the
    // projectives Ae, Af are isomorphic). At our scale: check existence of
    // u in eAf, v in fAe with u*v = e.
    const int n = static_cast<int>(idems.size());
    std::vector<int> block(n, -1);
    int next = 0;
    auto isomorphic = [&](const QVec& e, const QVec& f) {
        const QMat pe = a.left_mult_of(e) * a.right_mult_of(f);   // x -> e x f
        const QMat pf = a.left_mult_of(f) * a.right_mult_of(e);   // x -> f x e
        std::vector<QVec> ucols, vcols;
        for (int j = 0; j < a.dim; ++j) { ucols.push_back(pe.col(j)); vcols.push_back(pf.col(j)); }
        Subspace eAf = Subspace::span(a.dim, ucols);
        Subspace fAe = Subspace::span(a.dim, vcols);
        // solve bilinear u*v = e by trying u = basis combinations (small dims)
        std::vector<QVec> us = eAf.basis();
        const int bu = static_cast<int>(us.size());
        std::vector<QVec> cand = us;
        for (int i = 0; i < bu; ++i)
            for (int j = i + 1; j < bu; ++j) cand.push_back(vec_add(us[i], us[j]));
        for (const auto& u : cand) {
            // linear in v: u*v = e with v in fAe
            const int dv = fAe.dim();
            if (dv == 0) return false;
            QMat sys(a.dim, dv);
            for (int c = 0; c < dv; ++c) {
                QVec col = a.mul(u, fAe.basis()[c]);
                for (int r = 0; r < a.dim; ++r) sys(r, c) = col[r];
            }
            if (solve(sys, e)) return true;
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        if (block[i] >= 0) continue;
        block[i] = next;
        for (int j = i + 1; j < n; ++j)
            if (block[j] < 0 && isomorphic(idems[i], idems[j])) block[j] = next;
        ++next;
    }
    return block;
}

}  // namespace starcat
