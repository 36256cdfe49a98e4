#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starcat/matrix.hpp"
#include "starcat/parallel.hpp"

namespace starcat {

// Gauss-Jordan to reduced row echelon form, in place. Returns pivot columns.
// Pivot choice is the first nonzero entry in scan order, so the serial and
// OpenMP paths produce identical output.
template <class K>
std::vector<int> rref_inplace(Mat<K>& m, bool use_parallel = false) {
    std::vector<int> pivots;
    const int rows = m.rows(), cols = m.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        const K inv = m(r, c).inv();
        for (int j = c; j < cols; ++j)
            if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;

        auto eliminate = [&](long li) {
            int i = static_cast<int>(li);
            if (i == r || m(i, c).is_zero()) return;
            const K f = m(i, c);
            for (int j = c; j < cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
        };
        if (use_parallel)
            parallel_for(rows, eliminate);
        else
            for (long i = 0; i < rows; ++i) eliminate(i);

        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
std::pair<Mat<K>, std::vector<int>> rref(Mat<K> m) {
    auto p = rref_inplace(m, false);
    return {std::move(m), std::move(p)};
}

// OpenMP variant of rref; bit-identical to the serial reference.
template <class K>
std::pair<Mat<K>, std::vector<int>> rref_parallel(Mat<K> m) {
    auto p = rref_inplace(m, true);
    return {std::move(m), std::move(p)};
}

template <class K>
int rank(const Mat<K>& m) {
    return static_cast<int>(rref(m).second.size());
}

// Canonical basis (RREF rows) of a subspace of K^ambient.
template <class K>
class SubspaceT {
public:
    SubspaceT() : ambient_(0) {}
    explicit SubspaceT(int ambient) : ambient_(ambient) {}

    static SubspaceT span(int ambient, const std::vector<std::vector<K>>& gens) {
        SubspaceT s(ambient);
        Mat<K> m(static_cast<int>(gens.size()), ambient);
        for (int i = 0; i < static_cast<int>(gens.size()); ++i) m.set_row(i, gens[i]);
        auto [red, piv] = rref(std::move(m));
        for (size_t i = 0; i < piv.size(); ++i) s.basis_.push_back(red.row(static_cast<int>(i)));
        s.pivots_ = piv;
        return s;
    }

    static SubspaceT full(int ambient) {
        std::vector<std::vector<K>> gens;
        for (int i = 0; i < ambient; ++i) {
            std::vector<K> e(ambient);
            e[i] = K::one();
            gens.push_back(e);
        }
        return span(ambient, gens);
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::vector<K>>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Residual of v after reduction by the canonical basis.
    std::vector<K> reduce(std::vector<K> v) const {
        if (static_cast<int>(v.size()) != ambient_)
            throw std::invalid_argument("Subspace: ambient mismatch");
        for (size_t i = 0; i < basis_.size(); ++i) {
            const K& c = v[pivots_[i]];
            if (c.is_zero()) continue;
            const K f = c;
            for (int j = 0; j < ambient_; ++j)
                if (!basis_[i][j].is_zero()) v[j] = v[j] - f * basis_[i][j];
        }
        return v;
    }

    bool contains(const std::vector<K>& v) const {
        auto r = reduce(v);
        for (const auto& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    bool contains(const SubspaceT& other) const {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    friend bool operator==(const SubspaceT& a, const SubspaceT& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    friend SubspaceT operator+(const SubspaceT& a, const SubspaceT& b) {
        check_same(a, b);
        std::vector<std::vector<K>> gens = a.basis_;
        gens.insert(gens.end(), b.basis_.begin(), b.basis_.end());
        return span(a.ambient_, gens);
    }

    // Zassenhaus: rref of [[A A],[B 0]]; rows with zero left half carry the
    // intersection in their right half.
    static SubspaceT intersect(const SubspaceT& a, const SubspaceT& b) {
        check_same(a, b);
        const int n = a.ambient_;
        Mat<K> m(a.dim() + b.dim(), 2 * n);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < n; ++j) { m(i, j) = a.basis_[i][j]; m(i, n + j) = a.basis_[i][j]; }
        for (int i = 0; i < b.dim(); ++i)
            for (int j = 0; j < n; ++j) m(a.dim() + i, j) = b.basis_[i][j];
        auto [red, piv] = rref(std::move(m));
        std::vector<std::vector<K>> gens;
        for (int i = 0; i < static_cast<int>(piv.size()); ++i) {
            bool left_zero = true;
            for (int j = 0; j < n; ++j)
                if (!red(i, j).is_zero()) { left_zero = false; break; }
            if (left_zero) {
                std::vector<K> v(n);
                for (int j = 0; j < n; ++j) v[j] = red(i, n + j);
                gens.push_back(v);
            }
        }
        return span(n, gens);
    }

private:
    static void check_same(const SubspaceT& a, const SubspaceT& b) {
        if (a.ambient_ != b.ambient_)
            throw std::invalid_argument("Subspace: ambient dimension mismatch");
    }
    int ambient_;
    std::vector<std::vector<K>> basis_;
    std::vector<int> pivots_;
};

using Subspace = SubspaceT<Rational>;

// Null space of m as a canonical Subspace.
template <class K>
SubspaceT<K> kernel(const Mat<K>& m) {
    auto [red, piv] = rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::vector<K>> gens;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<K> v(cols);
        v[c] = K::one();
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -red(static_cast<int>(i), c);
        gens.push_back(v);
    }
    return SubspaceT<K>::span(cols, gens);
}

// One particular solution of m x = b, or nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: shape");
    Mat<K> aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto piv = rref_inplace(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<K> x(m.cols());
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(static_cast<int>(i), m.cols());
    return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const int n = m.rows();
    Mat<K> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = K::one();
    }
    auto piv = rref_inplace(aug);
    if (static_cast<int>(piv.size()) != n || piv[n - 1] != n - 1) return std::nullopt;
    Mat<K> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <class K>
bool is_invertible(const Mat<K>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

}  // namespace starcat
