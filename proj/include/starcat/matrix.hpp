#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "starcat/rational.hpp"

namespace starcat {

// Dense row-major matrix over an exact field scalar.
template <class K>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const K& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    friend Mat operator+(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }
    friend Mat operator*(const K& s, const Mat& m) {
        Mat c(m.rows_, m.cols_);
        for (size_t i = 0; i < m.a_.size(); ++i) c.a_[i] = s * m.a_[i];
        return c;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
        Mat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const K& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const K& bkj = b(k, j);
                    if (!bkj.is_zero()) c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    std::vector<K> apply(const std::vector<K>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Mat: apply shape");
        std::vector<K> y(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void set_row(int i, const std::vector<K>& r) {
        assert(static_cast<int>(r.size()) == cols_);
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }
    std::vector<K> row(int i) const {
        std::vector<K> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    std::vector<K> col(int j) const {
        std::vector<K> r(rows_);
        for (int i = 0; i < rows_; ++i) r[i] = (*this)(i, j);
        return r;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            s += "[";
            for (int j = 0; j < cols_; ++j) {
                s += (*this)(i, j).str();
                if (j + 1 < cols_) s += " ";
            }
            s += "]\n";
        }
        return s;
    }

private:
    int rows_, cols_;
    std::vector<K> a_;
};

using QMat = Mat<Rational>;
using QVec = std::vector<Rational>;

inline QVec qvec_zero(int n) { return QVec(n); }

inline bool vec_is_zero(const QVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline QVec vec_sub(QVec a, const QVec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline QVec vec_add(QVec a, const QVec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline QVec vec_scale(const Rational& s, QVec a) {
    for (auto& x : a) x *= s;
    return a;
}

}  // namespace starcat
