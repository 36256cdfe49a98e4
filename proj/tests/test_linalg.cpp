#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "starcat/linalg.hpp"

using namespace starcat;

namespace {

QMat random_matrix(std::mt19937& rng, int rows, int cols, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> d(lo, hi);
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rational(d(rng));
    return m;
}

Mat<Fp> to_fp(const QMat& m, std::uint64_t p) {
    Mat<Fp> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const mpq_class& q = m(i, j).raw();
            mpz_class num = q.get_num() % p;
            if (num < 0) num += p;
            mpz_class den = q.get_den() % p;
            Fp fnum(num.get_ui(), p), fden(den.get_ui(), p);
            out(i, j) = fnum / fden;
        }
    return out;
}

}  // namespace

TEST_CASE("rref identity and rank-1 cases") {
    QMat id = QMat::identity(2);
    auto [r, piv] = rref(id);
    CHECK(r == id);
    CHECK(piv == std::vector<int>{0, 1});

    QMat m(2, 2);
    m(0, 0) = Rational(1); m(0, 1) = Rational(2);
    m(1, 0) = Rational(2); m(1, 1) = Rational(4);
    auto [r2, piv2] = rref(m);
    CHECK(piv2 == std::vector<int>{0});
    CHECK(r2(0, 0) == Rational(1));
    CHECK(r2(0, 1) == Rational(2));
    CHECK(r2(1, 0).is_zero());
    CHECK(r2(1, 1).is_zero());
}

TEST_CASE("rref is idempotent on random 5x5 rationals") {
    std::mt19937 rng(12345);
    for (int t = 0; t < 25; ++t) {
        QMat m = random_matrix(rng, 5, 5);
        auto [r1, p1] = rref(m);
        auto [r2, p2] = rref(r1);
        CHECK(r1 == r2);
        CHECK(p1 == p2);
    }
}

TEST_CASE("parallel rref matches the serial reference exactly") {
    std::mt19937 rng(777);
    for (int t = 0; t < 10; ++t) {
        QMat m = random_matrix(rng, 12, 9);
        auto [rs, ps] = rref(m);
        auto [rp, pp] = rref_parallel(m);
        CHECK(rs == rp);
        CHECK(ps == pp);
    }
}

TEST_CASE("kernel: identity, zero matrix, rank-nullity") {
    CHECK(kernel(QMat::identity(4)).dim() == 0);
    CHECK(kernel(QMat(3, 4)).dim() == 4);

    std::mt19937 rng(99);
    for (int t = 0; t < 30; ++t) {
        QMat m = random_matrix(rng, 4 + static_cast<int>(t % 3), 5);
        int r = rank(m);
        Subspace k = kernel(m);
        CHECK(k.dim() == 5 - r);
        for (const auto& v : k.basis()) CHECK(vec_is_zero(m.apply(v)));
    }
}

TEST_CASE("solve: identity, underdetermined, inconsistent; residual exactly zero") {
    QVec b{Rational(3), Rational(-7)};
    auto x = solve(QMat::identity(2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    QMat m(1, 2);
    m(0, 0) = Rational(1); m(0, 1) = Rational(1);
    auto y = solve(m, QVec{Rational(2)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == Rational(2));

    QMat inc(2, 1);
    inc(0, 0) = Rational(1);
    inc(1, 0) = Rational(1);
    CHECK(!solve(inc, QVec{Rational(0), Rational(1)}).has_value());

    std::mt19937 rng(31);
    for (int t = 0; t < 20; ++t) {
        QMat a = random_matrix(rng, 5, 5);
        QVec rhs(5);
        std::uniform_int_distribution<int> d(-3, 3);
        for (auto& v : rhs) v = Rational(d(rng));
        auto sol = solve(a, rhs);
        if (sol) CHECK(vec_is_zero(vec_sub(a.apply(*sol), rhs)));
    }
}

TEST_CASE("subspace sum/intersection: units and Grassmann identity") {
    auto e = [](int i) {
        QVec v(4);
        v[i] = Rational::one();
        return v;
    };
    Subspace a = Subspace::span(4, {e(0), e(1)});
    Subspace b = Subspace::span(4, {e(2), e(3)});
    Subspace zero(4);
    CHECK((a + zero) == a);
    CHECK(Subspace::intersect(a, a) == a);
    CHECK((a + b).dim() == 4);
    CHECK(Subspace::intersect(a, b).dim() == 0);

    std::mt19937 rng(555);
    for (int t = 0; t < 40; ++t) {
        std::vector<QVec> ga, gb;
        std::uniform_int_distribution<int> d(-3, 3);
        for (int i = 0; i < 3; ++i) {
            QVec v(6), w(6);
            for (auto& x : v) x = Rational(d(rng));
            for (auto& x : w) x = Rational(d(rng));
            ga.push_back(v);
            gb.push_back(w);
        }
        Subspace sa = Subspace::span(6, ga), sb = Subspace::span(6, gb);
        CHECK(sa.dim() + sb.dim() ==
              (sa + sb).dim() + Subspace::intersect(sa, sb).dim());
    }
}

TEST_CASE("canonicality: different generating sets give identical bases") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 20; ++t) {
        std::vector<QVec> gens;
        for (int i = 0; i < 3; ++i) {
            QVec v(5);
            for (auto& x : v) x = Rational(d(rng));
            gens.push_back(v);
        }
        Subspace s1 = Subspace::span(5, gens);
        // shuffle and take random invertible combinations
        std::vector<QVec> gens2;
        for (int i = 0; i < 4; ++i) {
            QVec v(5);
            for (const auto& g : gens) {
                Rational c(d(rng));
                for (int k = 0; k < 5; ++k) v[k] += c * g[k];
            }
            gens2.push_back(v);
        }
        Subspace s2 = Subspace::span(5, gens2);
        if (s2.dim() == s1.dim()) {
            CHECK(s1.contains(s2));
            if (s1.contains(s2)) CHECK(s1 == s2);
        } else {
            CHECK(s1.contains(s2));
        }
    }
}

TEST_CASE("prime-field cross-check: rank over Q vs rank mod p") {
    const std::uint64_t p = 1000003;
    std::mt19937 rng(2024);
    for (int t = 0; t < 25; ++t) {
        QMat m = random_matrix(rng, 6, 6);
        int rq = rank(m);
        int rp = rank(to_fp(m, p));
        CHECK(rp <= rq);
        CHECK(rp == rq);  // holds for all small random samples at this p
    }
}

TEST_CASE("matrix inverse round trip") {
    std::mt19937 rng(8);
    for (int t = 0; t < 10; ++t) {
        QMat m = random_matrix(rng, 4, 4);
        auto inv = inverse(m);
        if (!inv) continue;
        CHECK((*inv * m) == QMat::identity(4));
        CHECK((m * *inv) == QMat::identity(4));
    }
}
