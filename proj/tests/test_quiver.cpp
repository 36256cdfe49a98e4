#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "starcat/quiver.hpp"

using namespace starcat;

namespace {

// Independent oracle: enumerate arrow words over the star quiver and reduce
// them with a hand-written dictionary, never touching the library engine.
// Words are label sequences in application order ("a1" first means a1 acts
// first). Returns the canonical class name, or "0".
std::string oracle_reduce_star(int, bool star_quotient, const std::vector<std::string>& word) {
    if (word.size() >= 3) return "0";
    if (word.empty()) return "e";
    if (word.size() == 1) return word[0];
    const std::string &f = word[0], &s = word[1];
    // [a_k, b_j]: a_k (0->k), then b_j (j->0): needs j == k; gives the hub
    // loop class c (common for all k)
    if (f[0] == 'a' && s[0] == 'b') {
        if (f.substr(1) != s.substr(1)) return "#";  // not composable
        return "c";
    }
    // [b_k, a_j]: b_k (k->0) then a_j (0->j): c_k when j == k else zero
    if (f[0] == 'b' && s[0] == 'a') {
        if (f.substr(1) == s.substr(1)) return star_quotient ? "0" : ("c" + f.substr(1));
        return "0";
    }
    return "#";
}

int oracle_dim_star(int n, bool star_quotient) {
    // vertices + arrows + surviving length-2 classes
    std::map<std::string, bool> classes;
    for (int v = 0; v <= n; ++v) classes["e" + std::to_string(v)] = true;
    std::vector<std::string> labels;
    for (int k = 1; k <= n; ++k) labels.push_back("a" + std::to_string(k));
    for (int k = 1; k <= n; ++k) labels.push_back("b" + std::to_string(k));
    for (const auto& l : labels) classes[l] = true;
    for (const auto& f : labels)
        for (const auto& s : labels) {
            std::string r = oracle_reduce_star(0, star_quotient, {f, s});
            if (r != "0" && r != "#") classes[r] = true;
        }
    return static_cast<int>(classes.size());
}

}  // namespace

TEST_CASE("zigzag and star dimensions vs the path oracle, n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        FiniteDimAlgebra lam = build_zigzag(n);
        FiniteDimAlgebra a = build_star_quotient(n);
        CHECK(lam.dim == 4 * n + 2);
        CHECK(a.dim == 3 * n + 2);
        CHECK(lam.dim == oracle_dim_star(n, false));
        CHECK(a.dim == oracle_dim_star(n, true));
    }
}

TEST_CASE("zigzag n=1: explicit basis and products") {
    FiniteDimAlgebra lam = build_zigzag(1);
    CHECK(lam.dim == 6);
    REQUIRE(lam.basis_index_by_name("c").has_value());
    REQUIRE(lam.basis_index_by_name("c1").has_value());
    int a1 = *lam.basis_index_by_name("a1");
    int b1 = *lam.basis_index_by_name("b1");
    int c = *lam.basis_index_by_name("c");
    int c1 = *lam.basis_index_by_name("c1");

    // b1 * a1 = c (a1 first, then b1: loop at the hub)
    QVec prod = lam.mul_basis(b1, a1);
    CHECK(prod == lam.coords_of_basis(c));
    // a1 * b1 = c1 (leaf loop)
    CHECK(lam.mul_basis(a1, b1) == lam.coords_of_basis(c1));
    // c*c = 0 (third power of the arrow ideal)
    CHECK(vec_is_zero(lam.mul_basis(c, c)));
}

TEST_CASE("zigzag n=2: mixed two-paths vanish") {
    FiniteDimAlgebra lam = build_zigzag(2);
    int a1 = *lam.basis_index_by_name("a1");
    int b2 = *lam.basis_index_by_name("b2");
    // a1 * b2 = 0 (apply b2 then a1; mixed leaves)
    CHECK(vec_is_zero(lam.mul_basis(a1, b2)));
    // c*c = 0 for any n
    int c = *lam.basis_index_by_name("c");
    CHECK(vec_is_zero(lam.mul_basis(c, c)));
}

TEST_CASE("star quotient: c_k dies, c survives") {
    for (int n = 1; n <= 3; ++n) {
        FiniteDimAlgebra a = build_star_quotient(n);
        CHECK(a.basis_index_by_name("c").has_value());
        for (int k = 1; k <= n; ++k)
            CHECK(!a.basis_index_by_name("c" + std::to_string(k)).has_value());
        int a1 = *a.basis_index_by_name("a1");
        int b1 = *a.basis_index_by_name("b1");
        CHECK(vec_is_zero(a.mul_basis(a1, b1)));  // a1*b1 = c1 = 0 in A
        CHECK(a.mul_basis(b1, a1) == a.coords_of_basis(*a.basis_index_by_name("c")));
    }
}

TEST_CASE("associativity and idempotent axioms hold exhaustively, n <= 5") {
    for (int n = 1; n <= 5; ++n) {
        FiniteDimAlgebra lam = build_zigzag(n);
        CHECK(lam.check_associativity());
        CHECK(lam.check_idempotents());
        FiniteDimAlgebra a = build_star_quotient(n);
        CHECK(a.check_associativity());
        CHECK(a.check_idempotents());
    }
}

TEST_CASE("Peirce decomposition sums to dim; block dims match closed forms") {
    for (int n = 1; n <= 5; ++n) {
        FiniteDimAlgebra lam = build_zigzag(n);
        FiniteDimAlgebra a = build_star_quotient(n);
        int total_l = 0, total_a = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                total_l += static_cast<int>(lam.peirce(i, j).size());
                total_a += static_cast<int>(a.peirce(i, j).size());
            }
        CHECK(total_l == lam.dim);
        CHECK(total_a == a.dim);
        CHECK(lam.peirce(0, 0).size() == 2);  // {e0, c}
        CHECK(a.peirce(0, 0).size() == 2);
        for (int j = 1; j <= n; ++j) {
            CHECK(lam.peirce(j, j).size() == 2);  // {ej, cj}
            CHECK(a.peirce(j, j).size() == 1);
            CHECK(lam.peirce(j, 0).size() == 1);  // {aj}
            CHECK(lam.peirce(0, j).size() == 1);  // {bj}
            for (int k = 1; k <= n; ++k)
                if (k != j) CHECK(a.peirce(j, k).empty());
        }
    }
}

TEST_CASE("radical and nilpotency degree") {
    FiniteDimAlgebra lam1 = build_zigzag(1);
    auto [radl, degl] = radical_and_nilpotency(lam1);
    CHECK(radl.size() == 4);  // a1, b1, c, c1
    CHECK(degl == 3);
    for (int n = 1; n <= 4; ++n) {
        FiniteDimAlgebra a = build_star_quotient(n);
        auto [rada, dega] = radical_and_nilpotency(a);
        CHECK(rada.size() == 2 * n + 1);
        CHECK(dega == 3);
        CHECK(a.dim - static_cast<int>(rada.size()) == n + 1);  // semisimple quotient
    }
}

TEST_CASE("projection Lambda -> A has kernel exactly span{c_k}") {
    for (int n = 1; n <= 4; ++n) {
        FiniteDimAlgebra lam = build_zigzag(n);
        FiniteDimAlgebra a = build_star_quotient(n);
        std::vector<QVec> img = quotient_map(lam, a);
        // algebra map: pi(x*y) = pi(x)*pi(y) on all basis pairs
        for (int i = 0; i < lam.dim; ++i)
            for (int j = 0; j < lam.dim; ++j) {
                QVec lhs(a.dim);
                QVec prod = lam.mul_basis(i, j);
                for (int k = 0; k < lam.dim; ++k)
                    if (!prod[k].is_zero())
                        for (int t = 0; t < a.dim; ++t) lhs[t] += prod[k] * img[k][t];
                QVec rhs = a.mul(img[i], img[j]);
                CHECK(lhs == rhs);
            }
        int killed = 0;
        for (int i = 0; i < lam.dim; ++i)
            if (vec_is_zero(img[i])) {
                ++killed;
                CHECK(lam.basis[i].name.substr(0, 1) == "c");
                CHECK(lam.basis[i].name != "c");
            }
        CHECK(killed == n);
    }
}

TEST_CASE("remark algebra: dim 21, paths of length three survive") {
    FiniteDimAlgebra b = build_remark_algebra();
    CHECK(b.dim == 21);
    CHECK(b.check_associativity());
    // b1*a1*b1 (apply b1, a1, b1) is a nonzero basis path
    int a1 = *b.basis_index_by_name("a1");
    int b1 = *b.basis_index_by_name("b1");
    QVec x = b.mul(b.coords_of_basis(b1), b.mul_basis(a1, b1));
    CHECK(!vec_is_zero(x));
    CHECK(b.radical_nilpotency_degree() == 4);
}

TEST_CASE("inconsistent relation forces an error") {
    AlgebraPresentation pres;
    pres.quiver.vertex_count = 1;
    pres.quiver.arrows.push_back({"x", 0, 0});
    pres.arrow_ideal_nilpotency = 3;
    // relation: e_0-degree inhomogeneity is not expressible, but x - x^0 is
    // not a parallel-path relation either; instead force 1 = 0 via x*x = e
    // cannot be written (paths only). Use relation x = 0 and x*x = x to get a
    // consistent dim-1 algebra instead; then check the homogeneity guard.
    Path px{{0}, 0, 0};
    pres.relations.push_back({{Rational::one(), px}});
    FiniteDimAlgebra a = algebra_from_presentation(pres);
    CHECK(a.dim == 1);

    // malformed: relation mixing different (src,tgt)
    AlgebraPresentation bad;
    bad.quiver.vertex_count = 2;
    bad.quiver.arrows.push_back({"u", 0, 1});
    bad.quiver.arrows.push_back({"v", 1, 1});
    bad.arrow_ideal_nilpotency = 3;
    Path pu{{0}, 0, 1}, pv{{1}, 1, 1};
    bad.relations.push_back({{Rational::one(), pu}, {Rational(-1), pv}});
    CHECK_THROWS(algebra_from_presentation(bad));
}

TEST_CASE("presentation JSON round trip") {
    AlgebraPresentation p = zigzag_presentation(2);
    std::string text = presentation_to_json(p);
    AlgebraPresentation q = presentation_from_json(text);
    FiniteDimAlgebra a1 = algebra_from_presentation(p);
    FiniteDimAlgebra a2 = algebra_from_presentation(q);
    CHECK(a1.dim == a2.dim);
    for (int i = 0; i < a1.dim; ++i) CHECK(a1.basis[i].name == a2.basis[i].name);
}

TEST_CASE("build_zigzag rejects n = 0") {
    CHECK_THROWS(build_zigzag(0));
    CHECK_THROWS(build_star_quotient(0));
}
