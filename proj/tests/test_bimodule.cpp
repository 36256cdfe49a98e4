#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "starcat/bimodule.hpp"

using namespace starcat;

namespace {

struct Fixture {
    FiniteDimAlgebra a;
    Bimodule reg;
    std::vector<Bimodule> f;  // F_0 .. F_n
    explicit Fixture(int n, bool zigzag = false)
        : a(zigzag ? build_zigzag(n) : build_star_quotient(n)) {
        reg = regular_bimodule(a);
        for (int k = 0; k <= n; ++k) f.push_back(projective_bimodule(a, k, 0));
    }
    std::vector<const Bimodule*> catalog() const {
        std::vector<const Bimodule*> c{&reg};
        for (const auto& b : f) c.push_back(&b);
        return c;
    }
};

}  // namespace

TEST_CASE("regular bimodule: dims, axioms, representation") {
    Fixture fx(1);
    CHECK(fx.reg.dim == 5);
    CHECK(fx.reg.check_representation());
    // L(c)R(c) = 0 on A_n: c x c = 0 for every basis x
    int c = *fx.a.basis_index_by_name("c");
    QMat lc = fx.reg.left_action_of_basis(c);
    QMat rc = fx.reg.right_action_of_basis(c);
    CHECK((lc * rc).is_zero());
}

TEST_CASE("projective bimodule dimensions over A_n and Lambda_n") {
    for (int n = 1; n <= 3; ++n) {
        Fixture fa(n);
        CHECK(fa.f[0].dim == (n + 2) * (n + 2));
        for (int j = 1; j <= n; ++j) CHECK(fa.f[j].dim == 2 * (n + 2));
        Fixture fl(n, true);
        CHECK(fl.f[0].dim == (n + 2) * (n + 2));  // dim Lambda e_0 = n+2
        for (int j = 1; j <= n; ++j) CHECK(fl.f[j].dim == 3 * (n + 2));
        CHECK(fl.f[0].check_representation());
        if (n <= 2) CHECK(fl.f[1].check_representation());
    }
}

TEST_CASE("hom tables over Lambda_n match the closed forms") {
    for (int n = 1; n <= 3; ++n) {
        Fixture fx(n, true);
        CHECK(hom_space(fx.reg, fx.reg).dim() == n + 2);  // End(Lambda) = k{1, c, c_k}
        for (int j = 0; j <= n; ++j) {
            // invariants of F_j: j = 0 has {z(1), c(x)c}; j != 0 only the
            // hub-corrected element b_j(x)c + c_j(x)b_j
            int expect_inv = j == 0 ? 2 : 1;
            CHECK(hom_space(fx.reg, fx.f[j]).dim() == expect_inv);
            int expect = j == 0 ? 2 : 1;  // e_j Lambda e_0
            CHECK(hom_space(fx.f[j], fx.reg).dim() == expect);
            for (int k = 0; k <= n; ++k) {
                int ejek = static_cast<int>(fx.a.peirce(j, k).size());
                CHECK(hom_space(fx.f[j], fx.f[k]).dim() == 2 * ejek);
            }
        }
    }
}

TEST_CASE("hom tables over A_n match the closed forms") {
    for (int n = 1; n <= 3; ++n) {
        Fixture fx(n);
        CHECK(hom_space(fx.reg, fx.reg).dim() == 2);  // End(A) = k{1, c}
        for (int j = 0; j <= n; ++j) {
            int expect_to = j == 0 ? 2 : 1;  // k{b_j (x) c} for j != 0
            CHECK(hom_space(fx.reg, fx.f[j]).dim() == expect_to);
            int expect_from = j == 0 ? 2 : 1;  // e_j A e_0
            CHECK(hom_space(fx.f[j], fx.reg).dim() == expect_from);
        }
    }
}

TEST_CASE("every hom basis element is an exact intertwiner") {
    Fixture fx(2);
    for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k) {
            HomSpaceBasis h = hom_space(fx.f[j], fx.f[k]);
            for (const auto& m : h.basis) {
                BimoduleMorphism f{&fx.f[j], &fx.f[k], m};
                CHECK(f.is_intertwiner());
            }
        }
}

TEST_CASE("hom additivity over direct sums") {
    Fixture fx(2);
    DirectSum ds = direct_sum({&fx.f[1], &fx.f[2]});
    CHECK(hom_space(ds.sum, fx.reg).dim() ==
          hom_space(fx.f[1], fx.reg).dim() + hom_space(fx.f[2], fx.reg).dim());
    CHECK(hom_space(fx.f[0], ds.sum).dim() ==
          hom_space(fx.f[0], fx.f[1]).dim() + hom_space(fx.f[0], fx.f[2]).dim());
}

TEST_CASE("tensor dimensions match the contraction formula") {
    for (int n = 1; n <= 3; ++n) {
        Fixture fx(n);
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                TensorResult t = tensor_over(fx.f[j], fx.f[k]);
                int dim_aej = j == 0 ? n + 2 : 2;
                int e0aek = k == 0 ? 2 : 1;
                int dim_e0a = n + 2;
                CHECK(t.bim.dim == dim_aej * e0aek * dim_e0a);
                CHECK(t.bim.check_representation());
            }
    }
}

TEST_CASE("unit law: Reg (x) M = M and M (x) Reg = M via explicit collapse") {
    Fixture fx(2);
    for (int j = 0; j <= 2; ++j) {
        TensorResult rm = tensor_over(fx.reg, fx.f[j]);
        BimoduleMorphism u = unit_collapse_left(rm);
        CHECK(u.is_intertwiner());
        CHECK(is_invertible(u.m));
        TensorResult mr = tensor_over(fx.f[j], fx.reg);
        BimoduleMorphism v = unit_collapse_right(mr);
        CHECK(v.is_intertwiner());
        CHECK(is_invertible(v.m));
    }
}

TEST_CASE("decompose: F_0 (x) F_0 = 2 F_0, F_j (x) F_0 = 2 F_j, F_j (x) F_k = F_j") {
    Fixture fx(2);
    auto cat = fx.catalog();
    TensorResult t00 = tensor_over(fx.f[0], fx.f[0]);
    Decomposition d = decompose(t00.bim, cat);
    CHECK(d.multiplicity == std::vector<int>{0, 2, 0, 0});
    CHECK(d.from_sum.is_intertwiner());
    CHECK((d.to_sum.m * d.from_sum.m) == QMat::identity(d.sum->dim));
    CHECK((d.from_sum.m * d.to_sum.m) == QMat::identity(t00.bim.dim));

    TensorResult t10 = tensor_over(fx.f[1], fx.f[0]);
    CHECK(decompose(t10.bim, cat).multiplicity == std::vector<int>{0, 0, 2, 0});
    TensorResult t21 = tensor_over(fx.f[2], fx.f[1]);
    CHECK(decompose(t21.bim, cat).multiplicity == std::vector<int>{0, 0, 0, 1});
    TensorResult t12 = tensor_over(fx.f[1], fx.f[2]);
    CHECK(decompose(t12.bim, cat).multiplicity == std::vector<int>{0, 0, 1, 0});
    Decomposition dreg = decompose(fx.reg, cat);
    CHECK(dreg.multiplicity == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("decompose reports unmatched residual summands") {
    Fixture fx(1);
    // catalog without F_0 cannot express F_0 (x) F_0
    std::vector<const Bimodule*> bad{&fx.reg, &fx.f[1]};
    TensorResult t = tensor_over(fx.f[0], fx.f[0]);
    CHECK_THROWS_AS(decompose(t.bim, bad), DecomposeError);
}

TEST_CASE("indecomposability of the catalog and local endomorphism rings") {
    Fixture fx(2);
    CHECK(is_indecomposable(fx.reg));
    for (const auto& b : fx.f) CHECK(is_indecomposable(b));
    DirectSum ds = direct_sum({&fx.f[1], &fx.f[1]});
    CHECK(!is_indecomposable(ds.sum));
}

TEST_CASE("associator is an invertible intertwiner on generator triples") {
    Fixture fx(1);
    const Bimodule &F0 = fx.f[0], &F1 = fx.f[1];
    TensorResult mn = tensor_over(F1, F0);
    TensorResult mn_p = tensor_over(mn.bim, F1);
    TensorResult np = tensor_over(F0, F1);
    TensorResult m_np = tensor_over(F1, np.bim);
    BimoduleMorphism assoc = associator(mn, mn_p, np, m_np);
    CHECK(assoc.is_intertwiner());
    CHECK(is_invertible(assoc.m));
}

TEST_CASE("associator naturality on generator endomorphisms") {
    Fixture fx(1);
    const Bimodule &F0 = fx.f[0], &F1 = fx.f[1];
    HomSpaceBasis h = hom_space(F0, F0);
    REQUIRE(h.dim() >= 2);
    BimoduleMorphism phi{&F0, &F0, h.basis[1]};
    REQUIRE(phi.is_intertwiner());

    TensorResult mn = tensor_over(F1, F0);
    TensorResult mn_p = tensor_over(mn.bim, F0);
    TensorResult np = tensor_over(F0, F0);
    TensorResult m_np = tensor_over(F1, np.bim);
    BimoduleMorphism assoc = associator(mn, mn_p, np, m_np);

    BimoduleMorphism left = whisker_left(mn_p, mn_p, phi);
    BimoduleMorphism right_inner = whisker_left(np, np, phi);
    BimoduleMorphism right = whisker_left(m_np, m_np, right_inner);
    CHECK((assoc.m * left.m) == (right.m * assoc.m));
}

TEST_CASE("iso_search finds explicit isomorphisms between equal tensors") {
    Fixture fx(2);
    TensorResult t = tensor_over(fx.f[1], fx.f[2]);  // = F_1
    auto iso = iso_search(t.bim, fx.f[1]);
    REQUIRE(iso.has_value());
    CHECK(iso->is_intertwiner());
    CHECK(is_invertible(iso->m));
}

TEST_CASE("left modules over A_n: dims and representation") {
    FiniteDimAlgebra a = build_star_quotient(2);
    Bimodule p0 = left_module(a, 0);
    Bimodule p1 = left_module(a, 1);
    CHECK(p0.dim == 4);  // e0, a1, a2, c
    CHECK(p1.dim == 2);  // e1, b1
    CHECK(p0.check_representation());
    CHECK(p1.check_representation());
    CHECK(hom_space(p0, p0).dim() == 2);  // e_0 A e_0
    CHECK(hom_space(p1, p0).dim() == 1);  // Hom(Ae_1, Ae_0) = e_1 A e_0
    CHECK(hom_space(p1, p1).dim() == 1);
}
