#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "starcat/presented.hpp"

using namespace starcat;

TEST_CASE("star projective category: hom dims match Peirce blocks") {
    for (int n = 1; n <= 3; ++n) {
        PresentedLinearCategory cat = present_star_proj(n);
        CHECK(cat.check_confluence().confluent);
        FiniteDimAlgebra a = build_star_quotient(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                auto h = cat.hom_basis_bounded(i, j, 8);
                CHECK(h.saturated);
                CHECK(h.words.size() == a.peirce(i, j).size());
            }
    }
}

TEST_CASE("normal form: identity word, idempotence on random expressions") {
    PresentedLinearCategory cat = present_star_proj(2);
    PExpr id{{Rational::one(), Word{}}};
    CHECK(cat.normal_form(id) == id);

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-3, 3);
    int a1 = cat.gen_by_name("a1"), b1 = cat.gen_by_name("b1");
    int a2 = cat.gen_by_name("a2"), b2 = cat.gen_by_name("b2");
    std::vector<Word> pool{{b1, a1}, {b2, a2}, {b1, a1, b1, a1}, {a1}, {a1, b2}, {b2}};
    (void)pool;
    for (int t = 0; t < 5000; ++t) {
        // random combination of parallel-ish words: restrict to End(o_0)
        PExpr e;
        e.push_back({Rational(coeff(rng)), Word{b1, a1}});
        e.push_back({Rational(coeff(rng)), Word{b2, a2}});
        e.push_back({Rational(coeff(rng)), Word{}});
        PExpr nf = cat.normal_form(e);
        CHECK(cat.normal_form(nf) == nf);
    }
}

TEST_CASE("CWR presentation: relation instance and hom dims, n=2 merge") {
    SetPartition p = SetPartition::from_blocks(2, {{0}, {1, 2}});
    CoequifierResult r = build_CWR_presentation(2, p);
    CHECK(r.cat.check_confluence().confluent);
    REQUIRE(r.pairs.size() == 1);
    int xa = r.pairs[0].xi_arrow;
    int b1 = r.cat.gen_by_name("b1"), b2 = r.cat.gen_by_name("b2");
    int a1 = r.cat.gen_by_name("a1"), a2 = r.cat.gen_by_name("a2");
    // b_2 = xi(A) b_1 and a_2 xi(A) = a_1 as normal forms
    CHECK(r.cat.normal_form_word(Word{b1, xa}) == r.cat.normal_form_word(Word{b2}));
    CHECK(r.cat.normal_form_word(Word{xa, a2}) == r.cat.normal_form_word(Word{a1}));
    // hom dims match A_1 blocks under the block map {0}->0, {1,2}->1
    FiniteDimAlgebra a_r = build_star_quotient(1);
    auto blk = [&](int j) { return p.block_of[j]; };
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            auto h = r.cat.hom_basis_bounded(i, j, 10);
            CHECK(h.saturated);
            CHECK(h.words.size() == a_r.peirce(blk(i), blk(j)).size());
        }
    // Hom(Ae_1, Ae_2) is exactly the xi word
    auto h12 = r.cat.hom_basis_bounded(1, 2, 10);
    REQUIRE(h12.words.size() == 1);
    CHECK(h12.words[0] == Word{xa});
}

TEST_CASE("CWR hom dims for every partition, n <= 3") {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& p : enumerate_partitions(n)) {
            CoequifierResult r = build_CWR_presentation(n, p);
            CHECK(r.cat.check_confluence().confluent);
            FiniteDimAlgebra a_r = build_star_quotient(std::max(p.rank(), 1));
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    auto h = r.cat.hom_basis_bounded(i, j, 12);
                    CHECK(h.saturated);
                    if (p.rank() >= 1)
                        CHECK(h.words.size() ==
                              a_r.peirce(p.block_of[i], p.block_of[j]).size());
                }
        }
    }
}

TEST_CASE("coisoinserter: counts, relation instance, End(o_0) does not saturate") {
    SetPartition p = SetPartition::from_blocks(2, {{0}, {1, 2}});
    CoisoResult w = coisoinserter(2, p);
    REQUIRE(w.pairs.size() == 1);
    // 4 invertible generators: xi(0), xi(1), xi(2), xi(A)
    CHECK(w.pairs[0].xi_obj.size() == 3);
    // relation instance: b_2 xi(0) = xi(A) b_1
    int x0 = w.pairs[0].xi_obj[0], xa = w.pairs[0].xi_arrow;
    int b1 = w.cat.gen_by_name("b1"), b2 = w.cat.gen_by_name("b2");
    CHECK(w.cat.normal_form_word(Word{x0, b2}) == w.cat.normal_form_word(Word{b1, xa}));
    // End(Ae_0) keeps producing xi(0) powers: not saturated
    auto h = w.cat.hom_basis_bounded(0, 0, 8);
    CHECK(!h.saturated);
    // c commutes with xi(0)
    int a1 = w.cat.gen_by_name("a1");
    Word c{b1, a1};
    Word cx = c;
    cx.insert(cx.begin(), x0);  // apply xi(0) then c
    Word xc = c;
    xc.push_back(x0);
    CHECK(w.cat.normal_form_word(cx) == w.cat.normal_form_word(xc));
}

TEST_CASE("discrete partition: coisoinserter adds nothing") {
    SetPartition p = SetPartition::from_blocks(2, {{0}, {1}, {2}});
    CoisoResult w = coisoinserter(2, p);
    CHECK(w.pairs.empty());
    PresentedLinearCategory base = present_star_proj(2);
    CHECK(w.cat.gens().size() == base.gens().size());
}

TEST_CASE("coequalizer demo: cone identifies b and c; x^m stay distinct") {
    CoequalizerDemo d = coequalizer_free_demo();
    int gb = d.a3.gen_by_name("b"), gc = d.a3.gen_by_name("c");
    CHECK(d.cone.apply_word(Word{gb}) == d.cone.apply_word(Word{gc}));
    CHECK(d.cone.well_defined());
    int gx = d.coeq.gen_by_name("x");
    std::set<std::vector<int>> forms;
    for (int m = 1; m <= 10; ++m) {
        Word xm(m, gx);
        PExpr nf = d.coeq.normal_form_word(xm);
        REQUIRE(nf.size() == 1);
        forms.insert(nf[0].word);
    }
    CHECK(forms.size() == 10);
    CHECK(!d.coeq.hom_basis_bounded(0, 0, 10).saturated);

    // factoring through T_m: induced sends x -> y with y^m = 0
    PresentedLinearCategory t3 = truncated_loop_category(3);
    PFunctor ind = induced_to_truncated(d, t3);
    CHECK(ind.well_defined());
    Word x3(3, gx);
    CHECK(ind.apply_word(x3).empty());
    Word x2(2, gx);
    CHECK(!ind.apply_word(x2).empty());
    // the composite agrees with T_m on the generators of A_3
    PExpr via = ind.apply(d.cone.apply_word(Word{gb}));
    PExpr direct{{Rational::one(), Word{t3.gen_by_name("y")}}};
    CHECK(via == t3.normal_form(direct));
}

TEST_CASE("envelope: A_n projectives give n+1 classes; k x k splits in two") {
    for (int n = 1; n <= 2; ++n) {
        PresentedLinearCategory cat = present_star_proj(n);
        EnvelopeSummary env = additive_karoubi_envelope(cat, 8);
        CHECK(env.indecomposable_count == n + 1);
    }
    // one object with End = k x k via a split idempotent p
    PresentedLinearCategory kk;
    kk.add_object("X");
    int p = kk.add_generator("p", 0, 0);
    kk.add_relation({{Rational::one(), Word{p, p}}, {Rational(-1), Word{p}}});
    REQUIRE(kk.build_rules());
    EnvelopeSummary env = additive_karoubi_envelope(kk, 8);
    CHECK(env.indecomposable_count == 2);
}

TEST_CASE("envelope of CWR matches A_r-proj in classes and hom dims") {
    for (int n = 1; n <= 2; ++n)
        for (const auto& p : enumerate_partitions(n)) {
            CoequifierResult r = build_CWR_presentation(n, p);
            EnvelopeSummary env = additive_karoubi_envelope(r.cat, 12);
            CHECK(env.indecomposable_count == p.rank() + 1);
        }
}

TEST_CASE("envelope refuses non-saturated homs") {
    CoequalizerDemo d = coequalizer_free_demo();
    CHECK_THROWS(additive_karoubi_envelope(d.coeq, 8));
}

TEST_CASE("presentation JSON round trip") {
    PresentedLinearCategory cat = present_star_proj(2);
    std::string text = cat.to_json();
    PresentedLinearCategory back = PresentedLinearCategory::from_json(text);
    CHECK(back.nobjects() == cat.nobjects());
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            CHECK(back.hom_basis_bounded(i, j, 8).words.size() ==
                  cat.hom_basis_bounded(i, j, 8).words.size());
}

TEST_CASE("cap breach reports instead of looping") {
    // x with rule x -> x^2 would not terminate; the orientation guard
    // rejects building such a rule set, so force it manually via relation
    // x^2 = x then query a long word: terminates fine instead
    PresentedLinearCategory cat;
    cat.add_object("X");
    int x = cat.add_generator("x", 0, 0);
    cat.add_relation({{Rational::one(), Word{x, x}}, {Rational(-1), Word{x}}});
    REQUIRE(cat.build_rules());
    Word w(40, x);
    PExpr nf = cat.normal_form_word(w);
    REQUIRE(nf.size() == 1);
    CHECK(nf[0].word == Word{x});
}

TEST_CASE("C^W End(Ae_0): reduced xi(0)-group words times an optional c") {
    SetPartition p = SetPartition::from_blocks(3, {{0}, {1, 2, 3}});
    CoisoResult w = coisoinserter(3, p);
    REQUIRE(w.pairs.size() == 2);
    std::set<int> xi0s;
    for (const auto& pg : w.pairs) {
        xi0s.insert(pg.xi_obj[0]);
        xi0s.insert(w.cat.gens()[pg.xi_obj[0]].inverse);
    }
    int a1 = w.cat.gen_by_name("a1"), b1 = w.cat.gen_by_name("b1");
    auto h = w.cat.hom_basis_bounded(0, 0, 6);
    CHECK(!h.saturated);
    int with_c = 0, pure = 0;
    for (const auto& word : h.words) {
        size_t pos = 0;
        // optional hub loop applied first
        if (word.size() >= 2 && word[0] == b1 && word[1] == a1) {
            pos = 2;
            ++with_c;
        } else {
            ++pure;
        }
        for (size_t k = pos; k < word.size(); ++k) {
            CHECK(xi0s.count(word[k]) == 1);
            if (k + 1 < word.size()) {
                // group-reduced: no adjacent cancellation
                CHECK(w.cat.gens()[word[k]].inverse != word[k + 1]);
                CHECK(w.cat.gens()[word[k + 1]].inverse != word[k]);
            }
        }
    }
    CHECK(with_c > 1);
    CHECK(pure > 1);
}

TEST_CASE("envelope objects: comparison functor is full and faithful; k x k splits") {
    PresentedLinearCategory cat = present_star_proj(2);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            CHECK(envelope_hom_dim(cat, 8, envelope_of_object(i), envelope_of_object(j)) ==
                  static_cast<int>(cat.hom_basis_bounded(i, j, 8).words.size()));
    // End = k x k: the two split pieces have End of dim 1 and no cross homs
    PresentedLinearCategory kk;
    kk.add_object("X");
    int p = kk.add_generator("p", 0, 0);
    kk.add_relation({{Rational::one(), Word{p, p}}, {Rational(-1), Word{p}}});
    REQUIRE(kk.build_rules());
    EnvelopeObject ep, eq;
    ep.summands.push_back({0, {{Rational::one(), Word{p}}}});
    eq.summands.push_back({0, {{Rational::one(), Word{}}, {Rational(-1), Word{p}}}});
    CHECK(envelope_hom_dim(kk, 8, ep, ep) == 1);
    CHECK(envelope_hom_dim(kk, 8, eq, eq) == 1);
    CHECK(envelope_hom_dim(kk, 8, ep, eq) == 0);
    CHECK(envelope_hom_dim(kk, 8, eq, ep) == 0);
    // the formal sum recovers the whole End
    EnvelopeObject both;
    both.summands = {ep.summands[0], eq.summands[0]};
    CHECK(envelope_hom_dim(kk, 8, both, both) == 2);
}

TEST_CASE("coequifier cone functor is well defined") {
    SetPartition p = SetPartition::from_blocks(2, {{0}, {1, 2}});
    CoisoResult w = coisoinserter(2, p);
    CoequifierResult r = coequifier(w, 2, p);
    CHECK(r.cone.well_defined());
    // cone sends xi(j) to the identity
    int x0 = w.pairs[0].xi_obj[0];
    PExpr img = r.cone.apply_word(Word{x0});
    REQUIRE(img.size() == 1);
    CHECK(img[0].word.empty());
    CHECK(img[0].coeff.is_one());
}

TEST_CASE("C^WR rewriting is confluent for every partition at n = 4") {
    for (const auto& p : enumerate_partitions(4)) {
        CoequifierResult r = build_CWR_presentation(4, p);
        CHECK(r.cat.check_confluence().confluent);
        // C^W completes at its own bound as well
        CoisoResult w = coisoinserter(4, p);
        CHECK(w.cat.check_confluence().confluent);
    }
}
