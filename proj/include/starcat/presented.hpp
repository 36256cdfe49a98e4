#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starcat/algebra_tools.hpp"
#include "starcat/partitions.hpp"
#include "starcat/quiver.hpp"

namespace starcat {

// Words store generator ids in application order: word[0] acts first, so the
// displayed composite is word[n-1] o ... o word[0].
using Word = std::vector<int>;

struct PTerm {
    Rational coeff;
    Word word;
    friend bool operator==(const PTerm& a, const PTerm& b) {
        return a.coeff == b.coeff && a.word == b.word;
    }
};
using PExpr = std::vector<PTerm>;  // sorted by word, zero coefficients dropped

struct PGen {
    std::string name;
    int src = 0, tgt = 0;
    bool invertible = false;
    int inverse = -1;  // generator id of the formal inverse
    int prec = 0;      // precedence class for the rewriting order
};

struct Rule {
    Word lhs;
    PExpr rhs;
};

class PresentedLinearCategory {
public:
    int length_cap = 12;
    // superposition bound for completion and the confluence check; -1 means
    // use length_cap (infinite-Hom systems need a smaller bound)
    int completion_cap = -1;
    int effective_completion_cap() const { return completion_cap < 0 ? length_cap : completion_cap; }

    int add_object(const std::string& name);
    // flagging invertible adds the formal inverse and both cancellation rules
    int add_generator(const std::string& name, int src, int tgt, bool invertible = false,
                      int prec = 0);
    void add_relation(const PExpr& zero);  // homogeneous combination set to 0

    int nobjects() const { return static_cast<int>(objects_.size()); }
    const std::string& object_name(int i) const { return objects_[i]; }
    int object_by_name(const std::string& s) const;
    const std::vector<PGen>& gens() const { return gens_; }
    int gen_by_name(const std::string& s) const;
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<PExpr>& relations() const { return relations_; }

    int word_src(const Word& w, int fallback = -1) const;
    int word_tgt(const Word& w, int fallback = -1) const;
    bool composable(const Word& w) const;
    std::string word_str(const Word& w, int obj_if_empty = -1) const;

    // orient relations, then run bounded completion; returns false when the
    // completion cap was hit (system left as-is, confluence will report)
    bool build_rules(int max_new_rules = 256);

    PExpr normal_form(const PExpr& e) const;
    PExpr normal_form_word(const Word& w) const;

    struct ConfluenceReport {
        bool confluent = true;
        std::vector<std::string> failures;
    };
    ConfluenceReport check_confluence() const;

    struct HomBasis {
        std::vector<Word> words;  // irreducible words src -> tgt, length <= bound
        bool saturated = false;
    };
    HomBasis hom_basis_bounded(int src, int tgt, int bound) const;

    bool word_irreducible(const Word& w) const;

    std::string to_json() const;
    static PresentedLinearCategory from_json(const std::string& text);

private:
    std::vector<std::string> objects_;
    std::vector<PGen> gens_;
    std::vector<PExpr> relations_;
    std::vector<Rule> rules_;

    bool word_less(const Word& a, const Word& b) const;  // deglex with precedence
    std::optional<Rule> orient(const PExpr& e) const;
    PExpr reduce_once(const PTerm& t, bool& changed) const;
};

// k-linear functor between presented categories, given on generators.
struct PFunctor {
    const PresentedLinearCategory* src = nullptr;
    const PresentedLinearCategory* tgt = nullptr;
    std::vector<int> object_map;
    std::vector<PExpr> gen_map;

    PExpr apply(const PExpr& e) const;
    PExpr apply_word(const Word& w) const;
    // every relation of src maps to 0 in tgt
    bool well_defined() const;
};

// ---- concrete constructions -------------------------------------------------

// the category of indecomposable projectives of the star quotient A_n:
// objects o_0..o_n, generators a_k: o_k -> o_0 and b_k: o_0 -> o_k
PresentedLinearCategory present_star_proj(int n);

struct CoisoResult {
    PresentedLinearCategory cat;  // C^W(P)
    // ids of the adjoined generators, per adjacent pair (l-th pair of block m)
    struct PairGens {
        int u, v;                // the adjacent indices i_l^m -> i_{l+1}^m
        std::vector<int> xi_obj;  // xi(j): o_j -> o_j, j in [0, n]
        int xi_arrow;             // xi(A): o_u -> o_v
    };
    std::vector<PairGens> pairs;
};
CoisoResult coisoinserter(int n, const SetPartition& p);

struct CoequifierResult {
    PresentedLinearCategory cat;  // C^WR(P)
    std::vector<CoisoResult::PairGens> pairs;  // xi_obj entries map to identities
    PFunctor cone;                             // C^W(P) -> C^WR(P)
};
CoequifierResult coequifier(const CoisoResult& w, int n, const SetPartition& p);

// builds C^W and C^WR in one step
CoequifierResult build_CWR_presentation(int n, const SetPartition& p);

// the free coequalizer example: two functors from the free category on
// 1 -> 2 to the free category on 1 -> 2 -> 3, coequalized to a free loop
struct CoequalizerDemo {
    PresentedLinearCategory a2, a3, coeq;
    PFunctor fb, fc;    // A2 -> A3
    PFunctor cone;      // A3 -> coeq, cone(b) = cone(c) = x
};
CoequalizerDemo coequalizer_free_demo();

// truncated polynomial target T_m and the functor induced by x -> y
PresentedLinearCategory truncated_loop_category(int m);
PFunctor induced_to_truncated(const CoequalizerDemo& demo, const PresentedLinearCategory& tm);

// ---- additive/Karoubi envelope ----------------------------------------------

struct EnvelopeSummary {
    int indecomposable_count = 0;
    // one representative (object, idempotent coords over End words) per class
    struct Rep {
        int object;
        QVec idempotent;
        int block;
    };
    std::vector<Rep> idempotents;
    std::vector<std::vector<int>> hom_dims;  // saturated hom dims between objects
};

// requires every Hom space to saturate at the cap; throws otherwise
EnvelopeSummary additive_karoubi_envelope(const PresentedLinearCategory& cat, int bound);

// formal direct sum of (object, split idempotent) pairs
struct EnvelopeObject {
    std::vector<std::pair<int, PExpr>> summands;
};

// hom dimension between envelope objects, computed blockwise as the rank of
// f . Hom(X, Y) . e
int envelope_hom_dim(const PresentedLinearCategory& cat, int bound, const EnvelopeObject& a,
                     const EnvelopeObject& b);

// identity-idempotent envelope object on one generator object
EnvelopeObject envelope_of_object(int object);

}  // namespace starcat
