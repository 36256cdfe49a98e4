#pragma once

#include <deque>
#include <optional>

#include "starcat/partitions.hpp"
#include "starcat/presented.hpp"
#include "starcat/star.hpp"

namespace starcat {

// The concrete birepresentation model of C^WR(P): base algebra A_r, objects
// Re_0..Re_r, generator Reg -> A_r and F_k -> A_r e_{P(k)} (x) e_0 A_r.
struct CWRModel {
    SetPartition partition;
    std::shared_ptr<FiniteDimAlgebra> base;  // A_r
    Birepresentation rep;
};

CWRModel build_CWR_model(int n, const SetPartition& p);

// labelled action matrices: rows of F_k and F_k' agree iff P(k) = P(k')
bool rows_match_partition(const RepAnalysis& ra, const SetPartition& p);

// no simultaneous object permutation identifies the labelled matrices
bool action_matrices_equivalent(const std::vector<QMat>& a, const std::vector<QMat>& b);

struct ClassEntry {
    SetPartition partition;
    int rank = 0;
    std::vector<QMat> action_matrices;  // per label Reg, F_0..F_n
    bool simple_transitive = false;
    bool transitive = false;
    bool presentation_checked = false;
    bool presentation_consistent = false;
};

struct ClassificationReport {
    int n = 0;
    long bell = 0;
    std::vector<ClassEntry> classes;
    bool pairwise_inequivalent = false;
    bool ok = false;
};

// full pipeline: models, certificates, pairwise inequivalence
ClassificationReport classify(int n, bool with_presentations = true);

std::string classification_report_json(const ClassificationReport& rep);

// dual-pipeline cross-check of the presented C^WR(P) against the bimodule
// model: confluence, saturation, hom dims along the block map, envelope
// class count r+1, and the transversal restriction being an equivalence
bool consistency_CWR_presentation_vs_model(int n, const SetPartition& p, std::string* why = nullptr);

// ---- s-modifications ---------------------------------------------------------

// Workspace for modifications between the transformationsteta_j = - (x) Ae_j
// restricted to the subrepresentation N on {F_0..F_n} over A_n.
class ModificationLab {
public:
    explicit ModificationLab(int n);

    int n() const { return n_; }
    const StarBicategory& star() const { return *star_; }

    // component family of a modification theta_j|N -> theta_k|N, one matrix
    // per object F_0..F_n acting F_l (x) Ae_j -> F_l (x) Ae_k
    struct Modification {
        int j = 0, k = 0;
        std::vector<QMat> comp;
    };

    // the canonical s_{j,k} = (c^k)^{-1} (. a_k)^{-1} (. a_j) c^j
    Modification build_s(int j, int k) const;

    struct AxiomReport {
        bool ok = true;
        std::string first_failure;
        int squares_checked = 0;
    };
    // naturality on hom bases + the associator square over all generator
    // pairs (M, N)
    AxiomReport check_modification_axiom(const Modification& m) const;

    // all families satisfying naturality + the axiom, as a subspace of the
    // stacked component coordinates
    Subspace modification_space(int j, int k) const;

    // unique lambda with m2 = lambda * m1 on every component; nullopt when no
    // single scalar fits
    std::optional<Rational> scalar_proportionality(const Modification& m1,
                                                   const Modification& m2) const;

    Modification scale(const Modification& m, const Rational& c) const;
    // divide t2 by the unique scalar against the reference, giving equality
    Modification normalize_modification(const Modification& t2, const Modification& ref) const;

    const TensorResult& obj_tensor(int l, int j) const { return *tens_[l][j]; }

private:
    int n_;
    std::unique_ptr<StarBicategory> star_;
    std::vector<std::shared_ptr<Bimodule>> modules_;            // Ae_j, j in 0..n
    std::vector<std::vector<std::unique_ptr<TensorResult>>> tens_;  // [obj l][j]
};

// ---- the functor family T and the chi invariant ------------------------------

// A faithful functor A_n-proj -> A_r-proj prescribed by a partition:
// a_i -> lambda_i a_{P(i)}, b_i -> mu_i b_{P(i)}, c -> chi c.
struct TFunctor {
    int n = 0;
    SetPartition p;
    std::vector<Rational> lambda, mu;  // index 1..n

    Rational chi() const;  // throws unless lambda_i mu_i is constant nonzero
};

TFunctor make_tfunctor(int n, const SetPartition& p, const Rational& chi);

// natural transformations F -> F2 as a subspace over the component
// coordinates (x, y at Ae_0; z_l at Ae_l); reports whether an invertible one
// exists (x can be nonzero)
struct NatSpace {
    Subspace space;
    bool has_invertible = false;
};
NatSpace natural_transformation_space(const TFunctor& f, const TFunctor& g);

// ---- refinement transformations ----------------------------------------------

// functor C^WR(fine) -> C^WR(coarse) mapping xi generators to xi chains
PFunctor refinement_transformation(const CoequifierResult& fine, const SetPartition& pfine,
                                   const CoequifierResult& coarse, const SetPartition& pcoarse);

// composite through the middle equals the direct functor on every generator
bool refinement_composition_agrees(int n, const SetPartition& p0, const SetPartition& p1,
                                   const SetPartition& p2);
// same, over prebuilt presentations
bool refinement_composition_agrees(const CoequifierResult& c0, const SetPartition& p0,
                                   const CoequifierResult& c1, const SetPartition& p1,
                                   const CoequifierResult& c2, const SetPartition& p2);

// ---- naturality counterexample ------------------------------------------------

struct NaturalityVerdict {
    bool passes = false;
    std::string witness_lhs, witness_rhs;  // images that disagree when failing
};

// checks whether the leaf swap j <-> k extends to a natural transformation
// - (x) Re_j -> - (x) Re_k on add{e_0 R}; the three-vertex double-arrow
// algebra fails with witness (b1a1b2, b2a2b2), star algebras pass
NaturalityVerdict swap_naturality_check(const FiniteDimAlgebra& alg, int j, int k);

}  // namespace starcat
