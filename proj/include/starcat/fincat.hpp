#pragma once

#include <memory>
#include <string>
#include <vector>

#include "starcat/bimodule.hpp"

namespace starcat {

// A birepresentation stored strictly: a base algebra R, the underlying
// category as a list of (R, S)-bimodule objects, and the generator
// 1-morphisms as R-R bimodules acting by tensoring on the left.
struct Birepresentation {
    const FiniteDimAlgebra* base = nullptr;
    std::vector<std::shared_ptr<Bimodule>> objects;
    std::vector<std::shared_ptr<Bimodule>> gen_images;  // includes Reg at index 0
    std::vector<std::string> gen_labels;

    std::vector<const Bimodule*> object_catalog() const {
        std::vector<const Bimodule*> out;
        for (const auto& o : objects) out.push_back(o.get());
        return out;
    }
};

// Per-(generator, object) action data: the tensor G (x) O_i, its
// decomposition into objects, and the flattened piece list.
struct GenObjAction {
    TensorResult tensor;
    Decomposition dec;
    std::vector<int> pieces;   // object indices, grouped in catalog order
    std::vector<int> offsets;  // block offsets inside the decomposition sum
};

// One ideal component per object pair, as a canonical subspace of the
// hom-basis coordinate space.
struct StableIdeal {
    std::vector<std::vector<Subspace>> comp;  // comp[i][j] in Hom(O_i, O_j) coords

    bool is_zero() const;
    bool is_full(const std::vector<std::vector<int>>& hom_dims) const;
    int total_dim() const;
    friend bool operator==(const StableIdeal& a, const StableIdeal& b) = default;
};

// Cached hom bases and transported generator actions for a representation.
class RepAnalysis {
public:
    explicit RepAnalysis(const Birepresentation& rep);

    const Birepresentation& rep() const { return *rep_; }
    int nobj() const { return static_cast<int>(rep_->objects.size()); }
    int ngen() const { return static_cast<int>(rep_->gen_images.size()); }
    const HomSpaceBasis& hom(int i, int j) const { return homs_[i][j]; }
    std::vector<std::vector<int>> hom_dims() const;

    // nonnegative integer action matrix of generator g: entry (a, i) =
    // multiplicity of O_a in G (x) O_i
    Mat<Rational> action_matrix(int g) const;

    // image of f: O_i -> O_j under generator g, as a block matrix of
    // morphisms between objects: list of (src object, tgt object, matrix)
    struct Transported {
        int src_obj, tgt_obj;
        QMat m;
    };
    std::vector<Transported> transport(int g, int i, int j, const QMat& f) const;

    // evaluation (M alpha)_{O_i} of a 2-morphism alpha: G_a -> G_b (given as
    // a morphism of the generator images) at object i, transported through
    // the decompositions of G_a (x) O_i and G_b (x) O_i
    std::vector<Transported> evaluate_2morphism(int gen_a, int gen_b, const QMat& alpha,
                                                int obj_i) const;

    // smallest B-stable ideal containing the given seeds
    struct Seed {
        int i, j;
        QMat m;
    };
    StableIdeal closure(const std::vector<Seed>& seeds) const;

    StableIdeal zero_ideal() const;
    bool ideal_is_stable(const StableIdeal& I) const;  // fixpoint re-check

    // radical seeds: off-diagonal hom bases and radical of each End
    std::vector<Seed> radical_seeds() const;

    // transitivity via reachability on the action matrices
    bool is_transitive() const;

    struct SimpleTransitiveReport {
        bool transitive = false;
        bool simple = false;
        std::vector<StableIdeal> proper_nonzero;  // distinct proper closures
    };
    SimpleTransitiveReport simple_transitive_check() const;

private:
    const Birepresentation* rep_;
    std::vector<std::vector<HomSpaceBasis>> homs_;
    std::vector<std::vector<std::unique_ptr<GenObjAction>>> act_;  // [g][i]
};

}  // namespace starcat
