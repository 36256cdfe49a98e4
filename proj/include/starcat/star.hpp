#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "starcat/fincat.hpp"

namespace starcat {

// One-morphism labels of the star bicategories: index 0 = Reg, index k+1 = F_k.
struct OneMorphism {
    std::vector<int> summands;  // multiplicity per label
};

// The bicategory B~_n (over the zigzag algebra) or B_n (over the star
// quotient): the algebra, the indecomposable 1-morphisms Reg, F_0..F_n, and
// cached hom spaces / tensor decompositions between them.
class StarBicategory {
public:
    StarBicategory(int n, bool zigzag);

    int n() const { return n_; }
    bool zigzag() const { return zigzag_; }
    const FiniteDimAlgebra& algebra() const { return *alg_; }
    int nlabels() const { return n_ + 2; }  // Reg, F_0..F_n
    std::string label_name(int l) const;
    const Bimodule& gen(int l) const { return *gens_[l]; }
    std::vector<const Bimodule*> catalog() const;

    const HomSpaceBasis& hom(int a, int b) const { return homs_[a][b]; }

    // tensor of labels with the decomposition into labels (built lazily;
    // precompute serially before any parallel use)
    const GenObjAction& composition(int a, int b) const;
    OneMorphism compose_labels(int a, int b) const;

    // the canonical projection functor onto the star quotient side, on
    // 2-morphisms; only available when this is the zigzag side
    QMat quotient_transport(const StarBicategory& target, int a, int b, const QMat& f) const;

private:
    int n_;
    bool zigzag_;
    std::shared_ptr<FiniteDimAlgebra> alg_;
    std::vector<std::shared_ptr<Bimodule>> gens_;
    std::vector<std::vector<HomSpaceBasis>> homs_;
    std::vector<std::vector<std::unique_ptr<GenObjAction>>> comp_;
};

// Per-pair 2-morphism ideal of a star bicategory.
struct Biideal {
    const StarBicategory* bicat = nullptr;
    std::vector<std::vector<Subspace>> comp;  // [src label][tgt label], hom coords

    int dim(int a, int b) const { return comp[a][b].dim(); }
};

// The biideal annihilating the cell birepresentation: components k{c_k} at
// (Reg, Reg) and k{c_j (x) e_0, c_j (x) c} at (F_j, F_j) for j >= 1.
Biideal build_biideal_I(const StarBicategory& zig);

struct BiidealCheck {
    bool ok = true;
    struct Entry {
        std::string what;
        bool pass;
    };
    std::vector<Entry> certificate;
    std::string first_failure;
};

// whiskering + vertical-ideal closure verification
BiidealCheck verify_biideal(const Biideal& I);

Biideal biideal_power(const Biideal& I, int m);
int biideal_nilpotency_degree(const Biideal& I);

// dim Hom_Lambda(M,N) = dim Hom_A(QM,QN) + dim I(M,N), plus surjectivity of
// the transport, for every label pair.
struct DimIdentityReport {
    bool ok = true;
    struct Row {
        int src, tgt;
        int dim_zigzag, dim_quotient, dim_ideal;
        bool match;
        bool transport_onto;
    };
    std::vector<Row> rows;
};
DimIdentityReport quotient_dimension_identity(const StarBicategory& zig,
                                              const StarBicategory& star, const Biideal& I);

// Birepresentation builders. Objects are left modules Re_k; generator images
// include Reg first, then F_0..F_n.
Birepresentation cell_birepresentation(const StarBicategory& star);

// The defining birepresentation of the zigzag bicategory on Lambda-proj.
Birepresentation defining_birepresentation(const StarBicategory& bc);

// The subbirepresentation N of the principal birepresentation: objects are
// the bimodules F_0..F_n themselves.
Birepresentation subrep_N(const StarBicategory& star);

// Evaluation of a biideal on a birepresentation whose generators are indexed
// like the bicategory labels. `transport2` maps a 2-morphism between
// generator labels of I's bicategory to one between the representation's
// generator images (identity for the defining representation, the quotient
// functor for the cell one).
using TwoMorphismTransport =
    std::function<QMat(int src_label, int tgt_label, const QMat&)>;

StableIdeal ev_ideal(const RepAnalysis& ra, const Biideal& I, const TwoMorphismTransport& t2);

// action matrix of one generator label under a representation
QMat action_matrix(const RepAnalysis& ra, int label);

// the unique maximal stable ideal of the subrepresentation N
StableIdeal subrep_N_maximal_ideal(const RepAnalysis& ra_of_N);

// A strong transformation between analysed representations, stored through
// its concrete effect: an object map and linear maps on every hom space.
struct RepTransformation {
    const RepAnalysis* src = nullptr;
    const RepAnalysis* tgt = nullptr;
    std::vector<int> obj_map;
    std::vector<std::vector<QMat>> hom_map;  // [i][j]: src hom coords -> tgt hom coords
};

// componentwise preimage of a stable ideal; the result is stable again
StableIdeal pullback_ideal(const RepTransformation& theta, const StableIdeal& ideal_tgt);

// the cone from the cell representation over A_n onto a C^WR model over A_r,
// mapping Ae_k to A_r e_{P(k)} and transporting morphisms along the block map
RepTransformation cone_transformation(const RepAnalysis& cell, const RepAnalysis& model,
                                      const FiniteDimAlgebra& an, const FiniteDimAlgebra& ar,
                                      const std::vector<int>& block_of);

}  // namespace starcat
