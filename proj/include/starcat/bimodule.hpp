#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starcat/algebra_tools.hpp"
#include "starcat/quiver.hpp"

namespace starcat {

// A finite-dimensional bimodule over a pair of path-algebra quotients. The
// basis is vertex-homogeneous: idempotents act diagonally through the lv/rv
// tags, and only the arrow actions are stored as matrices.
struct Bimodule {
    const FiniteDimAlgebra* left = nullptr;
    const FiniteDimAlgebra* right = nullptr;
    int dim = 0;
    std::vector<int> lv, rv;
    std::vector<QMat> left_arrow;   // per arrow of the left quiver
    std::vector<QMat> right_arrow;  // per arrow of the right quiver
    std::vector<std::string> basis_names;
    // for projective bimodules Ae_i (x) e_jA: the (left, right) algebra
    // basis indices of each pure-tensor basis element
    std::vector<std::pair<int, int>> pair_basis;
    std::string label;

    QMat left_idempotent(int v) const;
    QMat right_idempotent(int v) const;
    // action of an arbitrary algebra element (coordinates over the basis)
    QMat left_action(const QVec& x) const;
    QMat right_action(const QVec& x) const;
    QMat left_action_of_basis(int i) const;
    QMat right_action_of_basis(int i) const;

    bool check_representation() const;  // relations + commuting actions
};

struct BimoduleMorphism {
    const Bimodule* src = nullptr;
    const Bimodule* tgt = nullptr;
    QMat m;  // dim(tgt) x dim(src)

    bool is_intertwiner() const;
};

BimoduleMorphism identity_morphism(const Bimodule& m);
BimoduleMorphism compose(const BimoduleMorphism& g, const BimoduleMorphism& f);  // g after f
std::optional<BimoduleMorphism> invert(const BimoduleMorphism& f);

// Canonical basis of the intertwiner space Hom(M, N), computed as the kernel
// of the linear intertwining system over the vertex-matched unknowns.
struct HomSpaceBasis {
    const Bimodule* src = nullptr;
    const Bimodule* tgt = nullptr;
    std::vector<QMat> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    // coordinates of an intertwiner in this basis; throws if not in the span
    QVec coords(const QMat& f) const;
    QMat from_coords(const QVec& c) const;
};

HomSpaceBasis hom_space(const Bimodule& m, const Bimodule& n);

// End(M) as a structure-constant algebra (basis = hom_space(M, M)).
StructAlgebra endomorphism_algebra(const Bimodule& m, const HomSpaceBasis& end_basis);

Bimodule regular_bimodule(const FiniteDimAlgebra& a);
Bimodule projective_bimodule(const FiniteDimAlgebra& a, int i, int j);
// Ae_v as an A-k bimodule (left module); the right algebra is the trivial
// one-vertex algebra shared via field_algebra().
const FiniteDimAlgebra& field_algebra();
Bimodule left_module(const FiniteDimAlgebra& a, int v);

struct DirectSum {
    Bimodule sum;
    std::vector<BimoduleMorphism> inject;   // block -> sum
    std::vector<BimoduleMorphism> project;  // sum -> block
};
DirectSum direct_sum(const std::vector<const Bimodule*>& blocks);

// M (x)_A N realized as the quotient of the vertex-matched span of pure
// tensors by the arrow relations m*g (x) n - m (x) g*n.
struct TensorResult {
    Bimodule bim;
    const Bimodule* m = nullptr;
    const Bimodule* n = nullptr;
    std::vector<std::pair<int, int>> matched;          // lex-ordered pure pairs
    std::map<std::pair<int, int>, int> matched_id;
    std::vector<int> rep_matched;                      // quotient basis -> matched index
    // canonical reduction of a matched-span vector to quotient coordinates
    QVec project(const std::map<int, Rational>& matched_vec) const;
    QVec project_pure(int mi, int ni) const;

    // internal: fully reduced relation rows keyed by pivot
    std::map<int, std::map<int, Rational>> relation_rows;
    std::vector<int> rep_of_col;  // matched index -> quotient index or -1
};

TensorResult tensor_over(const Bimodule& m, const Bimodule& n);

// id_G (x) f and f (x) id_G on prepared tensor structures
BimoduleMorphism whisker_left(const TensorResult& src, const TensorResult& tgt,
                              const BimoduleMorphism& f);  // G fixed, f on the right factor
BimoduleMorphism whisker_right(const TensorResult& src, const TensorResult& tgt,
                               const BimoduleMorphism& f);  // f on the left factor

// canonical (M (x) N) (x) P -> M (x) (N (x) P)
BimoduleMorphism associator(const TensorResult& mn, const TensorResult& mn_p,
                            const TensorResult& np, const TensorResult& m_np);

// canonical unit collapses Reg (x) M -> M and M (x) Reg -> M
BimoduleMorphism unit_collapse_left(const TensorResult& reg_m);
BimoduleMorphism unit_collapse_right(const TensorResult& m_reg);

struct Decomposition {
    std::vector<int> multiplicity;      // per catalog entry
    std::shared_ptr<Bimodule> sum;      // stable address; witnesses point at it
    BimoduleMorphism from_sum;          // sum -> M, invertible
    BimoduleMorphism to_sum;            // M -> sum, the inverse
};

// Krull-Schmidt decomposition against a catalog of indecomposables, with an
// explicit pair of mutually inverse intertwiners as witness. Throws
// DecomposeError when a summand matches nothing in the catalog.
struct DecomposeError : std::runtime_error {
    std::vector<int> residual_dims;
    explicit DecomposeError(const std::string& what, std::vector<int> dims)
        : std::runtime_error(what), residual_dims(std::move(dims)) {}
};

Decomposition decompose(const Bimodule& m, const std::vector<const Bimodule*>& catalog);

// Direct summand cut out by an idempotent intertwiner e: basis of im(e),
// induced actions, and the inclusion/projection pair.
struct Summand {
    std::shared_ptr<Bimodule> sub;
    BimoduleMorphism inject;   // sub -> m
    BimoduleMorphism project;  // m -> sub
};
Summand summand_of_idempotent(const Bimodule& m, const QMat& e);

// Split into indecomposable summands via primitive idempotents of End(m).
std::vector<Summand> split_indecomposables(const Bimodule& m);

bool is_indecomposable(const Bimodule& m);

// deterministic search for an invertible intertwiner M -> N
std::optional<BimoduleMorphism> iso_search(const Bimodule& m, const Bimodule& n);

}  // namespace starcat
