#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starcat/algebra_tools.hpp"
#include "starcat/linalg.hpp"

namespace starcat {

struct Arrow {
    std::string label;
    int src = 0, tgt = 0;
};

struct Quiver {
    int vertex_count = 0;
    std::vector<Arrow> arrows;

    void validate() const;
    int arrow_by_label(const std::string& label) const;
};

// A path stores its arrows in application order: word[0] acts first. The
// product x*y means "x after y", so x*y has word = y.word ++ x.word.
struct Path {
    std::vector<int> word;
    int src = 0, tgt = 0;

    int length() const { return static_cast<int>(word.size()); }
};

struct PathTerm {
    Rational coeff;
    Path path;
};

// Relations are linear combinations of parallel paths, set to zero. Paths of
// length >= arrow_ideal_nilpotency vanish.
struct AlgebraPresentation {
    Quiver quiver;
    std::vector<std::vector<PathTerm>> relations;
    int arrow_ideal_nilpotency = 1;
};

using LinComb = std::vector<std::pair<int, Rational>>;  // sparse coords over a basis

struct FiniteDimAlgebra {
    Quiver quiver;
    int dim = 0;

    struct BasisElem {
        Path path;           // canonical representative
        std::string name;
        int src = 0, tgt = 0;
    };
    std::vector<BasisElem> basis;
    std::vector<int> idempotent;     // vertex -> basis index of e_v
    std::vector<int> radical_basis;  // indices of positive-length basis elements

    // mult[i][j] = coordinates of basis_i * basis_j ("i after j")
    std::vector<std::vector<LinComb>> mult;

    int vertex_count() const { return quiver.vertex_count; }
    const BasisElem& elem(int i) const { return basis[i]; }
    std::optional<int> basis_index_by_name(const std::string& name) const;

    QVec coords_of_basis(int i) const;
    QVec unit() const;
    QVec mul(const QVec& x, const QVec& y) const;
    QVec mul_basis(int i, int j) const;

    // Reduce an arbitrary path to its coordinates (zero when killed).
    QVec reduce_path(const Path& p) const;

    // Peirce block e_i A e_j (tgt = i, src = j) as basis indices.
    std::vector<int> peirce(int i, int j) const;

    StructAlgebra as_struct_algebra() const;
    bool check_associativity() const;
    bool check_idempotents() const;

    // least m with Rad^m = 0 (radical = positive-length span)
    int radical_nilpotency_degree() const;

private:
    friend FiniteDimAlgebra algebra_from_presentation(const AlgebraPresentation&);
    // reduction table for every path of length < nilpotency, in enumeration order
    std::map<std::pair<int, std::vector<int>>, QVec> path_reduction_;
};

FiniteDimAlgebra algebra_from_presentation(const AlgebraPresentation& p);

AlgebraPresentation zigzag_presentation(int n);
AlgebraPresentation star_quotient_presentation(int n);

// Zigzag algebra on the star graph S_n; dim 4n+2.
FiniteDimAlgebra build_zigzag(int n);
// Star quotient A_n = Lambda_n / (leaf 2-cycles); dim 3n+2.
FiniteDimAlgebra build_star_quotient(int n);

// Three-vertex algebra from the swap-automorphism counterexample: double
// arrows 0<->1, 0<->2, arrow ideal to the fourth power, no other relations.
FiniteDimAlgebra build_remark_algebra();
AlgebraPresentation remark_algebra_presentation();

// radical basis indices + nilpotency degree
std::pair<std::vector<int>, int> radical_and_nilpotency(const FiniteDimAlgebra& a);

// The projection Lambda_n -> A_n on basis elements (c_k -> 0). More
// generally: match basis paths of `from` in `to` by reduction.
std::vector<QVec> quotient_map(const FiniteDimAlgebra& from, const FiniteDimAlgebra& to);

// JSON round trip: {vertices, arrows:[{label,src,tgt}],
// relations:[[{coeff, path:[labels]}]], nilpotency}
std::string presentation_to_json(const AlgebraPresentation& p);
AlgebraPresentation presentation_from_json(const std::string& text);

}  // namespace starcat
