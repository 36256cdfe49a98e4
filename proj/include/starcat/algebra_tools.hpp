#pragma once

#include <vector>

#include "starcat/linalg.hpp"

namespace starcat {

// A finite-dimensional unital associative Q-algebra given by structure
// constants. Element = coordinate vector over the basis.
struct StructAlgebra {
    int dim = 0;
    QVec unit;                  // coordinates of 1
    std::vector<QMat> left_mult;   // left_mult[i] = matrix of x -> b_i * x
    std::vector<QMat> right_mult;  // right_mult[i] = matrix of x -> x * b_i

    QVec mul(const QVec& x, const QVec& y) const;
    QMat left_mult_of(const QVec& x) const;
    QMat right_mult_of(const QVec& x) const;
    bool is_associative() const;  // exhaustive basis-triple check
};

// Build from a full multiplication table: table[i][j] = coords of b_i * b_j.
StructAlgebra struct_algebra_from_table(const std::vector<std::vector<QVec>>& table,
                                        const QVec& unit);

// Jacobson radical over Q via the trace form t(x,y) = tr(L_x L_y).
Subspace radical_subspace(const StructAlgebra& a);

// Nilpotency degree of the radical (least m with Rad^m = 0).
int radical_nilpotency(const StructAlgebra& a);

// a is local iff dim a / Rad(a) = 1.
bool is_local(const StructAlgebra& a);

// A complete list of pairwise orthogonal primitive idempotents summing to 1.
// Split idempotents are found in the semisimple quotient and lifted by the
// Newton iteration x <- 3x^2 - 2x^3, which is exact over Q.
std::vector<QVec> primitive_idempotent_decomposition(const StructAlgebra& a);

// Number of blocks of a / Rad(a), i.e. the number of isomorphism classes of
// simple modules. Assumes the simple blocks are split (true in this project).
int block_count(const StructAlgebra& a);

// For each primitive idempotent above, the index of its block (two
// idempotents share a block iff the corresponding projectives are
// isomorphic).
std::vector<int> block_of_idempotents(const StructAlgebra& a, const std::vector<QVec>& idems);

}  // namespace starcat
