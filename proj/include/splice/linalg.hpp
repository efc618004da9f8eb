#ifndef SPLICE_LINALG_HPP
#define SPLICE_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "splice/numeric.hpp"

namespace splice {

using QMatrix = std::vector<QVec>;
using IMatrix = std::vector<IVec>;

// Rank of a rational matrix by exact Gaussian elimination.
size_t matrix_rank(QMatrix m);

// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
Int bareiss_det(IMatrix m);

// Determinant of a square rational matrix: denominators are cleared per row,
// then Bareiss runs on integers.
Rat rational_det(const QMatrix& m);

// Decides feasibility of  A x = b, x >= 0  over the rationals (phase-1 simplex
// with Bland's rule; exact, always terminates). Returns a witness on success.
std::optional<QVec> nonneg_solve(const QMatrix& a, const QVec& b);

// One linear constraint: row . x  (op)  rhs with op in {-1: <=, 0: ==, 1: >=}.
struct LinConstraint {
    QVec row;
    int op = 0;
    Rat rhs;
};

// General exact feasibility for a small constraint system (free variables are
// split into differences of non-negative ones).
std::optional<QVec> feasible_point(const std::vector<LinConstraint>& cons, size_t nvars);

// Smith normal form U*A*V = D of an integer matrix. D is diagonal with
// non-negative entries d_1 | d_2 | ... ; U and V are unimodular.
struct SmithResult {
    IMatrix u, d, v;
    IVec invariant_factors;  // non-zero diagonal entries, in divisibility order
};

SmithResult smith_normal_form(IMatrix a);

IMatrix identity_matrix(size_t n);
IMatrix multiply(const IMatrix& a, const IMatrix& b);
bool is_unimodular(const IMatrix& m);

}  // namespace splice

#endif
