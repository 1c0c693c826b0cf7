#pragma once

#include "satoric/rational.hpp"

#include <optional>
#include <vector>

namespace satoric {

/// Row-major matrices; every row has the same length.
using RationalMatrix = std::vector<RationalPoint>;
using IntegerMatrix = std::vector<LatticePoint>;

std::size_t rank(const RationalMatrix& rows);
std::size_t rank(const IntegerMatrix& rows);

/// Basis of {x : rows * x = 0} in Q^cols.
std::vector<RationalPoint> nullspace(const RationalMatrix& rows, std::size_t cols);

/// Some solution of rows * x = rhs (free variables set to zero), if one exists.
std::optional<RationalPoint> solve(const RationalMatrix& rows, const RationalPoint& rhs,
                                   std::size_t cols);

/// Inverse of a square rational matrix; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& square);

RationalMatrix transpose(const RationalMatrix& m, std::size_t cols);
IntegerMatrix transpose(const IntegerMatrix& m, std::size_t cols);
IntegerMatrix identity_matrix(std::size_t n);
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t inner,
                       std::size_t cols);

/**
 * Smith normal form U * A * V = D with U, V unimodular and D diagonal,
 * d_1 | d_2 | ... and all d_i >= 0.
 */
struct SmithForm
{
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;
    std::size_t rank = 0;

    /// Nonzero diagonal entries of D, in order.
    std::vector<Integer> elementary_divisors() const;
};

SmithForm smith_normal_form(const IntegerMatrix& a, std::size_t cols);

/// Row-style Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
IntegerMatrix hermite_normal_form(const IntegerMatrix& rows, std::size_t cols);

/// Saturated basis (in Hermite normal form) of {x in Z^cols : rows * x = 0}.
IntegerMatrix integer_kernel(const RationalMatrix& rows, std::size_t cols);

/// Inverse of a unimodular integer matrix.
IntegerMatrix unimodular_inverse(const IntegerMatrix& u);

} // namespace satoric
