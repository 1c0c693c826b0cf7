#pragma once

#include "satoric/linalg.hpp"
#include "satoric/rational.hpp"

#include <cstdint>
#include <vector>

namespace satoric {

/**
 * A free lattice of finite rank. The tag distinguishes N from M and from
 * lattices derived by quotients; `dual().dual()` compares equal to the original.
 */
class Lattice
{
public:
    /// A fresh lattice with its own identity.
    static Lattice make(std::size_t rank);

    std::size_t rank() const { return rank_; }
    Lattice dual() const;
    bool is_dual_side() const { return dual_; }

    bool operator==(const Lattice& other) const = default;

private:
    Lattice(std::size_t rank, std::uint64_t id, bool dual) : rank_(rank), id_(id), dual_(dual) {}

    std::size_t rank_;
    std::uint64_t id_;
    bool dual_;
};

/// Duality pairing <m, e>; throws DimensionError on rank mismatch.
Rational pairing(const RationalPoint& m, const RationalPoint& e);

/// v / gcd(|v_i|). Throws std::invalid_argument for the zero vector.
LatticePoint primitive(const LatticePoint& v);

/// Integer matrix of a homomorphism Z^source -> Z^target.
class LatticeMap
{
public:
    enum class Kind { Projection, Inclusion, General };

    LatticeMap() = default;
    LatticeMap(IntegerMatrix matrix, std::size_t source_rank, Kind kind = Kind::General);

    static LatticeMap identity(std::size_t rank);

    const IntegerMatrix& matrix() const { return matrix_; }
    std::size_t source_rank() const { return source_rank_; }
    std::size_t target_rank() const { return matrix_.size(); }
    Kind kind() const { return kind_; }

    LatticePoint apply(const LatticePoint& e) const;
    RationalPoint apply(const RationalPoint& e) const;
    /// Transpose map on duals: M_target -> M_source.
    RationalPoint pullback(const RationalPoint& m) const;
    LatticePoint pullback(const LatticePoint& m) const;

    std::vector<Integer> elementary_divisors() const;
    /// Surjective over Z: full row rank with every elementary divisor equal to 1.
    bool is_surjective() const;

private:
    IntegerMatrix matrix_;
    std::size_t source_rank_ = 0;
    Kind kind_ = Kind::General;
};

/**
 * N' = N / (saturation of the span of the kernel generators).
 * `section` holds lifts s_j of the basis of N' (projection(s_j) = e_j) and
 * `kernel_basis` a basis of the saturated kernel; together they form a basis of N.
 */
struct Quotient
{
    Lattice lattice;
    LatticeMap projection;
    IntegerMatrix kernel_basis;
    IntegerMatrix section;

    /// Coordinates in M' of a point of M lying in ker(projection)^perp.
    RationalPoint dual_coordinates(const RationalPoint& m) const;
    /// Whether m in M_Q is orthogonal to the kernel, i.e. lies in M'_Q.
    bool in_dual_sublattice_span(const RationalPoint& m) const;
};

/// Throws std::invalid_argument when the generators are linearly dependent.
Quotient quotient_lattice(const Lattice& n, const std::vector<LatticePoint>& kernel_generators);

} // namespace satoric
