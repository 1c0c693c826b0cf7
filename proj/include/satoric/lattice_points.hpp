#pragma once

#include "satoric/polyhedral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace satoric {

enum class Relation { GreaterEqual, Greater, Equal };

/// <normal, m> (>= | > | =) rhs
struct Constraint
{
    RationalPoint normal;
    Rational rhs;
    Relation relation = Relation::GreaterEqual;

    bool satisfied_by(const RationalPoint& m) const;
};

/// Conjunction of linear constraints on M_Q.
class LinearSystem
{
public:
    LinearSystem() = default;
    explicit LinearSystem(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::vector<Constraint>& rows() const { return rows_; }
    bool has_strict_rows() const;

    LinearSystem& add(RationalPoint normal, Rational rhs, Relation rel);
    LinearSystem& add_ge(RationalPoint normal, Rational rhs) { return add(std::move(normal), std::move(rhs), Relation::GreaterEqual); }
    LinearSystem& add_gt(RationalPoint normal, Rational rhs) { return add(std::move(normal), std::move(rhs), Relation::Greater); }
    LinearSystem& add_eq(RationalPoint normal, Rational rhs) { return add(std::move(normal), std::move(rhs), Relation::Equal); }
    /// <normal, m> <= rhs, stored as a >= row.
    LinearSystem& add_le(const RationalPoint& normal, const Rational& rhs) { return add_ge(-normal, -rhs); }
    /// <normal, m> < rhs, stored as a > row.
    LinearSystem& add_lt(const RationalPoint& normal, const Rational& rhs) { return add_gt(-normal, -rhs); }
    LinearSystem& append(const LinearSystem& other);

    bool satisfied_by(const RationalPoint& m) const;
    bool satisfied_by(const LatticePoint& m) const { return satisfied_by(to_rational(m)); }

    /// The closed polyhedral set cut out by the system (strict rows rejected).
    static LinearSystem of_set(const PolyhedralSet& p);

private:
    std::size_t dim_ = 0;
    std::vector<Constraint> rows_;
};

enum class Sense { Minimize, Maximize };

struct LPResult
{
    enum class Status { Optimal, Unbounded, Infeasible };
    Status status = Status::Infeasible;
    Rational value;
    /// Optimal point, or a feasible point when unbounded.
    RationalPoint point;
    /// Improving recession direction when unbounded.
    RationalPoint ray;
    /// Multipliers y >= 0 (z free for equations) with sum y_i a_i = objective and
    /// sum y_i b_i = value at the optimum (objective negated when maximizing).
    RationalPoint dual;
};

/// Exact simplex; throws std::invalid_argument when the system has strict rows.
LPResult lp_optimize(const LinearSystem& sys, const RationalPoint& objective, Sense sense);

/**
 * Some lattice point satisfying every row, or nullopt when none exists.
 * Strict rows must have integer normals (std::invalid_argument otherwise).
 */
std::optional<LatticePoint> integer_point(const LinearSystem& sys);

struct Box
{
    LatticePoint lower;
    LatticePoint upper;

    static Box cube(std::size_t dim, long radius);
};

/// All lattice points of the box satisfying the system, in lexicographic order.
std::vector<LatticePoint> enumerate_points(const LinearSystem& sys, const Box& box);

struct WidthCertificate
{
    LatticePoint direction;
    Rational width;
    RationalPoint argmax;
    RationalPoint argmin;
};

/// max - min of <., e> over the points of a compact set.
Rational width_along(const PolyhedralSet& body, const LatticePoint& e);

/**
 * Minimal width over nonzero integer directions. Directions are normalized so the
 * first nonzero coordinate is positive; ties go to the smaller sup norm and then
 * to the lexicographically larger direction. Throws for unbounded bodies.
 */
WidthCertificate lattice_width(const PolyhedralSet& body);

} // namespace satoric
