#pragma once

#include "satoric/cone.hpp"
#include "satoric/lattice.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace satoric {

/// Closed half-space {m : <m, normal> >= rhs} (or a hyperplane when used as an equation).
struct HalfSpace
{
    LatticePoint normal;
    Rational rhs;

    bool operator==(const HalfSpace&) const = default;
};

/**
 * Rational polyhedral set K + C in M_Q, C = sigma^vee the recession cone.
 *
 * K is stored in minimal form: one point per minimal face of the set, each the
 * orthogonal projection of that face onto the complement of the lineality space.
 * When C is pointed these are exactly the vertices. Points are sorted
 * lexicographically, so equal sets compare equal.
 */
class PolyhedralSet
{
public:
    PolyhedralSet() = default;

    /// conv(points) + recession with redundant points removed. Throws on an empty list.
    static PolyhedralSet from_points(const std::vector<RationalPoint>& points, const Cone& recession);
    /// {m : <m,a> >= b for every half-space, <m,q> = c for every equation}; throws if empty.
    static PolyhedralSet from_inequalities(std::size_t dim, const std::vector<HalfSpace>& halfspaces,
                                           const std::vector<HalfSpace>& equations = {});

    std::size_t ambient_dim() const { return ambient_; }
    /// Dimension of the affine hull.
    std::size_t dim() const { return ambient_ - equations_.size(); }
    bool is_compact() const { return recession_.rays().empty() && recession_.is_pointed(); }

    const std::vector<RationalPoint>& points() const { return points_; }
    const Cone& recession() const { return recession_; }
    /// Irredundant inequality description. Normals lie in sigma, the dual of the recession cone.
    const std::vector<HalfSpace>& facets() const { return facets_; }
    const std::vector<HalfSpace>& equations() const { return equations_; }

    bool contains(const RationalPoint& m) const;
    bool in_relative_interior(const RationalPoint& m) const;

    PolyhedralSet translate(const RationalPoint& m) const;
    /// t * P for t > 0.
    PolyhedralSet scale(const Rational& t) const;

    bool operator==(const PolyhedralSet& other) const;

private:
    std::size_t ambient_ = 0;
    std::vector<RationalPoint> points_;
    Cone recession_;
    std::vector<HalfSpace> facets_;
    std::vector<HalfSpace> equations_;

    static PolyhedralSet from_homogeneous(std::size_t dim, const Cone& cone, const Cone& recession);
};

/// Minkowski sum.
PolyhedralSet operator+(const PolyhedralSet& a, const PolyhedralSet& b);

/// Same as PolyhedralSet::from_points.
PolyhedralSet minimal_K(const std::vector<RationalPoint>& points, const Cone& recession);

/**
 * h(e) = min over points of <p, e> on the cone `domain`. Positively homogeneous
 * and upper convex by construction.
 */
class SupportFunction
{
public:
    SupportFunction() = default;
    SupportFunction(Cone domain, std::vector<RationalPoint> points);

    const Cone& domain() const { return domain_; }
    const std::vector<RationalPoint>& points() const { return points_; }
    std::size_t ambient_dim() const { return domain_.ambient_dim(); }

    /// Throws std::domain_error when e is outside the domain.
    Rational operator()(const RationalPoint& e) const;
    Rational operator()(const LatticePoint& e) const { return (*this)(to_rational(e)); }
    /// Lexicographically smallest point attaining the minimum at e.
    RationalPoint argmin(const RationalPoint& e) const;

private:
    Cone domain_;
    std::vector<RationalPoint> points_;
};

Cone dualize(const Cone& c);
Rational support_eval(const SupportFunction& h, const RationalPoint& e);
SupportFunction support_of_set(const PolyhedralSet& p);
PolyhedralSet set_from_support(const SupportFunction& h);
SupportFunction operator+(const SupportFunction& a, const SupportFunction& b);

/**
 * Finite fan given by its maximal cones. Rays are primitive and sorted
 * lexicographically, each cone is a sorted list of ray indices, and the cone
 * list is sorted. A cone with nontrivial lineality lists +l and -l among its rays.
 */
class Fan
{
public:
    Fan() = default;

    static Fan from_rays(std::size_t dim, const IntegerMatrix& rays,
                         const std::vector<std::vector<std::size_t>>& cones);
    static Fan from_cones(std::size_t dim, const std::vector<Cone>& cones);
    /// The fan of all 2^n closed coordinate orthants.
    static Fan orthants(std::size_t dim);
    /// One-cone fan.
    static Fan single(const Cone& c);

    std::size_t ambient_dim() const { return ambient_; }
    const IntegerMatrix& rays() const { return rays_; }
    const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
    const Cone& support() const { return support_; }
    const Cone& cone(std::size_t i) const { return cone_cache_[i]; }
    std::size_t size() const { return cones_.size(); }

    bool is_simplicial() const;
    bool is_pointed() const;
    std::optional<std::size_t> locate(const RationalPoint& e) const;
    std::optional<std::size_t> ray_index(const LatticePoint& r) const;

    /// Empty string if the cones form a fan with the declared convex support, else a reason.
    std::string validate() const;

    bool operator==(const Fan& other) const
    {
        return ambient_ == other.ambient_ && rays_ == other.rays_ && cones_ == other.cones_;
    }

private:
    std::size_t ambient_ = 0;
    IntegerMatrix rays_;
    std::vector<std::vector<std::size_t>> cones_;
    Cone support_;
    std::vector<Cone> cone_cache_;
};

/// Full-dimensional pieces of the pairwise intersections.
Fan common_refinement(const Fan& a, const Fan& b);

/**
 * Pulling triangulation of every cone, rays taken in the fan's (lexicographic)
 * order; adds no rays and is consistent on shared faces. Non-pointed cones are
 * first cut by the coordinate orthants.
 */
Fan triangulate(const Fan& f);

/// Function on a simplicial fan, linear on each cone, given by its values on the rays.
class PiecewiseLinear
{
public:
    PiecewiseLinear() = default;
    PiecewiseLinear(Fan fan, std::vector<Rational> values);
    static PiecewiseLinear from_function(const Fan& simplicial,
                                         const std::function<Rational(const LatticePoint&)>& f);
    static PiecewiseLinear from_support(const SupportFunction& h);

    const Fan& fan() const { return fan_; }
    const std::vector<Rational>& values() const { return values_; }
    /// Linear form agreeing with the function on cone i.
    const RationalPoint& linear_form(std::size_t i) const { return forms_[i]; }

    /// Throws std::domain_error outside the support.
    Rational operator()(const RationalPoint& e) const;
    Rational operator()(const LatticePoint& e) const { return (*this)(to_rational(e)); }

    /// Concave: every cone's linear form dominates the function on every ray.
    bool is_upper_convex() const;
    /// The same function on a finer simplicial fan with the same support.
    PiecewiseLinear restrict_to(const Fan& finer) const;

private:
    Fan fan_;
    std::vector<Rational> values_;
    std::vector<RationalPoint> forms_;
};

/// Simplicial fan refining f on which every supplied function is linear per cone.
Fan simplicial_refinement(const Fan& f, const std::vector<PiecewiseLinear>& extra);

/// Maximal linearity cones of h inside its domain: one cone per point of minimal K.
Fan linearity_fan(const SupportFunction& h, const std::vector<RationalPoint>& minimal_points);

struct AmpleFan
{
    Fan fan;
    LatticeMap projection;
    /// Present when the set is not full-dimensional.
    std::optional<Quotient> quotient;
    /// Base point m0 (lexicographically smallest point of K).
    RationalPoint base;
    /// Image of P - m0 in M' (equal to P when the projection is the identity).
    PolyhedralSet reduced;
};

AmpleFan ample_fan(const PolyhedralSet& p, const Lattice& n);

} // namespace satoric
