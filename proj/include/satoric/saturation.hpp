#pragma once

#include "satoric/lattice_points.hpp"
#include "satoric/polyhedral.hpp"

#include <optional>
#include <vector>

namespace satoric {

/**
 * Positive function on sigma, linear on the cones of a simplicial fan with support sigma.
 * For a fan with boundary coefficients b_e the value at the primitive ray e is 1 - b_e.
 */
class LogDiscrepancy
{
public:
    LogDiscrepancy() = default;

    /**
     * `rays` and `cones` describe a fan; `boundary[i]` belongs to rays[i].
     * Throws std::invalid_argument when some b_e >= 1 or when the values are not
     * linear on some cone.
     */
    static LogDiscrepancy from_boundary(std::size_t dim, const IntegerMatrix& rays,
                                        const std::vector<std::vector<std::size_t>>& cones,
                                        const std::vector<Rational>& boundary);
    /// psi(e) = max_i <p_i, e> on all of N_R; requires 0 in the interior of conv(p_i).
    static LogDiscrepancy from_convex(std::size_t dim, const std::vector<RationalPoint>& points);
    /// Throws std::invalid_argument unless every ray value is positive.
    static LogDiscrepancy from_pl(PiecewiseLinear pl);

    std::size_t ambient_dim() const { return pl_.fan().ambient_dim(); }
    const PiecewiseLinear& pl() const { return pl_; }
    const Fan& fan() const { return pl_.fan(); }
    const Cone& support() const { return pl_.fan().support(); }

    Rational operator()(const RationalPoint& e) const { return pl_(e); }
    Rational operator()(const LatticePoint& e) const { return pl_(e); }

private:
    explicit LogDiscrepancy(PiecewiseLinear pl) : pl_(std::move(pl)) {}
    PiecewiseLinear pl_;
};

/// Strict rows <m, r> > coeff * h(r) - psi(r) over the rays r of the common simplicial refinement.
LinearSystem open_region(const PiecewiseLinear& h, const LogDiscrepancy& psi, const Rational& coeff);

struct SaturationReport
{
    Integer j;
    bool holds = true;
    /// Lattice point of the open region outside the target set.
    std::optional<LatticePoint> witness;
};

/// Decides M cap (open region of coeff * h - psi) inside `target`.
SaturationReport saturation_inclusion(const SupportFunction& h, const Rational& coeff,
                                      const LogDiscrepancy& psi, const PolyhedralSet& target);

/// Whether j * P is psi-saturated.
SaturationReport is_saturated(const PolyhedralSet& p, const LogDiscrepancy& psi, const Integer& j);

/// Reports for j = I, 2I, ... up to the horizon J.
std::vector<SaturationReport> is_asymptotically_saturated(const PolyhedralSet& p, const LogDiscrepancy& psi,
                                                          const Integer& period, const Integer& horizon);

struct FiberValue
{
    Rational value;
    /// False only for e' = 0, where the infimum is a limit and not attained at a nonzero point.
    bool attained = true;
};

/// inf of psi over sigma cap pi^{-1}(e').
FiberValue fiber_infimum(const LogDiscrepancy& psi, const LatticeMap& pi, const RationalPoint& e);

/// sup of f over sigma cap pi^{-1}(e') for a function f linear on the cones of its fan.
Rational fiber_supremum(const PiecewiseLinear& f, const LatticeMap& pi, const RationalPoint& e);

struct CharacterizationReport
{
    bool cond1 = true;
    /// Nonzero point of M'' (in coordinates of the dual of the N'' basis) in the open region.
    std::optional<LatticePoint> cond1_witness;
    bool cond2 = true;
    /// Ample-fan ray in N' with psi' > 1.
    std::optional<LatticePoint> cond2_ray;
    std::optional<Rational> cond2_value;
    /// Basis of N'' (rows in N coordinates); empty when the set is full-dimensional.
    IntegerMatrix n2_basis;
    AmpleFan ample;
    bool verdict = true;
};

CharacterizationReport characterize(const PolyhedralSet& p, const LogDiscrepancy& psi);

struct Restriction
{
    PolyhedralSet set;
    SupportFunction h;
    PiecewiseLinear psi;
};

/**
 * P' = (P - m0) cap M'_R in coordinates of M', its support function, and
 * psi'_k(e') = k h'(e') - sup{ k (h(e) - <m0,e>) - psi(e) : e in sigma, pi(e) = e' }.
 */
Restriction restrict_to_quotient(const PolyhedralSet& p, const LogDiscrepancy& psi, const LatticeMap& pi,
                                 const LatticePoint& m0, const Integer& k);

struct KLBound
{
    LatticePoint direction;
    Rational value;
    WidthCertificate width;
    PolyhedralSet body;
};

/// Whether the only lattice point of the open region of -psi is the origin (psi on all of N_R).
bool only_origin(const LogDiscrepancy& psi, LatticePoint* nonzero = nullptr);

/// Width direction of the body {m : <m,e> >= -psi(e)/2} and psi(e) + psi(-e).
KLBound klbound_witness(const LogDiscrepancy& psi);

/// min over sigma minus 0 of psi(e) / |e|_1.
Rational epsilon_margin(const LogDiscrepancy& psi);

struct LinearityCell
{
    RationalPoint m;
    Cone cone;
};

LinearityCell linearity_cell(const PolyhedralSet& p, const LogDiscrepancy& psi, const RationalPoint& e1);

/// Default period: lcm of the denominators of the points of K and of h on the fan rays.
Integer default_period(const PolyhedralSet& p, const LogDiscrepancy& psi);

} // namespace satoric
