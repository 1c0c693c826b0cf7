#pragma once

#include "satoric/saturation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace satoric {

/// Graded pieces L_i (i a multiple of the period) given by lattice generators in M.
class AlgebraSequence
{
public:
    AlgebraSequence() = default;

    /// `domain` is sigma (default: all of N_R). Throws on empty levels, bad ranks or I not dividing i.
    static AlgebraSequence make(std::size_t rank, const Integer& period,
                                std::map<Integer, std::vector<LatticePoint>> levels,
                                std::optional<Cone> domain = std::nullopt);

    std::size_t rank() const { return rank_; }
    const Integer& period() const { return period_; }
    const Cone& domain() const { return domain_; }
    const std::map<Integer, std::vector<LatticePoint>>& levels() const { return levels_; }
    bool has_level(const Integer& i) const { return levels_.count(i) > 0; }

    /// h_i(e) = min_j <m_{i,j}, e>.
    SupportFunction h(const Integer& i) const;
    /// The set conv(generators of level i) + sigma dual.
    PolyhedralSet set(const Integer& i) const;

    /// Rays of the common simplicial refinement of the linearity fans of every stored h_i.
    IntegerMatrix refinement_rays() const;

    /// Empty when h_i + h_j >= h_{i+j} holds on the refinement rays for all stored i, j, i+j.
    std::string superadditivity_violation() const;
    /// Empty when h_i >= i * bound on the refinement rays for every stored i.
    std::string lower_bound_violation(const SupportFunction& bound) const;

private:
    std::size_t rank_ = 0;
    Integer period_ = 1;
    std::map<Integer, std::vector<LatticePoint>> levels_;
    Cone domain_;
};

/// M cap (open region of (j/i) h_i - psi) inside the set of h_j.
SaturationReport pairwise_saturated(const AlgebraSequence& a, const LogDiscrepancy& psi, const Integer& i,
                                    const Integer& j);

struct LimitLevel
{
    Integer i;
    /// min and max over refinement rays of h_i(e)/i - h(e)
    Rational min_gap;
    Rational max_gap;
};

struct LimitSupport
{
    SupportFunction h;
    PolyhedralSet set;
    std::vector<LimitLevel> log;
    /// Fewer than three levels, a non-monotone max gap, or a last level still above the candidate.
    bool horizon_limited = false;
};

/// Per-ray infimum of h_i/i over the stored levels. Throws std::invalid_argument
/// with fewer than two levels or when superadditivity fails.
LimitSupport limit_support(const AlgebraSequence& a);

enum class FGAVerdict { FinitelyGenerated, Undetermined };

struct FGAReport
{
    LimitSupport limit;
    /// Reports for M cap (open region of j h - psi) inside the set of h_j, stored j.
    std::vector<SaturationReport> limit_saturation;
    std::optional<Integer> stabilizer;
    bool characterized = false;
    FGAVerdict verdict = FGAVerdict::Undetermined;
    /// Ample fan of the limit set when finitely generated.
    std::optional<AmpleFan> ample;
    /// max over rays of h_{i_k}/i_k - h_{i_{k+1}}/i_{k+1} for consecutive stored levels i_k <= horizon.
    std::vector<Rational> gap_log;
    /// Last entry of the gap log (0 when there is none).
    Rational gap;
};

/**
 * Limit candidate, its saturation on stored levels, and a stabilizer n <= horizon with
 * n h = h_n that is confirmed by h_{kn} = k h_n on every stored multiple (at least one, k >= 2).
 * Requires -psi upper convex.
 */
FGAReport fga_run(const AlgebraSequence& a, const LogDiscrepancy& psi, const Integer& horizon);

struct SurveyEntry
{
    bool accepted = false;
    /// Index into SurveyReport::fans when accepted.
    std::optional<std::size_t> fan;
};

struct SurveyFan
{
    LatticeMap projection;
    Fan fan;
};

struct SurveyReport
{
    std::vector<SurveyEntry> entries;
    std::vector<SurveyFan> fans;
    /// Primitive e' with psi'(e') <= 1, one list per fan (same order as fans).
    std::vector<IntegerMatrix> sublevel;
    /// Ample-fan rays outside the sublevel set.
    std::vector<LatticePoint> exceptions;
};

/// Primitive lattice points e' of pi(sigma) with inf over the fiber of psi at most 1.
IntegerMatrix sublevel_rays(const LogDiscrepancy& psi, const LatticeMap& pi);

/// Whether h - psi is upper convex on the common refinement of the psi fan and the linearity fan of h.
bool difference_upper_convex(const PolyhedralSet& p, const LogDiscrepancy& psi);

SurveyReport asyccs_survey(const std::vector<std::pair<PolyhedralSet, LogDiscrepancy>>& instances);

} // namespace satoric
