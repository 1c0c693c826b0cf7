#pragma once

#include "satoric/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace satoric {

enum class GapMode {
    Closed, ///< gap in (-eps, 0]
    Open,   ///< gap in (-eps, 0)
};

struct DDAQuery
{
    RationalPoint m;
    RationalPoint e;
    Integer period = 1;
    Rational epsilon = 1;
    GapMode mode = GapMode::Closed;
    /// Largest k tried; defaults to I * lcm(denominators of m) * 64.
    std::optional<Integer> horizon;
};

struct DDAResult
{
    Integer k;
    LatticePoint mbar;
    /// <mbar - k m, e>
    Rational gap;
    /// |mbar - k m|_inf
    Rational norm_defect;
};

/// No multiple of the period up to the horizon admits a solution.
class DDAUnsatisfiable : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

Integer default_dda_horizon(const DDAQuery& q);

/// Whether (k, mbar) meets the interval and norm constraints of the query.
bool dda_accepts(const DDAQuery& q, const Integer& k, const LatticePoint& mbar);

/**
 * Smallest multiple k of the period with some mbar in M meeting the constraints.
 * For fixed k the floor of k m is tried first, then the lattice points of the
 * open eps-box around k m in lexicographic order.
 */
DDAResult dda_solve(const DDAQuery& q);

/**
 * Runs dda_solve on each rational approximant of an irrational m; a stand-in for
 * genuinely irrational data. Entries are empty where the approximant fails.
 */
std::vector<std::optional<DDAResult>> dda_emulate(const std::vector<RationalPoint>& approximants,
                                                  const DDAQuery& base);

/**
 * Compares "m lies in the real span of {m' in M : <m',e> rational}" with
 * "e lies in the real span of {e' in N : <m,e'> rational}". Both hold for rational
 * data, so the result is always true.
 */
bool rational_span_equiv(const RationalPoint& m, const RationalPoint& e);

} // namespace satoric
