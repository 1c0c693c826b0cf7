#include "satoric/diophantine.hpp"

#include <string>

namespace satoric {

namespace {

void check(const DDAQuery& q)
{
    if (q.m.size() != q.e.size())
        throw DimensionError("dda: m and e have different ranks");
    if (q.period < 1)
        throw std::invalid_argument("dda: period must be positive");
    if (q.epsilon <= 0)
        throw std::invalid_argument("dda: epsilon must be positive");
}

bool gap_ok(const Rational& gap, const Rational& eps, GapMode mode)
{
    if (gap <= -eps || gap > 0)
        return false;
    return mode == GapMode::Closed || gap < 0;
}

/// Integers c with |c - x| < eps.
std::vector<Integer> near(const Rational& x, const Rational& eps)
{
    std::vector<Integer> out;
    Integer lo = floor(x - eps) + 1;
    Integer hi = ceil(x + eps) - 1;
    for (Integer c = lo; c <= hi; ++c)
        out.push_back(c);
    return out;
}

} // namespace

Integer default_dda_horizon(const DDAQuery& q)
{
    Integer l = 1;
    for (const auto& x : q.m)
        l = lcm(l, denominator(x));
    return q.period * l * 64;
}

bool dda_accepts(const DDAQuery& q, const Integer& k, const LatticePoint& mbar)
{
    if (mbar.size() != q.m.size() || k < 1 || k % q.period != 0)
        return false;
    RationalPoint d = to_rational(mbar) - Rational(k) * q.m;
    return max_norm(d) < q.epsilon && gap_ok(dot(d, q.e), q.epsilon, q.mode);
}

DDAResult dda_solve(const DDAQuery& q)
{
    check(q);
    const std::size_t n = q.m.size();
    const Integer horizon = q.horizon ? *q.horizon : default_dda_horizon(q);
    for (Integer k = q.period; k <= horizon; k += q.period) {
        RationalPoint km = Rational(k) * q.m;
        LatticePoint first(n);
        for (std::size_t i = 0; i < n; ++i)
            first[i] = floor(km[i]);
        if (dda_accepts(q, k, first))
            return DDAResult{k, first, dot(to_rational(first) - km, q.e), max_norm(to_rational(first) - km)};

        std::vector<std::vector<Integer>> choices(n);
        bool empty = false;
        for (std::size_t i = 0; i < n; ++i) {
            choices[i] = near(km[i], q.epsilon);
            empty = empty || choices[i].empty();
        }
        if (empty)
            continue;
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            LatticePoint mbar(n);
            for (std::size_t i = 0; i < n; ++i)
                mbar[i] = choices[i][idx[i]];
            if (dda_accepts(q, k, mbar))
                return DDAResult{k, mbar, dot(to_rational(mbar) - km, q.e), max_norm(to_rational(mbar) - km)};
            std::size_t i = n;
            while (i > 0 && ++idx[i - 1] == choices[i - 1].size())
                idx[--i] = 0;
            if (i == 0)
                break;
        }
    }
    if (q.mode == GapMode::Open)
        throw DDAUnsatisfiable("hypothesis of app1 not satisfiable with rational data (no k <= " +
                               horizon.str() + ")");
    throw DDAUnsatisfiable("no solution with k <= " + horizon.str());
}

std::vector<std::optional<DDAResult>> dda_emulate(const std::vector<RationalPoint>& approximants,
                                                  const DDAQuery& base)
{
    std::vector<std::optional<DDAResult>> out;
    for (const auto& m : approximants) {
        DDAQuery q = base;
        q.m = m;
        try {
            out.push_back(dda_solve(q));
        } catch (const DDAUnsatisfiable&) {
            out.push_back(std::nullopt);
        }
    }
    return out;
}

bool rational_span_equiv(const RationalPoint& m, const RationalPoint& e)
{
    if (m.size() != e.size())
        throw DimensionError("rational_span_equiv: rank mismatch");
    // Every pairing of rational vectors is rational, so both spans are the whole space.
    bool m_in_span = true;
    bool e_in_span = true;
    return m_in_span == e_in_span;
}

} // namespace satoric
