#include "satoric/fga.hpp"

#include <stdexcept>

namespace satoric {

namespace {

RationalMatrix to_rational_rows(const std::vector<LatticePoint>& pts)
{
    RationalMatrix out;
    for (const auto& p : pts)
        out.push_back(to_rational(p));
    return out;
}

IntegerMatrix refine(const std::vector<SupportFunction>& hs)
{
    std::vector<PiecewiseLinear> pls;
    for (const auto& h : hs)
        pls.push_back(PiecewiseLinear::from_support(h));
    Fan base = pls.front().fan();
    pls.erase(pls.begin());
    return simplicial_refinement(base, pls).rays();
}

std::string ray_text(const LatticePoint& r) { return "(" + format(r) + ")"; }

} // namespace

AlgebraSequence AlgebraSequence::make(std::size_t rank, const Integer& period,
                                      std::map<Integer, std::vector<LatticePoint>> levels,
                                      std::optional<Cone> domain)
{
    if (period < 1)
        throw std::invalid_argument("algebra: period must be positive");
    AlgebraSequence a;
    a.rank_ = rank;
    a.period_ = period;
    a.domain_ = domain ? *domain : Cone::full(rank);
    if (a.domain_.ambient_dim() != rank)
        throw DimensionError("algebra: domain rank mismatch");
    for (const auto& [i, gens] : levels) {
        if (i < 1 || i % period != 0)
            throw std::invalid_argument("algebra: level " + i.str() + " is not a positive multiple of the period");
        if (gens.empty())
            throw std::invalid_argument("algebra: level " + i.str() + " has no generators");
        for (const auto& g : gens)
            if (g.size() != rank)
                throw DimensionError("algebra: generator rank mismatch at level " + i.str());
    }
    a.levels_ = std::move(levels);
    return a;
}

PolyhedralSet AlgebraSequence::set(const Integer& i) const
{
    auto it = levels_.find(i);
    if (it == levels_.end())
        throw std::out_of_range("algebra: missing level " + i.str());
    return PolyhedralSet::from_points(to_rational_rows(it->second), domain_.dual());
}

SupportFunction AlgebraSequence::h(const Integer& i) const { return support_of_set(set(i)); }

IntegerMatrix AlgebraSequence::refinement_rays() const
{
    std::vector<SupportFunction> hs;
    for (const auto& [i, gens] : levels_)
        hs.push_back(h(i));
    if (hs.empty())
        return {};
    return refine(hs);
}

std::string AlgebraSequence::superadditivity_violation() const
{
    IntegerMatrix rays = refinement_rays();
    for (const auto& [i, gi] : levels_)
        for (const auto& [j, gj] : levels_) {
            if (j < i || !has_level(i + j))
                continue;
            SupportFunction hi = h(i), hj = h(j), hij = h(i + j);
            for (const auto& r : rays)
                if (hi(r) + hj(r) < hij(r))
                    return "h_" + i.str() + " + h_" + j.str() + " < h_" + Integer(i + j).str() + " on ray " + ray_text(r);
        }
    return {};
}

std::string AlgebraSequence::lower_bound_violation(const SupportFunction& bound) const
{
    IntegerMatrix rays = refinement_rays();
    for (const auto& [i, g] : levels_) {
        SupportFunction hi = h(i);
        for (const auto& r : rays)
            if (hi(r) < Rational(i) * bound(r))
                return "h_" + i.str() + " below i times the bound on ray " + ray_text(r);
    }
    return {};
}

SaturationReport pairwise_saturated(const AlgebraSequence& a, const LogDiscrepancy& psi, const Integer& i,
                                    const Integer& j)
{
    if (!a.has_level(i) || !a.has_level(j))
        throw std::out_of_range("pairwise_saturated: missing level");
    SaturationReport rep = saturation_inclusion(a.h(i), Rational(j) / Rational(i), psi, a.set(j));
    rep.j = j;
    return rep;
}

LimitSupport limit_support(const AlgebraSequence& a)
{
    if (a.levels().size() < 2)
        throw std::invalid_argument("limit_support: at least two levels are needed");
    if (auto why = a.superadditivity_violation(); !why.empty())
        throw std::invalid_argument("limit_support: superadditivity violated: " + why);
    const std::size_t n = a.rank();
    IntegerMatrix rays = a.refinement_rays();
    std::vector<HalfSpace> hs;
    for (const auto& r : rays) {
        std::optional<Rational> best;
        for (const auto& [i, g] : a.levels()) {
            Rational v = a.h(i)(r) / Rational(i);
            if (!best || v < *best)
                best = v;
        }
        hs.push_back({r, *best});
    }
    LimitSupport out;
    out.set = PolyhedralSet::from_inequalities(n, hs);
    out.h = support_of_set(out.set);
    for (const auto& [i, g] : a.levels()) {
        SupportFunction hi = a.h(i);
        LimitLevel lv{i, 0, 0};
        for (std::size_t k = 0; k < rays.size(); ++k) {
            Rational gap = hi(rays[k]) / Rational(i) - out.h(rays[k]);
            if (k == 0 || gap < lv.min_gap)
                lv.min_gap = gap;
            if (k == 0 || gap > lv.max_gap)
                lv.max_gap = gap;
        }
        out.log.push_back(lv);
    }
    out.horizon_limited = out.log.size() < 3 || out.log.back().max_gap != 0;
    for (std::size_t k = 1; k < out.log.size(); ++k)
        if (out.log[k].max_gap > out.log[k - 1].max_gap)
            out.horizon_limited = true;
    return out;
}

FGAReport fga_run(const AlgebraSequence& a, const LogDiscrepancy& psi, const Integer& horizon)
{
    if (!(a.domain() == psi.support()))
        throw std::invalid_argument("fga: algebra domain differs from the support of psi");
    std::vector<Rational> neg;
    for (const auto& v : psi.pl().values())
        neg.push_back(-v);
    if (!PiecewiseLinear(psi.fan(), neg).is_upper_convex())
        throw std::invalid_argument("fga: -psi is not upper convex");

    FGAReport rep;
    rep.limit = limit_support(a);
    const SupportFunction& h = rep.limit.h;

    std::vector<SupportFunction> hs{h};
    for (const auto& [i, g] : a.levels())
        hs.push_back(a.h(i));
    IntegerMatrix rays = refine(hs);
    auto equal_on_rays = [&](const SupportFunction& f, const Rational& s, const SupportFunction& g) {
        for (const auto& r : rays)
            if (f(r) != s * g(r))
                return false;
        return true;
    };

    std::vector<Integer> stored;
    for (const auto& [i, g] : a.levels())
        if (i <= horizon)
            stored.push_back(i);

    for (const auto& j : stored) {
        SaturationReport r = saturation_inclusion(h, Rational(j), psi, a.set(j));
        r.j = j;
        rep.limit_saturation.push_back(std::move(r));
    }

    for (std::size_t k = 0; k + 1 < stored.size(); ++k) {
        SupportFunction lo = a.h(stored[k]), hi = a.h(stored[k + 1]);
        std::optional<Rational> worst;
        for (const auto& r : rays) {
            Rational d = lo(r) / Rational(stored[k]) - hi(r) / Rational(stored[k + 1]);
            if (!worst || d > *worst)
                worst = d;
        }
        rep.gap_log.push_back(worst ? *worst : Rational(0));
    }
    rep.gap = rep.gap_log.empty() ? Rational(0) : rep.gap_log.back();

    for (const auto& n : stored) {
        SupportFunction hn = a.h(n);
        if (!equal_on_rays(hn, Rational(n), h))
            continue;
        bool confirmed = false, consistent = true;
        for (const auto& [m, g] : a.levels()) {
            if (m <= n || m % n != 0)
                continue;
            confirmed = true;
            consistent = consistent && equal_on_rays(a.h(m), Rational(m / n), hn);
        }
        if (confirmed && consistent) {
            rep.stabilizer = n;
            break;
        }
    }

    rep.characterized = characterize(rep.limit.set, psi).verdict;
    if (rep.stabilizer && rep.characterized) {
        rep.verdict = FGAVerdict::FinitelyGenerated;
        rep.ample = ample_fan(rep.limit.set, Lattice::make(a.rank()));
    }
    return rep;
}

IntegerMatrix sublevel_rays(const LogDiscrepancy& psi, const LatticeMap& pi)
{
    const std::size_t n1 = pi.target_rank();
    Integer norm = 0;
    for (std::size_t c = 0; c < pi.source_rank(); ++c) {
        Integer s = 0;
        for (std::size_t r = 0; r < n1; ++r)
            s += abs(pi.matrix()[r][c]);
        norm = std::max(norm, s);
    }
    // psi(e) >= eps |e|_1 and |pi e|_1 <= norm |e|_1 bound the sublevel set
    Integer bound = floor(Rational(norm) / epsilon_margin(psi));
    IntegerMatrix gens;
    for (const auto& g : psi.support().generators())
        gens.push_back(pi.apply(g));
    Cone image = Cone::from_generators(n1, gens);

    IntegerMatrix out;
    if (n1 == 0)
        return out;
    LatticePoint e(n1, -bound);
    while (true) {
        Integer l1 = 0;
        for (const auto& x : e)
            l1 += abs(x);
        if (l1 > 0 && l1 <= bound && primitive(e) == e && image.contains(e) &&
            fiber_infimum(psi, pi, to_rational(e)).value <= 1)
            out.push_back(e);
        std::size_t i = n1;
        while (i > 0 && ++e[i - 1] > bound)
            e[--i] = -bound;
        if (i == 0)
            break;
    }
    return out;
}

bool difference_upper_convex(const PolyhedralSet& p, const LogDiscrepancy& psi)
{
    SupportFunction h = support_of_set(p);
    Fan f = simplicial_refinement(psi.fan(), {PiecewiseLinear::from_support(h)});
    return PiecewiseLinear::from_function(f, [&](const LatticePoint& r) { return h(r) - psi(r); })
        .is_upper_convex();
}

SurveyReport asyccs_survey(const std::vector<std::pair<PolyhedralSet, LogDiscrepancy>>& instances)
{
    SurveyReport rep;
    for (const auto& [p, psi] : instances) {
        SurveyEntry entry;
        CharacterizationReport c = characterize(p, psi);
        entry.accepted = c.verdict && difference_upper_convex(p, psi);
        if (entry.accepted) {
            std::size_t k = 0;
            while (k < rep.fans.size() &&
                   !(rep.fans[k].projection.matrix() == c.ample.projection.matrix() && rep.fans[k].fan == c.ample.fan))
                ++k;
            if (k == rep.fans.size()) {
                rep.fans.push_back({c.ample.projection, c.ample.fan});
                IntegerMatrix sub = sublevel_rays(psi, c.ample.projection);
                for (const auto& r : c.ample.fan.rays())
                    if (std::find(sub.begin(), sub.end(), r) == sub.end())
                        rep.exceptions.push_back(r);
                rep.sublevel.push_back(std::move(sub));
            }
            entry.fan = k;
        }
        rep.entries.push_back(entry);
    }
    return rep;
}

} // namespace satoric
