// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include "satoric/cli.hpp"
#include "satoric/diophantine.hpp"
#include "satoric/fga.hpp"
#include "satoric/problem.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace satoric;

namespace {

LatticePoint lp(std::initializer_list<long> xs)
{
    LatticePoint v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

RationalPoint rp(std::initializer_list<Rational> xs) { return RationalPoint(xs); }

struct FanData
{
    std::size_t dim;
    IntegerMatrix rays;
    std::vector<std::vector<std::size_t>> cones;
};

FanData line_fan() { return {1, {lp({1}), lp({-1})}, {{0}, {1}}}; }
FanData square_fan() { return {2, {lp({1, 0}), lp({0, 1}), lp({-1, 0}), lp({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}; }
FanData p2_fan() { return {2, {lp({1, 0}), lp({0, 1}), lp({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}}}; }
FanData hexagon_fan()
{
    return {2,
            {lp({1, 0}), lp({1, 1}), lp({0, 1}), lp({-1, 0}), lp({-1, -1}), lp({0, -1})},
            {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}};
}
FanData octahedral_fan()
{
    FanData f{3, {lp({1, 0, 0}), lp({0, 1, 0}), lp({0, 0, 1}), lp({-1, 0, 0}), lp({0, -1, 0}), lp({0, 0, -1})}, {}};
    for (std::size_t a : {0, 3})
        for (std::size_t b : {1, 4})
            for (std::size_t c : {2, 5})
                f.cones.push_back({a, b, c});
    return f;
}
FanData p3_fan()
{
    return {3,
            {lp({1, 0, 0}), lp({0, 1, 0}), lp({0, 0, 1}), lp({-1, -1, -1})},
            {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
}

LogDiscrepancy psi_of(const FanData& f, const std::vector<Rational>& b)
{
    return LogDiscrepancy::from_boundary(f.dim, f.rays, f.cones, b);
}

LogDiscrepancy psi_of(const FanData& f) { return psi_of(f, std::vector<Rational>(f.rays.size(), Rational(0))); }

PolyhedralSet compact(const std::vector<RationalPoint>& pts)
{
    return PolyhedralSet::from_points(pts, Cone::zero(pts.front().size()));
}

template <class F> void for_box(const LatticePoint& lo, const LatticePoint& hi, F&& f)
{
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return;
    LatticePoint m = lo;
    while (true) {
        f(m);
        std::size_t i = n;
        while (i > 0 && ++m[i - 1] > hi[i - 1]) {
            m[i - 1] = lo[i - 1];
            --i;
        }
        if (i == 0)
            return;
    }
}

// ---------------------------------------------------------------------------
// Region oracle for compact sets with complete psi fans: m is in the open region of
// j h - psi iff <m,e> + psi(e) - j h(e) > 0 on every cone of the psi fan, decided per
// cone by min over the simplex of generators of max over points v of <m + a_C - j v, e>.

class RegionOracle
{
public:
    RegionOracle(const PolyhedralSet& p, const LogDiscrepancy& psi, const Integer& j) : p_(p), psi_(psi), j_(j) {}

    bool contains(const LatticePoint& m) const
    {
        const Fan& f = psi_.fan();
        const RationalPoint mq = to_rational(m);
        // cheap necessary test on the rays of the psi fan
        for (std::size_t r = 0; r < f.rays().size(); ++r)
            if (dot(mq, f.rays()[r]) + psi_.pl().values()[r] - Rational(j_) * h(f.rays()[r]) <= 0)
                return false;
        for (std::size_t c = 0; c < f.size(); ++c) {
            const auto& idx = f.cones()[c];
            const std::size_t k = idx.size();
            LinearSystem s(k + 1);
            for (const auto& v : p_.points()) {
                RationalPoint w = mq + psi_.pl().linear_form(c) - Rational(j_) * v;
                RationalPoint row(k + 1);
                row[k] = 1;
                for (std::size_t i = 0; i < k; ++i)
                    row[i] = -dot(w, f.rays()[idx[i]]);
                s.add_ge(row, 0);
            }
            RationalPoint ones(k + 1, Rational(1));
            ones[k] = 0;
            s.add_eq(ones, 1);
            for (std::size_t i = 0; i < k; ++i)
                s.add_ge(unit_vector(k + 1, i), 0);
            LPResult r = lp_optimize(s, unit_vector(k + 1, k), Sense::Minimize);
            if (r.status != LPResult::Status::Optimal || r.value <= 0)
                return false;
        }
        return true;
    }

    /// Integer box containing the closed relaxation on the psi rays.
    std::pair<LatticePoint, LatticePoint> box() const
    {
        const Fan& f = psi_.fan();
        const std::size_t n = p_.ambient_dim();
        LinearSystem s(n);
        for (std::size_t r = 0; r < f.rays().size(); ++r)
            s.add_ge(to_rational(f.rays()[r]), Rational(j_) * h(f.rays()[r]) - psi_.pl().values()[r]);
        LatticePoint lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = ceil(lp_optimize(s, unit_vector(n, i), Sense::Minimize).value);
            hi[i] = floor(lp_optimize(s, unit_vector(n, i), Sense::Maximize).value);
        }
        return {lo, hi};
    }

    Rational h(const LatticePoint& e) const
    {
        Rational best = dot(p_.points().front(), e);
        for (const auto& v : p_.points())
            best = std::min(best, dot(v, e));
        return best;
    }

private:
    const PolyhedralSet& p_;
    const LogDiscrepancy& psi_;
    Integer j_;
};

std::optional<LatticePoint> brute_violation(const PolyhedralSet& p, const LogDiscrepancy& psi, const Integer& j)
{
    RegionOracle oracle(p, psi, j);
    PolyhedralSet target = p.scale(Rational(j));
    auto [lo, hi] = oracle.box();
    std::optional<LatticePoint> found;
    for_box(lo, hi, [&](const LatticePoint& m) {
        if (!found && !target.contains(to_rational(m)) && oracle.contains(m))
            found = m;
    });
    return found;
}

bool witness_ok(const PolyhedralSet& p, const LogDiscrepancy& psi, const Integer& j, const LatticePoint& w)
{
    return RegionOracle(p, psi, j).contains(w) && !p.scale(Rational(j)).contains(to_rational(w));
}

Rational random_rational(std::mt19937& rng, int range, int max_den)
{
    std::uniform_int_distribution<int> den(1, max_den);
    int d = den(rng);
    std::uniform_int_distribution<int> num(-range * d, range * d);
    return Rational(num(rng), d);
}

RationalPoint random_point(std::mt19937& rng, std::size_t n, int range, int max_den)
{
    RationalPoint v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(random_rational(rng, range, max_den));
    return v;
}

std::vector<Rational> random_boundary(std::mt19937& rng, std::size_t count, bool light = false)
{
    const Rational choices[] = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 3), Rational(1, 2)};
    std::uniform_int_distribution<int> pick(light ? 2 : 0, 4);
    std::vector<Rational> b;
    for (std::size_t i = 0; i < count; ++i)
        b.push_back(choices[pick(rng)]);
    return b;
}

struct Outcome
{
    bool pass;
    std::string detail;
};

// ---------------------------------------------------------------------------

Outcome dictionary_suite()
{
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> dimd(1, 3), count(1, 5), kind(0, 2), coin(0, 1);
    int sets = 0, points = 0, failures = 0;
    for (int trial = 0; trial < 220; ++trial) {
        std::size_t n = dimd(rng);
        Cone rec;
        switch (kind(rng)) {
        case 0: rec = Cone::zero(n); break;
        case 1: rec = Cone::orthant(n); break;
        default: {
            IntegerMatrix g;
            for (int i = 0; i < 2; ++i) {
                LatticePoint v(n);
                for (auto& x : v)
                    x = std::uniform_int_distribution<int>(0, 2)(rng);
                if (!is_zero(v))
                    g.push_back(v);
            }
            rec = g.empty() ? Cone::zero(n) : Cone::from_generators(n, g);
        }
        }
        auto random_set = [&]() {
            std::vector<RationalPoint> pts;
            int k = count(rng);
            for (int i = 0; i < k; ++i)
                pts.push_back(random_point(rng, n, 2, 6));
            return PolyhedralSet::from_points(pts, rec);
        };
        PolyhedralSet a = random_set(), b = random_set();
        SupportFunction ha = support_of_set(a), hb = support_of_set(b);
        if (!(set_from_support(ha) == a))
            ++failures;
        SupportFunction hab = support_of_set(a + b);
        ++sets;
        Cone sigma = rec.dual();
        IntegerMatrix gens = sigma.generators();
        for (int t = 0; t < 50; ++t) {
            RationalPoint e(n, Rational(0));
            for (const auto& g : gens)
                e = e + Rational(std::uniform_int_distribution<int>(0, 6)(rng), std::uniform_int_distribution<int>(1, 6)(rng)) *
                            to_rational(g);
            // LP over the inequality description as an independent evaluation of h_A
            LinearSystem sa = LinearSystem::of_set(a);
            LPResult lpa = lp_optimize(sa, e, Sense::Minimize);
            if (lpa.status != LPResult::Status::Optimal || lpa.value != ha(e))
                ++failures;
            if (hab(e) != ha(e) + hb(e))
                ++failures;
            ++points;
        }
    }
    return {failures == 0 && sets >= 200,
            std::to_string(sets) + " set pairs, " + std::to_string(points) + " test points, " +
                std::to_string(failures) + " mismatches"};
}

Outcome saturation_oracle()
{
    std::mt19937 rng(202);
    std::vector<FanData> fans{line_fan(), square_fan(), p2_fan(), hexagon_fan(), octahedral_fan(), p3_fan()};
    std::uniform_int_distribution<int> jd(1, 12), count(1, 4), fanpick(0, static_cast<int>(fans.size()) - 1);
    int instances = 0, disagreements = 0, failing = 0;
    for (int trial = 0; trial < 320; ++trial) {
        const FanData& f = fans[fanpick(rng)];
        LogDiscrepancy psi = psi_of(f, random_boundary(rng, f.rays.size(), trial % 2));
        std::vector<RationalPoint> pts;
        int k = count(rng);
        // every other instance is a lattice polytope, which tends to be saturated
        for (int i = 0; i < k; ++i)
            pts.push_back(trial % 2 ? random_point(rng, f.dim, 2, 1) : random_point(rng, f.dim, 1, 6));
        PolyhedralSet p = compact(pts);
        Integer j = f.dim == 3 ? std::uniform_int_distribution<int>(1, 6)(rng) : jd(rng);
        SaturationReport rep = is_saturated(p, psi, j);
        auto brute = brute_violation(p, psi, j);
        ++instances;
        if (rep.holds != !brute)
            ++disagreements;
        if (rep.witness && !witness_ok(p, psi, j, *rep.witness))
            ++disagreements;
        failing += !rep.holds;
    }
    return {disagreements == 0 && instances >= 300,
            std::to_string(instances) + " instances (" + std::to_string(failing) + " not saturated), " +
                std::to_string(disagreements) + " disagreements"};
}

Outcome characterization_exactness()
{
    struct Instance
    {
        PolyhedralSet p;
        LogDiscrepancy psi;
    };
    std::vector<Instance> inst;
    std::vector<PolyhedralSet> triangles;
    for (auto [k, x, y] : std::vector<std::tuple<Rational, Rational, Rational>>{
             {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {1, 1, 0}, {1, -1, 2}, {Rational(1, 2), 0, 0}, {Rational(3, 2), 0, 1}})
        triangles.push_back(compact({rp({x, y}), rp({x + k, y}), rp({x, y + k})}));
    for (std::size_t heavy = 0; heavy < 3; ++heavy) {
        std::vector<Rational> b(3, Rational(0));
        b[heavy] = -1;
        for (const auto& t : triangles)
            inst.push_back({t, psi_of(p2_fan(), b)});
    }
    for (const auto& t : triangles)
        inst.push_back({t, psi_of(p2_fan())});
    std::vector<PolyhedralSet> rects;
    for (long a : {1, 2})
        for (long c : {1, 2})
            rects.push_back(compact({rp({0, 0}), rp({a, 0}), rp({0, c}), rp({a, c})}));
    for (const auto& r : rects) {
        inst.push_back({r, psi_of(square_fan(), {-1, 0, -1, 0})});
        inst.push_back({r, psi_of(square_fan(), {0, -1, 0, -1})});
        inst.push_back({r, psi_of(square_fan())});
        inst.push_back({r, psi_of(p2_fan())});
    }
    for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{0, 1}, {0, Rational(1, 2)}, {Rational(1, 3), 2}}) {
        inst.push_back({compact({rp({a}), rp({b})}), psi_of(line_fan())});
        inst.push_back({compact({rp({a}), rp({b})}), psi_of(line_fan(), {-1, 0})});
    }
    inst.push_back({compact({rp({0, 0}), rp({1, 0})}), psi_of(square_fan())});
    inst.push_back({compact({rp({0, 0}), rp({1, 0})}), psi_of(square_fan(), {0, -1, 0, -1})});
    inst.push_back({compact({rp({0, 0}), rp({1, -1})}), psi_of(p2_fan())});
    inst.push_back({compact({rp({0, 0, 0}), rp({1, 0, 0}), rp({0, 1, 0}), rp({0, 0, 1})}), psi_of(p3_fan())});
    inst.push_back({compact({rp({0, 0, 0}), rp({1, 0, 0}), rp({0, 1, 0}), rp({0, 0, 1})}),
                    psi_of(p3_fan(), {-1, 0, 0, 0})});

    int no = 0, yes = 0, errors = 0;
    for (const auto& [p, psi] : inst) {
        CharacterizationReport c = characterize(p, psi);
        Integer period = default_period(p, psi);
        std::optional<SaturationReport> fail;
        for (Integer j = period; j <= 60 * period && !fail; j += period) {
            SaturationReport r = is_saturated(p, psi, j);
            if (!r.holds)
                fail = r;
        }
        if (c.verdict) {
            ++yes;
            errors += fail.has_value();
        } else {
            ++no;
            if (!fail || !witness_ok(p, psi, fail->j, *fail->witness))
                ++errors;
        }
    }
    return {errors == 0 && no >= 30,
            std::to_string(no) + " NO instances falsified, " + std::to_string(yes) + " YES instances clean up to 60*I, " +
                std::to_string(errors) + " errors"};
}

Outcome rational_pipeline()
{
    std::map<Integer, std::vector<LatticePoint>> half;
    for (long i = 2; i <= 12; i += 2) {
        std::vector<LatticePoint> g;
        for (long x = 0; x <= i / 2; ++x)
            g.push_back(lp({x}));
        half[i] = g;
    }
    LogDiscrepancy psi = psi_of(line_fan());
    FGAReport a = fga_run(AlgebraSequence::make(1, 2, half), psi, 12);
    bool first = a.verdict == FGAVerdict::FinitelyGenerated && a.stabilizer == Integer(2) &&
                 a.limit.set == compact({rp({0}), rp({Rational(1, 2)})});

    const long pq[][2] = {{1, 1},       {7, 5},         {41, 29},       {239, 169},
                          {1393, 985}, {8119, 5741}, {47321, 33461}, {275807, 195025}};
    std::map<Integer, std::vector<LatticePoint>> emu;
    for (const auto& [p, q] : pq)
        emu[Integer(q)] = {lp({0}), lp({p})};
    FGAReport b = fga_run(AlgebraSequence::make(1, 1, emu), psi, 195025);
    bool second = b.verdict == FGAVerdict::Undetermined && b.gap_log.size() == 7;
    for (std::size_t k = 0; k < b.gap_log.size(); ++k)
        second = second && b.gap_log[k] > 0 && (k == 0 || b.gap_log[k] <= b.gap_log[k - 1]);
    return {first && second, std::string("stabilizer n=") + (a.stabilizer ? a.stabilizer->str() : "none") +
                                 " with limit [0,1/2]: " + (first ? "ok" : "wrong") +
                                 "; emulation undetermined, last gap " + format(b.gap) + ": " +
                                 (second ? "ok" : "wrong")};
}

Outcome klbound_structure()
{
    std::mt19937 rng(505);
    int passing = 0, errors = 0, tries = 0;
    while (passing < 60 && tries < 2000) {
        ++tries;
        std::size_t n = tries % 3 == 0 ? 3 : 2;
        std::vector<RationalPoint> pts;
        for (std::size_t i = 0; i < n; ++i) {
            pts.push_back(unit_vector(n, i, Rational(std::uniform_int_distribution<int>(1, 4)(rng), 5)));
            pts.push_back(unit_vector(n, i, -Rational(std::uniform_int_distribution<int>(1, 4)(rng), 5)));
        }
        int extra = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int i = 0; i < extra; ++i)
            pts.push_back(random_point(rng, n, 1, 4));
        LogDiscrepancy psi = LogDiscrepancy::from_convex(n, pts);
        if (!only_origin(psi))
            continue;
        ++passing;
        KLBound k = klbound_witness(psi);
        // body vertices by brute force over n-subsets of the defining halfspaces
        const Fan& f = psi.fan();
        std::vector<std::pair<RationalPoint, Rational>> hs;
        for (std::size_t r = 0; r < f.rays().size(); ++r)
            hs.emplace_back(to_rational(f.rays()[r]), -psi.pl().values()[r] / 2);
        std::vector<RationalPoint> verts;
        std::vector<std::size_t> pick(n);
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t from) {
            if (depth == n) {
                RationalMatrix a;
                RationalPoint b;
                for (auto i : pick) {
                    a.push_back(hs[i].first);
                    b.push_back(hs[i].second);
                }
                if (rank(a) < n)
                    return;
                auto x = solve(a, b, n);
                for (const auto& [normal, rhs] : hs)
                    if (dot(normal, *x) < rhs)
                        return;
                verts.push_back(*x);
                return;
            }
            for (std::size_t i = from; i < hs.size(); ++i) {
                pick[depth] = i;
                choose(depth + 1, i + 1);
            }
        };
        choose(0, 0);
        if (verts.empty()) {
            ++errors;
            continue;
        }
        auto width_of = [&](const LatticePoint& e) -> Rational {
            Rational lo = dot(verts.front(), e), hi = lo;
            for (const auto& v : verts) {
                lo = std::min(lo, dot(v, e));
                hi = std::max(hi, dot(v, e));
            }
            return hi - lo;
        };
        if (k.value != 2 * k.width.width || k.value != psi(k.direction) + psi(-k.direction) ||
            width_of(k.direction) != k.width.width)
            ++errors;
        LatticePoint lo(n, Integer(-10)), hi(n, Integer(10));
        Rational best = -1;
        for_box(lo, hi, [&](const LatticePoint& e) {
            if (is_zero(e))
                return;
            Rational w = width_of(e);
            if (best < 0 || w < best)
                best = w;
        });
        if (best != k.width.width)
            ++errors;
    }
    return {errors == 0 && passing >= 50,
            std::to_string(passing) + " gated convex psi in dim 2-3, " + std::to_string(errors) + " mismatches"};
}

Outcome finiteness_survey()
{
    LogDiscrepancy psi = psi_of(p2_fan());
    std::vector<std::pair<PolyhedralSet, LogDiscrepancy>> family;
    std::size_t simplices = 0;
    for (Rational k : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(4), Rational(5)})
        for (RationalPoint t : {rp({0, 0}), rp({1, 0}), rp({0, -1}), rp({-1, 1}), rp({Rational(1, 2), Rational(1, 3)})}) {
            family.emplace_back(compact({t, t + rp({k, 0}), t + rp({0, k})}), psi);
            ++simplices;
        }
    for (long k = 1; k <= 3; ++k) {
        family.emplace_back(compact({rp({0, 0}), rp({k, -k})}), psi);
        family.emplace_back(compact({rp({0, 0}), rp({k, 0})}), psi);
        family.emplace_back(compact({rp({0, 0}), rp({k, 0}), rp({0, k}), rp({k, k})}), psi);
    }
    SurveyReport rep = asyccs_survey(family);
    bool simplices_accepted = true;
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        accepted += rep.entries[i].accepted;
        if (i < simplices)
            simplices_accepted = simplices_accepted && rep.entries[i].accepted;
    }
    int bad = 0;
    for (const auto& f : rep.fans)
        for (const auto& r : f.fan.rays())
            if (fiber_infimum(psi, f.projection, to_rational(r)).value > 1)
                ++bad;
    return {rep.exceptions.empty() && bad == 0 && simplices_accepted && !rep.fans.empty(),
            std::to_string(accepted) + " of " + std::to_string(family.size()) + " sets pass, " +
                std::to_string(rep.fans.size()) + " distinct ample fans, " + std::to_string(rep.exceptions.size()) +
                " rays outside {psi' <= 1}"};
}

bool dda_valid(const RationalPoint& m, const RationalPoint& e, const Rational& eps, bool open, const Integer& k,
               const LatticePoint& mbar)
{
    Rational gap = 0, worst = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        Rational d = Rational(mbar[i]) - Rational(k) * m[i];
        gap += d * e[i];
        worst = std::max(worst, Rational(abs(d)));
    }
    return gap > -eps && (open ? gap < 0 : gap <= 0) && worst < eps;
}

bool dda_solvable(const RationalPoint& m, const RationalPoint& e, const Rational& eps, bool open, const Integer& k)
{
    const std::size_t n = m.size();
    LatticePoint lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = floor(Rational(k) * m[i] - eps);
        hi[i] = ceil(Rational(k) * m[i] + eps);
    }
    bool found = false;
    for_box(lo, hi, [&](const LatticePoint& mbar) { found = found || dda_valid(m, e, eps, open, k, mbar); });
    return found;
}

Outcome dda_contract()
{
    std::mt19937 rng(707);
    std::uniform_int_distribution<int> dimd(1, 3), period(1, 4), epsd(1, 12), mode(0, 3);
    int solved = 0, unsat = 0, errors = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = dimd(rng);
        RationalPoint m = random_point(rng, n, 3, 9), e = random_point(rng, n, 3, 7);
        Rational eps(1, epsd(rng));
        bool open = mode(rng) == 0;
        DDAQuery q{m, e, period(rng), eps, open ? GapMode::Open : GapMode::Closed};
        try {
            DDAResult r = dda_solve(q);
            ++solved;
            if (r.k % q.period != 0 || !dda_valid(m, e, eps, open, r.k, r.mbar))
                ++errors;
            for (Integer k = q.period; k < r.k; k += q.period)
                if (dda_solvable(m, e, eps, open, k))
                    ++errors;
        } catch (const DDAUnsatisfiable&) {
            ++unsat;
            if (!open)
                ++errors;
            for (Integer k = q.period; k <= default_dda_horizon(q); k += q.period)
                if (dda_solvable(m, e, eps, open, k))
                    ++errors;
        }
    }
    return {errors == 0, "100 queries (" + std::to_string(solved) + " solved, " + std::to_string(unsat) +
                             " open-mode unsatisfiable), " + std::to_string(errors) + " violations"};
}

Outcome cli_contract()
{
    namespace fs = std::filesystem;
    const std::string dir = SATORIC_CORPUS;
    int files = 0, roundtrip_errors = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        ProblemFile p;
        try {
            p = parse_problem(ss.str());
        } catch (const ParseError&) {
            continue;
        }
        ++files;
        std::string printed = print_problem(p);
        if (!(parse_problem(printed) == p) || print_problem(parse_problem(printed)) != printed)
            ++roundtrip_errors;
    }
    const std::vector<std::pair<std::vector<std::string>, int>> matrix{
        {{"saturate", dir + "/half_segment.sat", "--j", "1"}, 1},
        {{"saturate", dir + "/half_segment.sat", "--j", "2"}, 0},
        {{"asat", dir + "/half_segment.sat", "--period", "2", "--horizon", "12"}, 0},
        {{"characterize", dir + "/p2_simplex.sat"}, 0},
        {{"characterize", dir + "/p2_heavy.sat"}, 1},
        {{"characterize", dir + "/segment_l1.sat"}, 0},
        {{"amplefan", dir + "/p2_simplex.sat"}, 0},
        {{"width", dir + "/square_l1.sat"}, 0},
        {{"klbound", dir + "/anisotropic.sat"}, 0},
        {{"klbound", dir + "/p2_heavy.sat"}, 2},
        {{"dda", "--m", "1/2,1/3", "--e", "1,1", "--period", "1", "--eps", "1/10"}, 0},
        {{"dda", "--m", "1/2", "--e", "1", "--eps", "1/4", "--open"}, 1},
        {{"restrict", dir + "/square_l1.sat", "--kernel", "0,1", "--m0", "0,0"}, 0},
        {{"fga", dir + "/half_algebra.sat"}, 0},
        {{"fga", dir + "/sqrt2_algebra.sat"}, 1},
        {{"survey", dir + "/p2_simplex.sat", "--dilates", "3"}, 0},
        {{"characterize", dir + "/bad_klt.sat"}, 2},
        {{"characterize", dir + "/bad_index.sat"}, 2},
        {{"characterize", dir + "/bad_syntax.sat"}, 2},
        {{"characterize", dir + "/bad_section.sat"}, 2},
        {{"characterize", dir + "/bad_rank.sat"}, 2},
        {{"characterize", dir + "/bad_fan.sat"}, 2},
        {{"characterize", dir + "/missing.sat"}, 2},
        {{"width", dir + "/sqrt2_algebra.sat"}, 2},
        {{"nonsense"}, 2},
    };
    int exit_errors = 0;
    for (auto [args, expected] : matrix) {
        args.insert(args.begin(), "satoric");
        std::ostringstream out, err;
        if (cli::run(args, out, err) != expected)
            ++exit_errors;
    }
    return {files >= 10 && roundtrip_errors == 0 && exit_errors == 0,
            std::to_string(files) + " corpus files round-tripped (" + std::to_string(roundtrip_errors) +
                " errors), " + std::to_string(matrix.size()) + " exit-code fixtures (" +
                std::to_string(exit_errors) + " wrong)"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 dictionary round trip and Minkowski additivity", dictionary_suite},
        {"2 saturation oracle equivalence", saturation_oracle},
        {"3 characterization falsification exactness", characterization_exactness},
        {"4 rational criterion pipeline", rational_pipeline},
        {"5 klbound structural check", klbound_structure},
        {"6 ample fan finiteness survey", finiteness_survey},
        {"7 DDA contract", dda_contract},
        {"8 CLI contract", cli_contract},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << name << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << "; "
                  << static_cast<int>(secs * 10) / 10.0 << " s)" << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
