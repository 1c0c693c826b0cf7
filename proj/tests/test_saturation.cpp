#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "satoric/saturation.hpp"

#include <random>

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

LogDiscrepancy abs_1d(Rational b = 0)
{
    return LogDiscrepancy::from_boundary(1, IntegerMatrix{lp({1}), lp({-1})}, {{0}, {1}}, {b, b});
}

/// psi(e) = (1 - b1) |e_1| + (1 - b2) |e_2|
LogDiscrepancy square_psi(Rational b1 = 0, Rational b2 = 0)
{
    return LogDiscrepancy::from_boundary(2, IntegerMatrix{lp({1, 0}), lp({0, 1}), lp({-1, 0}), lp({0, -1})},
                                         {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {b1, b2, b1, b2});
}

LogDiscrepancy p2_psi(std::vector<Rational> b = {0, 0, 0})
{
    return LogDiscrepancy::from_boundary(2, IntegerMatrix{lp({1, 0}), lp({0, 1}), lp({-1, -1})},
                                         {{0, 1}, {1, 2}, {2, 0}}, b);
}

PolyhedralSet segment(Rational a, Rational b) { return PolyhedralSet::from_points({rp({a}), rp({b})}, Cone::zero(1)); }

PolyhedralSet polygon(const std::vector<RationalPoint>& pts) { return PolyhedralSet::from_points(pts, Cone::zero(2)); }

PolyhedralSet unit_simplex() { return polygon({rp({0, 0}), rp({1, 0}), rp({0, 1})}); }

PolyhedralSet unit_square() { return polygon({rp({0, 0}), rp({1, 0}), rp({0, 1}), rp({1, 1})}); }

/// Brute force: lattice points m of the box with <m,e> > j h(e) - psi(e) for all primitive e with |e|_inf <= reach.
std::optional<LatticePoint> brute_violation(const PolyhedralSet& p, const LogDiscrepancy& psi, long j, long radius,
                                            long reach)
{
    SupportFunction h = support_of_set(p);
    std::vector<std::pair<LatticePoint, Rational>> dirs;
    for (long x = -reach; x <= reach; ++x)
        for (long y = -reach; y <= reach; ++y) {
            LatticePoint e = lp({x, y});
            if (is_zero(e) || gcd(Integer(x), Integer(y)) != 1)
                continue;
            dirs.emplace_back(e, Rational(j) * h(e) - psi(e));
        }
    PolyhedralSet target = p.scale(Rational(j));
    for (long x = -radius; x <= radius; ++x)
        for (long y = -radius; y <= radius; ++y) {
            LatticePoint m = lp({x, y});
            bool inside = true;
            for (const auto& [e, v] : dirs)
                if (Rational(dot(m, e)) <= v) {
                    inside = false;
                    break;
                }
            if (inside && !target.contains(to_rational(m)))
                return m;
        }
    return std::nullopt;
}

PolyhedralSet random_polygon(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-6, 6), den(1, 3), count(1, 4);
    std::vector<RationalPoint> pts;
    int k = count(rng);
    for (int i = 0; i < k; ++i)
        pts.push_back(rp({Rational(num(rng), den(rng)) / 2, Rational(num(rng), den(rng)) / 2}));
    return polygon(pts);
}

LogDiscrepancy random_psi(std::mt19937& rng)
{
    const Rational choices[] = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 3), Rational(1, 2)};
    std::uniform_int_distribution<int> pick(0, 4), kind(0, 1);
    if (kind(rng) == 0)
        return square_psi(choices[pick(rng)], choices[pick(rng)]);
    return p2_psi({choices[pick(rng)], choices[pick(rng)], choices[pick(rng)]});
}

} // namespace

TEST_CASE("log discrepancy construction")
{
    LogDiscrepancy psi = p2_psi();
    CHECK(psi(lp({1, 1})) == 2);
    CHECK(psi(lp({-1, -1})) == 1);
    CHECK(psi(lp({-2, -1})) == 3);
    CHECK(p2_psi({-1, 0, 0})(lp({1, 0})) == 2);
    CHECK_THROWS_WITH_AS(p2_psi({1, 0, 0}), doctest::Contains("klt"), std::invalid_argument);
    CHECK_THROWS_AS(p2_psi({Rational(3, 2), 0, 0}), std::invalid_argument);
    // values on rays (1,0),(1,1),(0,1) of one cone cannot be linear
    CHECK_THROWS_AS(LogDiscrepancy::from_boundary(2, IntegerMatrix{lp({1, 0}), lp({1, 1}), lp({0, 1})},
                                                  {{0, 1, 2}}, {0, 0, 0}),
                    std::invalid_argument);
    LogDiscrepancy l1 = LogDiscrepancy::from_convex(2, {rp({1, 1}), rp({1, -1}), rp({-1, 1}), rp({-1, -1})});
    CHECK(l1(lp({3, -4})) == 7);
    CHECK(l1(rp({Rational(1, 2), Rational(-1, 3)})) == Rational(5, 6));
    CHECK(square_psi(Rational(4, 5))(lp({1, 1})) == Rational(6, 5));
}

TEST_CASE("open region")
{
    PiecewiseLinear h = PiecewiseLinear::from_support(support_of_set(segment(0, 1)));
    LinearSystem s = open_region(h, abs_1d(), 1);
    CHECK(s.rows().size() == 2);
    for (long m = -3; m <= 4; ++m)
        CHECK(s.satisfied_by(lp({m})) == (m > -1 && m < 2));

    PiecewiseLinear zero = PiecewiseLinear::from_support(support_of_set(polygon({rp({0, 0})})));
    LinearSystem only_psi = open_region(zero, p2_psi(), 0);
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y)
            CHECK(only_psi.satisfied_by(lp({x, y})) == (x > -1 && y > -1 && x + y < 1));

    PiecewiseLinear hs = PiecewiseLinear::from_support(support_of_set(unit_simplex()));
    CHECK(open_region(hs, p2_psi(), 1).rows().size() == 3);
}

TEST_CASE("is_saturated examples")
{
    SaturationReport a = is_saturated(segment(0, 1), abs_1d(), 3);
    CHECK(a.holds);
    CHECK(a.j == 3);
    SaturationReport b = is_saturated(segment(0, Rational(1, 2)), abs_1d(), 1);
    CHECK_FALSE(b.holds);
    REQUIRE(b.witness);
    CHECK(*b.witness == lp({1}));
    CHECK(is_saturated(segment(0, Rational(1, 2)), abs_1d(), 2).holds);
    CHECK_THROWS_AS(is_saturated(segment(0, 1), abs_1d(), 0), std::invalid_argument);
    CHECK_THROWS_AS(is_saturated(unit_square(), abs_1d(), 1), DimensionError);
}

TEST_CASE("asymptotic saturation examples")
{
    auto all = is_asymptotically_saturated(segment(0, Rational(1, 2)), abs_1d(), 2, 12);
    CHECK(all.size() == 6);
    for (const auto& r : all)
        CHECK(r.holds);
    auto fail = is_asymptotically_saturated(segment(0, Rational(1, 2)), abs_1d(), 1, 12);
    REQUIRE(fail.size() == 12);
    CHECK_FALSE(fail[0].holds);
    CHECK(fail[0].j == 1);
    CHECK(*fail[0].witness == lp({1}));
    CHECK(is_asymptotically_saturated(segment(0, 1), abs_1d(), 5, 4).empty());
    CHECK(default_period(segment(0, Rational(1, 2)), abs_1d()) == 2);
    CHECK(default_period(unit_simplex(), p2_psi()) == 1);
}

TEST_CASE("characterize examples")
{
    CharacterizationReport yes = characterize(unit_simplex(), p2_psi());
    CHECK(yes.cond1);
    CHECK(yes.n2_basis.empty());
    CHECK(yes.cond2);
    CHECK(yes.verdict);
    for (long j = 1; j <= 12; ++j)
        CHECK(is_saturated(unit_simplex(), p2_psi(), j).holds);

    CharacterizationReport no = characterize(unit_simplex(), p2_psi({-1, 0, 0}));
    CHECK(no.cond1);
    CHECK_FALSE(no.cond2);
    CHECK(*no.cond2_ray == lp({1, 0}));
    CHECK(*no.cond2_value == 2);
    CHECK_FALSE(no.verdict);
    bool found = false;
    for (const auto& r : is_asymptotically_saturated(unit_simplex(), p2_psi({-1, 0, 0}), 1, 60))
        found = found || !r.holds;
    CHECK(found);

    PolyhedralSet seg = polygon({rp({0, 0}), rp({1, 0})});
    CharacterizationReport s = characterize(seg, square_psi());
    CHECK(s.n2_basis == IntegerMatrix{lp({0, 1})});
    CHECK(s.cond1);
    CHECK(s.cond2);
    CHECK(s.verdict);

    // large psi along the constant direction lets nonzero points of M'' through
    CharacterizationReport thin = characterize(seg, square_psi(0, Rational(-1)));
    CHECK_FALSE(thin.cond1);
    REQUIRE(thin.cond1_witness);
    CHECK(thin.cond1_witness->size() == 1);
}

TEST_CASE("fiber infimum")
{
    LogDiscrepancy l1 = square_psi();
    LatticeMap first(IntegerMatrix{lp({1, 0})}, 2);
    CHECK(fiber_infimum(l1, LatticeMap::identity(2), rp({2, -3})).value == 5);
    FiberValue one = fiber_infimum(l1, first, rp({1}));
    CHECK(one.value == 1);
    CHECK(one.attained);
    FiberValue zero = fiber_infimum(l1, first, rp({0}));
    CHECK(zero.value == 0);
    CHECK_FALSE(zero.attained);
    CHECK(fiber_infimum(l1, first, rp({Rational(-3, 2)})).value == Rational(3, 2));
    LatticeMap sum(IntegerMatrix{lp({1, 1})}, 2);
    CHECK(fiber_infimum(p2_psi(), sum, rp({1})).value == 1);
    CHECK(fiber_infimum(p2_psi(), sum, rp({-2})).value == 1);
}

TEST_CASE("restrict examples")
{
    LatticeMap first(IntegerMatrix{lp({1, 0})}, 2);
    Restriction r = restrict_to_quotient(unit_square(), square_psi(), first, lp({0, 0}), 1);
    CHECK(r.set == segment(0, 1));
    CHECK(r.h(rp({3})) == 0);
    CHECK(r.h(rp({-2})) == -2);
    // LP cross-check of h' as a fiber supremum of h - m0
    PiecewiseLinear hpl = PiecewiseLinear::from_support(support_of_set(unit_square()));
    for (long e = -3; e <= 3; ++e)
        CHECK(r.h(rp({Rational(e)})) == fiber_supremum(hpl, first, rp({Rational(e)})));

    Restriction id = restrict_to_quotient(unit_simplex(), p2_psi(), LatticeMap::identity(2), lp({1, 0}), 1);
    CHECK(id.set == unit_simplex().translate(rp({-1, 0})));
    for (const auto& e : {lp({1, 0}), lp({0, 1}), lp({-1, -1}), lp({2, 1}), lp({-3, 1})})
        CHECK(id.psi(e) == p2_psi()(e));

    CHECK_THROWS_AS(restrict_to_quotient(unit_square(), square_psi(), first, lp({2, 0}), 1), std::invalid_argument);
}

TEST_CASE("restrict is monotone in k and bounded below by the fiber infimum")
{
    LatticeMap first(IntegerMatrix{lp({1, 0})}, 2);
    LatticeMap diag(IntegerMatrix{lp({1, 1})}, 2);
    PolyhedralSet tri = polygon({rp({0, 0}), rp({2, 0}), rp({0, 1})});
    for (const auto& [p, psi, pi] : {std::tuple{unit_square(), square_psi(), first},
                                     std::tuple{tri, p2_psi({Rational(1, 2), 0, -1}), diag},
                                     std::tuple{tri, square_psi(Rational(1, 3), -1), first}}) {
        std::vector<PiecewiseLinear> by_k;
        for (long k = 1; k <= 4; ++k)
            by_k.push_back(restrict_to_quotient(p, psi, pi, lp({0, 0}), k).psi);
        for (long num = -7; num <= 7; ++num) {
            RationalPoint e = rp({Rational(num, 3)});
            if (num == 0)
                continue;
            for (std::size_t k = 0; k + 1 < by_k.size(); ++k)
                CHECK(by_k[k](e) <= by_k[k + 1](e));
            CHECK(by_k[0](e) >= fiber_infimum(psi, pi, e).value);
        }
    }
}

TEST_CASE("restriction preserves saturation")
{
    LatticeMap first(IntegerMatrix{lp({1, 0})}, 2);
    LatticeMap diag(IntegerMatrix{lp({1, 1})}, 2);
    std::mt19937 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        PolyhedralSet p = random_polygon(rng);
        LogDiscrepancy psi = random_psi(rng);
        if (!is_saturated(p, psi, 1).holds)
            continue;
        auto pts = enumerate_points(LinearSystem::of_set(p), Box::cube(2, 4));
        if (pts.empty())
            continue;
        for (const auto& pi : {first, diag}) {
            Restriction r = restrict_to_quotient(p, psi, pi, pts.front(), 1);
            CHECK(is_saturated(r.set, LogDiscrepancy::from_pl(r.psi), 1).holds);
            ++checked;
        }
    }
    CHECK(checked > 5);
}

TEST_CASE("klbound examples")
{
    KLBound a = klbound_witness(square_psi());
    CHECK(a.direction == lp({1, 0}));
    CHECK(a.value == 2);
    CHECK(a.body == polygon({rp({Rational(-1, 2), Rational(-1, 2)}), rp({Rational(1, 2), Rational(-1, 2)}),
                             rp({Rational(-1, 2), Rational(1, 2)}), rp({Rational(1, 2), Rational(1, 2)})}));
    KLBound b = klbound_witness(abs_1d());
    CHECK(b.direction == lp({1}));
    CHECK(b.value == 2);
    KLBound c = klbound_witness(square_psi(Rational(4, 5), 0));
    CHECK(c.direction == lp({1, 0}));
    CHECK(c.value == Rational(2, 5));
    CHECK(c.value == 2 * c.width.width);

    LatticePoint w;
    CHECK_FALSE(only_origin(square_psi(-1, -1), &w));
    CHECK_FALSE(is_zero(w));
    CHECK_THROWS_AS(klbound_witness(square_psi(-1, -1)), std::invalid_argument);
    // psi(1,1) = 3 > psi(1,0) + psi(0,1)
    LogDiscrepancy peaked = LogDiscrepancy::from_boundary(
        2, IntegerMatrix{lp({1, 0}), lp({1, 1}), lp({0, 1}), lp({-1, 0}), lp({0, -1})},
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {0, -2, 0, 0, 0});
    CHECK_THROWS_WITH_AS(klbound_witness(peaked), doctest::Contains("upper convex"), std::invalid_argument);
    CHECK(only_origin(p2_psi()));
}

TEST_CASE("epsilon margin")
{
    CHECK(epsilon_margin(square_psi()) == 1);
    CHECK(epsilon_margin(square_psi(-1, -1)) == 2);
    CHECK(epsilon_margin(abs_1d()) == 1);
    CHECK(epsilon_margin(p2_psi()) == Rational(1, 2));
}

TEST_CASE("epsilon margin bounds <m,e> + psi(e) from below")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        LogDiscrepancy psi = random_psi(rng);
        Rational eps = epsilon_margin(psi);
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y) {
                if (x == 0 && y == 0)
                    continue;
                Rational s = Rational(99, 100) * eps;
                for (const auto& m : {rp({s, s}), rp({-s, s}), rp({s, -s}), rp({-s, -s})})
                    CHECK(dot(m, lp({x, y})) + psi(lp({x, y})) > 0);
            }
    }
}

TEST_CASE("linearity cell")
{
    LinearityCell a = linearity_cell(unit_square(), square_psi(), rp({1, 1}));
    CHECK(a.m == rp({0, 0}));
    CHECK(a.cone == Cone::orthant(2));
    LinearityCell b = linearity_cell(unit_square(), square_psi(), rp({1, 0}));
    CHECK(b.m == rp({0, 0}));
    CHECK(b.cone == Cone::from_generators(2, IntegerMatrix{lp({1, 0})}));
    CHECK(b.cone.in_relative_interior(rp({1, 0})));
    LinearityCell c = linearity_cell(polygon({rp({Rational(1, 2), 3})}), square_psi(), rp({-1, 2}));
    CHECK(c.m == rp({Rational(1, 2), 3}));
    CHECK(c.cone == Cone::full(2));
    CHECK_THROWS_AS(linearity_cell(unit_square(), square_psi(), rp({0, 0})), std::invalid_argument);
}

TEST_CASE("is_saturated agrees with brute-force enumeration")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        PolyhedralSet p = random_polygon(rng);
        LogDiscrepancy psi = random_psi(rng);
        long j = 1 + trial % 3;
        SaturationReport rep = is_saturated(p, psi, j);
        auto brute = brute_violation(p, psi, j, 14, 12);
        CHECK(rep.holds == !brute);
        if (rep.witness) {
            CHECK(open_region(PiecewiseLinear::from_support(support_of_set(p)), psi, Rational(j))
                      .satisfied_by(*rep.witness));
            CHECK_FALSE(p.scale(Rational(j)).contains(to_rational(*rep.witness)));
        }
    }
    for (long a = -3; a <= 3; ++a)
        for (long b = a; b <= a + 4; ++b)
            for (long j = 1; j <= 4; ++j) {
                PolyhedralSet s = segment(Rational(a, 3), Rational(b, 3));
                bool expect = true;
                for (long m = -20; m <= 20; ++m) {
                    bool in_region = m > Rational(j * a, 3) - 1 && m < Rational(j * b, 3) + 1;
                    if (in_region && !(m >= Rational(j * a, 3) && m <= Rational(j * b, 3)))
                        expect = false;
                }
                CHECK(is_saturated(s, abs_1d(), j).holds == expect);
            }
}

TEST_CASE("antitonicity in psi")
{
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        PolyhedralSet p = random_polygon(rng);
        for (long j = 1; j <= 2; ++j) {
            bool big = is_saturated(p, square_psi(-1, Rational(-1, 2)), j).holds;
            bool small = is_saturated(p, square_psi(Rational(1, 2), 0), j).holds;
            if (big)
                CHECK(small);
        }
    }
}

TEST_CASE("translation invariance")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 15; ++trial) {
        PolyhedralSet p = random_polygon(rng);
        LogDiscrepancy psi = random_psi(rng);
        RationalPoint shift = rp({Rational(trial % 3 - 1), Rational(trial % 2)});
        for (long j = 1; j <= 2; ++j)
            CHECK(is_saturated(p, psi, j).holds == is_saturated(p.translate(shift), psi, j).holds);
        RationalPoint qshift = rp({Rational(1, 2), Rational(-1, 3)});
        CHECK(characterize(p, psi).verdict == characterize(p.translate(qshift), psi).verdict);
    }
}

TEST_CASE("characterize agrees with finite horizons")
{
    std::mt19937 rng(19);
    for (int trial = 0; trial < 12; ++trial) {
        PolyhedralSet p = random_polygon(rng);
        LogDiscrepancy psi = random_psi(rng);
        CharacterizationReport c = characterize(p, psi);
        Integer period = default_period(p, psi);
        auto reports = is_asymptotically_saturated(p, psi, period, period * 60);
        bool any_fail = false;
        for (const auto& r : reports)
            any_fail = any_fail || !r.holds;
        CHECK(c.verdict == !any_fail);
    }
}
