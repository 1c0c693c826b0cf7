#include "satoric/saturation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace satoric {

namespace {

RationalMatrix as_rational(const IntegerMatrix& m)
{
    RationalMatrix out;
    for (const auto& r : m)
        out.push_back(to_rational(r));
    return out;
}

void require_same_support(const PolyhedralSet& p, const LogDiscrepancy& psi)
{
    if (p.ambient_dim() != psi.ambient_dim())
        throw DimensionError("set and log discrepancy live in different ranks");
    if (!(p.recession().dual() == psi.support()))
        throw std::invalid_argument("recession cone of the set is not dual to the support of psi");
}

struct RegionRays
{
    IntegerMatrix rays;
    std::vector<Rational> h;
    std::vector<Rational> psi;
};

RegionRays region_rays(const PiecewiseLinear& h, const LogDiscrepancy& psi)
{
    if (!(h.fan().support() == psi.support()))
        throw std::invalid_argument("open_region: h and psi have different supports");
    Fan f = simplicial_refinement(psi.fan(), {h});
    RegionRays out;
    for (const auto& r : f.rays()) {
        out.rays.push_back(r);
        out.h.push_back(h(r));
        out.psi.push_back(psi(r));
    }
    return out;
}

LinearSystem region_system(const RegionRays& rr, const Rational& coeff, std::size_t n)
{
    LinearSystem s(n);
    for (std::size_t i = 0; i < rr.rays.size(); ++i)
        s.add_gt(to_rational(rr.rays[i]), coeff * rr.h[i] - rr.psi[i]);
    return s;
}

/// First lattice point of `region` outside `target`, facets in order, then equations.
std::optional<LatticePoint> first_violation(const LinearSystem& region, const PolyhedralSet& target)
{
    for (const auto& f : target.facets()) {
        LinearSystem s = region;
        s.add_lt(to_rational(f.normal), f.rhs);
        if (auto w = integer_point(s))
            return w;
    }
    for (const auto& q : target.equations()) {
        LinearSystem below = region;
        below.add_lt(to_rational(q.normal), q.rhs);
        if (auto w = integer_point(below))
            return w;
        LinearSystem above = region;
        above.add_gt(to_rational(q.normal), q.rhs);
        if (auto w = integer_point(above))
            return w;
    }
    return std::nullopt;
}

/// Nonzero lattice point of the system, searched orthant by orthant in lexicographic order.
std::optional<LatticePoint> nonzero_point(const LinearSystem& sys)
{
    const std::size_t n = sys.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (int sign : {1, -1}) {
            LinearSystem s = sys;
            for (std::size_t j = 0; j < i; ++j)
                s.add_eq(unit_vector(n, j), 0);
            s.add_ge(unit_vector(n, i, sign), 1);
            if (auto w = integer_point(s))
                return w;
        }
    return std::nullopt;
}

/// Optimizes the cone-wise linear function over sigma cap pi^{-1}(e') cone by cone.
std::optional<Rational> fiber_optimum(const PiecewiseLinear& f, const LatticeMap& pi, const RationalPoint& e,
                                      Sense sense)
{
    const std::size_t n = f.fan().ambient_dim();
    if (pi.source_rank() != n || pi.target_rank() != e.size())
        throw DimensionError("fiber: rank mismatch");
    std::optional<Rational> best;
    for (std::size_t i = 0; i < f.fan().size(); ++i) {
        const Cone& c = f.fan().cone(i);
        LinearSystem s(n);
        for (const auto& g : c.facets())
            s.add_ge(to_rational(g), 0);
        for (const auto& q : c.equations())
            s.add_eq(to_rational(q), 0);
        for (std::size_t k = 0; k < pi.target_rank(); ++k)
            s.add_eq(to_rational(pi.matrix()[k]), e[k]);
        LPResult r = lp_optimize(s, f.linear_form(i), sense);
        if (r.status == LPResult::Status::Infeasible)
            continue;
        if (r.status == LPResult::Status::Unbounded)
            throw std::logic_error("fiber optimum is unbounded");
        if (!best || (sense == Sense::Minimize ? r.value < *best : r.value > *best))
            best = r.value;
    }
    return best;
}

/// Splits every cone by the hyperplane u^perp when u changes sign on it.
std::vector<Cone> split(const std::vector<Cone>& cones, const LatticePoint& u)
{
    std::vector<Cone> out;
    const std::size_t n = u.size();
    for (const auto& c : cones) {
        bool pos = false, neg = false;
        for (const auto& g : c.generators()) {
            Integer v = dot(u, g);
            pos = pos || v > 0;
            neg = neg || v < 0;
        }
        if (!(pos && neg)) {
            out.push_back(c);
            continue;
        }
        for (int sign : {1, -1}) {
            RationalMatrix ineq = as_rational(c.facets());
            ineq.push_back(to_rational(Integer(sign) * u));
            out.push_back(Cone::from_inequalities(n, ineq, as_rational(c.equations())));
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

LogDiscrepancy LogDiscrepancy::from_pl(PiecewiseLinear pl)
{
    for (std::size_t i = 0; i < pl.values().size(); ++i)
        if (pl.values()[i] <= 0)
            throw std::invalid_argument("log discrepancy must be positive; ray " + format(pl.fan().rays()[i]) +
                                        " has value " + format(pl.values()[i]));
    return LogDiscrepancy(std::move(pl));
}

LogDiscrepancy LogDiscrepancy::from_boundary(std::size_t dim, const IntegerMatrix& rays,
                                             const std::vector<std::vector<std::size_t>>& cones,
                                             const std::vector<Rational>& boundary)
{
    if (boundary.size() != rays.size())
        throw DimensionError("boundary needs one coefficient per ray");
    IntegerMatrix prim;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != dim)
            throw DimensionError("ray rank mismatch");
        if (boundary[i] >= 1)
            throw std::invalid_argument("b_e >= 1 violates klt at ray " + std::to_string(i));
        prim.push_back(primitive(rays[i]));
    }
    std::vector<Cone> user_cones;
    std::vector<RationalPoint> forms;
    for (std::size_t k = 0; k < cones.size(); ++k) {
        RationalMatrix rows;
        RationalPoint rhs;
        IntegerMatrix gens;
        for (auto i : cones[k]) {
            if (i >= prim.size())
                throw std::out_of_range("cone " + std::to_string(k) + " references missing ray " + std::to_string(i));
            rows.push_back(to_rational(prim[i]));
            rhs.push_back(1 - boundary[i]);
            gens.push_back(prim[i]);
        }
        auto a = solve(rows, rhs, dim);
        if (!a)
            throw std::invalid_argument("boundary values are not linear on cone " + std::to_string(k));
        forms.push_back(*a);
        user_cones.push_back(Cone::from_generators(dim, gens));
    }
    Fan f = Fan::from_cones(dim, user_cones);
    if (auto why = f.validate(); !why.empty())
        throw std::invalid_argument("not a fan with convex support: " + why);
    Fan t = triangulate(f);
    std::vector<Rational> vals;
    for (const auto& r : t.rays()) {
        std::size_t k = 0;
        while (!user_cones[k].contains(r))
            ++k;
        vals.push_back(dot(forms[k], r));
    }
    return from_pl(PiecewiseLinear(t, vals));
}

LogDiscrepancy LogDiscrepancy::from_convex(std::size_t dim, const std::vector<RationalPoint>& points)
{
    std::vector<RationalPoint> neg;
    for (const auto& p : points)
        neg.push_back(-p);
    PiecewiseLinear g = PiecewiseLinear::from_support(SupportFunction(Cone::full(dim), neg));
    std::vector<Rational> vals;
    for (const auto& v : g.values())
        vals.push_back(-v);
    return from_pl(PiecewiseLinear(g.fan(), vals));
}

LinearSystem open_region(const PiecewiseLinear& h, const LogDiscrepancy& psi, const Rational& coeff)
{
    return region_system(region_rays(h, psi), coeff, psi.ambient_dim());
}

SaturationReport saturation_inclusion(const SupportFunction& h, const Rational& coeff, const LogDiscrepancy& psi,
                                      const PolyhedralSet& target)
{
    if (!(h.domain() == psi.support()))
        throw std::invalid_argument("support function domain differs from the support of psi");
    RegionRays rr = region_rays(PiecewiseLinear::from_support(h), psi);
    SaturationReport rep;
    rep.j = 1;
    rep.witness = first_violation(region_system(rr, coeff, psi.ambient_dim()), target);
    rep.holds = !rep.witness;
    return rep;
}

SaturationReport is_saturated(const PolyhedralSet& p, const LogDiscrepancy& psi, const Integer& j)
{
    if (j < 1)
        throw std::invalid_argument("is_saturated: j must be positive");
    require_same_support(p, psi);
    SaturationReport rep = saturation_inclusion(support_of_set(p), Rational(j), psi, p.scale(Rational(j)));
    rep.j = j;
    return rep;
}

std::vector<SaturationReport> is_asymptotically_saturated(const PolyhedralSet& p, const LogDiscrepancy& psi,
                                                          const Integer& period, const Integer& horizon)
{
    if (period < 1)
        throw std::invalid_argument("period must be positive");
    require_same_support(p, psi);
    std::vector<SaturationReport> out;
    if (horizon < period)
        return out;
    RegionRays rr = region_rays(PiecewiseLinear::from_support(support_of_set(p)), psi);
    for (Integer j = period; j <= horizon; j += period) {
        SaturationReport rep;
        rep.j = j;
        rep.witness = first_violation(region_system(rr, Rational(j), p.ambient_dim()), p.scale(Rational(j)));
        rep.holds = !rep.witness;
        out.push_back(std::move(rep));
    }
    return out;
}

FiberValue fiber_infimum(const LogDiscrepancy& psi, const LatticeMap& pi, const RationalPoint& e)
{
    if (is_zero(e)) {
        if (pi.target_rank() != e.size())
            throw DimensionError("fiber: rank mismatch");
        return FiberValue{Rational(0), false};
    }
    auto v = fiber_optimum(psi.pl(), pi, e, Sense::Minimize);
    if (!v)
        throw std::invalid_argument("fiber_infimum: empty fiber");
    return FiberValue{*v, true};
}

Rational fiber_supremum(const PiecewiseLinear& f, const LatticeMap& pi, const RationalPoint& e)
{
    auto v = fiber_optimum(f, pi, e, Sense::Maximize);
    if (!v)
        throw std::invalid_argument("fiber_supremum: empty fiber");
    return *v;
}

CharacterizationReport characterize(const PolyhedralSet& p, const LogDiscrepancy& psi)
{
    require_same_support(p, psi);
    const std::size_t n = p.ambient_dim();
    CharacterizationReport rep;
    rep.ample = ample_fan(p, Lattice::make(n));

    if (rep.ample.quotient) {
        const IntegerMatrix& basis = rep.ample.quotient->kernel_basis;
        rep.n2_basis = basis;
        const std::size_t d2 = basis.size();
        RationalMatrix perp = as_rational(integer_kernel(as_rational(basis), n));
        std::vector<Cone> pieces;
        for (std::size_t i = 0; i < psi.fan().size(); ++i) {
            const Cone& c = psi.fan().cone(i);
            RationalMatrix eq = as_rational(c.equations());
            eq.insert(eq.end(), perp.begin(), perp.end());
            Cone piece = Cone::from_inequalities(n, as_rational(c.facets()), eq);
            if (piece.dim() == d2)
                pieces.push_back(std::move(piece));
        }
        Fan restricted = triangulate(Fan::from_cones(n, pieces));
        RationalMatrix coords_of(n, RationalPoint(d2));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d2; ++j)
                coords_of[i][j] = basis[j][i];
        LinearSystem sys(d2);
        for (const auto& r : restricted.rays()) {
            auto c = solve(coords_of, to_rational(r), d2);
            sys.add_gt(*c, -psi(r));
        }
        rep.cond1_witness = nonzero_point(sys);
        rep.cond1 = !rep.cond1_witness;
    }

    for (const auto& r : rep.ample.fan.rays()) {
        FiberValue v = fiber_infimum(psi, rep.ample.projection, to_rational(r));
        if (v.value > 1) {
            rep.cond2 = false;
            rep.cond2_ray = r;
            rep.cond2_value = v.value;
            break;
        }
    }
    rep.verdict = rep.cond1 && rep.cond2;
    return rep;
}

Restriction restrict_to_quotient(const PolyhedralSet& p, const LogDiscrepancy& psi, const LatticeMap& pi,
                                 const LatticePoint& m0, const Integer& k)
{
    require_same_support(p, psi);
    const std::size_t n = p.ambient_dim();
    if (pi.source_rank() != n || m0.size() != n)
        throw DimensionError("restrict: rank mismatch");
    if (k < 1)
        throw std::invalid_argument("restrict: k must be positive");
    const RationalPoint base = to_rational(m0);
    if (!p.contains(base))
        throw std::invalid_argument("restrict: m0 is not in the set");
    const std::size_t n1 = pi.target_rank();

    std::vector<HalfSpace> hs, eqs;
    for (const auto& f : p.facets()) {
        LatticePoint a = pi.apply(f.normal);
        if (!is_zero(a))
            hs.push_back({a, f.rhs - dot(f.normal, base)});
    }
    for (const auto& q : p.equations()) {
        LatticePoint a = pi.apply(q.normal);
        if (!is_zero(a))
            eqs.push_back({a, q.rhs - dot(q.normal, base)});
    }
    Restriction out;
    out.set = PolyhedralSet::from_inequalities(n1, hs, eqs);
    out.h = support_of_set(out.set);

    // f = k (h - m0) - psi, linear on the cones of the common refinement.
    SupportFunction h = support_of_set(p);
    PiecewiseLinear hpl = PiecewiseLinear::from_support(h);
    Fan cells = simplicial_refinement(psi.fan(), {hpl});
    PiecewiseLinear f = PiecewiseLinear::from_function(cells, [&](const LatticePoint& r) {
        return Rational(k) * (h(r) - dot(base, r)) - psi(r);
    });

    IntegerMatrix sgens;
    for (const auto& g : psi.support().generators())
        sgens.push_back(pi.apply(g));
    Cone sigma1 = Cone::from_generators(n1, sgens);

    // Hyperplanes across which psi'_k may change its linear form.
    std::vector<RationalPoint> forms_h = out.set.points();
    std::vector<RationalPoint> forms_g;
    std::set<LatticePoint> walls;
    auto add_wall = [&](const RationalPoint& u) {
        if (is_zero(u))
            return;
        LatticePoint w = primitive_multiple(u);
        for (const auto& x : w)
            if (x != 0) {
                if (x < 0)
                    w = -w;
                break;
            }
        walls.insert(w);
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
        RationalMatrix lifted;
        for (auto r : cells.cones()[i]) {
            RationalPoint g = to_rational(pi.apply(cells.rays()[r]));
            g.push_back(f.values()[r]);
            lifted.push_back(std::move(g));
        }
        Cone graph = Cone::from_generators(n1 + 1, lifted);
        auto take = [&](const LatticePoint& a, bool equation) {
            RationalPoint alpha(a.begin(), a.end() - 1);
            Rational beta = Rational(a.back());
            if (beta == 0)
                add_wall(alpha);
            else if (beta < 0 || equation)
                forms_g.push_back(Rational(-1) / beta * alpha);
        };
        for (const auto& a : graph.facets())
            take(a, false);
        for (const auto& a : graph.equations())
            take(a, true);
    }
    for (std::size_t i = 0; i < forms_h.size(); ++i)
        for (std::size_t j = i + 1; j < forms_h.size(); ++j)
            add_wall(forms_h[i] - forms_h[j]);
    for (std::size_t i = 0; i < forms_g.size(); ++i)
        for (std::size_t j = i + 1; j < forms_g.size(); ++j)
            add_wall(forms_g[i] - forms_g[j]);

    std::vector<Cone> pieces{sigma1};
    for (const auto& w : walls)
        pieces = split(pieces, w);
    Fan fan = triangulate(Fan::from_cones(n1, pieces));
    out.psi = PiecewiseLinear::from_function(fan, [&](const LatticePoint& r) {
        return Rational(k) * out.h(r) - fiber_supremum(f, pi, to_rational(r));
    });
    return out;
}

bool only_origin(const LogDiscrepancy& psi, LatticePoint* nonzero)
{
    LinearSystem s(psi.ambient_dim());
    for (std::size_t i = 0; i < psi.fan().rays().size(); ++i)
        s.add_gt(to_rational(psi.fan().rays()[i]), -psi.pl().values()[i]);
    auto w = nonzero_point(s);
    if (w && nonzero)
        *nonzero = *w;
    return !w;
}

KLBound klbound_witness(const LogDiscrepancy& psi)
{
    const std::size_t n = psi.ambient_dim();
    if (!(psi.support() == Cone::full(n)))
        throw std::invalid_argument("klbound: psi must be defined on all of N_R");
    std::vector<Rational> neg;
    for (const auto& v : psi.pl().values())
        neg.push_back(-v);
    if (!PiecewiseLinear(psi.fan(), neg).is_upper_convex())
        throw std::invalid_argument("klbound: -psi is not upper convex");
    if (!only_origin(psi))
        throw std::invalid_argument("klbound: the open region of -psi has a nonzero lattice point");

    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < psi.fan().rays().size(); ++i)
        hs.push_back({psi.fan().rays()[i], -psi.pl().values()[i] / 2});
    KLBound out;
    out.body = PolyhedralSet::from_inequalities(n, hs);
    out.width = lattice_width(out.body);
    out.direction = out.width.direction;
    out.value = psi(out.direction) + psi(-out.direction);
    if (out.value != 2 * out.width.width)
        throw std::logic_error("klbound: value differs from twice the width");
    return out;
}

Rational epsilon_margin(const LogDiscrepancy& psi)
{
    Fan f = triangulate(common_refinement(psi.fan(), Fan::orthants(psi.ambient_dim())));
    std::optional<Rational> best;
    for (const auto& r : f.rays()) {
        Rational v = psi(r) / l1_norm(to_rational(r));
        if (!best || v < *best)
            best = v;
    }
    if (!best)
        throw std::invalid_argument("epsilon_margin: support is the origin");
    return *best;
}

LinearityCell linearity_cell(const PolyhedralSet& p, const LogDiscrepancy& psi, const RationalPoint& e1)
{
    require_same_support(p, psi);
    const std::size_t n = p.ambient_dim();
    SupportFunction h = support_of_set(p);
    if (e1.size() != n)
        throw DimensionError("linearity_cell: rank mismatch");
    if (is_zero(e1) || !h.domain().contains(e1))
        throw std::invalid_argument("linearity_cell: e1 must be a nonzero point of sigma");
    Rational v = h(e1);
    std::vector<RationalPoint> tight;
    for (const auto& q : p.points())
        if (dot(q, e1) == v)
            tight.push_back(q);

    RationalMatrix ineq = as_rational(h.domain().facets());
    RationalMatrix eq = as_rational(h.domain().equations());
    for (const auto& q : p.points())
        ineq.push_back(q - tight.front());
    for (std::size_t i = 1; i < tight.size(); ++i)
        eq.push_back(tight[i] - tight.front());
    for (const auto& g : p.recession().generators())
        if (dot(g, e1) == 0)
            eq.push_back(to_rational(g));
    return LinearityCell{h.argmin(e1), Cone::from_inequalities(n, ineq, eq)};
}

Integer default_period(const PolyhedralSet& p, const LogDiscrepancy& psi)
{
    Integer l = 1;
    for (const auto& q : p.points())
        l = lcm(l, common_denominator(q));
    RegionRays rr = region_rays(PiecewiseLinear::from_support(support_of_set(p)), psi);
    for (const auto& v : rr.h)
        l = lcm(l, denominator(v));
    return l;
}

} // namespace satoric
