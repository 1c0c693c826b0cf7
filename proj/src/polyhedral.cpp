#include "satoric/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace satoric {

namespace {

RationalMatrix as_rational(const IntegerMatrix& m)
{
    RationalMatrix out;
    out.reserve(m.size());
    for (const auto& r : m)
        out.push_back(to_rational(r));
    return out;
}

void sort_points(std::vector<RationalPoint>& pts)
{
    std::sort(pts.begin(), pts.end(),
              [](const RationalPoint& a, const RationalPoint& b) { return lex_less(a, b); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

/// (a, b) with a = tail primitive and b scaled to match: <m,a> >= b from c0*t + c.x >= 0.
HalfSpace dehomogenize(const LatticePoint& f)
{
    LatticePoint a(f.begin() + 1, f.end());
    Integer g = 0;
    for (const auto& x : a)
        g = gcd(g, x);
    HalfSpace h;
    h.rhs = Rational(-f[0], g);
    for (auto& x : a)
        x /= g;
    h.normal = std::move(a);
    return h;
}

void sort_halfspaces(std::vector<HalfSpace>& hs)
{
    std::sort(hs.begin(), hs.end(), [](const HalfSpace& a, const HalfSpace& b) {
        if (a.normal != b.normal)
            return lex_less(a.normal, b.normal);
        return a.rhs < b.rhs;
    });
}

} // namespace

PolyhedralSet PolyhedralSet::from_homogeneous(std::size_t dim, const Cone& cone, const Cone& recession)
{
    PolyhedralSet p;
    p.ambient_ = dim;
    p.recession_ = recession;
    std::vector<const LatticePoint*> finite;
    for (const auto& r : cone.rays()) {
        if (r[0] <= 0)
            continue;
        finite.push_back(&r);
        RationalPoint x(dim);
        for (std::size_t i = 0; i < dim; ++i)
            x[i] = Rational(r[i + 1], r[0]);
        p.points_.push_back(std::move(x));
    }
    if (p.points_.empty())
        throw std::invalid_argument("polyhedral set is empty");
    sort_points(p.points_);

    for (const auto& f : cone.facets()) {
        bool at_infinity = std::all_of(finite.begin(), finite.end(),
                                       [&](const LatticePoint* r) { return dot(f, *r) > 0; });
        if (at_infinity)
            continue;
        p.facets_.push_back(dehomogenize(f));
    }
    for (const auto& q : cone.equations())
        p.equations_.push_back(dehomogenize(q));
    sort_halfspaces(p.facets_);
    sort_halfspaces(p.equations_);
    return p;
}

PolyhedralSet PolyhedralSet::from_points(const std::vector<RationalPoint>& points, const Cone& recession)
{
    if (points.empty())
        throw std::invalid_argument("minimal_K: empty point list");
    const std::size_t dim = recession.ambient_dim();
    RationalMatrix gens;
    for (const auto& p : points) {
        if (p.size() != dim)
            throw DimensionError("minimal_K: point rank differs from recession cone");
        RationalPoint g{Rational(1)};
        g.insert(g.end(), p.begin(), p.end());
        gens.push_back(std::move(g));
    }
    for (const auto& r : recession.generators()) {
        RationalPoint g{Rational(0)};
        for (const auto& x : r)
            g.push_back(Rational(x));
        gens.push_back(std::move(g));
    }
    return from_homogeneous(dim, Cone::from_generators(dim + 1, gens), recession);
}

PolyhedralSet PolyhedralSet::from_inequalities(std::size_t dim, const std::vector<HalfSpace>& halfspaces,
                                               const std::vector<HalfSpace>& equations)
{
    RationalMatrix ineq, eq, rec_ineq, rec_eq;
    RationalPoint t(dim + 1, Rational(0));
    t[0] = 1;
    ineq.push_back(t);
    auto lift = [&](const HalfSpace& h) {
        if (h.normal.size() != dim)
            throw DimensionError("half-space rank mismatch");
        RationalPoint r{-h.rhs};
        for (const auto& x : h.normal)
            r.push_back(Rational(x));
        return r;
    };
    for (const auto& h : halfspaces) {
        ineq.push_back(lift(h));
        rec_ineq.push_back(to_rational(h.normal));
    }
    for (const auto& h : equations) {
        eq.push_back(lift(h));
        rec_eq.push_back(to_rational(h.normal));
    }
    Cone cone = Cone::from_inequalities(dim + 1, ineq, eq);
    return from_homogeneous(dim, cone, Cone::from_inequalities(dim, rec_ineq, rec_eq));
}

bool PolyhedralSet::contains(const RationalPoint& m) const
{
    if (m.size() != ambient_)
        throw DimensionError("PolyhedralSet::contains: rank mismatch");
    for (const auto& q : equations_)
        if (dot(q.normal, m) != q.rhs)
            return false;
    for (const auto& f : facets_)
        if (dot(f.normal, m) < f.rhs)
            return false;
    return true;
}

bool PolyhedralSet::in_relative_interior(const RationalPoint& m) const
{
    if (!contains(m))
        return false;
    for (const auto& f : facets_)
        if (dot(f.normal, m) == f.rhs)
            return false;
    return true;
}

PolyhedralSet PolyhedralSet::translate(const RationalPoint& m) const
{
    std::vector<RationalPoint> pts;
    for (const auto& p : points_)
        pts.push_back(p + m);
    return from_points(pts, recession_);
}

PolyhedralSet PolyhedralSet::scale(const Rational& t) const
{
    if (t <= 0)
        throw std::invalid_argument("PolyhedralSet::scale: factor must be positive");
    std::vector<RationalPoint> pts;
    for (const auto& p : points_)
        pts.push_back(t * p);
    return from_points(pts, recession_);
}

bool PolyhedralSet::operator==(const PolyhedralSet& other) const
{
    return ambient_ == other.ambient_ && points_ == other.points_ && recession_ == other.recession_;
}

PolyhedralSet operator+(const PolyhedralSet& a, const PolyhedralSet& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("Minkowski sum: rank mismatch");
    std::vector<RationalPoint> pts;
    for (const auto& p : a.points())
        for (const auto& q : b.points())
            pts.push_back(p + q);
    IntegerMatrix gens = a.recession().generators();
    for (const auto& g : b.recession().generators())
        gens.push_back(g);
    return PolyhedralSet::from_points(pts, Cone::from_generators(a.ambient_dim(), gens));
}

PolyhedralSet minimal_K(const std::vector<RationalPoint>& points, const Cone& recession)
{
    return PolyhedralSet::from_points(points, recession);
}

SupportFunction::SupportFunction(Cone domain, std::vector<RationalPoint> points)
    : domain_(std::move(domain)), points_(std::move(points))
{
    if (points_.empty())
        throw std::invalid_argument("SupportFunction: no points");
    for (const auto& p : points_)
        if (p.size() != domain_.ambient_dim())
            throw DimensionError("SupportFunction: point rank mismatch");
}

Rational SupportFunction::operator()(const RationalPoint& e) const
{
    if (!domain_.contains(e))
        throw std::domain_error("support function evaluated outside its domain");
    Rational best = dot(points_.front(), e);
    for (std::size_t i = 1; i < points_.size(); ++i)
        best = std::min(best, dot(points_[i], e));
    return best;
}

RationalPoint SupportFunction::argmin(const RationalPoint& e) const
{
    Rational v = (*this)(e);
    const RationalPoint* best = nullptr;
    for (const auto& p : points_)
        if (dot(p, e) == v && (!best || lex_less(p, *best)))
            best = &p;
    return *best;
}

Cone dualize(const Cone& c) { return c.dual(); }

Rational support_eval(const SupportFunction& h, const RationalPoint& e) { return h(e); }

SupportFunction support_of_set(const PolyhedralSet& p)
{
    return SupportFunction(p.recession().dual(), p.points());
}

PolyhedralSet set_from_support(const SupportFunction& h)
{
    return PolyhedralSet::from_points(h.points(), h.domain().dual());
}

SupportFunction operator+(const SupportFunction& a, const SupportFunction& b)
{
    if (!(a.domain() == b.domain()))
        throw std::invalid_argument("support function sum: domains differ");
    return support_of_set(set_from_support(a) + set_from_support(b));
}

// ---------------------------------------------------------------------------
// Fans

Fan Fan::from_cones(std::size_t dim, const std::vector<Cone>& cones)
{
    Fan f;
    f.ambient_ = dim;
    std::vector<IntegerMatrix> gens;
    for (const auto& c : cones) {
        if (c.ambient_dim() != dim)
            throw DimensionError("Fan: cone rank mismatch");
        gens.push_back(c.generators());
        for (const auto& g : gens.back())
            f.rays_.push_back(g);
    }
    std::sort(f.rays_.begin(), f.rays_.end(),
              [](const LatticePoint& a, const LatticePoint& b) { return lex_less(a, b); });
    f.rays_.erase(std::unique(f.rays_.begin(), f.rays_.end()), f.rays_.end());

    std::map<std::vector<std::size_t>, Cone> unique;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        std::vector<std::size_t> idx;
        for (const auto& g : gens[i])
            idx.push_back(*f.ray_index(g));
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        unique.emplace(std::move(idx), cones[i]);
    }
    for (auto& [idx, c] : unique) {
        f.cones_.push_back(idx);
        f.cone_cache_.push_back(c);
    }
    f.support_ = Cone::from_generators(dim, f.rays_);
    return f;
}

Fan Fan::from_rays(std::size_t dim, const IntegerMatrix& rays,
                   const std::vector<std::vector<std::size_t>>& cones)
{
    std::vector<Cone> cs;
    for (const auto& idx : cones) {
        IntegerMatrix g;
        for (auto i : idx) {
            if (i >= rays.size())
                throw std::out_of_range("Fan: ray index out of range");
            g.push_back(rays[i]);
        }
        cs.push_back(Cone::from_generators(dim, g));
    }
    return from_cones(dim, cs);
}

Fan Fan::orthants(std::size_t dim)
{
    std::vector<Cone> cs;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
        IntegerMatrix g = identity_matrix(dim);
        for (std::size_t i = 0; i < dim; ++i)
            if (mask & (std::size_t{1} << i))
                g[i][i] = -1;
        cs.push_back(Cone::from_generators(dim, g));
    }
    return from_cones(dim, cs);
}

Fan Fan::single(const Cone& c) { return from_cones(c.ambient_dim(), {c}); }

bool Fan::is_simplicial() const
{
    return std::all_of(cone_cache_.begin(), cone_cache_.end(),
                       [](const Cone& c) { return c.is_simplicial(); });
}

bool Fan::is_pointed() const
{
    return std::all_of(cone_cache_.begin(), cone_cache_.end(),
                       [](const Cone& c) { return c.is_pointed(); });
}

std::optional<std::size_t> Fan::locate(const RationalPoint& e) const
{
    for (std::size_t i = 0; i < cone_cache_.size(); ++i)
        if (cone_cache_[i].contains(e))
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Fan::ray_index(const LatticePoint& r) const
{
    auto it = std::lower_bound(rays_.begin(), rays_.end(), r,
                               [](const LatticePoint& a, const LatticePoint& b) { return lex_less(a, b); });
    if (it == rays_.end() || *it != r)
        return std::nullopt;
    return static_cast<std::size_t>(it - rays_.begin());
}

std::string Fan::validate() const
{
    for (std::size_t i = 0; i < cone_cache_.size(); ++i) {
        if (!support_.contains(cone_cache_[i]))
            return "cone " + std::to_string(i) + " leaves the support";
        if (cone_cache_[i].dim() != support_.dim())
            return "cone " + std::to_string(i) + " is not maximal-dimensional";
    }
    for (std::size_t i = 0; i < cone_cache_.size(); ++i)
        for (std::size_t j = i + 1; j < cone_cache_.size(); ++j) {
            Cone c = cone_cache_[i].intersect(cone_cache_[j]);
            if (!cone_cache_[i].has_face(c) || !cone_cache_[j].has_face(c))
                return "cones " + std::to_string(i) + " and " + std::to_string(j) +
                       " meet outside a common face";
        }
    for (std::size_t i = 0; i < cone_cache_.size(); ++i)
        for (const auto& f : cone_cache_[i].facets()) {
            Cone wall = cone_cache_[i].face(to_rational(f));
            auto wg = wall.generators();
            bool boundary = std::any_of(support_.facets().begin(), support_.facets().end(),
                                        [&](const LatticePoint& g) {
                                            return std::all_of(wg.begin(), wg.end(), [&](const LatticePoint& w) {
                                                return dot(g, w) == 0;
                                            });
                                        });
            if (boundary)
                continue;
            std::size_t shared = 0;
            for (std::size_t j = 0; j < cone_cache_.size(); ++j)
                if (j != i && cone_cache_[j].contains(wall))
                    ++shared;
            if (shared != 1)
                return "interior wall of cone " + std::to_string(i) + " is not shared by exactly one cone";
        }
    return {};
}

Fan common_refinement(const Fan& a, const Fan& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("common_refinement: rank mismatch");
    const std::size_t target = a.support().intersect(b.support()).dim();
    std::vector<Cone> pieces;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            Cone c = a.cone(i).intersect(b.cone(j));
            if (c.dim() == target)
                pieces.push_back(std::move(c));
        }
    return Fan::from_cones(a.ambient_dim(), pieces);
}

namespace {

void pull(const Fan& f, const Cone& c, std::vector<std::size_t> idx,
          std::vector<std::vector<std::size_t>>& out, std::vector<std::size_t> apex)
{
    if (idx.size() == c.dim()) {
        idx.insert(idx.end(), apex.begin(), apex.end());
        std::sort(idx.begin(), idx.end());
        out.push_back(std::move(idx));
        return;
    }
    const std::size_t v = *std::min_element(idx.begin(), idx.end());
    apex.push_back(v);
    for (const auto& phi : c.facets()) {
        if (dot(phi, f.rays()[v]) == 0)
            continue;
        std::vector<std::size_t> sub;
        IntegerMatrix gens;
        for (auto i : idx)
            if (dot(phi, f.rays()[i]) == 0) {
                sub.push_back(i);
                gens.push_back(f.rays()[i]);
            }
        pull(f, Cone::from_generators(f.ambient_dim(), gens), std::move(sub), out, apex);
    }
}

} // namespace

Fan triangulate(const Fan& input)
{
    if (input.is_simplicial())
        return input;
    Fan f = input.is_pointed() ? input : common_refinement(input, Fan::orthants(input.ambient_dim()));
    std::vector<std::vector<std::size_t>> simplices;
    for (std::size_t i = 0; i < f.size(); ++i)
        pull(f, f.cone(i), f.cones()[i], simplices, {});
    return Fan::from_rays(f.ambient_dim(), f.rays(), simplices);
}

// ---------------------------------------------------------------------------
// Piecewise-linear functions

PiecewiseLinear::PiecewiseLinear(Fan fan, std::vector<Rational> values)
    : fan_(std::move(fan)), values_(std::move(values))
{
    if (!fan_.is_simplicial())
        throw std::invalid_argument("PiecewiseLinear: fan is not simplicial");
    if (values_.size() != fan_.rays().size())
        throw DimensionError("PiecewiseLinear: one value per ray required");
    const std::size_t n = fan_.ambient_dim();
    for (const auto& idx : fan_.cones()) {
        RationalMatrix rows;
        RationalPoint rhs;
        for (auto i : idx) {
            rows.push_back(to_rational(fan_.rays()[i]));
            rhs.push_back(values_[i]);
        }
        auto a = solve(rows, rhs, n);
        forms_.push_back(a ? *a : RationalPoint(n, Rational(0)));
    }
}

PiecewiseLinear PiecewiseLinear::from_function(const Fan& simplicial,
                                               const std::function<Rational(const LatticePoint&)>& f)
{
    std::vector<Rational> vals;
    for (const auto& r : simplicial.rays())
        vals.push_back(f(r));
    return PiecewiseLinear(simplicial, std::move(vals));
}

PiecewiseLinear PiecewiseLinear::from_support(const SupportFunction& h)
{
    PolyhedralSet p = set_from_support(h);
    Fan f = triangulate(linearity_fan(h, p.points()));
    return from_function(f, [&](const LatticePoint& r) { return h(r); });
}

Rational PiecewiseLinear::operator()(const RationalPoint& e) const
{
    auto i = fan_.locate(e);
    if (!i)
        throw std::domain_error("piecewise-linear function evaluated outside its support");
    return dot(forms_[*i], e);
}

bool PiecewiseLinear::is_upper_convex() const
{
    for (const auto& a : forms_)
        for (std::size_t r = 0; r < values_.size(); ++r)
            if (dot(a, fan_.rays()[r]) < values_[r])
                return false;
    return true;
}

PiecewiseLinear PiecewiseLinear::restrict_to(const Fan& finer) const
{
    return from_function(finer, [&](const LatticePoint& r) { return (*this)(r); });
}

Fan simplicial_refinement(const Fan& f, const std::vector<PiecewiseLinear>& extra)
{
    Fan r = f;
    for (const auto& g : extra)
        r = common_refinement(r, g.fan());
    return triangulate(r);
}

Fan linearity_fan(const SupportFunction& h, const std::vector<RationalPoint>& pts)
{
    const Cone& sigma = h.domain();
    const std::size_t n = sigma.ambient_dim();
    std::vector<Cone> cones;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        RationalMatrix ineq = as_rational(sigma.facets());
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (k != j)
                ineq.push_back(pts[k] - pts[j]);
        Cone c = Cone::from_inequalities(n, ineq, as_rational(sigma.equations()));
        if (c.dim() == sigma.dim())
            cones.push_back(std::move(c));
    }
    return Fan::from_cones(n, cones);
}

AmpleFan ample_fan(const PolyhedralSet& p, const Lattice& n)
{
    const std::size_t r = p.ambient_dim();
    if (n.rank() != r)
        throw DimensionError("ample_fan: lattice rank differs from the set");
    const RationalPoint& m0 = p.points().front();
    SupportFunction h = support_of_set(p);
    Fan full = linearity_fan(h, p.points());

    RationalMatrix rows;
    for (const auto& v : p.points())
        if (v != m0)
            rows.push_back(v - m0);
    for (const auto& g : p.recession().generators())
        rows.push_back(to_rational(g));
    IntegerMatrix kernel = rows.empty() ? identity_matrix(r) : integer_kernel(rows, r);
    if (kernel.empty())
        return AmpleFan{full, LatticeMap::identity(r), std::nullopt, m0, p};

    Quotient q = quotient_lattice(n, kernel);
    const std::size_t rr = q.lattice.rank();
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < full.size(); ++i) {
        IntegerMatrix img;
        for (const auto& g : full.cone(i).generators())
            img.push_back(q.projection.apply(g));
        cones.push_back(Cone::from_generators(rr, img));
    }
    std::vector<RationalPoint> pts;
    for (const auto& v : p.points())
        pts.push_back(q.dual_coordinates(v - m0));
    IntegerMatrix rec;
    for (const auto& g : p.recession().generators())
        rec.push_back(to_integer(q.dual_coordinates(to_rational(g))));
    PolyhedralSet reduced = PolyhedralSet::from_points(pts, Cone::from_generators(rr, rec));
    Fan fan = Fan::from_cones(rr, cones);
    return AmpleFan{fan, q.projection, q, m0, reduced};
}

} // namespace satoric
