#include "satoric/lattice_points.hpp"

#include <algorithm>
#include <stdexcept>

namespace satoric {

bool Constraint::satisfied_by(const RationalPoint& m) const
{
    Rational v = dot(normal, m);
    switch (relation) {
    case Relation::GreaterEqual:
        return v >= rhs;
    case Relation::Greater:
        return v > rhs;
    case Relation::Equal:
        return v == rhs;
    }
    return false;
}

bool LinearSystem::has_strict_rows() const
{
    return std::any_of(rows_.begin(), rows_.end(),
                       [](const Constraint& c) { return c.relation == Relation::Greater; });
}

LinearSystem& LinearSystem::add(RationalPoint normal, Rational rhs, Relation rel)
{
    if (normal.size() != dim_)
        throw DimensionError("LinearSystem: row length differs from dimension");
    rows_.push_back(Constraint{std::move(normal), std::move(rhs), rel});
    return *this;
}

LinearSystem& LinearSystem::append(const LinearSystem& other)
{
    if (other.dim_ != dim_)
        throw DimensionError("LinearSystem::append: dimension mismatch");
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
    return *this;
}

bool LinearSystem::satisfied_by(const RationalPoint& m) const
{
    if (m.size() != dim_)
        throw DimensionError("LinearSystem: point rank mismatch");
    return std::all_of(rows_.begin(), rows_.end(), [&](const Constraint& c) { return c.satisfied_by(m); });
}

LinearSystem LinearSystem::of_set(const PolyhedralSet& p)
{
    LinearSystem s(p.ambient_dim());
    for (const auto& f : p.facets())
        s.add_ge(to_rational(f.normal), f.rhs);
    for (const auto& q : p.equations())
        s.add_eq(to_rational(q.normal), q.rhs);
    return s;
}

// ---------------------------------------------------------------------------
// Simplex on the dual problem  max w.u  s.t.  G u = c, u >= 0,
// whose dual is the caller's  min c.x  s.t.  G^T x >= w.

namespace {

struct Tableau
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    RationalMatrix t;
    RationalPoint rhs;
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c)
    {
        Rational inv = 1 / t[r][c];
        for (auto& x : t[r])
            if (x != 0)
                x *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c] == 0)
                continue;
            Rational f = t[i][c];
            for (std::size_t k = 0; k < cols; ++k)
                if (t[r][k] != 0)
                    t[i][k] -= f * t[r][k];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = c;
    }

    RationalPoint reduced_costs(const RationalPoint& cost) const
    {
        RationalPoint d = cost;
        for (std::size_t i = 0; i < rows; ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0)
                continue;
            for (std::size_t k = 0; k < cols; ++k)
                if (t[i][k] != 0)
                    d[k] -= cb * t[i][k];
        }
        return d;
    }

    /// Bland's rule; returns false when the objective is unbounded below.
    bool minimize(const RationalPoint& cost, std::size_t allowed_cols)
    {
        while (true) {
            RationalPoint d = reduced_costs(cost);
            std::size_t enter = allowed_cols;
            for (std::size_t k = 0; k < allowed_cols; ++k)
                if (d[k] < 0) {
                    enter = k;
                    break;
                }
            if (enter == allowed_cols)
                return true;
            std::size_t leave = rows;
            Rational best;
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][enter] <= 0)
                    continue;
                Rational ratio = rhs[i] / t[i][enter];
                if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows)
                return false;
            pivot(leave, enter);
        }
    }
};

struct DualOutcome
{
    enum class Kind { Optimal, DualInfeasible, PrimalInfeasible } kind;
    RationalPoint x;       // optimal primal point
    RationalPoint ray;     // Farkas direction when the dual is infeasible
    RationalPoint u;       // dual solution in the column order of G
};

DualOutcome solve_dual(const RationalMatrix& gcols, const RationalPoint& w, const RationalPoint& c,
                       std::size_t n)
{
    const std::size_t nreal = gcols.size();
    Tableau tab;
    tab.rows = n;
    tab.cols = nreal + n;
    tab.t.assign(n, RationalPoint(tab.cols, Rational(0)));
    tab.rhs.assign(n, Rational(0));
    std::vector<int> sign(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
        if (c[k] < 0)
            sign[k] = -1;
        for (std::size_t j = 0; j < nreal; ++j)
            tab.t[k][j] = sign[k] * gcols[j][k];
        tab.t[k][nreal + k] = 1;
        tab.rhs[k] = sign[k] * c[k];
        tab.basis.push_back(nreal + k);
    }

    RationalPoint cost1(tab.cols, Rational(0));
    for (std::size_t k = 0; k < n; ++k)
        cost1[nreal + k] = 1;
    tab.minimize(cost1, tab.cols);
    Rational phase1 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (tab.basis[i] >= nreal)
            phase1 += tab.rhs[i];

    DualOutcome out;
    if (phase1 > 0) {
        RationalPoint d = tab.reduced_costs(cost1);
        out.kind = DualOutcome::Kind::DualInfeasible;
        out.ray.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            out.ray[k] = -Rational(sign[k]) * (1 - d[nreal + k]);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (tab.basis[i] < nreal)
            continue;
        for (std::size_t j = 0; j < nreal; ++j)
            if (tab.t[i][j] != 0) {
                tab.pivot(i, j);
                break;
            }
    }

    RationalPoint cost2(tab.cols, Rational(0));
    for (std::size_t j = 0; j < nreal; ++j)
        cost2[j] = -w[j];
    if (!tab.minimize(cost2, nreal)) {
        out.kind = DualOutcome::Kind::PrimalInfeasible;
        return out;
    }
    RationalPoint d = tab.reduced_costs(cost2);
    out.kind = DualOutcome::Kind::Optimal;
    out.x.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.x[k] = Rational(sign[k]) * d[nreal + k];
    out.u.assign(nreal, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        if (tab.basis[i] < nreal)
            out.u[tab.basis[i]] = tab.rhs[i];
    return out;
}

} // namespace

LPResult lp_optimize(const LinearSystem& sys, const RationalPoint& objective, Sense sense)
{
    if (sys.has_strict_rows())
        throw std::invalid_argument("lp_optimize: strict rows are not allowed");
    const std::size_t n = sys.dim();
    if (objective.size() != n)
        throw DimensionError("lp_optimize: objective length differs from dimension");
    RationalPoint c = sense == Sense::Minimize ? objective : -objective;

    LPResult res;
    if (n == 0) {
        bool ok = sys.satisfied_by(RationalPoint{});
        res.status = ok ? LPResult::Status::Optimal : LPResult::Status::Infeasible;
        res.value = 0;
        return res;
    }

    RationalMatrix gcols;
    RationalPoint w;
    std::vector<std::size_t> origin;
    std::vector<int> mult;
    for (std::size_t i = 0; i < sys.rows().size(); ++i) {
        const auto& r = sys.rows()[i];
        gcols.push_back(r.normal);
        w.push_back(r.rhs);
        origin.push_back(i);
        mult.push_back(1);
        if (r.relation == Relation::Equal) {
            gcols.push_back(-r.normal);
            w.push_back(-r.rhs);
            origin.push_back(i);
            mult.push_back(-1);
        }
    }

    auto check_feasible = [&](const RationalPoint& x) {
        if (!sys.satisfied_by(x))
            throw std::logic_error("lp_optimize: simplex produced an infeasible point");
    };

    DualOutcome d = solve_dual(gcols, w, c, n);
    if (d.kind == DualOutcome::Kind::PrimalInfeasible) {
        res.status = LPResult::Status::Infeasible;
        return res;
    }
    if (d.kind == DualOutcome::Kind::DualInfeasible) {
        DualOutcome f = solve_dual(gcols, w, RationalPoint(n, Rational(0)), n);
        if (f.kind != DualOutcome::Kind::Optimal) {
            res.status = LPResult::Status::Infeasible;
            return res;
        }
        check_feasible(f.x);
        for (const auto& r : sys.rows()) {
            Rational v = dot(r.normal, d.ray);
            if (v < 0 || (r.relation == Relation::Equal && v != 0))
                throw std::logic_error("lp_optimize: invalid recession certificate");
        }
        if (dot(c, d.ray) >= 0)
            throw std::logic_error("lp_optimize: recession certificate does not improve");
        res.status = LPResult::Status::Unbounded;
        res.point = f.x;
        res.ray = d.ray;
        return res;
    }

    check_feasible(d.x);
    res.status = LPResult::Status::Optimal;
    res.point = d.x;
    res.value = dot(objective, d.x);
    res.dual.assign(sys.rows().size(), Rational(0));
    for (std::size_t j = 0; j < d.u.size(); ++j)
        res.dual[origin[j]] += mult[j] * d.u[j];
    return res;
}

// ---------------------------------------------------------------------------
// Integer feasibility

namespace {

/// Integer row a.z >= b (or = b) after scaling to a primitive integer normal.
struct IntRow
{
    LatticePoint a;
    Integer b;
};

/// Scales a rational normal to a primitive integer one; returns the positive factor applied.
LatticePoint integral_normal(const RationalPoint& a, Rational& factor)
{
    LatticePoint p = primitive_multiple(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) {
            factor = Rational(p[i]) / a[i];
            break;
        }
    return p;
}

std::optional<LatticePoint> branch_and_bound(const std::vector<IntRow>& rows, std::size_t k,
                                             LatticePoint lower, LatticePoint upper)
{
    for (std::size_t i = 0; i < k; ++i)
        if (lower[i] > upper[i])
            return std::nullopt;
    LinearSystem lp(k);
    for (const auto& r : rows)
        lp.add_ge(to_rational(r.a), Rational(r.b));
    for (std::size_t i = 0; i < k; ++i) {
        lp.add_ge(unit_vector(k, i), Rational(lower[i]));
        lp.add_ge(unit_vector(k, i, -1), Rational(-upper[i]));
    }
    LPResult res = lp_optimize(lp, RationalPoint(k, Rational(0)), Sense::Minimize);
    if (res.status == LPResult::Status::Infeasible)
        return std::nullopt;
    const RationalPoint& x = res.point;

    std::size_t pick = k;
    Rational best_gap = -1;
    for (std::size_t i = 0; i < k; ++i) {
        if (is_integer(x[i]))
            continue;
        Rational frac = x[i] - Rational(floor(x[i]));
        Rational rest = 1 - frac;
        Rational gap = std::min(frac, rest);
        if (gap > best_gap) {
            best_gap = gap;
            pick = i;
        }
    }
    if (pick == k)
        return to_integer(x);

    LatticePoint up = upper;
    up[pick] = floor(x[pick]);
    if (auto w = branch_and_bound(rows, k, lower, up))
        return w;
    LatticePoint lo = lower;
    lo[pick] = ceil(x[pick]);
    return branch_and_bound(rows, k, lo, upper);
}

} // namespace

std::optional<LatticePoint> integer_point(const LinearSystem& sys)
{
    const std::size_t n = sys.dim();
    std::vector<IntRow> ineq;
    IntegerMatrix eq_rows;
    LatticePoint eq_rhs;

    for (const auto& r : sys.rows()) {
        if (is_zero(r.normal)) {
            if (!r.satisfied_by(RationalPoint(n, Rational(0))))
                return std::nullopt;
            continue;
        }
        if (r.relation == Relation::Greater) {
            for (const auto& x : r.normal)
                if (!is_integer(x))
                    throw std::invalid_argument("integer_point: strict row with non-integer normal");
        }
        Rational factor;
        LatticePoint a = integral_normal(r.normal, factor);
        Rational b = r.rhs * factor;
        switch (r.relation) {
        case Relation::Greater:
            ineq.push_back({a, floor(b) + 1});
            break;
        case Relation::GreaterEqual:
            ineq.push_back({a, ceil(b)});
            break;
        case Relation::Equal:
            if (!is_integer(b))
                return std::nullopt;
            eq_rows.push_back(a);
            eq_rhs.push_back(numerator(b));
            break;
        }
    }

    // Parametrize the integer solutions of the equations as m0 + K z.
    LatticePoint m0(n, Integer(0));
    IntegerMatrix kcols = identity_matrix(n); // columns of K, stored as rows
    if (!eq_rows.empty()) {
        SmithForm s = smith_normal_form(eq_rows, n);
        LatticePoint ud(eq_rows.size(), Integer(0));
        for (std::size_t i = 0; i < eq_rows.size(); ++i)
            for (std::size_t j = 0; j < eq_rows.size(); ++j)
                ud[i] += s.U[i][j] * eq_rhs[j];
        LatticePoint y(n, Integer(0));
        for (std::size_t i = 0; i < eq_rows.size(); ++i) {
            if (i < s.rank) {
                if (ud[i] % s.D[i][i] != 0)
                    return std::nullopt;
                y[i] = ud[i] / s.D[i][i];
            } else if (ud[i] != 0) {
                return std::nullopt;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m0[i] += s.V[i][j] * y[j];
        kcols.clear();
        for (std::size_t j = s.rank; j < n; ++j) {
            LatticePoint col(n);
            for (std::size_t i = 0; i < n; ++i)
                col[i] = s.V[i][j];
            kcols.push_back(std::move(col));
        }
    }
    const std::size_t k = kcols.size();

    auto lift = [&](const LatticePoint& z) {
        LatticePoint m = m0;
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i)
                m[i] += z[j] * kcols[j][i];
        return m;
    };

    std::vector<IntRow> rows;
    for (const auto& r : ineq) {
        LatticePoint a(k);
        for (std::size_t j = 0; j < k; ++j)
            a[j] = dot(r.a, kcols[j]);
        Integer b = r.b - dot(r.a, m0);
        if (is_zero(a)) {
            if (b > 0)
                return std::nullopt;
            continue;
        }
        Integer g = 0;
        for (const auto& x : a)
            g = gcd(g, x);
        for (auto& x : a)
            x /= g;
        rows.push_back({a, ceil(Rational(b, g))});
    }

    std::optional<LatticePoint> found;
    if (k == 0) {
        found = LatticePoint{};
        for (const auto& r : rows)
            if (r.b > 0)
                found.reset();
    } else {
        std::vector<HalfSpace> hs;
        for (const auto& r : rows)
            hs.push_back({r.a, Rational(r.b)});
        PolyhedralSet region;
        try {
            region = PolyhedralSet::from_inequalities(k, hs);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
        // Some lattice point (if any) lies in conv(points) + sum [0,1] g over
        // integral recession generators g.
        LatticePoint lower(k), upper(k);
        for (std::size_t i = 0; i < k; ++i) {
            Rational lo = region.points().front()[i], hi = lo;
            for (const auto& p : region.points()) {
                lo = std::min(lo, p[i]);
                hi = std::max(hi, p[i]);
            }
            for (const auto& g : region.recession().generators()) {
                if (g[i] < 0)
                    lo += g[i];
                else
                    hi += g[i];
            }
            lower[i] = ceil(lo);
            upper[i] = floor(hi);
        }
        found = branch_and_bound(rows, k, lower, upper);
    }
    if (!found)
        return std::nullopt;
    LatticePoint m = lift(*found);
    if (!sys.satisfied_by(m))
        throw std::logic_error("integer_point: witness violates the system");
    return m;
}

Box Box::cube(std::size_t dim, long radius)
{
    return Box{LatticePoint(dim, Integer(-radius)), LatticePoint(dim, Integer(radius))};
}

std::vector<LatticePoint> enumerate_points(const LinearSystem& sys, const Box& box)
{
    const std::size_t n = sys.dim();
    if (box.lower.size() != n || box.upper.size() != n)
        throw DimensionError("enumerate_points: box rank mismatch");
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < n; ++i)
        if (box.lower[i] > box.upper[i])
            return out;
    LatticePoint m = box.lower;
    while (true) {
        if (sys.satisfied_by(m))
            out.push_back(m);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (m[i] < box.upper[i]) {
                ++m[i];
                for (std::size_t j = i + 1; j < n; ++j)
                    m[j] = box.lower[j];
                break;
            }
            if (i == 0)
                return out;
        }
        if (n == 0)
            return out;
    }
}

// ---------------------------------------------------------------------------
// Lattice width

Rational width_along(const PolyhedralSet& body, const LatticePoint& e)
{
    Rational lo = dot(body.points().front(), e), hi = lo;
    for (const auto& p : body.points()) {
        Rational v = dot(p, e);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

namespace {

bool sign_normalized(const LatticePoint& e)
{
    for (const auto& x : e)
        if (x != 0)
            return x > 0;
    return false;
}

Integer sup_norm(const LatticePoint& e)
{
    Integer m = 0;
    for (const auto& x : e)
        m = std::max(m, Integer(abs(x)));
    return m;
}

/// Calls f on every sign-normalized nonzero vector with |e_i| <= bound.
template <class F>
void for_each_direction(std::size_t n, const Integer& bound, F f)
{
    Box box{LatticePoint(n, -bound), LatticePoint(n, bound)};
    LatticePoint e = box.lower;
    while (true) {
        if (sign_normalized(e))
            f(e);
        std::size_t i = n;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (e[i] < box.upper[i]) {
                ++e[i];
                for (std::size_t j = i + 1; j < n; ++j)
                    e[j] = box.lower[j];
                advanced = true;
                break;
            }
        }
        if (!advanced)
            return;
    }
}

/// Whether (w, e) beats the incumbent (bw, be) under the documented tie-break.
bool better(const Rational& w, const LatticePoint& e, const Rational& bw, const LatticePoint& be)
{
    if (w != bw)
        return w < bw;
    Integer ne = sup_norm(e), nb = sup_norm(be);
    if (ne != nb)
        return ne < nb;
    return lex_less(be, e);
}

} // namespace

WidthCertificate lattice_width(const PolyhedralSet& body)
{
    if (!body.is_compact())
        throw std::invalid_argument("lattice_width: body is unbounded");
    const std::size_t n = body.ambient_dim();
    if (n == 0)
        throw std::invalid_argument("lattice_width: rank zero has no directions");

    WidthCertificate best;
    bool have = false;
    auto consider = [&](const LatticePoint& e) {
        Integer g = 0;
        for (const auto& x : e)
            g = gcd(g, x);
        if (g != 1)
            return;
        Rational w = width_along(body, e);
        if (!have || better(w, e, best.width, best.direction)) {
            best.direction = e;
            best.width = w;
            have = true;
        }
    };

    if (body.dim() < n) {
        IntegerMatrix kernel;
        for (const auto& q : body.equations())
            kernel.push_back(q.normal);
        kernel = hermite_normal_form(kernel, n);
        Integer bound = 0;
        for (const auto& k : kernel)
            bound = std::max(bound, sup_norm(k));
        for_each_direction(n, bound, [&](const LatticePoint& e) {
            if (width_along(body, e) == 0)
                consider(e);
        });
    } else {
        // Chebyshev centre for the sup norm: max s with a.c - |a|_1 s >= b.
        LinearSystem cheb(n + 1);
        for (const auto& f : body.facets()) {
            RationalPoint row;
            for (const auto& x : f.normal)
                row.push_back(Rational(x));
            row.push_back(-Rational(l1_norm(to_rational(f.normal))));
            cheb.add_ge(row, f.rhs);
        }
        LPResult r = lp_optimize(cheb, unit_vector(n + 1, n), Sense::Maximize);
        if (r.status != LPResult::Status::Optimal || r.value <= 0)
            throw std::logic_error("lattice_width: full-dimensional body without interior ball");
        Rational w0;
        for (std::size_t i = 0; i < n; ++i) {
            LatticePoint e(n, Integer(0));
            e[i] = 1;
            Rational w = width_along(body, e);
            if (i == 0 || w < w0)
                w0 = w;
        }
        // width(e) >= 2 r |e|_1, so any direction at least as good has |e|_1 <= w0 / (2r).
        Rational l1_bound = w0 / (2 * r.value);
        Integer bound = floor(l1_bound);
        for_each_direction(n, bound, [&](const LatticePoint& e) {
            if (l1_norm(to_rational(e)) <= l1_bound)
                consider(e);
        });
    }

    const RationalPoint* lo = nullptr;
    const RationalPoint* hi = nullptr;
    for (const auto& p : body.points()) {
        Rational v = dot(p, best.direction);
        if (!lo || v < dot(*lo, best.direction))
            lo = &p;
        if (!hi || v > dot(*hi, best.direction))
            hi = &p;
    }
    best.argmin = *lo;
    best.argmax = *hi;
    return best;
}

} // namespace satoric
