#include "satoric/cone.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <stdexcept>

namespace satoric {

namespace {

struct WorkRay
{
    LatticePoint v;
    boost::dynamic_bitset<> tight;
};

LatticePoint combine(const Integer& s, const LatticePoint& x, const Integer& t,
                     const LatticePoint& y)
{
    // s*x - t*y, reduced to its primitive multiple
    LatticePoint out(x.size());
    Integer g = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = s * x[i] - t * y[i];
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& c : out)
            c /= g;
    return out;
}

std::size_t rank_of_rows(const IntegerMatrix& rows, const boost::dynamic_bitset<>& which)
{
    IntegerMatrix sel;
    for (auto i = which.find_first(); i != boost::dynamic_bitset<>::npos; i = which.find_next(i))
        sel.push_back(rows[i]);
    return rank(sel);
}

LatticePoint project_off(const LatticePoint& r, const IntegerMatrix& lineality)
{
    if (lineality.empty())
        return r;
    const std::size_t k = lineality.size();
    RationalMatrix gram(k, RationalPoint(k));
    RationalPoint rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            gram[i][j] = Rational(dot(lineality[i], lineality[j]));
        rhs[i] = Rational(dot(lineality[i], r));
    }
    auto c = solve(gram, rhs, k);
    RationalPoint p = to_rational(r);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            p[j] -= (*c)[i] * lineality[i][j];
    return primitive_multiple(p);
}

RationalMatrix as_rational(const IntegerMatrix& m)
{
    RationalMatrix out;
    out.reserve(m.size());
    for (const auto& r : m)
        out.push_back(to_rational(r));
    return out;
}

void sort_unique(IntegerMatrix& m)
{
    std::sort(m.begin(), m.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return lex_less(a, b);
    });
    m.erase(std::unique(m.begin(), m.end()), m.end());
}

} // namespace

bool lex_less(const LatticePoint& a, const LatticePoint& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_less(const RationalPoint& a, const RationalPoint& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RayDescription double_description(const RationalMatrix& inequalities,
                                  const RationalMatrix& equations, std::size_t dim)
{
    IntegerMatrix rows;
    std::vector<bool> is_eq;
    for (const auto& a : equations) {
        if (a.size() != dim)
            throw DimensionError("double_description: equation has wrong length");
        if (!is_zero(a)) {
            rows.push_back(primitive_multiple(a));
            is_eq.push_back(true);
        }
    }
    for (const auto& a : inequalities) {
        if (a.size() != dim)
            throw DimensionError("double_description: inequality has wrong length");
        if (!is_zero(a)) {
            rows.push_back(primitive_multiple(a));
            is_eq.push_back(false);
        }
    }
    const std::size_t total = rows.size();

    IntegerMatrix lin = identity_matrix(dim);
    std::vector<WorkRay> rays;

    for (std::size_t idx = 0; idx < total; ++idx) {
        const LatticePoint& a = rows[idx];
        std::size_t pivot = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                pivot = i;
                break;
            }

        if (pivot < lin.size()) {
            LatticePoint l0 = lin[pivot];
            Integer s0 = dot(a, l0);
            if (s0 < 0) {
                l0 = -l0;
                s0 = -s0;
            }
            IntegerMatrix next_lin;
            for (std::size_t i = 0; i < lin.size(); ++i)
                if (i != pivot)
                    next_lin.push_back(combine(s0, lin[i], dot(a, lin[i]), l0));
            for (auto& r : rays) {
                r.v = combine(s0, r.v, dot(a, r.v), l0);
                r.tight.resize(total);
                r.tight.set(idx);
            }
            if (!is_eq[idx]) {
                WorkRay fresh{l0, boost::dynamic_bitset<>(total)};
                for (std::size_t k = 0; k < idx; ++k)
                    fresh.tight.set(k);
                rays.push_back(std::move(fresh));
            }
            lin = std::move(next_lin);
            continue;
        }

        std::vector<std::size_t> pos, neg;
        std::vector<WorkRay> next;
        std::vector<Integer> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] > 0)
                pos.push_back(i);
            else if (val[i] < 0)
                neg.push_back(i);
            else {
                WorkRay z = rays[i];
                z.tight.resize(total);
                z.tight.set(idx);
                next.push_back(std::move(z));
            }
        }
        if (!is_eq[idx])
            for (auto i : pos) {
                WorkRay p = rays[i];
                p.tight.resize(total);
                next.push_back(std::move(p));
            }

        const std::size_t pointed_dim = dim - lin.size();
        const std::size_t need = pointed_dim >= 2 ? pointed_dim - 2 : 0;
        for (auto p : pos)
            for (auto n : neg) {
                boost::dynamic_bitset<> common = rays[p].tight;
                common.resize(total);
                boost::dynamic_bitset<> other = rays[n].tight;
                other.resize(total);
                common &= other;
                if (common.count() < need)
                    continue;
                if (rank_of_rows(rows, common) != need)
                    continue;
                WorkRay c{combine(val[p], rays[n].v, val[n], rays[p].v), common};
                c.tight.set(idx);
                next.push_back(std::move(c));
            }
        rays = std::move(next);
    }

    RayDescription out;
    if (lin.empty())
        out.lineality = {};
    else if (lin.size() == dim)
        out.lineality = identity_matrix(dim);
    else // saturate: the lattice spanned by the pivoted vectors may have finite index
        out.lineality = integer_kernel(as_rational(integer_kernel(as_rational(lin), dim)), dim);
    for (const auto& r : rays) {
        auto v = project_off(r.v, out.lineality);
        if (!is_zero(v))
            out.rays.push_back(std::move(v));
    }
    sort_unique(out.rays);
    return out;
}

Cone Cone::from_generators(std::size_t dim, const IntegerMatrix& generators)
{
    return from_generators(dim, as_rational(generators));
}

Cone Cone::from_generators(std::size_t dim, const RationalMatrix& generators)
{
    Cone c;
    c.ambient_ = dim;
    auto h = double_description(generators, {}, dim);
    c.facets_ = std::move(h.rays);
    c.equations_ = std::move(h.lineality);
    auto v = double_description(as_rational(c.facets_), as_rational(c.equations_), dim);
    c.rays_ = std::move(v.rays);
    c.lineality_ = std::move(v.lineality);
    return c;
}

Cone Cone::from_inequalities(std::size_t dim, const RationalMatrix& inequalities,
                             const RationalMatrix& equations)
{
    Cone c;
    c.ambient_ = dim;
    auto v = double_description(inequalities, equations, dim);
    c.rays_ = std::move(v.rays);
    c.lineality_ = std::move(v.lineality);
    auto h = double_description(as_rational(c.generators()), {}, dim);
    c.facets_ = std::move(h.rays);
    c.equations_ = std::move(h.lineality);
    return c;
}

Cone Cone::full(std::size_t dim) { return from_inequalities(dim, {}, {}); }

Cone Cone::zero(std::size_t dim) { return from_generators(dim, IntegerMatrix{}); }

Cone Cone::orthant(std::size_t dim)
{
    return from_generators(dim, identity_matrix(dim));
}

bool Cone::is_simplicial() const { return is_pointed() && rays_.size() == dim(); }

IntegerMatrix Cone::generators() const
{
    IntegerMatrix g = rays_;
    for (const auto& l : lineality_) {
        g.push_back(l);
        g.push_back(-l);
    }
    return g;
}

bool Cone::contains(const RationalPoint& x) const
{
    if (x.size() != ambient_)
        throw DimensionError("Cone::contains: rank mismatch");
    for (const auto& q : equations_)
        if (dot(q, x) != 0)
            return false;
    for (const auto& f : facets_)
        if (dot(f, x) < 0)
            return false;
    return true;
}

bool Cone::contains(const LatticePoint& x) const { return contains(to_rational(x)); }

bool Cone::contains(const Cone& other) const
{
    for (const auto& g : other.generators())
        if (!contains(g))
            return false;
    return true;
}

bool Cone::in_relative_interior(const RationalPoint& x) const
{
    if (x.size() != ambient_)
        throw DimensionError("Cone::in_relative_interior: rank mismatch");
    for (const auto& q : equations_)
        if (dot(q, x) != 0)
            return false;
    for (const auto& f : facets_)
        if (dot(f, x) <= 0)
            return false;
    return true;
}

Cone Cone::dual() const
{
    Cone d;
    d.ambient_ = ambient_;
    d.rays_ = facets_;
    d.lineality_ = equations_;
    d.facets_ = rays_;
    d.equations_ = lineality_;
    return d;
}

Cone Cone::intersect(const Cone& other) const
{
    if (other.ambient_ != ambient_)
        throw DimensionError("Cone::intersect: rank mismatch");
    RationalMatrix ineq = as_rational(facets_), eq = as_rational(equations_);
    for (const auto& f : other.facets_)
        ineq.push_back(to_rational(f));
    for (const auto& q : other.equations_)
        eq.push_back(to_rational(q));
    return from_inequalities(ambient_, ineq, eq);
}

Cone Cone::face(const RationalPoint& normal) const
{
    RationalMatrix eq = as_rational(equations_);
    eq.push_back(normal);
    return from_inequalities(ambient_, as_rational(facets_), eq);
}

bool Cone::has_face(const Cone& other) const
{
    if (!contains(other))
        return false;
    auto gens = other.generators();
    RationalMatrix eq = as_rational(equations_);
    for (const auto& f : facets_) {
        bool tight = std::all_of(gens.begin(), gens.end(),
                                 [&](const LatticePoint& g) { return dot(f, g) == 0; });
        if (tight)
            eq.push_back(to_rational(f));
    }
    return from_inequalities(ambient_, as_rational(facets_), eq) == other;
}

LatticePoint Cone::interior_point() const
{
    LatticePoint p(ambient_, Integer(0));
    for (const auto& r : rays_)
        p = p + r;
    return p;
}

bool Cone::operator==(const Cone& other) const
{
    return ambient_ == other.ambient_ && rays_ == other.rays_ && lineality_ == other.lineality_;
}

bool Cone::operator<(const Cone& other) const
{
    if (ambient_ != other.ambient_)
        return ambient_ < other.ambient_;
    if (lineality_ != other.lineality_)
        return std::lexicographical_compare(lineality_.begin(), lineality_.end(),
                                            other.lineality_.begin(), other.lineality_.end(),
                                            [](const auto& a, const auto& b) { return lex_less(a, b); });
    return std::lexicographical_compare(rays_.begin(), rays_.end(), other.rays_.begin(),
                                        other.rays_.end(),
                                        [](const auto& a, const auto& b) { return lex_less(a, b); });
}

} // namespace satoric
