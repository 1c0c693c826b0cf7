#pragma once

#include "satoric/linalg.hpp"
#include "satoric/rational.hpp"

#include <vector>

namespace satoric {

/**
 * Generators of {x : a.x >= 0 for a in inequalities, a.x = 0 for a in equations}
 * computed by the incremental double description method.
 *
 * `lineality` is a Hermite-normal basis of the lineality space; each entry of
 * `rays` is the primitive integer multiple of an extreme ray projected
 * orthogonally onto the complement of the lineality space, sorted
 * lexicographically. Both are canonical for the cone as a set.
 */
struct RayDescription
{
    IntegerMatrix lineality;
    IntegerMatrix rays;
};

RayDescription double_description(const RationalMatrix& inequalities,
                                  const RationalMatrix& equations, std::size_t dim);

/**
 * Rational polyhedral cone with both descriptions kept in canonical form.
 * Facet normals and equations live in the dual space.
 */
class Cone
{
public:
    Cone() = default;

    static Cone from_generators(std::size_t dim, const IntegerMatrix& generators);
    static Cone from_generators(std::size_t dim, const RationalMatrix& generators);
    static Cone from_inequalities(std::size_t dim, const RationalMatrix& inequalities,
                                  const RationalMatrix& equations = {});
    static Cone full(std::size_t dim);
    static Cone zero(std::size_t dim);
    /// Nonnegative orthant.
    static Cone orthant(std::size_t dim);

    std::size_t ambient_dim() const { return ambient_; }
    /// Dimension of the linear span.
    std::size_t dim() const { return ambient_ - equations_.size(); }
    std::size_t lineality_dim() const { return lineality_.size(); }
    bool is_pointed() const { return lineality_.empty(); }
    bool is_full_dimensional() const { return equations_.empty(); }
    bool is_simplicial() const;

    const IntegerMatrix& rays() const { return rays_; }
    const IntegerMatrix& lineality() const { return lineality_; }
    /// Inner facet normals (irredundant, primitive, canonical modulo equations).
    const IntegerMatrix& facets() const { return facets_; }
    /// Basis of the orthogonal complement of the linear span.
    const IntegerMatrix& equations() const { return equations_; }
    /// rays() followed by +l and -l for every lineality basis vector l.
    IntegerMatrix generators() const;

    bool contains(const RationalPoint& x) const;
    bool contains(const LatticePoint& x) const;
    bool contains(const Cone& other) const;
    bool in_relative_interior(const RationalPoint& x) const;

    Cone dual() const;
    Cone intersect(const Cone& other) const;
    /// Face cut out by the supporting normal u (u must be nonnegative on the cone).
    Cone face(const RationalPoint& normal) const;
    /// Whether `other` is a face of this cone.
    bool has_face(const Cone& other) const;
    /// Some point of the relative interior (sum of generators).
    LatticePoint interior_point() const;

    bool operator==(const Cone& other) const;
    bool operator<(const Cone& other) const;

private:
    std::size_t ambient_ = 0;
    IntegerMatrix rays_;
    IntegerMatrix lineality_;
    IntegerMatrix facets_;
    IntegerMatrix equations_;
};

/// Lexicographic comparison helpers used for canonical orderings.
bool lex_less(const LatticePoint& a, const LatticePoint& b);
bool lex_less(const RationalPoint& a, const RationalPoint& b);

} // namespace satoric
