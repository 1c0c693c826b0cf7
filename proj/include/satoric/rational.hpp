#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace satoric {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Integer coordinates of a point in N or M.
using LatticePoint = std::vector<Integer>;
/// Rational coordinates of a point in N_Q or M_Q.
using RationalPoint = std::vector<Rational>;

/** Raised when two vectors that must live in the same lattice have different ranks. */
class DimensionError : public std::invalid_argument
{
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integer(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Parses `p/q` or `p`; throws std::invalid_argument on malformed input or q = 0.
Rational parse_rational(std::string_view text);
/// Formats as `p/q` with q > 0, or `p` when q = 1.
std::string format(const Rational& q);
std::string format(const RationalPoint& v, char sep = ',');
std::string format(const LatticePoint& v, char sep = ',');

RationalPoint to_rational(const LatticePoint& v);
/// Throws std::invalid_argument when a coordinate is not integral.
LatticePoint to_integer(const RationalPoint& v);

/// Positive multiple of `v` with integer coordinates of gcd 1 (same ray). Zero maps to zero.
LatticePoint primitive_multiple(const RationalPoint& v);

Rational dot(const RationalPoint& a, const RationalPoint& b);
Rational dot(const RationalPoint& a, const LatticePoint& b);
Rational dot(const LatticePoint& a, const RationalPoint& b);
Integer dot(const LatticePoint& a, const LatticePoint& b);

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator-(const RationalPoint& a);
RationalPoint operator*(const Rational& s, const RationalPoint& a);
LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator-(const LatticePoint& a);
LatticePoint operator*(const Integer& s, const LatticePoint& a);

bool is_zero(const RationalPoint& v);
bool is_zero(const LatticePoint& v);

/// lcm of all denominators (1 for an empty vector).
Integer common_denominator(const RationalPoint& v);

/// Sup norm.
Rational max_norm(const RationalPoint& v);
Rational l1_norm(const RationalPoint& v);

RationalPoint unit_vector(std::size_t rank, std::size_t i, const Rational& value = 1);

} // namespace satoric
