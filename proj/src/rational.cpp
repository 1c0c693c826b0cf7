#include "satoric/rational.hpp"

#include <algorithm>
#include <cctype>

namespace satoric {

namespace {

void require_same_rank(std::size_t a, std::size_t b)
{
    if (a != b)
        throw DimensionError("rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

bool parse_integer_text(std::string_view text, Integer& out)
{
    if (text.empty())
        return false;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        return false;
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            return false;
    std::string s(text[0] == '+' ? text.substr(1) : text);
    out = Integer(s);
    return true;
}

} // namespace

Integer floor(const Rational& q)
{
    Integer n = numerator(q), d = denominator(q);
    Integer r = n / d; // truncates toward zero
    if (n < 0 && r * d != n)
        r -= 1;
    return r;
}

Integer ceil(const Rational& q) { return -floor(-q); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    Integer p, q = 1;
    if (slash == std::string_view::npos) {
        if (!parse_integer_text(text, p))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    } else {
        if (!parse_integer_text(text.substr(0, slash), p) ||
            !parse_integer_text(text.substr(slash + 1), q))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        if (q == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(p, q);
}

std::string format(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string format(const RationalPoint& v, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += format(v[i]);
    }
    return out;
}

std::string format(const LatticePoint& v, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += v[i].str();
    }
    return out;
}

RationalPoint to_rational(const LatticePoint& v) { return RationalPoint(v.begin(), v.end()); }

LatticePoint to_integer(const RationalPoint& v)
{
    LatticePoint out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integer(x))
            throw std::invalid_argument("non-integral coordinate " + format(x));
        out.push_back(numerator(x));
    }
    return out;
}

LatticePoint primitive_multiple(const RationalPoint& v)
{
    Integer den = common_denominator(v);
    LatticePoint out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        out.push_back(numerator(x) * (den / denominator(x)));
        g = gcd(g, out.back());
    }
    if (g > 1)
        for (auto& x : out)
            x /= g;
    return out;
}

Rational dot(const RationalPoint& a, const RationalPoint& b)
{
    require_same_rank(a.size(), b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

Rational dot(const RationalPoint& a, const LatticePoint& b)
{
    require_same_rank(a.size(), b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0)
            s += a[i] * b[i];
    return s;
}

Rational dot(const LatticePoint& a, const RationalPoint& b) { return dot(b, a); }

Integer dot(const LatticePoint& a, const LatticePoint& b)
{
    require_same_rank(a.size(), b.size());
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b)
{
    require_same_rank(a.size(), b.size());
    RationalPoint out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

RationalPoint operator-(const RationalPoint& a, const RationalPoint& b)
{
    require_same_rank(a.size(), b.size());
    RationalPoint out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

RationalPoint operator-(const RationalPoint& a)
{
    RationalPoint out(a);
    for (auto& x : out)
        x = -x;
    return out;
}

RationalPoint operator*(const Rational& s, const RationalPoint& a)
{
    RationalPoint out(a);
    for (auto& x : out)
        x *= s;
    return out;
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b)
{
    require_same_rank(a.size(), b.size());
    LatticePoint out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b)
{
    require_same_rank(a.size(), b.size());
    LatticePoint out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

LatticePoint operator-(const LatticePoint& a)
{
    LatticePoint out(a);
    for (auto& x : out)
        x = -x;
    return out;
}

LatticePoint operator*(const Integer& s, const LatticePoint& a)
{
    LatticePoint out(a);
    for (auto& x : out)
        x *= s;
    return out;
}

bool is_zero(const RationalPoint& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool is_zero(const LatticePoint& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer common_denominator(const RationalPoint& v)
{
    Integer d = 1;
    for (const auto& x : v)
        d = lcm(d, denominator(x));
    return d;
}

Rational max_norm(const RationalPoint& v)
{
    Rational m = 0;
    for (const auto& x : v)
        m = std::max<Rational>(m, boost::multiprecision::abs(x));
    return m;
}

Rational l1_norm(const RationalPoint& v)
{
    Rational s = 0;
    for (const auto& x : v)
        s += boost::multiprecision::abs(x);
    return s;
}

RationalPoint unit_vector(std::size_t rank, std::size_t i, const Rational& value)
{
    RationalPoint v(rank, Rational(0));
    v.at(i) = value;
    return v;
}

} // namespace satoric
