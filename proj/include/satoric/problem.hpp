#pragma once

#include "satoric/fga.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace satoric {

/// Syntax or validation error in a problem file; line and column are 1-based (0 when unknown).
class ParseError : public std::invalid_argument
{
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/**
 * Line-oriented problem description:
 *
 *     lattice rank 2
 *     fan
 *     ray 1 0
 *     cone 0 1          # 0-based ray indices
 *     boundary 0 1/2
 *     sigma
 *     gen 1 0
 *     polytope
 *     vertex 0 1/2
 *     algebra period 2
 *     level 2: 0,0 | 1,0
 *     option horizon 24
 */
struct ProblemFile
{
    std::optional<std::size_t> rank;

    bool has_fan = false;
    IntegerMatrix rays;
    std::vector<std::vector<std::size_t>> cones;
    std::optional<std::vector<Rational>> boundary;

    bool has_sigma = false;
    IntegerMatrix sigma;

    bool has_polytope = false;
    std::vector<RationalPoint> vertices;

    bool has_algebra = false;
    Integer period = 1;
    std::map<Integer, std::vector<LatticePoint>> levels;

    std::vector<std::pair<std::string, std::string>> options;

    bool operator==(const ProblemFile&) const = default;

    /// Declared rank, or the length of the first ray / generator / vertex / level point.
    std::size_t ambient_rank() const;
    std::optional<std::string> option(const std::string& key) const;

    /// psi from the fan and boundary (zero boundary when omitted).
    LogDiscrepancy log_discrepancy() const;
    /// sigma from the `sigma` section, else the support of the fan.
    Cone support_cone() const;
    /// conv(vertices) + sigma dual.
    PolyhedralSet polytope() const;
    AlgebraSequence algebra() const;
};

ProblemFile parse_problem(std::string_view text);
std::string print_problem(const ProblemFile& p);

} // namespace satoric
