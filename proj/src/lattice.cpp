#include "satoric/lattice.hpp"

#include <atomic>
#include <stdexcept>

namespace satoric {

namespace {

std::atomic<std::uint64_t> next_lattice_id{1};

} // namespace

Lattice Lattice::make(std::size_t rank) { return Lattice(rank, next_lattice_id++, false); }

Lattice Lattice::dual() const { return Lattice(rank_, id_, !dual_); }

Rational pairing(const RationalPoint& m, const RationalPoint& e) { return dot(m, e); }

LatticePoint primitive(const LatticePoint& v)
{
    if (is_zero(v))
        throw std::invalid_argument("primitive: zero vector has no ray");
    return primitive_multiple(to_rational(v));
}

LatticeMap::LatticeMap(IntegerMatrix matrix, std::size_t source_rank, Kind kind)
    : matrix_(std::move(matrix)), source_rank_(source_rank), kind_(kind)
{
    for (const auto& row : matrix_)
        if (row.size() != source_rank_)
            throw DimensionError("LatticeMap: row length differs from source rank");
    if (kind_ == Kind::Projection && !is_surjective())
        throw std::invalid_argument("LatticeMap: projection is not surjective over Z");
}

LatticeMap LatticeMap::identity(std::size_t rank)
{
    return LatticeMap(identity_matrix(rank), rank, Kind::Projection);
}

LatticePoint LatticeMap::apply(const LatticePoint& e) const
{
    LatticePoint out;
    out.reserve(matrix_.size());
    for (const auto& row : matrix_)
        out.push_back(dot(row, e));
    return out;
}

RationalPoint LatticeMap::apply(const RationalPoint& e) const
{
    RationalPoint out;
    out.reserve(matrix_.size());
    for (const auto& row : matrix_)
        out.push_back(dot(row, e));
    return out;
}

RationalPoint LatticeMap::pullback(const RationalPoint& m) const
{
    if (m.size() != matrix_.size())
        throw DimensionError("pullback: rank mismatch");
    RationalPoint out(source_rank_, Rational(0));
    for (std::size_t i = 0; i < matrix_.size(); ++i)
        for (std::size_t j = 0; j < source_rank_; ++j)
            out[j] += m[i] * matrix_[i][j];
    return out;
}

LatticePoint LatticeMap::pullback(const LatticePoint& m) const
{
    return to_integer(pullback(to_rational(m)));
}

std::vector<Integer> LatticeMap::elementary_divisors() const
{
    return smith_normal_form(matrix_, source_rank_).elementary_divisors();
}

bool LatticeMap::is_surjective() const
{
    auto d = elementary_divisors();
    if (d.size() != matrix_.size())
        return false;
    for (const auto& x : d)
        if (x != 1)
            return false;
    return true;
}

RationalPoint Quotient::dual_coordinates(const RationalPoint& m) const
{
    // projection^T m' = m and projection * section^T = id, so m' = section * m.
    RationalPoint out;
    out.reserve(section.size());
    for (const auto& s : section)
        out.push_back(dot(m, s));
    return out;
}

bool Quotient::in_dual_sublattice_span(const RationalPoint& m) const
{
    for (const auto& k : kernel_basis)
        if (dot(m, k) != 0)
            return false;
    return true;
}

Quotient quotient_lattice(const Lattice& n, const std::vector<LatticePoint>& kernel_generators)
{
    const std::size_t r = n.rank();
    for (const auto& g : kernel_generators)
        if (g.size() != r)
            throw DimensionError("quotient_lattice: generator rank mismatch");
    const std::size_t k = kernel_generators.size();
    if (rank(kernel_generators) != k)
        throw std::invalid_argument("quotient_lattice: kernel generators are linearly dependent");

    IntegerMatrix proj;
    IntegerMatrix kernel, section;
    if (k == 0) {
        proj = identity_matrix(r);
        section = identity_matrix(r);
    } else {
        // Rows of K * V vanish beyond column k, so x -> (x V)_{k..} kills the
        // saturation of span(K); rows of V^{-1} give kernel basis and lifts.
        SmithForm s = smith_normal_form(kernel_generators, r);
        IntegerMatrix vinv = unimodular_inverse(s.V);
        for (std::size_t j = k; j < r; ++j) {
            LatticePoint row(r);
            for (std::size_t i = 0; i < r; ++i)
                row[i] = s.V[i][j];
            proj.push_back(std::move(row));
            section.push_back(vinv[j]);
        }
        for (std::size_t j = 0; j < k; ++j)
            kernel.push_back(vinv[j]);
        kernel = hermite_normal_form(kernel, r);
    }
    return Quotient{Lattice::make(r - k), LatticeMap(proj, r, LatticeMap::Kind::Projection),
                    kernel, section};
}

} // namespace satoric
