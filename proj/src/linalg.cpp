#include "satoric/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace satoric {

namespace {

using boost::multiprecision::abs;

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r])
            x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < m[i].size(); ++k)
                if (m[r][k] != 0)
                    m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b)
{
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

/// row[dst] += f * row[src]
void add_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f)
{
    if (f == 0)
        return;
    for (std::size_t k = 0; k < m[dst].size(); ++k)
        m[dst][k] += f * m[src][k];
}

/// col[dst] += f * col[src]
void add_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f)
{
    if (f == 0)
        return;
    for (auto& row : m)
        row[dst] += f * row[src];
}

Integer floor_div(const Integer& a, const Integer& b) { return floor(Rational(a, b)); }

} // namespace

std::size_t rank(const RationalMatrix& rows)
{
    if (rows.empty())
        return 0;
    RationalMatrix m = rows;
    return rref(m, rows.front().size()).size();
}

std::size_t rank(const IntegerMatrix& rows)
{
    RationalMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows)
        m.push_back(to_rational(r));
    return rank(m);
}

std::vector<RationalPoint> nullspace(const RationalMatrix& rows, std::size_t cols)
{
    RationalMatrix m = rows;
    auto pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<RationalPoint> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        RationalPoint v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalPoint> solve(const RationalMatrix& rows, const RationalPoint& rhs,
                                   std::size_t cols)
{
    if (rows.size() != rhs.size())
        throw DimensionError("solve: row count and rhs length differ");
    RationalMatrix m;
    m.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionError("solve: ragged matrix");
        RationalPoint r = rows[i];
        r.push_back(rhs[i]);
        m.push_back(std::move(r));
    }
    auto pivots = rref(m, cols + 1);
    if (!pivots.empty() && pivots.back() == cols)
        return std::nullopt;
    RationalPoint x(cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = m[i][cols];
    return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& square)
{
    std::size_t n = square.size();
    RationalMatrix m;
    for (std::size_t i = 0; i < n; ++i) {
        RationalPoint r = square[i];
        r.resize(2 * n, Rational(0));
        r[n + i] = 1;
        m.push_back(std::move(r));
    }
    auto pivots = rref(m, n);
    if (pivots.size() != n)
        return std::nullopt;
    RationalMatrix inv;
    for (auto& r : m)
        inv.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
    return inv;
}

RationalMatrix transpose(const RationalMatrix& m, std::size_t cols)
{
    RationalMatrix t(cols, RationalPoint(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = m[i][j];
    return t;
}

IntegerMatrix transpose(const IntegerMatrix& m, std::size_t cols)
{
    IntegerMatrix t(cols, LatticePoint(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = m[i][j];
    return t;
}

IntegerMatrix identity_matrix(std::size_t n)
{
    IntegerMatrix id(n, LatticePoint(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        id[i][i] = 1;
    return id;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t inner,
                       std::size_t cols)
{
    IntegerMatrix out(a.size(), LatticePoint(cols, Integer(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < cols; ++j)
                    out[i][j] += a[i][k] * b[k][j];
    return out;
}

std::vector<Integer> SmithForm::elementary_divisors() const
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank; ++i)
        out.push_back(D[i][i]);
    return out;
}

SmithForm smith_normal_form(const IntegerMatrix& a, std::size_t cols)
{
    const std::size_t rows = a.size();
    SmithForm s{identity_matrix(rows), a, identity_matrix(cols), 0};
    auto& D = s.D;
    for (const auto& r : D)
        if (r.size() != cols)
            throw DimensionError("smith_normal_form: ragged matrix");

    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (D[i][j] != 0 && (pi == rows || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) {
                s.rank = t;
                return s;
            }
            std::swap(D[t], D[pi]);
            std::swap(s.U[t], s.U[pi]);
            swap_cols(D, t, pj);
            swap_cols(s.V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                Integer q = floor_div(D[i][t], D[t][t]);
                add_row(D, i, t, -q);
                add_row(s.U, i, t, -q);
                if (D[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                Integer q = floor_div(D[t][j], D[t][t]);
                add_col(D, j, t, -q);
                add_col(s.V, j, t, -q);
                if (D[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            add_row(D, t, bad, 1);
            add_row(s.U, t, bad, 1);
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t])
                x = -x;
            for (auto& x : s.U[t])
                x = -x;
        }
    }
    s.rank = t;
    return s;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& rows, std::size_t cols)
{
    IntegerMatrix m = rows;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        while (true) {
            std::size_t p = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (p == m.size() || abs(m[i][c]) < abs(m[p][c])))
                    p = i;
            if (p == m.size())
                break;
            std::swap(m[p], m[r]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                add_row(m, i, r, -floor_div(m[i][c], m[r][c]));
                if (m[i][c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (r == m.size() || m[r][c] == 0)
            continue;
        if (m[r][c] < 0)
            for (auto& x : m[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i)
            add_row(m, i, r, -floor_div(m[i][c], m[r][c]));
        ++r;
    }
    m.resize(r);
    return m;
}

IntegerMatrix integer_kernel(const RationalMatrix& rows, std::size_t cols)
{
    IntegerMatrix a;
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw DimensionError("integer_kernel: ragged matrix");
        a.push_back(primitive_multiple(r));
    }
    if (a.empty())
        return identity_matrix(cols);
    SmithForm s = smith_normal_form(a, cols);
    IntegerMatrix basis;
    for (std::size_t j = s.rank; j < cols; ++j) {
        LatticePoint v(cols);
        for (std::size_t i = 0; i < cols; ++i)
            v[i] = s.V[i][j];
        basis.push_back(std::move(v));
    }
    return hermite_normal_form(basis, cols);
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& u)
{
    RationalMatrix q;
    for (const auto& r : u)
        q.push_back(to_rational(r));
    auto inv = inverse(q);
    if (!inv)
        throw std::invalid_argument("unimodular_inverse: singular matrix");
    IntegerMatrix out;
    for (const auto& r : *inv)
        out.push_back(to_integer(r));
    return out;
}

} // namespace satoric
