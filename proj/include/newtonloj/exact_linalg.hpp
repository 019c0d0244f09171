#pragma once

// Dense linear algebra over the rationals: echelon forms, rank, kernels,
// determinants, and a small exact simplex for cone feasibility.

#include "newtonloj/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace newtonloj {

using RationalMatrix = std::vector<RationalVector>;

template <class IntLike>
RationalVector to_rational(const std::vector<IntLike>& v)
{
    RationalVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVector& a, const RationalVector& b)
{
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += b[i] * a[i];
    return s;
}

inline std::int64_t dot(const IntVector& a, const IntVector& b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Echelon {
    RationalMatrix reduced;          // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

inline Echelon rref(RationalMatrix m, std::size_t cols)
{
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        const Rational inv = Rational(1) / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        e.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    e.reduced = std::move(m);
    return e;
}

inline std::size_t rank(const RationalMatrix& m)
{
    if (m.empty()) return 0;
    return rref(m, m.front().size()).pivots.size();
}

template <class IntLike>
std::size_t rank(const std::vector<std::vector<IntLike>>& rows)
{
    RationalMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.push_back(to_rational(r));
    return rank(m);
}

/// Basis of {x : m x = 0}, one vector per free column, in increasing free-column order.
inline RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols)
{
    const Echelon e = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RationalMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Gaussian-elimination determinant of a square matrix.
inline Rational determinant(RationalMatrix m)
{
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Scales a rational vector to the primitive integer vector with the same direction.
inline IntVector primitive_integer(const RationalVector& v)
{
    Integer den = 1;
    for (const auto& x : v) den = lcm(den, denominator_of(x));
    std::vector<Integer> ints;
    ints.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer k = numerator_of(x) * (den / denominator_of(x));
        g = gcd(g, k);
        ints.push_back(k);
    }
    if (g == 0) throw std::invalid_argument("primitive_integer of the zero vector");
    IntVector out;
    out.reserve(v.size());
    for (const auto& k : ints) out.push_back(to_int64(Integer(k / g)));
    return out;
}

/// Solves A x = b with x >= 0 (b arbitrary sign) by phase one of the simplex
/// method with Bland's rule. Returns a feasible point or nothing.
inline std::optional<RationalVector> simplex_feasible_point(RationalMatrix a, RationalVector b)
{
    const std::size_t m = a.size();
    const std::size_t n = m ? a.front().size() : 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& x : a[i]) x = -x;
            b[i] = -b[i];
        }
    }
    // Tableau: n structural columns, m artificial columns, rhs.
    const std::size_t cols = n + m;
    RationalMatrix t(m, RationalVector(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols] = b[i];
        basis[i] = n + i;
    }
    // Phase-one objective: minimize the sum of artificials; reduced costs row.
    RationalVector cost(cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j)
            if (j < n || j == cols) cost[j] -= t[i][j];

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) break;  // unbounded direction; cannot happen for phase one
        const Rational inv = Rational(1) / t[leave][enter];
        for (auto& x : t[leave]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    if (cost[cols] != 0) return std::nullopt;  // -(sum of artificials) at optimum
    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][cols];
    return x;
}

/// Finds q with equalities·q = 0 and strict·q > 0 (row-wise), if the open cone is nonempty.
inline std::optional<RationalVector> cone_interior_point(const RationalMatrix& equalities,
                                                         const RationalMatrix& strict, std::size_t dim)
{
    // Homogeneity lets strict > 0 become >= 1. Split q = u - v and add surplus variables.
    const std::size_t rows = equalities.size() + strict.size();
    const std::size_t cols = 2 * dim + strict.size();
    RationalMatrix a(rows, RationalVector(cols, Rational(0)));
    RationalVector b(rows, Rational(0));
    std::size_t r = 0;
    for (const auto& eq : equalities) {
        for (std::size_t j = 0; j < dim; ++j) {
            a[r][j] = eq[j];
            a[r][dim + j] = -eq[j];
        }
        ++r;
    }
    for (std::size_t s = 0; s < strict.size(); ++s) {
        for (std::size_t j = 0; j < dim; ++j) {
            a[r][j] = strict[s][j];
            a[r][dim + j] = -strict[s][j];
        }
        a[r][2 * dim + s] = -1;
        b[r] = 1;
        ++r;
    }
    if (rows == 0) return RationalVector(dim, Rational(0));
    auto sol = simplex_feasible_point(std::move(a), std::move(b));
    if (!sol) return std::nullopt;
    RationalVector q(dim);
    for (std::size_t j = 0; j < dim; ++j) q[j] = (*sol)[j] - (*sol)[dim + j];
    return q;
}

}  // namespace newtonloj
