#pragma once

// Integer linear algebra for the monomial reduction: primitive vectors,
// unimodular completion of independent covectors by lattice-point descent,
// and the monomial change of coordinates x_k = Π_j u_j^{A_jk} that rewrites
// a mapping whose Newton polyhedra span a proper affine subspace in fewer
// variables.

#include "newtonloj/exact_linalg.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace newtonloj {

inline IntVector primitive(const IntVector& v)
{
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) throw std::invalid_argument("primitive() of the zero vector");
    IntVector out(v);
    for (auto& x : out) x /= g;
    return out;
}

/// Exact determinant by cofactor expansion; kept separate from Gaussian elimination.
inline Integer cofactor_determinant(const std::vector<IntVector>& m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return Integer(m[0][0]);
    Integer det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<IntVector> minor;
        for (std::size_t r = 1; r < n; ++r) {
            IntVector row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        const Integer term = Integer(m[0][c]) * cofactor_determinant(minor);
        det += (c % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

/// Gram determinant of a family of integer vectors (squared lattice volume of their span).
inline Rational gram_determinant(const std::vector<IntVector>& vs)
{
    RationalMatrix g(vs.size(), RationalVector(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j) g[i][j] = Rational(dot(vs[i], vs[j]));
    return determinant(std::move(g));
}

enum class CellKind {
    Simplex,         // conv{0, w_1, ..., w_m}, closed
    Parallelepiped,  // {Σ t_l w_l : 0 <= t_l < 1}
};

/// Lattice points of the cell spanned by linearly independent integer vectors.
inline std::vector<IntVector> lattice_points_in_cell(const std::vector<IntVector>& ws, CellKind kind)
{
    if (ws.empty()) return {IntVector{}};
    const std::size_t n = ws.front().size();
    const std::size_t m = ws.size();
    // Bounding box over the cell's corners.
    IntVector lo(n, 0), hi(n, 0);
    if (kind == CellKind::Simplex) {
        for (const auto& w : ws)
            for (std::size_t j = 0; j < n; ++j) {
                lo[j] = std::min(lo[j], w[j]);
                hi[j] = std::max(hi[j], w[j]);
            }
    } else {
        for (const auto& w : ws)
            for (std::size_t j = 0; j < n; ++j) {
                if (w[j] < 0) lo[j] += w[j];
                else hi[j] += w[j];
            }
    }
    // Coordinates t are read off an invertible m×m coordinate minor, then checked on all rows.
    RationalMatrix wt(n, RationalVector(m));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < m; ++l) wt[j][l] = Rational(ws[l][j]);
    RationalMatrix transposed(m, RationalVector(n));
    for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < n; ++j) transposed[l][j] = wt[j][l];
    const std::vector<std::size_t> rows = rref(transposed, n).pivots;
    if (rows.size() != m) throw std::invalid_argument("cell generators are linearly dependent");
    RationalMatrix aug(m, RationalVector(2 * m, Rational(0)));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t l = 0; l < m; ++l) aug[r][l] = wt[rows[r]][l];
        aug[r][m + r] = 1;
    }
    const Echelon inv = rref(aug, 2 * m);

    std::vector<IntVector> out;
    IntVector p = lo;
    RationalVector t(m);
    auto advance = [&]() {
        for (std::size_t j = n; j-- > 0;) {
            if (p[j] < hi[j]) {
                ++p[j];
                for (std::size_t r = j + 1; r < n; ++r) p[r] = lo[r];
                return true;
            }
        }
        return false;
    };
    do {
        bool ok = true;
        Rational sum(0);
        for (std::size_t l = 0; l < m && ok; ++l) {
            Rational s(0);
            for (std::size_t r = 0; r < m; ++r) s += inv.reduced[l][m + r] * p[rows[r]];
            t[l] = s;
            sum += s;
            if (s < 0) ok = false;
            if (kind == CellKind::Parallelepiped && s >= 1) ok = false;
        }
        if (!ok) continue;
        if (kind == CellKind::Simplex && sum > 1) continue;
        for (std::size_t j = 0; j < n && ok; ++j) {
            Rational s(0);
            for (std::size_t l = 0; l < m; ++l) s += t[l] * ws[l][j];
            if (s != p[j]) ok = false;
        }
        if (ok) out.push_back(p);
    } while (advance());
    return out;
}

/// Lattice points of conv{0, w_1..w_m} other than its listed vertices.
inline std::vector<IntVector> simplex_extra_points(const std::vector<IntVector>& ws)
{
    std::vector<IntVector> out;
    for (auto& p : lattice_points_in_cell(ws, CellKind::Simplex)) {
        const bool is_zero = std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; });
        if (is_zero || std::find(ws.begin(), ws.end(), p) != ws.end()) continue;
        out.push_back(std::move(p));
    }
    return out;
}

/// Nonzero lattice points of the half-open parallelepiped; empty iff the family is a lattice basis of its span.
inline std::vector<IntVector> parallelepiped_extra_points(const std::vector<IntVector>& ws)
{
    std::vector<IntVector> out;
    for (auto& p : lattice_points_in_cell(ws, CellKind::Parallelepiped))
        if (!std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; })) out.push_back(std::move(p));
    return out;
}

struct DescentStep {
    std::size_t index;      // which basis slot was being built (0-based)
    IntVector replaced_by;  // lattice point a chosen
    CellKind cell;          // where a was found
    std::size_t extra_points_before;
    Rational gram_before;
};

struct UnimodularBasis {
    std::size_t n = 0;
    std::vector<IntVector> rows;      // q̃^1..q̃^n
    std::vector<IntVector> extended;  // q^1..q^n after adding standard basis vectors
    std::vector<DescentStep> trace;
};

/// Completes n−d independent covectors, nonnegative on S, to a unimodular basis
/// q̃^1..q̃^n with span-prefix preservation, nonnegativity on S, an empty
/// fundamental simplex and |det| = 1.
inline UnimodularBasis unimodular_complete(const std::vector<IntVector>& q_list, const PointSet& support,
                                           std::size_t n)
{
    for (const auto& q : q_list)
        if (q.size() != n) throw std::invalid_argument("covector dimension mismatch");
    if (q_list.size() > n) throw std::invalid_argument("more covectors than the dimension");
    if (rank(q_list) != q_list.size()) throw std::invalid_argument("covectors are linearly dependent");
    for (const auto& q : q_list)
        for (const auto& k : support) {
            if (k.size() != n) throw std::invalid_argument("support point dimension mismatch");
            if (dot(q, k) < 0) throw std::invalid_argument("covector is negative on the support set");
        }

    UnimodularBasis basis;
    basis.n = n;
    basis.extended = q_list;
    // Lexicographically first set of standard basis vectors completing the family.
    const std::size_t missing = n - q_list.size();
    if (missing > 0) {
        std::vector<std::size_t> idx(missing);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::vector<IntVector> trial = q_list;
            for (auto i : idx) {
                IntVector e(n, 0);
                e[i] = 1;
                trial.push_back(std::move(e));
            }
            if (rank(trial) == n) {
                basis.extended = std::move(trial);
                break;
            }
            std::size_t pos = missing;
            while (pos > 0 && idx[pos - 1] == n - missing + pos - 1) --pos;
            if (pos == 0) throw std::logic_error("no standard-basis completion found");
            ++idx[pos - 1];
            for (std::size_t r = pos; r < missing; ++r) idx[r] = idx[r - 1] + 1;
        }
    }

    basis.rows.push_back(primitive(basis.extended.front()));
    for (std::size_t k = 1; k < n; ++k) {
        IntVector cand = basis.extended[k];
        std::optional<std::size_t> last_simplex_count;
        for (;;) {
            std::vector<IntVector> cell = basis.rows;
            cell.push_back(cand);
            const Rational gram = gram_determinant(cell);
            auto extra = simplex_extra_points(cell);
            CellKind kind = CellKind::Simplex;
            if (extra.empty()) {
                // An empty simplex need not be unimodular once n >= 3; finish on the parallelepiped.
                extra = parallelepiped_extra_points(cell);
                kind = CellKind::Parallelepiped;
                last_simplex_count.reset();  // a new cell starts a new simplex count
            } else {
                if (last_simplex_count && extra.size() >= *last_simplex_count)
                    throw std::logic_error("lattice descent failed to shrink the simplex");
                last_simplex_count = extra.size();
            }
            if (extra.empty()) break;
            const IntVector a = *std::min_element(extra.begin(), extra.end());
            basis.trace.push_back({k, a, kind, extra.size(), gram});
            cell.back() = a;
            if (!(gram_determinant(cell) < gram)) throw std::logic_error("lattice descent failed to shrink the cell volume");
            cand = a;
        }
        basis.rows.push_back(std::move(cand));
    }
    return basis;
}

struct AffineCovectors {
    std::size_t dim = 0;                        // d = dim of the Minkowski sum
    std::vector<IntVector> q_list;              // n − d covectors
    std::vector<std::vector<std::int64_t>> d_matrix;  // d_ij = <q^j, κ> on supp(f_i), before the shift
    std::size_t shift_axis = 0;                 // m in κ -> κ + N e^m
    std::int64_t shift = 0;                     // N
    bool needs_shift() const { return shift > 0; }
};

/// Integer covectors constant on every supp(f_i), normalized so that a translation
/// along one axis makes all the constants nonnegative.
inline AffineCovectors affine_support_covectors(const PolynomialMapping& F)
{
    const std::size_t n = F.num_vars();
    std::vector<NewtonPolyhedron> polys;
    for (const auto& f : F.components()) polys.push_back(newton_polyhedron(f));
    AffineCovectors out;
    out.dim = minkowski_sum(polys).dim();
    if (out.dim == n) throw std::invalid_argument("Minkowski sum is full-dimensional; no reduction applies");

    RationalMatrix diffs;
    for (const auto& f : F.components()) {
        const auto s = f.support();
        for (std::size_t i = 1; i < s.size(); ++i) {
            RationalVector d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = Rational(s[i][j] - s[0][j]);
            diffs.push_back(std::move(d));
        }
    }
    RationalMatrix ker;
    if (diffs.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            RationalVector e(n, Rational(0));
            e[j] = 1;
            ker.push_back(std::move(e));
        }
    } else {
        ker = nullspace(diffs, n);
    }
    for (const auto& v : ker) out.q_list.push_back(primitive_integer(v));

    // Pick the first axis some covector sees, make every covector positive on it.
    std::size_t m = n;
    for (std::size_t j = 0; j < n && m == n; ++j)
        for (const auto& q : out.q_list)
            if (q[j] != 0) {
                m = j;
                break;
            }
    out.shift_axis = m;
    std::size_t pivot = 0;
    while (out.q_list[pivot][m] == 0) ++pivot;
    if (out.q_list[pivot][m] < 0)
        for (auto& x : out.q_list[pivot]) x = -x;
    for (std::size_t j = 0; j < out.q_list.size(); ++j) {
        if (j == pivot || out.q_list[j][m] > 0) continue;
        const std::int64_t a = out.q_list[j][m], b = out.q_list[pivot][m];
        const std::int64_t mult = (-a) / b + 1;
        for (std::size_t k = 0; k < n; ++k) out.q_list[j][k] += mult * out.q_list[pivot][k];
    }
    if (pivot != 0) std::swap(out.q_list[0], out.q_list[pivot]);

    std::int64_t shift = 0;
    for (const auto& f : F.components()) {
        const auto k0 = f.support().front();
        std::vector<std::int64_t> row;
        for (const auto& q : out.q_list) {
            const std::int64_t v = dot(q, k0);
            row.push_back(v);
            if (v < 0) shift = std::max(shift, (-v + q[m] - 1) / q[m]);
        }
        out.d_matrix.push_back(std::move(row));
    }
    out.shift = shift;
    return out;
}

struct ReducedMapping {
    PolynomialMapping original;
    UnimodularBasis basis;
    std::size_t shift_axis = 0;
    std::int64_t shift = 0;
    std::vector<std::vector<std::int64_t>> prefactors;  // p × (n − d), all >= 0
    PolynomialMapping reduced;                          // g_i(u') in d variables
    std::size_t dim = 0;                                // d

    /// x_m^N · f_i, the mapping the coordinate change is applied to.
    PolynomialMapping shifted() const
    {
        const std::size_t n = original.num_vars();
        Exponent e(n, 0);
        e[shift_axis] = shift;
        const Polynomial mono = Polynomial::monomial(e, Rational(1));
        std::vector<Polynomial> out;
        for (const auto& f : original.components()) out.push_back(mono * f);
        return PolynomialMapping(std::move(out));
    }
};

/// Rewrites F in the coordinates u of x_k = Π_j u_j^{A_jk}, A = unimodular completion.
inline ReducedMapping reduce_mapping(const PolynomialMapping& F)
{
    const std::size_t n = F.num_vars();
    const AffineCovectors cov = affine_support_covectors(F);
    ReducedMapping r;
    r.original = F;
    r.shift_axis = cov.shift_axis;
    r.shift = cov.shift;
    r.dim = cov.dim;
    const PolynomialMapping shifted = r.shifted();
    PointSet all;
    for (const auto& f : shifted.components())
        for (auto& k : f.support()) all.push_back(std::move(k));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    r.basis = unimodular_complete(cov.q_list, all, n);

    const std::size_t lead = n - cov.dim;
    std::vector<Polynomial> reduced;
    for (const auto& f : shifted.components()) {
        Polynomial g(cov.dim);
        std::optional<std::vector<std::int64_t>> pref;
        for (const auto& [k, c] : f.terms()) {
            IntVector image(n);
            for (std::size_t j = 0; j < n; ++j) image[j] = dot(r.basis.rows[j], k);
            std::vector<std::int64_t> head(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(lead));
            if (!pref) pref = head;
            else if (*pref != head) throw std::logic_error("prefactor exponents differ within one component");
            g.add_term(Exponent(image.begin() + static_cast<std::ptrdiff_t>(lead), image.end()), c);
        }
        if (g.size() != f.size()) throw std::logic_error("monomial change of coordinates merged terms");
        r.prefactors.push_back(*pref);
        reduced.push_back(std::move(g));
    }
    r.reduced = PolynomialMapping(std::move(reduced));
    return r;
}

/// x(u): x_k = Π_j u_j^{A_jk}.
inline RationalVector monomial_map(const std::vector<IntVector>& rows, const RationalVector& u)
{
    const std::size_t n = u.size();
    RationalVector x(n, Rational(1));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (rows[j][k] != 0) x[k] *= pow(u[j], rows[j][k]);
    return x;
}

struct ReductionCheck {
    std::size_t samples = 0;
    std::size_t value_pass = 0;
    std::size_t rank_pass = 0;
    bool unimodular = false;
    std::vector<std::string> failures;  // first few failure descriptions

    bool passed() const { return unimodular && value_pass == samples && rank_pass == samples; }
};

inline ReductionCheck verify_reduction(const ReducedMapping& r, std::size_t sample_count, std::uint64_t seed)
{
    const std::size_t n = r.original.num_vars();
    const std::size_t lead = n - r.dim;
    const std::size_t p = r.original.size();
    ReductionCheck rep;
    rep.samples = sample_count;
    rep.unimodular = r.basis.rows.size() == n && abs(Rational(cofactor_determinant(r.basis.rows))) == 1;

    const PolynomialMapping shifted = r.shifted();
    std::vector<std::vector<Polynomial>> weighted(p);  // x_j ∂f̃_i/∂x_j
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < n; ++j)
            weighted[i].push_back(Polynomial::variable(n, j) * partial_derivative(shifted[i], j));
    std::vector<std::vector<Polynomial>> reduced_weighted(p);  // u'_j ∂g_i/∂u'_j
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < r.dim; ++j)
            reduced_weighted[i].push_back(Polynomial::variable(r.dim, j) * partial_derivative(r.reduced[i], j));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    for (std::size_t s = 0; s < sample_count; ++s) {
        RationalVector u(n);
        for (auto& x : u) {
            int a = 0;
            while (a == 0) a = num(rng);
            x = Rational(a, den(rng));
        }
        const RationalVector uprime(u.begin() + static_cast<std::ptrdiff_t>(lead), u.end());
        const RationalVector x = monomial_map(r.basis.rows, u);

        bool values_ok = true;
        for (std::size_t i = 0; i < p; ++i) {
            Rational rhs = evaluate_exact(r.reduced[i], uprime);
            for (std::size_t j = 0; j < lead; ++j) rhs *= pow(u[j], r.prefactors[i][j]);
            if (evaluate_exact(shifted[i], x) != rhs) values_ok = false;
        }
        if (values_ok) ++rep.value_pass;
        else if (rep.failures.size() < 5) rep.failures.push_back("value identity failed at sample " + std::to_string(s));

        RationalMatrix xdf(p, RationalVector(n)), udg(p, RationalVector(n));
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < n; ++j) xdf[i][j] = evaluate_exact(weighted[i][j], x);
            const Rational gi = evaluate_exact(r.reduced[i], uprime);
            for (std::size_t j = 0; j < lead; ++j) udg[i][j] = gi * r.prefactors[i][j];
            for (std::size_t j = 0; j < r.dim; ++j) udg[i][lead + j] = evaluate_exact(reduced_weighted[i][j], uprime);
        }
        if (rank(xdf) == rank(udg)) ++rep.rank_pass;
        else if (rep.failures.size() < 5) rep.failures.push_back("rank equality failed at sample " + std::to_string(s));
    }
    return rep;
}

}  // namespace newtonloj
