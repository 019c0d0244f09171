#pragma once

// Non-degeneracy at infinity of a polynomial mapping. For every subset I of
// components and every face tuple realized by a covector q with all
// d(q, Γ(f_i)) < 0, decide whether the face polynomials f_{i,Δ_i} have a
// common zero in (R*)^n at which the weighted Jacobian (x_j ∂f_{i,Δ_i}/∂x_j)
// drops rank.
//
// Two variables: decided exactly. An edge face polynomial is x^{κ0}·P(x^w)
// with w the primitive edge direction, so everything reduces to real roots of
// univariate polynomials. More variables: multistart least squares on each
// sign sheet, with a witness accepted only when its residuals pass fixed
// absolute tolerances (and, when possible, exact rational re-evaluation).

#include "newtonloj/face_enumeration.hpp"
#include "newtonloj/numeric.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial.hpp"
#include "newtonloj/univariate.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace newtonloj {

enum class Verdict { NonDegenerate, Degenerate, Undecided };
enum class CheckMode { Auto, Exact2D, WitnessSearch };
enum class RankForm { Khovanskii, Augmented };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::NonDegenerate: return "NonDegenerate";
    case Verdict::Degenerate: return "Degenerate";
    default: return "Undecided";
    }
}

inline const char* to_string(CheckMode m)
{
    switch (m) {
    case CheckMode::Exact2D: return "Exact2D";
    case CheckMode::WitnessSearch: return "WitnessSearch";
    default: return "Auto";
    }
}

struct FaceSystem {
    std::vector<std::size_t> subset;  // component indices, 0-based
    std::vector<Face> faces;
    IntVector q;
    std::vector<Rational> degrees;
    std::vector<Polynomial> face_polys;

    std::size_t num_vars() const { return face_polys.front().num_vars(); }
    std::size_t size() const { return face_polys.size(); }
};

struct FaceSystemList {
    std::vector<FaceSystem> systems;
    bool complete = true;
};

inline FaceSystemList face_systems(const PolynomialMapping& F, const std::vector<std::size_t>& subset,
                                   EnumerationMode mode = EnumerationMode::Exact, std::size_t samples = 20000,
                                   std::uint64_t seed = 1)
{
    std::vector<NewtonPolyhedron> polys;
    for (auto i : subset) polys.push_back(newton_polyhedron(F[i]));
    const auto e = enumerate_negative_face_tuples(polys, mode, samples, seed);
    FaceSystemList out;
    out.complete = e.complete;
    for (const auto& t : e.tuples) {
        FaceSystem s;
        s.subset = subset;
        s.faces = t.faces;
        s.q = t.witness_q;
        s.degrees = t.degrees;
        for (std::size_t k = 0; k < subset.size(); ++k) s.face_polys.push_back(face_part(F[subset[k]], t.faces[k]));
        out.systems.push_back(std::move(s));
    }
    return out;
}

/// Weighted Jacobian rows (x_j ∂f_{i,Δ_i}/∂x_j); the augmented form appends diag(f_{i,Δ_i}).
inline RationalMatrix face_rank_matrix(const FaceSystem& s, const RationalVector& x, RankForm form = RankForm::Khovanskii)
{
    const std::size_t n = s.num_vars(), p = s.size();
    if (x.size() != n) throw std::invalid_argument("point dimension mismatch");
    for (const auto& v : x)
        if (v == 0) throw std::invalid_argument("rank matrix needs a point of (R*)^n");
    const std::size_t cols = form == RankForm::Augmented ? n + p : n;
    RationalMatrix m(p, RationalVector(cols, Rational(0)));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = x[j] * evaluate_exact(partial_derivative(s.face_polys[i], j), x);
        if (form == RankForm::Augmented) m[i][n + i] = evaluate_exact(s.face_polys[i], x);
    }
    return m;
}

inline std::vector<Vec> face_rank_matrix(const FaceSystem& s, const Vec& x, RankForm form = RankForm::Khovanskii)
{
    const std::size_t n = s.num_vars(), p = s.size();
    if (x.size() != n) throw std::invalid_argument("point dimension mismatch");
    for (double v : x)
        if (v == 0.0) throw std::invalid_argument("rank matrix needs a point of (R*)^n");
    const std::size_t cols = form == RankForm::Augmented ? n + p : n;
    std::vector<Vec> m(p, Vec(cols, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        const FloatPolynomial f(s.face_polys[i]);
        const Vec wg = f.weighted_gradient(x);
        std::copy(wg.begin(), wg.end(), m[i].begin());
        if (form == RankForm::Augmented) m[i][n + i] = f.value(x);
    }
    return m;
}

struct Witness {
    Vec point;
    std::optional<RationalVector> exact_point;  // set when confirmed in exact arithmetic
    double max_value = 0.0;                     // max |f_{i,Δ_i}(x)|
    double max_minor = 0.0;                     // max |p×p minor| of the weighted Jacobian
};

enum class EvidenceKind { EmptyZeroSet, FullRankEverywhere, WitnessFound, SearchExhausted };

inline const char* to_string(EvidenceKind k)
{
    switch (k) {
    case EvidenceKind::EmptyZeroSet: return "EmptyZeroSet";
    case EvidenceKind::FullRankEverywhere: return "FullRankEverywhere";
    case EvidenceKind::WitnessFound: return "Witness";
    default: return "SearchExhausted";
    }
}

struct Evidence {
    EvidenceKind kind = EvidenceKind::SearchExhausted;
    std::string reason;
    std::optional<Witness> witness;
    std::size_t trials = 0;
};

inline constexpr double value_tolerance = 1e-10;
inline constexpr double minor_tolerance = 1e-8;

/// Absolute residuals of a candidate witness.
inline std::pair<double, double> witness_residuals(const FaceSystem& s, const Vec& x)
{
    double fv = 0.0;
    for (const auto& f : s.face_polys) fv = std::max(fv, std::fabs(evaluate_float(f, x)));
    const auto m = face_rank_matrix(s, x);
    double minor = 0.0;
    for (const auto& cols : combinations(s.num_vars(), s.size())) {
        std::vector<Vec> sub(s.size(), Vec(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t k = 0; k < cols.size(); ++k) sub[i][k] = m[i][cols[k]];
        minor = std::max(minor, std::fabs(float_determinant(sub)));
    }
    return {fv, minor};
}

inline bool passes_witness_tolerances(const FaceSystem& s, const Vec& x)
{
    for (double v : x)
        if (v == 0.0 || !std::isfinite(v)) return false;
    std::int64_t deg = 0;
    for (const auto& f : s.face_polys) deg = std::max(deg, f.total_degree());
    const auto [fv, minor] = witness_residuals(s, x);
    return fv < value_tolerance * (1.0 + std::pow(norm2(x), static_cast<double>(deg))) && minor < minor_tolerance;
}

/// Exact test: all face polynomials vanish and the weighted Jacobian has rank < p.
inline bool is_exact_witness(const FaceSystem& s, const RationalVector& x)
{
    for (const auto& v : x)
        if (v == 0) return false;
    for (const auto& f : s.face_polys)
        if (evaluate_exact(f, x) != 0) return false;
    return rank(face_rank_matrix(s, x)) < s.size();
}

namespace detail {

inline bool has_vertex_face(const FaceSystem& s, std::size_t* which)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.face_polys[i].size() == 1) {
            if (which) *which = i;
            return true;
        }
    return false;
}

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    std::int64_t x1 = 0, y1 = 0;
    const std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Point x ∈ (R*)^2 with x^w = z, from a·w1 + b·w2 = 1.
struct TorusLift {
    std::int64_t a = 0, b = 0;
    int s1 = 1, s2 = 1;
};

inline TorusLift torus_lift(const IntVector& w, int sign_z)
{
    TorusLift t;
    ext_gcd(w[0], w[1], t.a, t.b);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            const int v = ((w[0] % 2 != 0) ? s1 : 1) * ((w[1] % 2 != 0) ? s2 : 1);
            if (v == sign_z) {
                t.s1 = s1;
                t.s2 = s2;
                return t;
            }
        }
    throw std::logic_error("no sign sheet realizes the requested sign");
}

}  // namespace detail

/// Exact emptiness decision for a face system in two variables.
inline Evidence exact_check_2d(const FaceSystem& s)
{
    if (s.num_vars() != 2) throw std::invalid_argument("exact_check_2d needs n = 2");
    Evidence ev;
    std::size_t mono = 0;
    if (detail::has_vertex_face(s, &mono)) {
        ev.kind = EvidenceKind::EmptyZeroSet;
        ev.reason = "face polynomial of component " + std::to_string(s.subset[mono] + 1) + " is a monomial";
        return ev;
    }
    // Every face is an edge orthogonal to q.
    const IntVector w = primitive_integer(RationalVector{Rational(-s.q[1]), Rational(s.q[0])});
    const std::int64_t ww = w[0] * w[0] + w[1] * w[1];
    std::vector<Univariate> polys;
    for (const auto& f : s.face_polys) {
        const Exponent ref = f.terms().begin()->first;
        std::vector<std::pair<std::int64_t, Rational>> ks;
        std::int64_t kmin = 0;
        for (const auto& [e, c] : f.terms()) {
            const std::int64_t k = ((e[0] - ref[0]) * w[0] + (e[1] - ref[1]) * w[1]) / ww;
            ks.emplace_back(k, c);
            kmin = std::min(kmin, k);
        }
        std::int64_t kmax = 0;
        for (auto& kc : ks) {
            kc.first -= kmin;
            kmax = std::max(kmax, kc.first);
        }
        std::vector<Rational> coeffs(static_cast<std::size_t>(kmax + 1), Rational(0));
        for (const auto& [k, c] : ks) coeffs[static_cast<std::size_t>(k)] = c;
        polys.emplace_back(std::move(coeffs));
    }

    // On the zero set each weighted-Jacobian row is x^{κ0}·z·P'(z)·w, so rows are parallel.
    Univariate common;
    if (s.size() == 1)
        common = gcd(polys[0], polys[0].derivative());
    else {
        common = polys[0];
        for (std::size_t i = 1; i < polys.size(); ++i) common = gcd(common, polys[i]);
    }
    const auto roots = common.degree() >= 1 ? real_roots(common) : std::vector<IsolatedRoot>{};
    if (roots.empty()) {
        bool any_zero = false;
        if (s.size() == 1) any_zero = count_real_roots(polys[0]) > 0;
        ev.kind = any_zero ? EvidenceKind::FullRankEverywhere : EvidenceKind::EmptyZeroSet;
        ev.reason = any_zero ? "zero set nonempty, weighted Jacobian of full rank on it"
                             : "face polynomials have no common zero in (R*)^2";
        return ev;
    }
    // P(0) != 0 by construction, so every root is nonzero.
    const IsolatedRoot& r = roots.front();
    const int sz = r.exact ? sign(*r.exact) : (r.approx() > 0 ? 1 : -1);
    const auto lift = detail::torus_lift(w, sz);
    Witness wit;
    if (r.exact) {
        const Rational z = abs(*r.exact);
        RationalVector x{pow(z, lift.a) * lift.s1, pow(z, lift.b) * lift.s2};
        if (!is_exact_witness(s, x)) throw std::logic_error("exact 2D witness failed re-verification");
        wit.point = {to_double(x[0]), to_double(x[1])};
        wit.exact_point = x;
    } else {
        const double z = std::fabs(r.approx());
        wit.point = {lift.s1 * std::pow(z, static_cast<double>(lift.a)), lift.s2 * std::pow(z, static_cast<double>(lift.b))};
        const auto [fv, minor] = witness_residuals(s, wit.point);
        wit.max_value = fv;
        wit.max_minor = minor;
    }
    ev.kind = EvidenceKind::WitnessFound;
    ev.reason = s.size() == 1 ? "common real root of the edge polynomial and its derivative"
                              : "common real root of the edge polynomials";
    ev.witness = wit;
    return ev;
}

struct SearchOptions {
    std::size_t attempts = 400;
    std::uint64_t seed = 1;
    std::int64_t max_denominator = 1000000;
};

/// Multistart least squares over x = σ∘exp(B·y), B spanning the face directions.
inline std::optional<Witness> witness_search(const FaceSystem& s, const SearchOptions& opt = {})
{
    const std::size_t n = s.num_vars(), p = s.size();
    if (detail::has_vertex_face(s, nullptr)) return std::nullopt;
    RationalMatrix diffs;
    for (const auto& f : s.face_polys) {
        const auto sup = f.support();
        for (std::size_t k = 1; k < sup.size(); ++k) {
            RationalVector d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = Rational(sup[k][j] - sup[0][j]);
            diffs.push_back(std::move(d));
        }
    }
    const Echelon ech = rref(diffs, n);
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        Vec b(n);
        for (std::size_t j = 0; j < n; ++j) b[j] = to_double(ech.reduced[r][j]);
        basis.push_back(std::move(b));
    }
    const std::size_t dim = basis.size();
    std::vector<FloatPolynomial> fs;
    for (const auto& f : s.face_polys) fs.emplace_back(f);
    const auto minors = combinations(n, p);

    // Log-coordinates stay in a box: near the coordinate hyperplanes every
    // monomial underflows and relative residuals lose all meaning.
    constexpr double log_bound = 40.0;
    Vec sigma(n, 1.0);
    auto point = [&](const Vec& y) {
        Vec x(n);
        for (std::size_t j = 0; j < n; ++j) {
            double sj = 0.0;
            for (std::size_t l = 0; l < dim; ++l) sj += basis[l][j] * y[l];
            if (std::fabs(sj) > log_bound) return Vec{};
            x[j] = sigma[j] * std::exp(sj);
        }
        return x;
    };
    const std::size_t residual_len = p + minors.size();
    auto residual = [&](const Vec& y) {
        const Vec x = point(y);
        if (x.empty()) return Vec(residual_len, std::numeric_limits<double>::quiet_NaN());
        Vec r;
        std::vector<Vec> rows(p);
        for (std::size_t i = 0; i < p; ++i) {
            const double mag = fs[i].magnitude(x);
            if (!(mag > 1e-250) || !std::isfinite(mag)) return Vec(residual_len, std::numeric_limits<double>::quiet_NaN());
            r.push_back(fs[i].value(x) / mag);
            rows[i] = fs[i].weighted_gradient(x);
            for (auto& v : rows[i]) v /= mag;
        }
        for (const auto& cols : minors) {
            std::vector<Vec> sub(p, Vec(p));
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t k = 0; k < p; ++k) sub[i][k] = rows[i][cols[k]];
            r.push_back(float_determinant(sub));
        }
        return r;
    };

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t sheets = std::size_t{1} << n;
    const double spreads[] = {0.5, 1.5, 3.0};
    LmOptions lm;
    lm.tolerance = 1e-13;
    lm.stall_window = 8;
    for (std::size_t a = 0; a < opt.attempts; ++a) {
        const std::size_t sheet = a % sheets;
        for (std::size_t j = 0; j < n; ++j) sigma[j] = (sheet >> j) & 1 ? -1.0 : 1.0;
        Vec y(dim);
        const double spread = spreads[(a / sheets) % 3];
        for (auto& v : y) v = spread * normal(rng);
        const LmResult res = levenberg_marquardt(residual, y, lm);
        if (!(res.residual < 1e-10)) continue;
        const Vec x = point(res.y);
        if (x.empty()) continue;
        // Exact confirmation on nearby rationals.
        RationalVector xr(n);
        for (std::size_t j = 0; j < n; ++j) xr[j] = approximate(x[j], opt.max_denominator);
        Witness w;
        if (is_exact_witness(s, xr)) {
            w.exact_point = xr;
            for (const auto& v : xr) w.point.push_back(to_double(v));
            return w;
        }
        if (!passes_witness_tolerances(s, x)) continue;
        w.point = x;
        std::tie(w.max_value, w.max_minor) = witness_residuals(s, x);
        return w;
    }
    return std::nullopt;
}

struct TupleCheck {
    FaceSystem system;
    Evidence evidence;
};

struct SubsetReport {
    std::vector<std::size_t> subset;
    Verdict verdict = Verdict::NonDegenerate;
    bool enumeration_complete = true;
    std::vector<TupleCheck> tuples;
};

struct NondegeneracyReport {
    Verdict verdict = Verdict::NonDegenerate;
    CheckMode mode = CheckMode::Auto;
    std::vector<SubsetReport> subsets;
    std::optional<std::size_t> failing_subset;  // index into subsets
    std::optional<std::size_t> failing_tuple;   // index into that subset's tuples
};

struct CheckOptions {
    CheckMode mode = CheckMode::Auto;
    EnumerationMode enumeration = EnumerationMode::Exact;
    std::size_t samples = 20000;
    SearchOptions search;
    bool stop_at_first_failure = true;
};

inline CheckMode resolve_mode(CheckMode m, std::size_t n)
{
    if (m == CheckMode::Auto) return n == 2 ? CheckMode::Exact2D : CheckMode::WitnessSearch;
    if (m == CheckMode::Exact2D && n != 2) throw std::invalid_argument("exact mode needs n = 2");
    return m;
}

inline Evidence check_face_system(const FaceSystem& s, CheckMode mode, const SearchOptions& search)
{
    if (mode == CheckMode::Exact2D) return exact_check_2d(s);
    Evidence ev;
    std::size_t mono = 0;
    if (detail::has_vertex_face(s, &mono)) {
        ev.kind = EvidenceKind::EmptyZeroSet;
        ev.reason = "face polynomial of component " + std::to_string(s.subset[mono] + 1) + " is a monomial";
        return ev;
    }
    ev.trials = search.attempts;
    if (auto w = witness_search(s, search)) {
        ev.kind = EvidenceKind::WitnessFound;
        ev.reason = w->exact_point ? "witness confirmed in exact arithmetic" : "witness within numerical tolerances";
        ev.witness = std::move(w);
    } else {
        ev.kind = EvidenceKind::SearchExhausted;
        ev.reason = "no witness in " + std::to_string(search.attempts) + " starts";
    }
    return ev;
}

inline SubsetReport check_subset(const PolynomialMapping& F, const std::vector<std::size_t>& subset, CheckMode mode,
                                 const CheckOptions& opt)
{
    SubsetReport rep;
    rep.subset = subset;
    const auto list = face_systems(F, subset, opt.enumeration, opt.samples, opt.search.seed);
    rep.enumeration_complete = list.complete;
    bool undecided = !list.complete;
    for (std::size_t t = 0; t < list.systems.size(); ++t) {
        SearchOptions so = opt.search;
        so.seed = opt.search.seed ^ (0x9e3779b97f4a7c15ULL * (t + 1));
        TupleCheck tc{list.systems[t], check_face_system(list.systems[t], mode, so)};
        const auto kind = tc.evidence.kind;
        rep.tuples.push_back(std::move(tc));
        if (kind == EvidenceKind::WitnessFound) {
            rep.verdict = Verdict::Degenerate;
            if (opt.stop_at_first_failure) return rep;
        } else if (kind == EvidenceKind::SearchExhausted) {
            undecided = true;
        }
    }
    if (rep.verdict != Verdict::Degenerate && undecided) rep.verdict = Verdict::Undecided;
    return rep;
}

namespace detail {

inline NondegeneracyReport aggregate(NondegeneracyReport rep)
{
    bool undecided = false;
    for (std::size_t i = 0; i < rep.subsets.size(); ++i) {
        const auto& s = rep.subsets[i];
        if (s.verdict == Verdict::Degenerate && !rep.failing_subset) {
            rep.failing_subset = i;
            for (std::size_t t = 0; t < s.tuples.size(); ++t)
                if (s.tuples[t].evidence.kind == EvidenceKind::WitnessFound) {
                    rep.failing_tuple = t;
                    break;
                }
        }
        if (s.verdict == Verdict::Undecided) undecided = true;
    }
    rep.verdict = rep.failing_subset ? Verdict::Degenerate : undecided ? Verdict::Undecided : Verdict::NonDegenerate;
    return rep;
}

inline void check_shape(const PolynomialMapping& F)
{
    if (F.size() > F.num_vars()) throw std::invalid_argument("mapping has more components than variables");
    for (const auto& f : F.components())
        if (f.is_zero()) throw std::invalid_argument("zero component has no Newton polyhedron");
}

}  // namespace detail

/// Khovanskii non-degeneracy at infinity of the whole tuple (f_1, ..., f_p).
inline NondegeneracyReport khovanskii_check(const PolynomialMapping& F, const CheckOptions& opt = {})
{
    detail::check_shape(F);
    NondegeneracyReport rep;
    rep.mode = resolve_mode(opt.mode, F.num_vars());
    std::vector<std::size_t> all(F.size());
    std::iota(all.begin(), all.end(), 0);
    rep.subsets.push_back(check_subset(F, all, rep.mode, opt));
    return detail::aggregate(std::move(rep));
}

/// Khovanskii non-degeneracy of every nonempty sub-tuple, by size then lexicographically.
inline NondegeneracyReport nondegenerate_at_infinity(const PolynomialMapping& F, const CheckOptions& opt = {})
{
    detail::check_shape(F);
    NondegeneracyReport rep;
    rep.mode = resolve_mode(opt.mode, F.num_vars());
    for (std::size_t k = 1; k <= F.size(); ++k)
        for (const auto& subset : combinations(F.size(), k)) {
            rep.subsets.push_back(check_subset(F, subset, rep.mode, opt));
            if (opt.stop_at_first_failure && rep.subsets.back().verdict == Verdict::Degenerate)
                return detail::aggregate(std::move(rep));
        }
    return detail::aggregate(std::move(rep));
}

}  // namespace newtonloj
