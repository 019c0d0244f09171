#pragma once

// Numerical side of the growth comparison between two polynomials g and h:
//   μ(t) = sup { |h(x)| : |g(x)| = t },
// its power-law exponents near 0 and at infinity, the inequality
//   |g|^α + |g|^β >= c |h|,
// searches for sequences that rule such an inequality out, probes of the
// asymptotic critical values of a (possibly constrained) polynomial, and the
// integer N with h^N = g·f0 for continuous f0.
//
// Everything here is evidence, not proof: μ is estimated from below and the
// hunters only look along monomial curves x_j(s) = a_j s^{q_j}.

#include "newtonloj/face_enumeration.hpp"
#include "newtonloj/numeric.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace newtonloj {

inline std::vector<double> geometric_grid(double lo, double hi, std::size_t count)
{
    if (!(lo > 0) || !(hi > lo) || count < 2) throw std::invalid_argument("geometric grid needs 0 < lo < hi and count >= 2");
    std::vector<double> out(count);
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t k = 0; k < count; ++k) out[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

namespace detail {

inline double dotv(const Vec& a, const Vec& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec scaled(const Vec& v, double s)
{
    Vec out(v);
    for (auto& x : out) x *= s;
    return out;
}

/// Ray directions: ±e_j, then (±e_i ± e_j)/√2, then random unit vectors.
inline std::vector<Vec> ray_directions(std::size_t n, std::size_t count, std::uint64_t seed)
{
    std::vector<Vec> out;
    for (std::size_t j = 0; j < n && out.size() < count; ++j)
        for (double s : {1.0, -1.0}) {
            if (out.size() >= count) break;
            Vec v(n, 0.0);
            v[j] = s;
            out.push_back(v);
        }
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (double si : {1.0, -1.0})
                for (double sj : {1.0, -1.0}) {
                    if (out.size() >= count) break;
                    Vec v(n, 0.0);
                    v[i] = si * r;
                    v[j] = sj * r;
                    out.push_back(v);
                }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    while (out.size() < count) {
        Vec v(n);
        for (auto& x : v) x = normal(rng);
        const double nv = norm2(v);
        if (nv < 1e-12) continue;
        out.push_back(scaled(v, 1.0 / nv));
    }
    return out;
}

struct LevelScan {
    double r_min = 1e-8;
    double r_max = 1e8;
    int scan_points = 161;
};

/// Points r·v with |g(r v)| = t, one per sign change of |g| - t along the ray.
/// Zeros of g are located first so that narrow dips of |g| below t are not missed.
inline std::vector<Vec> level_crossings(const FloatPolynomial& g, const Vec& v, double t, const LevelScan& sc)
{
    auto gl = [&](double l) { return g.value(scaled(v, std::exp(l))); };
    auto bisect = [](auto&& f, double lo, double hi) {
        const bool neg_lo = f(lo) < 0;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::fabs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((f(mid) < 0) == neg_lo)
                lo = mid;
            else
                hi = mid;
        }
        return std::fabs(f(lo)) <= std::fabs(f(hi)) ? lo : hi;
    };
    const double la = std::log(sc.r_min), lb = std::log(sc.r_max);
    std::vector<double> ls;
    for (int k = 0; k < sc.scan_points; ++k) ls.push_back(la + (lb - la) * k / (sc.scan_points - 1));
    std::vector<double> pts{ls.front()};
    for (std::size_t k = 1; k < ls.size(); ++k) {
        const double a = gl(ls[k - 1]), b = gl(ls[k]);
        if (std::isfinite(a) && std::isfinite(b) && (a < 0) != (b < 0)) pts.push_back(bisect(gl, ls[k - 1], ls[k]));
        pts.push_back(ls[k]);
    }
    auto phi = [&](double l) { return std::fabs(gl(l)) - t; };
    std::vector<Vec> out;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double a = phi(pts[k - 1]), b = phi(pts[k]);
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if ((a < 0) != (b < 0) || b == 0.0) out.push_back(scaled(v, std::exp(bisect(phi, pts[k - 1], pts[k]))));
    }
    return out;
}

/// Newton projection of y onto {g = target} along ∇g.
inline bool project_to_level(const FloatPolynomial& g, Vec& y, double target)
{
    for (int k = 0; k < 60; ++k) {
        const double gv = g.value(y) - target;
        if (std::fabs(gv) <= 1e-13 * std::fabs(target)) return true;
        const Vec gr = g.gradient(y);
        const double nn = dotv(gr, gr);
        if (!(nn > 0) || !std::isfinite(nn)) return false;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= gv / nn * gr[i];
    }
    return std::fabs(g.value(y) - target) <= 1e-12 * std::fabs(target);
}

/// Local maximization of |h| on the level set of g through x0 (projected ascent).
inline Vec ascend_on_level(const FloatPolynomial& g, const FloatPolynomial& h, Vec x, int iterations)
{
    const double target = g.value(x);
    if (target == 0.0) return x;
    double best = std::fabs(h.value(x));
    double step = 1e-2 * std::max(norm2(x), 1e-12);
    for (int it = 0; it < iterations; ++it) {
        const Vec gg = g.gradient(x), gh = h.gradient(x);
        const double ngg = dotv(gg, gg);
        if (!(ngg > 0)) break;
        Vec d(gh);
        const double proj = dotv(gh, gg) / ngg;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= proj * gg[i];
        const double nd = norm2(d);
        if (!(nd > 1e-300) || !std::isfinite(nd)) break;
        const double sgn = h.value(x) >= 0 ? 1.0 : -1.0;
        Vec y(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += sgn * step * d[i] / nd;
        const bool ok = project_to_level(g, y, target);
        const double hv = ok ? std::fabs(h.value(y)) : -1.0;
        if (ok && std::isfinite(hv) && hv > best) {
            x = std::move(y);
            best = hv;
            step *= 1.5;
        } else {
            step *= 0.5;
            if (step < 1e-14 * std::max(norm2(x), 1e-300)) break;
        }
    }
    return x;
}

}  // namespace detail

struct MuOptions {
    std::size_t rays = 64;  // the estimation budget
    std::uint64_t seed = 1;
    int ascent_iterations = 40;
    double r_min = 1e-8;
    double r_max = 1e8;
    int scan_points = 161;
};

struct MuEstimate {
    double t = 0.0;
    double value = 0.0;  // best |h| found on |g| = t; a lower bound for μ(t)
    Vec argmax;
    bool crossing_found = false;
    std::size_t crossings = 0;
    double value_half_budget = 0.0;  // best over the first half of the rays
    bool growth_flag = false;        // evidence that μ(t) may be infinite
};

/// Lower estimate of sup{|h(x)| : |g(x)| = t}.
inline MuEstimate mu_estimate(const Polynomial& g, const Polynomial& h, double t, const MuOptions& opt = {})
{
    if (!(t > 0) || !std::isfinite(t)) throw std::invalid_argument("mu_estimate needs t > 0");
    if (g.num_vars() != h.num_vars()) throw std::invalid_argument("g and h live in different dimensions");
    const FloatPolynomial fg(g), fh(h);
    const detail::LevelScan sc{opt.r_min, opt.r_max, opt.scan_points};
    MuEstimate est;
    est.t = t;
    const auto dirs = detail::ray_directions(g.num_vars(), opt.rays, opt.seed);
    const std::size_t half = (dirs.size() + 1) / 2;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        for (const auto& x0 : detail::level_crossings(fg, dirs[k], t, sc)) {
            ++est.crossings;
            est.crossing_found = true;
            const Vec x = detail::ascend_on_level(fg, fh, x0, opt.ascent_iterations);
            const double gv = std::fabs(fg.value(x));
            if (std::fabs(gv - t) > 1e-10 * t) continue;
            const double hv = std::fabs(fh.value(x));
            if (std::isfinite(hv) && (hv > est.value || est.argmax.empty())) {
                est.value = hv;
                est.argmax = x;
            }
        }
        if (k + 1 == half) est.value_half_budget = est.value;
    }
    // On a bounded level the ascent has converged; continuing it from the maximizer
    // should not gain much.
    bool runaway = false;
    if (!est.argmax.empty()) {
        const Vec y = detail::ascend_on_level(fg, fh, est.argmax, opt.ascent_iterations);
        runaway = std::fabs(std::fabs(fg.value(y)) - t) <= 1e-10 * t && std::fabs(fh.value(y)) > 2.0 * est.value;
    }
    const bool far = !est.argmax.empty() && norm2(est.argmax) > 0.1 * opt.r_max;
    est.growth_flag = est.crossing_found && (runaway || far || est.value > 1.5 * est.value_half_budget);
    return est;
}

struct GridPoint {
    double t = 0.0;
    double mu = 0.0;
    Vec argmax;
    bool usable = false;
    bool growth_flag = false;
};

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

struct ExponentFit {
    double alpha = 0.0;  // fitted, not claimed optimal
    double beta = 0.0;
    double c = 0.0;
    std::vector<GridPoint> small_grid, large_grid;
    Regression small_fit, large_fit;
    bool growth_flag = false;
};

struct FitConfig {
    MuOptions mu;
    std::size_t grid_points = 12;
    double small_lo = 1e-6, small_hi = 1e-2;
    double large_lo = 1e2, large_hi = 1e6;
};

/// Least squares line through (log10 t, log10 μ).
inline Regression log_log_regression(const std::vector<GridPoint>& grid)
{
    std::vector<double> xs, ys;
    for (const auto& p : grid)
        if (p.usable) {
            xs.push_back(std::log10(p.t));
            ys.push_back(std::log10(p.mu));
        }
    Regression r;
    r.points = xs.size();
    if (xs.size() < 4) throw std::runtime_error("degenerate regression: fewer than 4 usable grid points");
    const double m = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (r.intercept + r.slope * xs[i]);
        ssr += e * e;
    }
    r.slope_stderr = std::sqrt(ssr / (m - 2) / sxx);
    r.r_squared = syy > 0 ? 1.0 - ssr / syy : 1.0;
    return r;
}

/// Smallest c with |g|^α + |g|^β >= c|h| at the given points, clipped to (0, ∞).
inline double fitted_constant(const Polynomial& g, const Polynomial& h, const std::vector<Vec>& points, double alpha, double beta)
{
    const FloatPolynomial fg(g), fh(h);
    double c = std::numeric_limits<double>::infinity();
    for (const auto& x : points) {
        const double gv = std::fabs(fg.value(x)), hv = std::fabs(fh.value(x));
        if (!(hv > 0) || !std::isfinite(hv)) continue;
        c = std::min(c, (std::pow(gv, alpha) + std::pow(gv, beta)) / hv);
    }
    if (!std::isfinite(c)) c = 1.0;
    return std::clamp(c, 1e-300, 1e300);
}

inline ExponentFit fit_exponents(const Polynomial& g, const Polynomial& h, const FitConfig& cfg = {})
{
    ExponentFit fit;
    auto run = [&](double lo, double hi, std::vector<GridPoint>& grid, std::uint64_t salt) {
        const auto ts = geometric_grid(lo, hi, cfg.grid_points);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            MuOptions mo = cfg.mu;
            mo.seed = cfg.mu.seed ^ (salt + k);
            const auto est = mu_estimate(g, h, ts[k], mo);
            GridPoint p;
            p.t = ts[k];
            p.mu = est.value;
            p.argmax = est.argmax;
            p.usable = est.crossing_found && est.value > 0 && std::isfinite(est.value);
            p.growth_flag = est.growth_flag;
            fit.growth_flag = fit.growth_flag || est.growth_flag;
            grid.push_back(std::move(p));
        }
    };
    run(cfg.small_lo, cfg.small_hi, fit.small_grid, 0x100);
    run(cfg.large_lo, cfg.large_hi, fit.large_grid, 0x200);
    fit.small_fit = log_log_regression(fit.small_grid);
    fit.large_fit = log_log_regression(fit.large_grid);
    fit.alpha = fit.small_fit.slope;
    fit.beta = fit.large_fit.slope;
    std::vector<Vec> pts;
    for (const auto* grid : {&fit.small_grid, &fit.large_grid})
        for (const auto& p : *grid)
            if (p.usable) pts.push_back(p.argmax);
    fit.c = fitted_constant(g, h, pts, fit.alpha, fit.beta);
    return fit;
}

// ---------------------------------------------------------------------------
// Sequences of the first and second type along monomial curves.

enum class SequenceKind { FirstType, SecondType };

inline const char* to_string(SequenceKind k) { return k == SequenceKind::FirstType ? "FirstType" : "SecondType"; }

struct SequenceEvidence {
    SequenceKind kind = SequenceKind::FirstType;
    IntVector q;                               // x_j(s) = a_j s^{q_j}, s -> 0+
    Vec a;
    std::optional<RationalVector> exact_a;
    std::vector<double> s;
    std::vector<Vec> points;
    std::vector<double> g_values, h_values;
    double delta = 1e-3;                       // first type: |h| >= delta
    double g_bound = 0.0;                      // second type: |g| <= g_bound
};

struct HuntConfig {
    double delta = 1e-3;
    std::optional<double> g_bound;  // default 10(1 + |g(0)|)
    double h_threshold = 1e6;       // second type: |h| at the last sample must exceed this
    std::int64_t max_abs_q = 6;
    std::size_t attempts_per_candidate = 8;
    std::uint64_t seed = 1;
    std::vector<double> s_samples;  // default 10^{-1}, 10^{-1.5}, ..., 10^{-6}
};

inline std::vector<double> default_curve_samples()
{
    std::vector<double> s;
    for (int k = 2; k <= 12; ++k) s.push_back(std::pow(10.0, -0.5 * k));
    return s;
}

inline Vec curve_point(const IntVector& q, const Vec& a, double s)
{
    Vec x(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) x[j] = a[j] * std::pow(s, static_cast<double>(q[j]));
    return x;
}

/// Fills sample tables of a curve.
inline void sample_curve(SequenceEvidence& ev, const Polynomial& g, const Polynomial& h)
{
    const FloatPolynomial fg(g), fh(h);
    ev.points.clear();
    ev.g_values.clear();
    ev.h_values.clear();
    for (double s : ev.s) {
        Vec x;
        if (ev.exact_a) {
            // Exact evaluation avoids cancellation in g along curves where it vanishes identically.
            RationalVector xr(ev.q.size());
            const Rational sr = from_double(s);
            for (std::size_t j = 0; j < xr.size(); ++j) xr[j] = (*ev.exact_a)[j] * pow(sr, ev.q[j]);
            for (const auto& v : xr) x.push_back(to_double(v));
            ev.g_values.push_back(to_double(evaluate_exact(g, xr)));
            ev.h_values.push_back(to_double(evaluate_exact(h, xr)));
        } else {
            x = curve_point(ev.q, ev.a, s);
            ev.g_values.push_back(fg.value(x));
            ev.h_values.push_back(fh.value(x));
        }
        ev.points.push_back(std::move(x));
    }
}

/// Re-checks the defining properties on the recorded samples.
inline bool validate_evidence(const SequenceEvidence& ev, double h_threshold = 1e6)
{
    const std::size_t m = ev.s.size();
    if (m < 5 || ev.g_values.size() != m || ev.h_values.size() != m || ev.points.size() != m) return false;
    for (std::size_t k = 1; k < m; ++k)
        if (!(ev.s[k] < ev.s[k - 1])) return false;
    if (!(norm2(ev.points.back()) > norm2(ev.points.front()))) return false;
    if (ev.kind == SequenceKind::FirstType) {
        for (std::size_t k = m - 5; k < m; ++k)
            if (!(std::fabs(ev.g_values[k]) < 1e-6)) return false;
        for (double hv : ev.h_values)
            if (!(std::fabs(hv) >= ev.delta)) return false;
        return true;
    }
    for (double gv : ev.g_values)
        if (!(std::fabs(gv) <= ev.g_bound)) return false;
    for (std::size_t k = m - 4; k < m; ++k)
        if (!(std::fabs(ev.h_values[k]) > std::fabs(ev.h_values[k - 1]))) return false;
    return std::fabs(ev.h_values.back()) > h_threshold;
}

namespace detail {

/// f(a ∘ s^q) = Σ_e C_e(a) s^e, with C_e(a) = Σ_{<q,κ> = e} c_κ a^κ.
inline std::map<std::int64_t, Polynomial> curve_expansion(const Polynomial& f, const IntVector& q)
{
    std::map<std::int64_t, Polynomial> out;
    for (const auto& [e, c] : f.terms()) {
        const std::int64_t lvl = dot(q, e);
        auto it = out.try_emplace(lvl, Polynomial(f.num_vars())).first;
        it->second.add_term(e, c);
    }
    return out;
}

inline IntVector scaled_int(const IntVector& v, std::int64_t s)
{
    IntVector out(v);
    for (auto& x : out) x *= s;
    return out;
}

inline std::vector<IntVector> hunt_candidates(const Polynomial& g, const Polynomial& h, std::int64_t max_abs_q)
{
    const std::size_t n = g.num_vars();
    std::set<IntVector> cands;
    auto add = [&](const IntVector& q) {
        bool grows = false;
        for (auto v : q) {
            if (std::llabs(v) > max_abs_q) return;
            grows = grows || v < 0;
        }
        if (grows) cands.insert(q);
    };
    if (n <= 3) {
        IntVector q(n, -max_abs_q);
        for (;;) {
            add(q);
            std::size_t j = 0;
            while (j < n && q[j] == max_abs_q) q[j++] = -max_abs_q;
            if (j == n) break;
            ++q[j];
        }
    } else {
        std::vector<std::vector<NewtonPolyhedron>> families{{newton_polyhedron(g)}, {newton_polyhedron(h)},
                                                           {newton_polyhedron(g), newton_polyhedron(h)}};
        for (const auto& fam : families)
            for (const auto& t : enumerate_negative_face_tuples(fam).tuples) {
                // The curve goes to infinity when s^q blows up, i.e. along -q for d < 0 covectors too.
                for (const IntVector& base : {t.witness_q, scaled_int(t.witness_q, -1)}) {
                    IntVector d(n, -1);
                    for (;;) {
                        IntVector p(base);
                        for (std::size_t j = 0; j < n; ++j) p[j] += d[j];
                        add(p);
                        std::size_t j = 0;
                        while (j < n && d[j] == 1) d[j++] = -1;
                        if (j == n) break;
                        ++d[j];
                    }
                }
            }
    }
    std::vector<IntVector> out(cands.begin(), cands.end());
    std::stable_sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
        std::int64_t la = 0, lb = 0;
        for (auto v : a) la += std::llabs(v);
        for (auto v : b) lb += std::llabs(v);
        return la < lb;
    });
    return out;
}

}  // namespace detail

/// Searches monomial curves for a sequence of the requested type.
inline std::optional<SequenceEvidence> hunt_sequences(const Polynomial& g, const Polynomial& h, SequenceKind kind,
                                                      const HuntConfig& cfg = {})
{
    if (g.num_vars() != h.num_vars()) throw std::invalid_argument("g and h live in different dimensions");
    const std::size_t n = g.num_vars();
    const double g0 = std::fabs(to_double(g.coefficient(Exponent(n, 0))));
    const double g_bound = cfg.g_bound.value_or(10.0 * (1.0 + g0));
    const auto samples = cfg.s_samples.empty() ? default_curve_samples() : cfg.s_samples;
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (const auto& q : detail::hunt_candidates(g, h, cfg.max_abs_q)) {
        const auto ge = detail::curve_expansion(g, q);
        const auto he = detail::curve_expansion(h, q);
        // Coefficients that must vanish so that g -> 0 (first type) or stays bounded (second type).
        std::vector<Polynomial> must_vanish;
        for (const auto& [e, c] : ge)
            if (e < 0 || (kind == SequenceKind::FirstType && e == 0)) must_vanish.push_back(c);
        // h must keep a term with e <= 0 (first type) or e < 0 (second type).
        std::vector<Polynomial> h_leading;
        for (const auto& [e, c] : he)
            if (e < 0 || (kind == SequenceKind::FirstType && e == 0)) h_leading.push_back(c);
        if (h_leading.empty()) continue;

        auto exact_ok = [&](const RationalVector& a) {
            for (const auto& v : a)
                if (v == 0) return false;
            for (const auto& c : must_vanish)
                if (evaluate_exact(c, a) != 0) return false;
            for (const auto& c : h_leading)
                if (evaluate_exact(c, a) != 0) return true;
            return false;
        };
        auto make = [&](const RationalVector& a) -> std::optional<SequenceEvidence> {
            SequenceEvidence ev;
            ev.kind = kind;
            ev.q = q;
            ev.exact_a = a;
            for (const auto& v : a) ev.a.push_back(to_double(v));
            ev.s = samples;
            ev.delta = cfg.delta;
            ev.g_bound = g_bound;
            sample_curve(ev, g, h);
            if (!validate_evidence(ev, cfg.h_threshold)) return std::nullopt;
            return ev;
        };

        // a = (1, ..., 1) first, then its sign variants.
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            RationalVector a(n, Rational(1));
            for (std::size_t j = 0; j < n; ++j)
                if ((mask >> j) & 1) a[j] = Rational(-1);
            if (exact_ok(a))
                if (auto ev = make(a)) return ev;
        }
        if (must_vanish.empty()) continue;
        if (n <= 2) {
            // Small rational coefficients before any numerical solve.
            static const Rational simple[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2),
                                              Rational(-1, 2), Rational(3), Rational(-3), Rational(1, 3), Rational(-1, 3)};
            const std::size_t m = std::size(simple);
            const std::size_t combos = n == 1 ? m : m * m;
            for (std::size_t k = 0; k < combos; ++k) {
                RationalVector a{simple[k % m]};
                if (n == 2) a.push_back(simple[k / m]);
                if (exact_ok(a))
                    if (auto ev = make(a)) return ev;
            }
        }

        // Otherwise solve the vanishing conditions numerically and look for a nearby rational root.
        std::vector<FloatPolynomial> fv;
        for (const auto& c : must_vanish) fv.emplace_back(c);
        Vec sigma(n, 1.0);
        auto residual = [&](const Vec& y) {
            Vec a(n), r;
            for (std::size_t j = 0; j < n; ++j) a[j] = sigma[j] * std::exp(std::clamp(y[j], -30.0, 30.0));
            for (const auto& f : fv) r.push_back(f.value(a) / std::max(f.magnitude(a), 1e-300));
            return r;
        };
        for (std::size_t att = 0; att < cfg.attempts_per_candidate; ++att) {
            for (std::size_t j = 0; j < n; ++j) sigma[j] = ((att >> j) & 1) ? -1.0 : 1.0;
            Vec y(n);
            for (auto& v : y) v = normal(rng);
            LmOptions lm;
            lm.stall_window = 8;
            const auto res = levenberg_marquardt(residual, y, lm);
            if (!(res.residual < 1e-9)) continue;
            RationalVector a(n);
            for (std::size_t j = 0; j < n; ++j) a[j] = approximate(sigma[j] * std::exp(res.y[j]), 1000);
            if (exact_ok(a))
                if (auto ev = make(a)) return ev;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Inequality verification.

struct InequalitySample {
    Vec x;
    double g = 0.0, h = 0.0;
    std::string source;  // "box", "level", "curve"
};

struct VerifyConfig {
    std::size_t box_samples = 100000;
    double box_half_width = 1e3;
    std::size_t level_rays = 32;  // per grid t; 0 disables level-set samples
    std::size_t grid_points = 12;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;      // violation when ratio > 1 + tolerance
    std::vector<SequenceEvidence> curves;
};

struct InequalityReport {
    double alpha = 0, beta = 0, c = 0;
    std::size_t samples = 0;
    double worst_ratio = 0.0;  // max c|h| / (|g|^α + |g|^β)
    Vec worst_point;
    std::string worst_source;
    std::optional<Vec> first_violation;
    bool holds() const { return !first_violation.has_value(); }
};

inline std::vector<InequalitySample> collect_inequality_samples(const Polynomial& g, const Polynomial& h, const VerifyConfig& cfg)
{
    const std::size_t n = g.num_vars();
    const FloatPolynomial fg(g), fh(h);
    std::vector<InequalitySample> out;
    out.reserve(cfg.box_samples);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> box(-cfg.box_half_width, cfg.box_half_width);
    for (std::size_t k = 0; k < cfg.box_samples; ++k) {
        Vec x(n);
        for (auto& v : x) v = box(rng);
        out.push_back({x, fg.value(x), fh.value(x), "box"});
    }
    if (cfg.level_rays > 0) {
        std::vector<double> ts = geometric_grid(1e-6, 1e-2, cfg.grid_points);
        const auto big = geometric_grid(1e2, 1e6, cfg.grid_points);
        ts.insert(ts.end(), big.begin(), big.end());
        const auto dirs = detail::ray_directions(n, cfg.level_rays, cfg.seed ^ 0x5eedULL);
        for (double t : ts)
            for (const auto& v : dirs)
                for (auto& x : detail::level_crossings(fg, v, t, {})) {
                    const Vec y = detail::ascend_on_level(fg, fh, x, 40);
                    out.push_back({x, fg.value(x), fh.value(x), "level"});
                    out.push_back({y, fg.value(y), fh.value(y), "level"});
                }
    }
    for (const auto& ev : cfg.curves)
        for (std::size_t k = 0; k < ev.points.size(); ++k)
            out.push_back({ev.points[k], ev.g_values[k], ev.h_values[k], "curve"});
    return out;
}

inline InequalityReport evaluate_inequality(const std::vector<InequalitySample>& samples, double alpha, double beta, double c,
                                            double tolerance = 1e-9)
{
    if (!(alpha > 0) || !(beta > 0) || !(c > 0)) throw std::invalid_argument("alpha, beta and c must be positive");
    InequalityReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.c = c;
    rep.samples = samples.size();
    for (const auto& s : samples) {
        const double gv = std::fabs(s.g), hv = c * std::fabs(s.h);
        if (hv == 0.0) continue;
        const double lhs = std::pow(gv, alpha) + std::pow(gv, beta);
        const double ratio = lhs > 0 ? hv / lhs : std::numeric_limits<double>::infinity();
        if (ratio > rep.worst_ratio || rep.worst_point.empty()) {
            rep.worst_ratio = ratio;
            rep.worst_point = s.x;
            rep.worst_source = s.source;
        }
        if (ratio > 1.0 + tolerance && !rep.first_violation) rep.first_violation = s.x;
    }
    return rep;
}

inline InequalityReport verify_inequality(const Polynomial& g, const Polynomial& h, double alpha, double beta, double c,
                                          const VerifyConfig& cfg = {})
{
    if (!(alpha > 0) || !(beta > 0) || !(c > 0)) throw std::invalid_argument("alpha, beta and c must be positive");
    return evaluate_inequality(collect_inequality_samples(g, h, cfg), alpha, beta, c, cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Asymptotic critical values.

struct KtildeRadius {
    double radius = 0.0;
    bool feasible = false;
    double min_gradient_norm = 0.0;
    double f_value = 0.0;
    Vec point;
    std::optional<double> lambda;  // multiplier of the level constraint
};

enum class KtildeTrend { BoundedAwayFromZero, Decaying, Inconclusive };

inline const char* to_string(KtildeTrend t)
{
    switch (t) {
    case KtildeTrend::BoundedAwayFromZero: return "bounded away from zero";
    case KtildeTrend::Decaying: return "decaying";
    default: return "inconclusive";
    }
}

struct KtildeConstraint {
    Polynomial h;
    double r = 0.0;
};

struct KtildeConfig {
    std::size_t starts = 24;
    std::uint64_t seed = 1;
};

struct KtildeProbeReport {
    std::optional<KtildeConstraint> constraint;
    std::vector<KtildeRadius> radii;
    KtildeTrend trend = KtildeTrend::Inconclusive;
    std::optional<double> growth_exponent;  // slope of log min-norm against log R
};

namespace detail {

/// Gradient of f restricted to {h = r}: the component of ∇f orthogonal to ∇h.
inline Vec constrained_gradient(const Vec& gf, const Vec& gh)
{
    const double nn = dotv(gh, gh);
    if (!(nn > 0)) return gf;
    Vec out(gf);
    const double lam = dotv(gf, gh) / nn;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= lam * gh[i];
    return out;
}

}  // namespace detail

inline KtildeProbeReport ktilde_probe(const Polynomial& f, const std::optional<KtildeConstraint>& constraint,
                                      const std::vector<double>& radii, const KtildeConfig& cfg = {})
{
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (!(radii[k] > 0) || (k > 0 && !(radii[k] > radii[k - 1])))
            throw std::invalid_argument("radii must be positive and increasing");
    if (constraint && constraint->h.num_vars() != f.num_vars()) throw std::invalid_argument("constraint dimension mismatch");
    const std::size_t n = f.num_vars();
    const FloatPolynomial ff(f);
    std::optional<FloatPolynomial> fh;
    if (constraint) fh.emplace(constraint->h);

    KtildeProbeReport rep;
    rep.constraint = constraint;
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double R : radii) {
        KtildeRadius kr;
        kr.radius = R;
        kr.min_gradient_norm = std::numeric_limits<double>::infinity();
        auto grad_of = [&](const Vec& x) {
            const Vec gf = ff.gradient(x);
            return fh ? detail::constrained_gradient(gf, fh->gradient(x)) : gf;
        };
        // Unknowns u with x = R u/|u| on the sphere; residuals: (constrained) gradient, optional level.
        auto on_sphere = [&](const Vec& u) {
            const double nu = norm2(u);
            return nu > 0 ? detail::scaled(u, R / nu) : u;
        };
        auto residual = [&](const Vec& u) {
            const Vec x = on_sphere(u);
            Vec r = grad_of(x);
            if (fh) r.push_back((fh->value(x) - constraint->r) / std::max(1.0, std::fabs(constraint->r)));
            return r;
        };
        std::vector<Vec> starts;
        for (const auto& d : detail::ray_directions(n, std::min<std::size_t>(cfg.starts, 2 * n + 2 * n * (n - 1)), cfg.seed))
            starts.push_back(detail::scaled(d, R));
        if (n == 2) {
            // Dense angular scan; keep the best few as starts.
            std::vector<std::pair<double, Vec>> scan;
            for (int k = 0; k < 720; ++k) {
                const double th = 2.0 * M_PI * k / 720.0;
                Vec x{R * std::cos(th), R * std::sin(th)};
                scan.emplace_back(norm2(grad_of(x)), x);
            }
            std::sort(scan.begin(), scan.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t k = 0; k < std::min<std::size_t>(8, scan.size()); ++k) starts.push_back(scan[k].second);
        }
        while (starts.size() < cfg.starts + 8) {
            Vec v(n);
            for (auto& x : v) x = normal(rng);
            const double nv = norm2(v);
            if (nv > 1e-12) starts.push_back(detail::scaled(v, R / nv));
        }
        LmOptions lm;
        lm.max_iterations = 200;
        lm.tolerance = 0.0;
        lm.stall_window = 12;
        lm.stall_ratio = 0.999;
        for (const auto& x0 : starts) {
            const auto res = levenberg_marquardt(residual, x0, lm);
            const Vec x = on_sphere(res.y);
            if (!(norm2(res.y) > 0)) continue;
            if (fh && std::fabs(fh->value(x) - constraint->r) > 1e-8 * std::max(1.0, std::fabs(constraint->r))) continue;
            const double gn = norm2(grad_of(x));
            if (!std::isfinite(gn)) continue;
            kr.feasible = true;
            if (gn < kr.min_gradient_norm) {
                kr.min_gradient_norm = gn;
                kr.point = x;
                kr.f_value = ff.value(x);
                if (fh) {
                    const Vec gh = fh->gradient(x);
                    const double nn = detail::dotv(gh, gh);
                    kr.lambda = nn > 0 ? detail::dotv(ff.gradient(x), gh) / nn : 0.0;
                }
            }
        }
        if (!kr.feasible) kr.min_gradient_norm = 0.0;
        rep.radii.push_back(std::move(kr));
    }

    std::vector<GridPoint> pts;
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& kr : rep.radii)
        if (kr.feasible) {
            lowest = std::min(lowest, kr.min_gradient_norm);
            GridPoint p;
            p.t = kr.radius;
            p.mu = kr.min_gradient_norm;
            p.usable = kr.min_gradient_norm > 0;
            pts.push_back(p);
        }
    std::size_t usable = 0;
    for (const auto& p : pts) usable += p.usable;
    if (usable >= 4) rep.growth_exponent = log_log_regression(pts).slope;
    if (!pts.empty()) {
        const double first = pts.front().mu, last = pts.back().mu;
        if (last < 1e-6 || (first > 0 && last < 1e-3 * first))
            rep.trend = KtildeTrend::Decaying;
        else if (lowest > 1e-3 && last >= 0.5 * first)
            rep.trend = KtildeTrend::BoundedAwayFromZero;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The multiplier N with h^N = g·f0.

struct MultiplierConfig {
    std::size_t samples = 100000;
    double radius = 1.0;
    double bound = 10.0;
    std::uint64_t seed = 1;
};

struct MultiplierReport {
    std::int64_t ell = 0;
    std::int64_t N = 0;
    std::size_t samples = 0;
    double max_ratio = 0.0;  // max of |h|^N / g^2 over samples with g != 0
    Vec worst_point;
    bool bounded = false;    // max_ratio <= bound
    double bound = 0.0;
};

inline std::int64_t multiplier_for(double alpha)
{
    if (!(alpha > 0) || alpha > 1) throw std::invalid_argument("alpha must lie in (0, 1]");
    const std::int64_t ell = static_cast<std::int64_t>(std::floor(1.0 / alpha)) + 1;
    return 2 * ell;
}

/// Uniform samples in the ball of the given radius; half of them pulled toward the origin.
inline MultiplierReport multiplier(const Polynomial& g, const Polynomial& h, double alpha, const MultiplierConfig& cfg = {})
{
    MultiplierReport rep;
    rep.N = multiplier_for(alpha);
    rep.ell = rep.N / 2;
    rep.bound = cfg.bound;
    const std::size_t n = g.num_vars();
    const FloatPolynomial fg(g), fh(h);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t k = 0; k < cfg.samples; ++k) {
        Vec v(n);
        for (auto& x : v) x = normal(rng);
        const double nv = norm2(v);
        if (nv < 1e-12) continue;
        double r = cfg.radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
        if (k % 2 == 1) r *= std::pow(10.0, -6.0 * unif(rng));
        const Vec x = detail::scaled(v, r / nv);
        const double gv = fg.value(x);
        ++rep.samples;
        if (gv == 0.0) continue;
        const double ratio = std::pow(std::fabs(fh.value(x)), static_cast<double>(rep.N)) / (gv * gv);
        if (ratio > rep.max_ratio || rep.worst_point.empty()) {
            rep.max_ratio = ratio;
            rep.worst_point = x;
        }
    }
    rep.bounded = rep.max_ratio <= cfg.bound;
    return rep;
}

}  // namespace newtonloj
