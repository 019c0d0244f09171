#pragma once

// Dense univariate polynomials over Q with Sturm-sequence root counting.

#include "newtonloj/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace newtonloj {

/// Coefficients in increasing degree; the zero polynomial is the empty vector.
class Univariate {
public:
    Univariate() = default;
    explicit Univariate(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& lead() const { return c_.back(); }

    Rational operator()(const Rational& z) const
    {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    double operator()(double z) const
    {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + to_double(*it);
        return acc;
    }

    Univariate derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<std::int64_t>(k));
        return Univariate(std::move(d));
    }

    /// Quotient and remainder of euclidean division.
    friend std::pair<Univariate, Univariate> divmod(const Univariate& a, const Univariate& b)
    {
        if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
        std::vector<Rational> r = a.c_;
        if (a.degree() < b.degree()) return {Univariate(), a};
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
        for (int k = a.degree(); k >= b.degree(); --k) {
            const Rational f = r[static_cast<std::size_t>(k)] / b.lead();
            q[static_cast<std::size_t>(k - b.degree())] = f;
            if (f == 0) continue;
            for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k - b.degree() + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        return {Univariate(std::move(q)), Univariate(std::move(r))};
    }

    Univariate monic() const
    {
        if (is_zero()) return *this;
        std::vector<Rational> m = c_;
        const Rational l = lead();
        for (auto& x : m) x /= l;
        return Univariate(std::move(m));
    }

    Univariate operator-() const
    {
        std::vector<Rational> m = c_;
        for (auto& x : m) x = -x;
        return Univariate(std::move(m));
    }

    friend bool operator==(const Univariate&, const Univariate&) = default;

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Univariate gcd(Univariate a, Univariate b)
{
    while (!b.is_zero()) {
        Univariate r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// p / gcd(p, p'): same distinct roots, all simple.
inline Univariate squarefree(const Univariate& p)
{
    if (p.degree() <= 0) return p;
    return divmod(p, gcd(p, p.derivative())).first;
}

inline std::vector<Univariate> sturm_sequence(const Univariate& p)
{
    std::vector<Univariate> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        const Univariate r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

namespace detail {

inline int sign_changes(const std::vector<Univariate>& seq, const Rational& z)
{
    int changes = 0, last = 0;
    for (const auto& s : seq) {
        const int v = sign(s(z));
        if (v == 0) continue;
        if (last != 0 && v != last) ++changes;
        last = v;
    }
    return changes;
}

/// Cauchy bound: every real root lies strictly inside (-B, B).
inline Rational root_bound(const Univariate& p)
{
    Rational m(0);
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, abs(Rational(p.coeffs()[static_cast<std::size_t>(k)] / p.lead())));
    return m + 1;
}

}  // namespace detail

/// Number of distinct real roots in (lo, hi]; p must be nonzero.
inline int count_real_roots(const Univariate& p, const Rational& lo, const Rational& hi)
{
    if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    if (p.degree() == 0) return 0;
    const auto seq = sturm_sequence(squarefree(p));
    return detail::sign_changes(seq, lo) - detail::sign_changes(seq, hi);
}

/// Distinct real roots of a nonzero polynomial.
inline int count_real_roots(const Univariate& p)
{
    if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    if (p.degree() <= 0) return 0;
    const Rational b = detail::root_bound(p);
    return count_real_roots(p, -b, b);
}

struct IsolatedRoot {
    Rational lo, hi;               // the root lies in (lo, hi]
    std::optional<Rational> exact; // set when a rational root was found
    double approx() const { return exact ? to_double(*exact) : 0.5 * (to_double(lo) + to_double(hi)); }
};

/// Isolates every distinct real root and refines each interval to width <= tol.
/// A root is reported exact when the simplest rational in its interval vanishes.
inline std::vector<IsolatedRoot> real_roots(const Univariate& p, const Rational& tol = Rational(1, 1000000000000LL))
{
    std::vector<IsolatedRoot> out;
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    if (p.degree() <= 0) return out;
    const auto seq = sturm_sequence(squarefree(p));
    const Rational b = detail::root_bound(p);
    std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const int k = detail::sign_changes(seq, lo) - detail::sign_changes(seq, hi);
        if (k == 0) continue;
        if (k == 1) {
            isolated.emplace_back(lo, hi);
            continue;
        }
        const Rational mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(isolated.begin(), isolated.end());
    for (auto [lo, hi] : isolated) {
        IsolatedRoot r;
        for (int iter = 0; iter < 400; ++iter) {
            const Rational s = simplest_between(lo, hi);
            if (s > lo && p(s) == 0) {
                r.exact = s;
                break;
            }
            if (hi - lo <= tol) break;
            const Rational mid = (lo + hi) / 2;
            if (detail::sign_changes(seq, lo) - detail::sign_changes(seq, mid) == 1)
                hi = mid;
            else
                lo = mid;
        }
        if (!r.exact && p(hi) == 0) r.exact = hi;
        r.lo = lo;
        r.hi = hi;
        out.push_back(r);
    }
    return out;
}

}  // namespace newtonloj
