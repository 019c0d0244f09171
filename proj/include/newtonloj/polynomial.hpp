#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include "newtonloj/rational.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace newtonloj {

/// Exponent vector κ; entries are nonnegative for polynomial terms.
using Exponent = IntVector;

inline constexpr std::int64_t max_exponent = (std::int64_t{1} << 31) - 1;

class Polynomial {
public:
    using TermMap = std::map<Exponent, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

    static Polynomial constant(std::size_t num_vars, const Rational& c)
    {
        Polynomial p(num_vars);
        p.add_term(Exponent(num_vars, 0), c);
        return p;
    }

    static Polynomial variable(std::size_t num_vars, std::size_t index)
    {
        if (index >= num_vars) throw std::out_of_range("variable index out of range");
        Polynomial p(num_vars);
        Exponent e(num_vars, 0);
        e[index] = 1;
        p.add_term(e, Rational(1));
        return p;
    }

    static Polynomial monomial(const Exponent& e, const Rational& c)
    {
        Polynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c·x^e, dropping the term if the coefficient cancels.
    void add_term(const Exponent& e, const Rational& c)
    {
        if (e.size() != num_vars_) throw std::invalid_argument("exponent length does not match num_vars");
        for (auto k : e) {
            if (k < 0) throw std::invalid_argument("negative exponent in polynomial term");
            if (k > max_exponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
        }
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::vector<Exponent> support() const
    {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    std::int64_t total_degree() const
    {
        std::int64_t d = 0;
        for (const auto& [e, c] : terms_) {
            std::int64_t s = 0;
            for (auto k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check_compatible(b);
        Polynomial out(a.num_vars_);
        Exponent e(a.num_vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

private:
    void check_compatible(const Polynomial& o) const
    {
        if (o.num_vars_ != num_vars_) throw std::invalid_argument("polynomials have different num_vars");
    }

    std::size_t num_vars_ = 0;
    TermMap terms_;
};

inline Polynomial pow(const Polynomial& base, std::int64_t k)
{
    if (k < 0) throw std::invalid_argument("negative exponent");
    if (k > max_exponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
    Polynomial result = Polynomial::constant(base.num_vars(), Rational(1));
    Polynomial b = base;
    while (k) {
        if (k & 1) result *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return result;
}

/// F = (f_1, ..., f_p); all components share num_vars.
class PolynomialMapping {
public:
    PolynomialMapping() = default;
    explicit PolynomialMapping(std::vector<Polynomial> components) : components_(std::move(components))
    {
        if (components_.empty()) throw std::invalid_argument("mapping needs at least one component");
        for (const auto& f : components_)
            if (f.num_vars() != components_.front().num_vars())
                throw std::invalid_argument("mapping components have different num_vars");
    }

    std::size_t num_vars() const { return components_.empty() ? 0 : components_.front().num_vars(); }
    std::size_t size() const { return components_.size(); }
    const Polynomial& operator[](std::size_t i) const { return components_.at(i); }
    const std::vector<Polynomial>& components() const { return components_; }

    /// Sub-mapping (f_i)_{i in indices}.
    PolynomialMapping select(const std::vector<std::size_t>& indices) const
    {
        std::vector<Polynomial> sub;
        for (auto i : indices) sub.push_back(components_.at(i));
        return PolynomialMapping(std::move(sub));
    }

    friend bool operator==(const PolynomialMapping&, const PolynomialMapping&) = default;

private:
    std::vector<Polynomial> components_;
};

inline Rational evaluate_exact(const Polynomial& f, const RationalVector& point)
{
    if (point.size() != f.num_vars()) throw std::invalid_argument("point dimension mismatch");
    Rational sum(0);
    for (const auto& [e, c] : f.terms()) {
        Rational term = c;
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] != 0) term *= pow(point[j], e[j]);
        sum += term;
    }
    return sum;
}

namespace detail {

inline double ipow(double x, std::int64_t k)
{
    double r = 1.0;
    while (k) {
        if (k & 1) r *= x;
        k >>= 1;
        if (k) x *= x;
    }
    return r;
}

}  // namespace detail

/// Floating evaluation with Neumaier-compensated summation. Overflow yields ±inf or NaN, never throws.
inline double evaluate_float(const Polynomial& f, const std::vector<double>& point)
{
    if (point.size() != f.num_vars()) throw std::invalid_argument("point dimension mismatch");
    double sum = 0.0, comp = 0.0;
    for (const auto& [e, c] : f.terms()) {
        double term = to_double(c);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] != 0) term *= detail::ipow(point[j], e[j]);
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    const double total = sum + comp;
    return std::isnan(total) && std::isinf(sum) ? sum : total;
}

inline Polynomial partial_derivative(const Polynomial& f, std::size_t var)
{
    if (var >= f.num_vars()) throw std::out_of_range("variable index out of range");
    Polynomial d(f.num_vars());
    for (const auto& [e, c] : f.terms()) {
        if (e[var] == 0) continue;
        Exponent de = e;
        de[var] -= 1;
        d.add_term(de, c * e[var]);
    }
    return d;
}

inline PolynomialMapping gradient(const Polynomial& f)
{
    std::vector<Polynomial> parts;
    for (std::size_t j = 0; j < f.num_vars(); ++j) parts.push_back(partial_derivative(f, j));
    if (parts.empty()) throw std::invalid_argument("gradient of a polynomial in zero variables");
    return PolynomialMapping(std::move(parts));
}

/// Terms whose exponents satisfy the predicate.
template <class Pred>
Polynomial filter_terms(const Polynomial& f, Pred keep)
{
    Polynomial out(f.num_vars());
    for (const auto& [e, c] : f.terms())
        if (keep(e)) out.add_term(e, c);
    return out;
}

/// Sets x_j = 0 for every j not in `axes` (0-based indices).
inline Polynomial restrict_to_axes(const Polynomial& f, const std::vector<std::size_t>& axes)
{
    if (axes.empty()) throw std::invalid_argument("restrict_to_axes needs a nonempty index set");
    std::vector<bool> keep(f.num_vars(), false);
    for (auto j : axes) {
        if (j >= f.num_vars()) throw std::out_of_range("axis index out of range");
        keep[j] = true;
    }
    return filter_terms(f, [&](const Exponent& e) {
        for (std::size_t j = 0; j < e.size(); ++j)
            if (!keep[j] && e[j] != 0) return false;
        return true;
    });
}

/// Σ_j q_j x_j ∂f/∂x_j − d·f; vanishes identically for a face polynomial of type (q, d).
inline Polynomial euler_residual(const Polynomial& f_face, const RationalVector& q, const Rational& d)
{
    if (q.size() != f_face.num_vars()) throw std::invalid_argument("covector dimension mismatch");
    const std::size_t n = f_face.num_vars();
    Polynomial acc(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (q[j] == 0) continue;
        acc += (Polynomial::variable(n, j) * partial_derivative(f_face, j)) * q[j];
    }
    acc -= f_face * d;
    return acc;
}

}  // namespace newtonloj
