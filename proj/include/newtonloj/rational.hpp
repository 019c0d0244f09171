#pragma once

// Exact scalar types shared by every exact algorithm in the library.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace newtonloj {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rational& r) { return r.sign(); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? Rational(-r) : r; }

/// Canonical "p/q" or "p" text, no decimal point.
inline std::string to_string(const Rational& r)
{
    return r.str();
}

/// Parses "p", "-p" or "p/q" (optional sign, no whitespace, no decimals).
inline Rational parse_rational(std::string_view text)
{
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t i = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        ++i;
    }
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) throw std::invalid_argument("malformed rational literal: " + std::string(text));
        for (std::size_t k = from; k < to; ++k)
            if (text[k] < '0' || text[k] > '9')
                throw std::invalid_argument("malformed rational literal: " + std::string(text));
        return Integer(std::string(text.substr(from, to - from)));
    };
    const auto slash = text.find('/');
    Rational value;
    if (slash == std::string_view::npos) {
        value = Rational(digits(i, text.size()));
    } else {
        Integer num = digits(i, slash);
        Integer den = digits(slash + 1, text.size());
        if (den == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
        value = Rational(num, den);
    }
    return negative ? Rational(-value) : value;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact binary value of a finite double.
inline Rational from_double(double v)
{
    if (!std::isfinite(v)) throw std::invalid_argument("cannot convert non-finite double to rational");
    return Rational(v);
}

/// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational approximate(double v, std::int64_t max_den)
{
    if (!std::isfinite(v)) throw std::invalid_argument("cannot approximate non-finite double");
    const bool negative = v < 0;
    double x = std::fabs(v);
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(x);
        if (a > 1e18) break;
        const Integer ai(static_cast<long long>(a));
        const Integer p2 = ai * p1 + p0;
        const Integer q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    return negative ? Rational(-r) : r;
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi)
{
    if (hi < lo) std::swap(lo, hi);
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return Rational(-simplest_between(Rational(-hi), Rational(-lo)));
    // Stern-Brocot descent on the continued fraction of lo/hi.
    Integer fl = numerator_of(lo) / denominator_of(lo);
    Rational flr(fl);
    if (flr == lo) return lo;
    if (flr + 1 <= hi) return Rational(fl + 1);
    // lo and hi share the integer part: recurse on reciprocals of the fractional parts.
    const Rational inner = simplest_between(Rational(1) / (hi - flr), Rational(1) / (lo - flr));
    return flr + Rational(1) / inner;
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline std::int64_t to_int64(const Integer& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits");
    return v.convert_to<std::int64_t>();
}

/// Rational power with a signed exponent (base must be nonzero for negative exponents).
inline Rational pow(const Rational& base, std::int64_t e)
{
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return pow(Rational(1) / base, -e);
    }
    Rational result(1), b(base);
    auto k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1U) result *= b;
        k >>= 1U;
        if (k) b *= b;
    }
    return result;
}

}  // namespace newtonloj
