#pragma once

// Text grammar and JSON form for polynomials.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' uint)*
//   primary := uint ['/' uint] | 'x' index | '(' expr ')'
//
// Variables are x1..xN. Implicit multiplication is rejected.

#include "newtonloj/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace newtonloj {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, std::size_t num_vars) : text_(text), n_(num_vars) {}

    Polynomial parse()
    {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Polynomial expr()
    {
        Polynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term()
    {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == '(' ||
                                    std::isdigit(static_cast<unsigned char>(text_[pos_]))))
            fail("implicit multiplication is not allowed");
        return acc;
    }

    Polynomial unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        while (accept('^')) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
            const std::string d = digits();
            if (d.empty()) fail("expected a nonnegative integer exponent");
            if (d.size() > 10 || std::stoll(d) > max_exponent) fail("exponent exceeds 2^31 - 1");
            base = pow(base, std::stoll(d));
        }
        return base;
    }

    Polynomial primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'x') {
            ++pos_;
            const std::size_t at = pos_;
            const std::string d = digits();
            if (d.empty()) fail("expected variable index after 'x'");
            if (d.size() > 9) {
                pos_ = at;
                fail("variable index too large");
            }
            const auto idx = static_cast<std::size_t>(std::stoull(d));
            if (idx == 0 || idx > n_) {
                pos_ = at;
                fail("variable index x" + d + " outside x1..x" + std::to_string(n_));
            }
            return Polynomial::variable(n_, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string num = digits();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                const std::string den = digits();
                if (den.empty()) fail("expected denominator");
                if (Integer(den) == 0) fail("zero denominator");
                return Polynomial::constant(n_, Rational(Integer(num), Integer(den)));
            }
            return Polynomial::constant(n_, Rational(Integer(num)));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, std::size_t num_vars)
{
    if (num_vars == 0) throw std::invalid_argument("num_vars must be positive");
    return detail::PolynomialParser(text, num_vars).parse();
}

/// Largest variable index mentioned in the text (1-based); 0 when none.
inline std::size_t infer_num_vars(std::string_view text)
{
    std::size_t best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'x') continue;
        std::size_t j = i + 1, v = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && j - i < 10)
            v = v * 10 + static_cast<std::size_t>(text[j++] - '0');
        best = std::max(best, v);
    }
    return best;
}

/// Canonical text: terms in decreasing lexicographic exponent order.
inline std::string to_string(const Polynomial& f)
{
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(j + 1);
            if (e[j] > 1) mono += "^" + std::to_string(e[j]);
        }
        if (mono.empty())
            out << to_string(mag);
        else if (mag == 1)
            out << mono;
        else
            out << to_string(mag) << "*" << mono;
    }
    return out.str();
}

inline nlohmann::json to_json(const Polynomial& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"c", to_string(c)}, {"e", e}});
    return {{"n", f.num_vars()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const nlohmann::json& j)
{
    const auto n = j.at("n").get<std::size_t>();
    Polynomial f(n);
    for (const auto& t : j.at("terms")) {
        const auto e = t.at("e").get<Exponent>();
        if (e.size() != n) throw std::invalid_argument("term exponent length differs from n");
        const Rational c = parse_rational(t.at("c").get<std::string>());
        if (c == 0) throw std::invalid_argument("zero coefficient in polynomial JSON");
        if (f.coefficient(e) != 0) throw std::invalid_argument("duplicate exponent in polynomial JSON");
        f.add_term(e, c);
    }
    return f;
}

inline nlohmann::json to_json(const PolynomialMapping& F)
{
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& f : F.components()) comps.push_back(to_json(f));
    return {{"n", F.num_vars()}, {"components", comps}};
}

inline PolynomialMapping mapping_from_json(const nlohmann::json& j)
{
    if (j.contains("components")) {
        std::vector<Polynomial> comps;
        for (const auto& c : j.at("components")) comps.push_back(polynomial_from_json(c));
        return PolynomialMapping(std::move(comps));
    }
    return PolynomialMapping({polynomial_from_json(j)});
}

/// Parses "f1; f2; ..." into a mapping.
inline PolynomialMapping parse_mapping(std::string_view text, std::size_t num_vars)
{
    std::vector<Polynomial> comps;
    std::size_t start = 0;
    for (;;) {
        const auto semi = text.find(';', start);
        const auto piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        comps.push_back(parse_polynomial(piece, num_vars));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return PolynomialMapping(std::move(comps));
}

}  // namespace newtonloj
