#pragma once

// Random instance generators and property checkers shared by the unit tests
// and the acceptance run.

#include "newtonloj/lattice.hpp"
#include "newtonloj/polyhedra.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace instances {

using namespace newtonloj;

inline PointSet random_support(std::mt19937_64& rng, std::size_t n, std::size_t max_pts, std::int64_t max_coord)
{
    std::uniform_int_distribution<std::size_t> cnt(1, max_pts);
    std::uniform_int_distribution<std::int64_t> c(0, max_coord);
    PointSet s(cnt(rng), IntVector(n));
    for (auto& p : s)
        for (auto& x : p) x = c(rng);
    return s;
}

struct CompletionInstance {
    std::size_t n;
    std::vector<IntVector> q_list;
    PointSet support;
};

inline CompletionInstance random_completion_instance(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> nd(2, 4);
    std::uniform_int_distribution<std::int64_t> entry(-3, 3), coord(0, 4);
    CompletionInstance inst;
    inst.n = nd(rng);
    std::uniform_int_distribution<std::size_t> kd(0, inst.n);
    const std::size_t k = kd(rng);
    do {
        inst.q_list.assign(k, IntVector(inst.n));
        for (auto& q : inst.q_list)
            for (auto& x : q) x = entry(rng);
    } while (oracle::integer_rank(inst.q_list) != k);
    for (int tries = 0; tries < 60 && inst.support.size() < 6; ++tries) {
        IntVector p(inst.n);
        for (auto& x : p) x = coord(rng);
        bool ok = true;
        for (const auto& q : inst.q_list) ok = ok && dot(q, p) >= 0;
        if (ok) inst.support.push_back(p);
    }
    return inst;
}

/// Checks the four completion properties by independent means; returns an empty string on success.
inline std::string check_completion(const CompletionInstance& inst, const UnimodularBasis& b)
{
    const std::size_t n = inst.n;
    if (b.rows.size() != n) return "wrong row count";
    for (std::size_t k = 1; k <= inst.q_list.size(); ++k) {
        std::vector<IntVector> both(inst.q_list.begin(), inst.q_list.begin() + static_cast<std::ptrdiff_t>(k));
        both.insert(both.end(), b.rows.begin(), b.rows.begin() + static_cast<std::ptrdiff_t>(k));
        if (oracle::integer_rank(both) != k) return "span prefix not preserved at " + std::to_string(k);
    }
    for (const auto& q : b.rows)
        for (const auto& s : inst.support)
            if (dot(q, s) < 0) return "negative on S";
    const auto pts = oracle::simplex_lattice_points(b.rows);
    if (pts.size() != n + 1) return "simplex holds " + std::to_string(pts.size()) + " lattice points";
    const Integer det = oracle::leibniz_det(b.rows);
    if (det != 1 && det != -1) return "determinant is not +-1";
    return {};
}

inline PolynomialMapping random_degenerate_support_mapping(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> nd(2, 4), pd(1, 2), td(1, 5);
    std::uniform_int_distribution<std::int64_t> w(-2, 2), base(0, 6), step(0, 3);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> dd(0, n - 1);
    const std::size_t d = dd(rng);
    std::vector<IntVector> dirs(d, IntVector(n));
    for (auto& v : dirs)
        for (auto& x : v) x = w(rng);
    const std::size_t p = pd(rng);
    std::vector<Polynomial> comps;
    while (comps.size() < p) {
        IntVector b(n);
        for (auto& x : b) x = base(rng);
        Polynomial f(n);
        const std::size_t terms = td(rng);
        for (int tries = 0; tries < 40 && f.size() < terms; ++tries) {
            IntVector e = b;
            for (const auto& v : dirs) {
                const std::int64_t c = step(rng);
                for (std::size_t j = 0; j < n; ++j) e[j] += c * v[j];
            }
            if (std::any_of(e.begin(), e.end(), [](std::int64_t x) { return x < 0; })) continue;
            if (f.coefficient(e) != 0) continue;
            int c = 0;
            while (c == 0) c = num(rng);
            f.add_term(e, Rational(c, den(rng)));
        }
        if (!f.is_zero()) comps.push_back(std::move(f));
    }
    return PolynomialMapping(std::move(comps));
}

}  // namespace instances
