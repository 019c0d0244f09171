#pragma once

// Monte-Carlo experiments over the coefficient space of mappings with fixed
// supports: how often a random draw is non-degenerate at infinity, and whether
// a non-degenerate mapping stays so under small coefficient perturbations.
// The observed fractions are evidence about density and openness, nothing more.

#include "newtonloj/nondegeneracy.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace newtonloj {

struct CoefficientSampler {
    enum class Kind { Uniform, Pinned, Choice };
    Kind kind = Kind::Uniform;
    double lo = -1.0, hi = 1.0;
    double min_abs = 1e-3;                      // smaller draws are rejected and redrawn
    std::vector<std::vector<Rational>> pinned;  // per component, in sorted support order
    std::vector<Rational> choices;              // Choice: uniform over this list, zeros not allowed

    static CoefficientSampler uniform(double lo = -1.0, double hi = 1.0) { return {Kind::Uniform, lo, hi, 1e-3, {}, {}}; }
    static CoefficientSampler fixed(std::vector<std::vector<Rational>> c) { return {Kind::Pinned, 0, 0, 0, std::move(c), {}}; }
    static CoefficientSampler choice(std::vector<Rational> c) { return {Kind::Choice, 0, 0, 0, {}, std::move(c)}; }
};

struct GenericityStats {
    std::vector<PointSet> supports;
    std::size_t trials = 0;
    std::size_t nondegenerate_count = 0;
    std::size_t degenerate_count = 0;
    std::size_t undecided_count = 0;  // checker budget exhausted, n >= 3 only
    std::size_t redraws = 0;
    std::vector<PolynomialMapping> degenerate_instances;
    std::vector<std::size_t> degenerate_trials;
    std::uint64_t seed = 0;
    CheckMode mode = CheckMode::Auto;

    double nondegenerate_fraction() const
    {
        return trials == 0 ? 0.0 : static_cast<double>(nondegenerate_count) / static_cast<double>(trials);
    }
};

namespace detail {

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) { return seed ^ static_cast<std::uint64_t>(index); }

/// Coefficients are k/10^6 so the exact checker works with small rationals.
inline Rational draw_coefficient(const CoefficientSampler& s, std::mt19937_64& rng, std::size_t& redraws)
{
    if (s.kind == CoefficientSampler::Kind::Choice) {
        std::uniform_int_distribution<std::size_t> pick(0, s.choices.size() - 1);
        return s.choices[pick(rng)];
    }
    const auto lo = static_cast<std::int64_t>(std::ceil(s.lo * 1e6));
    const auto hi = static_cast<std::int64_t>(std::floor(s.hi * 1e6));
    const auto min_k = static_cast<std::int64_t>(std::ceil(s.min_abs * 1e6));
    if (lo > hi) throw std::invalid_argument("empty coefficient range");
    if (std::max(std::abs(lo), std::abs(hi)) < min_k)
        throw std::invalid_argument("coefficient range lies inside the excluded band |c| < min_abs");
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    for (;;) {
        const std::int64_t k = dist(rng);
        if (std::abs(k) >= min_k && k != 0) return Rational(k, 1000000);
        ++redraws;
    }
}

inline std::vector<PointSet> canonical_supports(std::vector<PointSet> supports)
{
    if (supports.empty()) throw std::invalid_argument("no supports given");
    const std::size_t n = supports.front().empty() ? 0 : supports.front().front().size();
    for (auto& s : supports) {
        if (s.empty()) throw std::invalid_argument("empty support");
        for (const auto& k : s) {
            if (k.size() != n) throw std::invalid_argument("support points have different dimensions");
            for (auto x : k)
                if (x < 0) throw std::invalid_argument("support point with a negative coordinate");
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return supports;
}

}  // namespace detail

/// Draws `trials` coefficient vectors on the given supports and checks each
/// mapping for non-degeneracy at infinity (exact when n = 2).
inline GenericityStats genericity_trial(std::vector<PointSet> supports, const CoefficientSampler& sampler, std::size_t trials,
                                        std::uint64_t seed, const CheckOptions& check = {})
{
    GenericityStats st;
    st.supports = detail::canonical_supports(std::move(supports));
    st.seed = seed;
    const std::size_t n = st.supports.front().front().size();
    st.mode = resolve_mode(check.mode, n);
    if (sampler.kind == CoefficientSampler::Kind::Pinned) {
        if (sampler.pinned.size() != st.supports.size()) throw std::invalid_argument("pinned coefficients: wrong number of components");
        for (std::size_t i = 0; i < st.supports.size(); ++i) {
            if (sampler.pinned[i].size() != st.supports[i].size())
                throw std::invalid_argument("pinned coefficients: wrong number of terms");
            for (const auto& c : sampler.pinned[i])
                if (c == 0) throw std::invalid_argument("pinned coefficient is zero; the support would change");
        }
    }
    if (sampler.kind == CoefficientSampler::Kind::Choice) {
        if (sampler.choices.empty()) throw std::invalid_argument("empty coefficient choice list");
        for (const auto& c : sampler.choices)
            if (c == 0) throw std::invalid_argument("zero in the coefficient choice list");
    }
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::trial_seed(seed, t));
        std::vector<Polynomial> comps;
        for (std::size_t i = 0; i < st.supports.size(); ++i) {
            Polynomial f(n);
            for (std::size_t k = 0; k < st.supports[i].size(); ++k) {
                const Rational c = sampler.kind == CoefficientSampler::Kind::Pinned ? sampler.pinned[i][k]
                                                                                    : detail::draw_coefficient(sampler, rng, st.redraws);
                f.add_term(st.supports[i][k], c);
            }
            comps.push_back(std::move(f));
        }
        PolynomialMapping F(std::move(comps));
        CheckOptions opt = check;
        opt.search.seed = detail::trial_seed(check.search.seed, t);
        const auto rep = nondegenerate_at_infinity(F, opt);
        ++st.trials;
        switch (rep.verdict) {
        case Verdict::NonDegenerate: ++st.nondegenerate_count; break;
        case Verdict::Degenerate:
            ++st.degenerate_count;
            st.degenerate_instances.push_back(std::move(F));
            st.degenerate_trials.push_back(t);
            break;
        default: ++st.undecided_count; break;
        }
    }
    return st;
}

struct OpennessReport {
    double epsilon = 0.0;
    std::size_t trials = 0;
    std::size_t nondegenerate_count = 0;
    std::size_t degenerate_count = 0;
    std::size_t undecided_count = 0;
    std::size_t redraws = 0;  // perturbations rejected because a vertex coefficient changed sign
    std::uint64_t seed = 0;
    std::vector<PolynomialMapping> failures;

    bool redraw_policy_engaged() const { return redraws > 0; }
};

/// Jitters every coefficient of a non-degenerate F by uniform noise in
/// [−ε, ε] and counts how many perturbed mappings stay non-degenerate.
/// A draw that flips the sign of a coefficient at a vertex of Γ(f_i), or
/// zeroes any coefficient, is redrawn so the supports and polyhedra are kept.
inline OpennessReport openness_probe(const PolynomialMapping& F, double epsilon, std::size_t trials, std::uint64_t seed,
                                     const CheckOptions& check = {})
{
    if (!(epsilon > 0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be positive");
    if (nondegenerate_at_infinity(F, check).verdict != Verdict::NonDegenerate)
        throw std::invalid_argument("openness_probe needs a mapping verified non-degenerate at infinity");
    const std::size_t n = F.num_vars();
    OpennessReport rep;
    rep.epsilon = epsilon;
    rep.seed = seed;
    std::vector<PointSet> vertices;
    for (const auto& f : F.components()) vertices.push_back(newton_polyhedron(f).vertices());
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::trial_seed(seed, t));
        std::uniform_real_distribution<double> noise(-epsilon, epsilon);
        std::vector<Polynomial> comps;
        for (std::size_t i = 0; i < F.size(); ++i) {
            Polynomial g(n);
            for (const auto& [e, c] : F[i].terms()) {
                const bool vertex = std::find(vertices[i].begin(), vertices[i].end(), e) != vertices[i].end();
                Rational v;
                for (int attempt = 0;; ++attempt) {
                    if (attempt == 1000) throw std::runtime_error("openness_probe: epsilon too large to keep the vertex signs");
                    v = c + from_double(noise(rng));
                    if (v != 0 && (!vertex || (v > 0) == (c > 0))) break;
                    ++rep.redraws;
                }
                g.add_term(e, v);
            }
            comps.push_back(std::move(g));
        }
        PolynomialMapping G(std::move(comps));
        CheckOptions opt = check;
        opt.search.seed = detail::trial_seed(check.search.seed, t);
        const auto r = nondegenerate_at_infinity(G, opt);
        ++rep.trials;
        if (r.verdict == Verdict::NonDegenerate)
            ++rep.nondegenerate_count;
        else {
            (r.verdict == Verdict::Degenerate ? rep.degenerate_count : rep.undecided_count)++;
            rep.failures.push_back(std::move(G));
        }
    }
    return rep;
}

}  // namespace newtonloj
