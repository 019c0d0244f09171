#pragma once

// The two worked pairs (g, h) in the plane:
//   A: g = (x1^2 − 1)^2 + (x1 x2 − 1)^2,  h = (x1^2 − 1)^2 + (x2^2 − 1)^2
//      g is not convenient; along x = (s, 1/s) g stays near 1 while h blows
//      up, so no inequality |g|^α + |g|^β >= c|h| can hold.
//   B: g = x1^2 + x2^4,  h = x1^2 + x2^2
//      |g|^{1/2} + |g| >= |h|, and h^6 = g·f0 with f0 continuous.

#include "newtonloj/lojasiewicz.hpp"
#include "newtonloj/nondegeneracy.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial_io.hpp"
#include "newtonloj/report_json.hpp"
#include "newtonloj/run_config.hpp"

#include <cmath>
#include <optional>

namespace newtonloj {

inline constexpr const char* example31_g = "(x1^2 - 1)^2 + (x1*x2 - 1)^2";
inline constexpr const char* example31_h = "(x1^2 - 1)^2 + (x2^2 - 1)^2";
inline constexpr const char* example32_g = "x1^2 + x2^4";
inline constexpr const char* example32_h = "x1^2 + x2^2";

struct Example31Report {
    Polynomial g, h;
    bool g_convenient = true, h_convenient = false;
    NondegeneracyReport nondegeneracy;
    std::optional<SequenceEvidence> second_type;
    bool first_type_found = false;
    Vec probe_point;  // on the second-type curve at s = 1e-3
    double g_at_probe = 0.0, h_at_probe = 0.0;
    std::size_t grid_total = 0, grid_violated = 0;

    bool probe_ok() const { return second_type && std::fabs(g_at_probe - 1.0) < 1e-3 && std::fabs(h_at_probe) > 1e6; }
    bool claims_hold() const
    {
        return !g_convenient && h_convenient && nondegeneracy.verdict == Verdict::NonDegenerate && probe_ok() &&
               grid_total > 0 && grid_violated == grid_total;
    }
};

inline Example31Report reproduce_example31(const RunConfig& cfg = {})
{
    Example31Report rep;
    rep.g = parse_polynomial(example31_g, 2);
    rep.h = parse_polynomial(example31_h, 2);
    rep.g_convenient = is_convenient(newton_polyhedron(rep.g));
    rep.h_convenient = is_convenient(newton_polyhedron(rep.h));
    CheckOptions opt;
    opt.mode = CheckMode::Exact2D;
    rep.nondegeneracy = nondegenerate_at_infinity(PolynomialMapping({rep.g, rep.h}), opt);

    HuntConfig hc;
    hc.seed = cfg.seed;
    hc.delta = cfg.hunt_delta;
    rep.second_type = hunt_sequences(rep.g, rep.h, SequenceKind::SecondType, hc);
    rep.first_type_found = hunt_sequences(rep.g, rep.h, SequenceKind::FirstType, hc).has_value();
    if (!rep.second_type) return rep;

    rep.probe_point = curve_point(rep.second_type->q, rep.second_type->a, 1e-3);
    rep.g_at_probe = evaluate_float(rep.g, rep.probe_point);
    rep.h_at_probe = evaluate_float(rep.h, rep.probe_point);

    VerifyConfig vc;
    vc.box_samples = 0;
    vc.level_rays = 0;
    vc.curves = {*rep.second_type};
    const auto samples = collect_inequality_samples(rep.g, rep.h, vc);
    for (int a = 1; a <= 30; ++a)
        for (int b = 1; b <= 30; ++b)
            for (int e = -6; e <= 0; ++e) {
                ++rep.grid_total;
                if (!evaluate_inequality(samples, a / 10.0, b / 10.0, std::pow(10.0, e), cfg.inequality_tolerance).holds())
                    ++rep.grid_violated;
            }
    return rep;
}

struct Example32Report {
    Polynomial g, h;
    bool g_convenient = false;
    NondegeneracyReport nondegeneracy;
    ExponentFit fit;
    InequalityReport inequality;  // (α, β, c) = (1/2, 1, 1)
    MultiplierReport multiplier;
    bool first_type_found = false, second_type_found = false;

    bool alpha_ok() const { return fit.alpha >= 0.45 && fit.alpha <= 0.55; }
    bool beta_ok() const { return fit.beta >= 0.90 && fit.beta <= 1.10; }
    bool claims_hold() const
    {
        return alpha_ok() && beta_ok() && inequality.holds() && multiplier.N == 6 && multiplier.bounded &&
               nondegeneracy.verdict == Verdict::NonDegenerate;
    }
};

inline Example32Report reproduce_example32(const RunConfig& cfg = {})
{
    Example32Report rep;
    rep.g = parse_polynomial(example32_g, 2);
    rep.h = parse_polynomial(example32_h, 2);
    rep.g_convenient = is_convenient(newton_polyhedron(rep.g));
    CheckOptions opt;
    opt.mode = CheckMode::Exact2D;
    rep.nondegeneracy = nondegenerate_at_infinity(PolynomialMapping({rep.g, rep.h}), opt);

    FitConfig fc;
    fc.mu.rays = cfg.mu_rays;
    fc.mu.seed = cfg.seed;
    rep.fit = fit_exponents(rep.g, rep.h, fc);

    HuntConfig hc;
    hc.seed = cfg.seed;
    hc.delta = cfg.hunt_delta;
    rep.first_type_found = hunt_sequences(rep.g, rep.h, SequenceKind::FirstType, hc).has_value();
    rep.second_type_found = hunt_sequences(rep.g, rep.h, SequenceKind::SecondType, hc).has_value();

    VerifyConfig vc;
    vc.box_samples = cfg.box_samples;
    vc.box_half_width = cfg.box_half_width;
    vc.level_rays = cfg.level_rays;
    vc.seed = cfg.seed;
    vc.tolerance = cfg.inequality_tolerance;
    rep.inequality = verify_inequality(rep.g, rep.h, 0.5, 1.0, 1.0, vc);

    MultiplierConfig mc;
    mc.samples = cfg.multiplier_samples;
    mc.bound = cfg.multiplier_bound;
    mc.seed = cfg.seed;
    // the exponent the inequality was verified with, not the fitted one
    rep.multiplier = multiplier(rep.g, rep.h, 0.5, mc);
    return rep;
}

inline nlohmann::json to_json(const Example31Report& r)
{
    return {{"g", to_string(r.g)},
            {"h", to_string(r.h)},
            {"g_convenient", r.g_convenient},
            {"h_convenient", r.h_convenient},
            {"nondegeneracy", to_json(r.nondegeneracy)},
            {"second_type_evidence", r.second_type ? to_json(*r.second_type) : nlohmann::json(nullptr)},
            {"first_type_found", r.first_type_found},
            {"probe", {{"s", 1e-3}, {"x", r.probe_point}, {"g", r.g_at_probe}, {"h", r.h_at_probe}, {"ok", r.probe_ok()}}},
            {"inequality_grid",
             {{"alpha", "0.1..3 step 0.1"}, {"beta", "0.1..3 step 0.1"}, {"c", "1e-6..1 by decades"},
              {"total", r.grid_total}, {"violated", r.grid_violated}}},
            {"claims",
             {{"g_not_convenient", !r.g_convenient},
              {"h_convenient", r.h_convenient},
              {"pair_nondegenerate", r.nondegeneracy.verdict == Verdict::NonDegenerate},
              {"second_type_found", r.probe_ok()},
              {"grid_all_violated", r.grid_total > 0 && r.grid_violated == r.grid_total},
              {"all", r.claims_hold()}}}};
}

inline nlohmann::json to_json(const Example32Report& r)
{
    return {{"g", to_string(r.g)},
            {"h", to_string(r.h)},
            {"g_convenient", r.g_convenient},
            {"nondegeneracy", to_json(r.nondegeneracy)},
            {"fit", to_json(r.fit)},
            {"inequality", to_json(r.inequality)},
            {"multiplier", to_json(r.multiplier)},
            {"first_type_found", r.first_type_found},
            {"second_type_found", r.second_type_found},
            {"claims",
             {{"alpha_near_half", r.alpha_ok()},
              {"beta_near_one", r.beta_ok()},
              {"inequality_half_one_one_holds", r.inequality.holds()},
              {"N_is_6", r.multiplier.N == 6 && r.multiplier.bounded},
              {"pair_nondegenerate", r.nondegeneracy.verdict == Verdict::NonDegenerate},
              {"all", r.claims_hold()}}}};
}

}  // namespace newtonloj
