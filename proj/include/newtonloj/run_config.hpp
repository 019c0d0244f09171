#pragma once

// Run configuration and the report envelope shared by the command-line tool
// and the reproduction drivers. Every report carries the full configuration,
// the tool version and a hash of its input, so a run can be replayed.

#include "newtonloj/face_enumeration.hpp"
#include "newtonloj/nondegeneracy.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#ifndef NEWTONLOJ_VERSION
#define NEWTONLOJ_VERSION "0.0.0"
#endif

namespace newtonloj {

inline constexpr const char* report_schema = "newtonloj.report/1";

struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    double epsilon = 1e-6;
    std::string mode = "auto";  // auto | exact | search | sampled
    std::optional<std::size_t> budget;

    // Budgets; --budget overrides the one that matters for the subcommand.
    std::size_t mu_rays = 64;
    std::size_t search_attempts = 400;
    std::size_t enumeration_samples = 20000;
    std::size_t box_samples = 1000000;
    double box_half_width = 1e3;
    std::size_t level_rays = 32;
    std::size_t multiplier_samples = 100000;
    std::size_t ktilde_starts = 24;

    // Tolerance overrides.
    double inequality_tolerance = 1e-9;
    double multiplier_bound = 10.0;
    double hunt_delta = 1e-3;

    std::string out;  // empty: stdout
};

inline nlohmann::json to_json(const RunConfig& c)
{
    return {{"seed", c.seed},
            {"trials", c.trials},
            {"epsilon", c.epsilon},
            {"mode", c.mode},
            {"budget", c.budget ? nlohmann::json(*c.budget) : nlohmann::json(nullptr)},
            {"mu_rays", c.mu_rays},
            {"search_attempts", c.search_attempts},
            {"enumeration_samples", c.enumeration_samples},
            {"box_samples", c.box_samples},
            {"box_half_width", c.box_half_width},
            {"level_rays", c.level_rays},
            {"multiplier_samples", c.multiplier_samples},
            {"ktilde_starts", c.ktilde_starts},
            {"inequality_tolerance", c.inequality_tolerance},
            {"multiplier_bound", c.multiplier_bound},
            {"hunt_delta", c.hunt_delta},
            {"out", c.out}};
}

/// Non-degeneracy options implied by the configured mode.
inline CheckOptions check_options(const RunConfig& c)
{
    CheckOptions opt;
    opt.search.seed = c.seed;
    opt.search.attempts = c.search_attempts;
    opt.samples = c.enumeration_samples;
    if (c.mode == "exact")
        opt.mode = CheckMode::Exact2D;
    else if (c.mode == "search")
        opt.mode = CheckMode::WitnessSearch;
    else if (c.mode == "sampled")
        opt.enumeration = EnumerationMode::Sampled;
    else if (c.mode != "auto")
        throw std::invalid_argument("unknown mode: " + c.mode);
    return opt;
}

inline std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline nlohmann::json report_envelope(const std::string& command, const RunConfig& cfg, const nlohmann::json& input,
                                      nlohmann::json report)
{
    return {{"tool", "newtonloj"},
            {"version", NEWTONLOJ_VERSION},
            {"schema", report_schema},
            {"command", command},
            {"config", to_json(cfg)},
            {"input", input},
            {"input_hash", "fnv1a64:" + hex64(fnv1a64(input.dump()))},
            {"report", std::move(report)}};
}

}  // namespace newtonloj
