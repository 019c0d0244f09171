#include "newtonloj/lojasiewicz.hpp"
#include "newtonloj/polynomial_io.hpp"

#include <gtest/gtest.h>

using namespace newtonloj;

namespace {

Polynomial P(const std::string& s) { return parse_polynomial(s, 2); }

const char* kGA = "(x1^2 - 1)^2 + (x1*x2 - 1)^2";
const char* kHA = "(x1^2 - 1)^2 + (x2^2 - 1)^2";
const char* kGB = "x1^2 + x2^4";
const char* kHB = "x1^2 + x2^2";

// On x1^2 + x2^4 = t put u = x2^2 in [0, √t]: h = t - u^2 + u.
double mu_b(double t)
{
    const double u = std::min(0.5, std::sqrt(t));
    return t - u * u + u;
}

}  // namespace

TEST(MuEstimate, Examples)
{
    EXPECT_NEAR(mu_estimate(P(kGB), P(kHB), 1e-4).value, 1e-2, 1e-2 * 1e-9);
    EXPECT_NEAR(mu_estimate(P(kGB), P(kHB), 1e4).value, 1e4 + 0.25, 1e4 * 1e-9);
    EXPECT_NEAR(mu_estimate(P(kGB), P(kGB), 3.5).value, 3.5, 3.5e-9);
    EXPECT_THROW(mu_estimate(P(kGB), P(kHB), 0.0), std::invalid_argument);
    EXPECT_THROW(mu_estimate(P(kGB), P(kHB), -1.0), std::invalid_argument);
}

TEST(MuEstimate, MatchesAnalyticSupremum)
{
    for (double t : geometric_grid(1e-6, 1e6, 25)) {
        const auto est = mu_estimate(P(kGB), P(kHB), t);
        ASSERT_TRUE(est.crossing_found);
        EXPECT_LE(est.value, mu_b(t) * (1 + 1e-9)) << t;
        EXPECT_GE(est.value, mu_b(t) * (1 - 1e-6)) << t;
        EXPECT_FALSE(est.growth_flag);
    }
}

TEST(MuEstimate, ExactOnTheDiagonal)
{
    const Polynomial g = P("x1^2*x2 - 3*x1 + x2^4 + 1/2");
    std::vector<double> ts = geometric_grid(1e-6, 1e-2, 12);
    const auto big = geometric_grid(1e2, 1e6, 12);
    ts.insert(ts.end(), big.begin(), big.end());
    for (double t : ts) {
        const auto est = mu_estimate(g, g, t);
        ASSERT_TRUE(est.crossing_found) << t;
        EXPECT_NEAR(est.value, t, 1e-9 * t) << t;
    }
}

TEST(MuEstimate, MonotoneInBudget)
{
    const Polynomial g = P("x1^2 + x1*x2 + 3*x2^4 - x2");
    const Polynomial h = P("x1^3 - x2^2 + x1*x2");
    for (double t : {1e-3, 0.5, 40.0}) {
        double prev = -1.0;
        for (std::size_t rays : {4, 8, 16, 32, 64}) {
            MuOptions o;
            o.rays = rays;
            o.seed = 9;
            const double v = mu_estimate(g, h, t, o).value;
            EXPECT_GE(v, prev) << t << " " << rays;
            prev = v;
        }
    }
}

TEST(MuEstimate, UnboundedLevelIsFlagged)
{
    // Along (s, 1/s) g stays near 1 while h blows up, so μ(1) is infinite.
    const auto est = mu_estimate(P(kGA), P(kHA), 1.0);
    EXPECT_TRUE(est.growth_flag);
}

TEST(FitExponents, Examples)
{
    const auto fb = fit_exponents(P(kGB), P(kHB));
    EXPECT_NEAR(fb.alpha, 0.5, 0.05);
    EXPECT_NEAR(fb.beta, 1.0, 0.1);
    EXPECT_GT(fb.c, 0.0);
    EXPECT_EQ(fb.small_grid.size(), 12u);
    EXPECT_EQ(fb.large_grid.size(), 12u);
    for (std::size_t k = 1; k < 12; ++k) EXPECT_GT(fb.small_grid[k].t, fb.small_grid[k - 1].t);

    const auto diag = fit_exponents(P(kGB), P(kGB));
    EXPECT_NEAR(diag.alpha, 1.0, 1e-6);
    EXPECT_NEAR(diag.beta, 1.0, 1e-6);

    const auto quartic = fit_exponents(P("x1^2 + x2^2"), P("(x1^2 + x2^2)^2"));
    EXPECT_NEAR(quartic.alpha, 2.0, 1e-6);
    EXPECT_NEAR(quartic.beta, 2.0, 1e-6);
    EXPECT_GT(quartic.small_fit.r_squared, 0.999999);
}

TEST(FitExponents, DegenerateRegressionThrows)
{
    // |g| >= 1 everywhere: no level |g| = t for t < 1.
    EXPECT_THROW(fit_exponents(P("x1^2 + x2^2 + 1"), P(kHB)), std::runtime_error);
}

TEST(VerifyInequality, Examples)
{
    const auto rb = verify_inequality(P(kGB), P(kHB), 0.5, 1.0, 1.0);
    EXPECT_TRUE(rb.holds());
    EXPECT_LE(rb.worst_ratio, 1.0);

    const auto diag = verify_inequality(P(kGB), P(kGB), 1.0, 1.0, 1.0);
    EXPECT_TRUE(diag.holds());
    EXPECT_LE(diag.worst_ratio, 1.0);

    // α too large near the origin: along x1 = 0, |h| = |g|^{1/2}.
    const auto bad = verify_inequality(P(kGB), P(kHB), 1.0, 1.0, 1.0);
    EXPECT_FALSE(bad.holds());

    EXPECT_THROW(verify_inequality(P(kGB), P(kHB), 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(VerifyInequality, PairACurveViolatesEveryTriple)
{
    const auto ev = hunt_sequences(P(kGA), P(kHA), SequenceKind::SecondType);
    ASSERT_TRUE(ev);
    VerifyConfig vc;
    vc.box_samples = 0;
    vc.level_rays = 0;
    vc.curves = {*ev};
    const auto samples = collect_inequality_samples(P(kGA), P(kHA), vc);
    int violated = 0, total = 0;
    for (int a = 1; a <= 30; ++a)
        for (int b = 1; b <= 30; ++b)
            for (int e = -6; e <= 0; ++e) {
                ++total;
                violated += !evaluate_inequality(samples, a / 10.0, b / 10.0, std::pow(10.0, e)).holds();
            }
    EXPECT_EQ(violated, total);
}

TEST(HuntSequences, PairASecondType)
{
    const Polynomial g = P(kGA), h = P(kHA);
    const auto ev = hunt_sequences(g, h, SequenceKind::SecondType);
    ASSERT_TRUE(ev);
    EXPECT_EQ(ev->q, (IntVector{1, -1}));
    EXPECT_EQ(ev->a, (Vec{1.0, 1.0}));
    const Vec x{1e-3, 1e3};
    EXPECT_LT(std::fabs(evaluate_float(g, x) - 1.0), 1e-3);
    EXPECT_GT(std::fabs(evaluate_float(h, x)), 1e6);
    EXPECT_FALSE(hunt_sequences(g, h, SequenceKind::FirstType));
}

TEST(HuntSequences, FirstTypeOnHyperbola)
{
    const auto ev = hunt_sequences(P("(x1*x2 - 1)^2"), P("x2^2"), SequenceKind::FirstType);
    ASSERT_TRUE(ev);
    EXPECT_EQ(ev->kind, SequenceKind::FirstType);
    EXPECT_LT(ev->q[1], 0);
}

TEST(HuntSequences, PairBExhausts)
{
    EXPECT_FALSE(hunt_sequences(P(kGB), P(kHB), SequenceKind::FirstType));
    EXPECT_FALSE(hunt_sequences(P(kGB), P(kHB), SequenceKind::SecondType));
}

TEST(HuntSequences, EvidenceRevalidates)
{
    const std::vector<std::tuple<std::string, std::string, SequenceKind>> cases{
        {kGA, kHA, SequenceKind::SecondType},
        {"(x1*x2 - 1)^2", "x2^2", SequenceKind::FirstType},
        {"(x1*x2^2 - 2)^2 + 1", "x2^3 + x1", SequenceKind::SecondType},
        {"(x1^2*x2 + x1 - 1)^2", "x1*x2", SequenceKind::FirstType},
    };
    for (const auto& [gs, hs, kind] : cases) {
        const Polynomial g = P(gs), h = P(hs);
        const auto ev = hunt_sequences(g, h, kind);
        ASSERT_TRUE(ev) << gs;
        const std::size_t m = ev->points.size();
        ASSERT_GE(m, 5u);
        // Recompute along the recorded curve instead of trusting the tables.
        std::vector<double> gv, hv;
        for (double s : ev->s) {
            const Vec x = curve_point(ev->q, ev->a, s);
            RationalVector xr;
            for (double v : x) xr.push_back(from_double(v));
            gv.push_back(std::fabs(to_double(evaluate_exact(g, xr))));
            hv.push_back(std::fabs(to_double(evaluate_exact(h, xr))));
        }
        if (kind == SequenceKind::FirstType) {
            for (std::size_t k = m - 5; k < m; ++k) EXPECT_LT(gv[k], 1e-6) << gs;
            for (double v : hv) EXPECT_GE(v, ev->delta) << gs;
        } else {
            for (std::size_t k = m - 4; k < m; ++k) EXPECT_GT(hv[k], hv[k - 1]) << gs;
            for (double v : gv) EXPECT_LE(v, ev->g_bound) << gs;
        }
        EXPECT_GT(norm2(ev->points.back()), norm2(ev->points.front()));
    }
}

TEST(SelfConsistency, FittedTripleHoldsOnFreshSamples)
{
    const std::vector<std::pair<std::string, std::string>> pairs{
        {kGB, kHB}, {kGB, kGB}, {"x1^2 + x2^2", "(x1^2 + x2^2)^2"}};
    for (const auto& [gs, hs] : pairs) {
        const Polynomial g = P(gs), h = P(hs);
        ASSERT_FALSE(hunt_sequences(g, h, SequenceKind::FirstType));
        ASSERT_FALSE(hunt_sequences(g, h, SequenceKind::SecondType));
        const auto fit = fit_exponents(g, h);
        VerifyConfig vc;
        vc.seed = 424242;
        vc.box_samples = 20000;
        vc.box_half_width = 10.0;
        const auto rep = verify_inequality(g, h, fit.alpha, fit.beta, fit.c, vc);
        EXPECT_TRUE(rep.holds()) << gs << " worst " << rep.worst_ratio << " from " << rep.worst_source;
    }
}

TEST(KtildeProbe, Examples)
{
    const std::vector<double> radii{10, 100, 1000, 10000};
    const auto lin = ktilde_probe(P("x1"), std::nullopt, radii);
    for (const auto& r : lin.radii) EXPECT_NEAR(r.min_gradient_norm, 1.0, 1e-12);
    EXPECT_EQ(lin.trend, KtildeTrend::BoundedAwayFromZero);

    const auto hyp = ktilde_probe(P("(x1*x2 - 1)^2"), std::nullopt, radii);
    for (const auto& r : hyp.radii) {
        ASSERT_TRUE(r.feasible);
        if (r.radius >= 100) {
            EXPECT_LT(r.min_gradient_norm, 1e-6) << r.radius;
            EXPECT_LT(std::fabs(r.f_value), 1e-8) << r.radius;
        }
    }
    EXPECT_EQ(hyp.trend, KtildeTrend::Decaying);

    const auto gb = ktilde_probe(P(kGB), std::nullopt, radii);
    for (const auto& r : gb.radii) {
        // min over the circle of sqrt(4 x1^2 + 16 x2^6), at x2^2 = 1/sqrt(12)
        const double u = 1.0 / std::sqrt(12.0);
        const double exact_min = std::sqrt(4 * (r.radius * r.radius - u) + 16 * u * u * u);
        EXPECT_GE(r.min_gradient_norm, r.radius);
        EXPECT_GE(r.min_gradient_norm, exact_min * (1 - 1e-9));
        EXPECT_LE(r.min_gradient_norm, exact_min * (1 + 1e-6));
    }
    EXPECT_EQ(gb.trend, KtildeTrend::BoundedAwayFromZero);
    ASSERT_TRUE(gb.growth_exponent);
    EXPECT_NEAR(*gb.growth_exponent, 1.0, 0.01);

    EXPECT_THROW(ktilde_probe(P("x1"), std::nullopt, {10, 5}), std::invalid_argument);
}

TEST(KtildeProbe, ConstrainedLevel)
{
    // f = x1 restricted to x2 = 1: the restricted gradient is (1, 0), never small.
    const auto rep = ktilde_probe(P("x1"), KtildeConstraint{P("x2"), 1.0}, {10, 100, 1000});
    for (const auto& r : rep.radii) {
        ASSERT_TRUE(r.feasible);
        EXPECT_NEAR(r.min_gradient_norm, 1.0, 1e-9);
        EXPECT_NEAR(r.point[1], 1.0, 1e-8);
    }
    // f = x2 on the level x2 = 1: f is constant there, restricted gradient vanishes.
    const auto flat = ktilde_probe(P("x2"), KtildeConstraint{P("x2"), 1.0}, {10, 100, 1000});
    for (const auto& r : flat.radii) EXPECT_LT(r.min_gradient_norm, 1e-12);
    // Level x1^2 + x2^2 = 1 does not meet the circle of radius 10.
    const auto infeasible = ktilde_probe(P("x1"), KtildeConstraint{P("x1^2 + x2^2"), 1.0}, {10});
    EXPECT_FALSE(infeasible.radii[0].feasible);
}

TEST(Multiplier, Examples)
{
    EXPECT_EQ(multiplier_for(0.5), 6);
    EXPECT_EQ(multiplier_for(1.0), 4);
    EXPECT_EQ(multiplier_for(0.3), 8);
    EXPECT_THROW(multiplier_for(0.0), std::invalid_argument);
    EXPECT_THROW(multiplier_for(1.5), std::invalid_argument);

    const auto rep = multiplier(P(kGB), P(kHB), 0.5);
    EXPECT_EQ(rep.N, 6);
    EXPECT_EQ(rep.ell, 3);
    EXPECT_TRUE(rep.bounded);
    EXPECT_LE(rep.max_ratio, 10.0);
    // Analytic: h^6/g^2 <= g (1 + √g)^6 from h <= √g + g; on the unit ball the max is 16/9 at |x| = 1, x2^2 = 1/2.
    EXPECT_LE(rep.max_ratio, 16.0 / 9.0 + 1e-9);
}
