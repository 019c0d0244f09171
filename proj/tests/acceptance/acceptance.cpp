// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include "newtonloj/newtonloj.hpp"

#include "instances.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace newtonloj;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome pair_a()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = reproduce_example31();
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "g convenient=" << r.g_convenient << " h convenient=" << r.h_convenient
      << " verdict=" << to_string(r.nondegeneracy.verdict) << " (" << to_string(r.nondegeneracy.mode) << ")";
    bool along_hyperbola = false;
    if (r.second_type) {
        along_hyperbola = r.second_type->kind == SequenceKind::SecondType && r.probe_point.size() == 2 &&
                          std::fabs(r.probe_point[0] - 1e-3) < 1e-15 && std::fabs(r.probe_point[1] - 1e3) < 1e-9;
        d << " curve q=(" << r.second_type->q[0] << "," << r.second_type->q[1] << ")"
          << fmt(" |g-1|=%.3g", std::fabs(r.g_at_probe - 1.0)) << fmt(" |h|=%.4g", std::fabs(r.h_at_probe));
    }
    d << " grid violated " << r.grid_violated << "/" << r.grid_total << fmt(" time %.2fs", secs);
    const bool pass = !r.g_convenient && r.h_convenient && r.nondegeneracy.verdict == Verdict::NonDegenerate &&
                      r.nondegeneracy.mode == CheckMode::Exact2D && along_hyperbola && r.probe_ok() &&
                      r.grid_total == 30u * 30u * 7u && r.grid_violated == r.grid_total && secs < 30.0;
    return {pass, d.str()};
}

Outcome pair_b()
{
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.box_samples = 1000000;
    cfg.box_half_width = 1e3;
    cfg.multiplier_samples = 100000;
    const auto r = reproduce_example32(cfg);
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << fmt("alpha=%.4f", r.fit.alpha) << fmt(" beta=%.4f", r.fit.beta) << " samples=" << r.inequality.samples
      << fmt(" worst ratio=%.12f", r.inequality.worst_ratio) << " N=" << r.multiplier.N
      << fmt(" max h^N/g^2=%.4g", r.multiplier.max_ratio) << " on " << r.multiplier.samples << fmt(" time %.2fs", secs);
    const bool pass = r.fit.alpha >= 0.45 && r.fit.alpha <= 0.55 && r.fit.beta >= 0.90 && r.fit.beta <= 1.10 &&
                      r.inequality.samples >= 1000000 && r.inequality.worst_ratio <= 1.0 + 1e-9 && r.inequality.holds() &&
                      r.multiplier.N == 6 && r.multiplier.samples == 100000 && r.multiplier.max_ratio <= 10.0 &&
                      secs < 60.0;
    return {pass, d.str()};
}

Outcome polyhedral_oracle()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> nd(1, 4);
    std::uniform_int_distribution<std::int64_t> qd(-6, 6), den(1, 3);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = nd(rng);
        const PointSet s = instances::random_support(rng, n, 12, 5);
        RationalVector q(n);
        for (auto& x : q) x = Rational(qd(rng), den(rng));
        const auto [d, arg] = oracle::brute_argmin(s, q);
        const Face f = d_and_face(q, newton_polyhedron(s));
        if (f.d != d || f.points != arg) ++mismatches;
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 10.0, std::to_string(mismatches) + " mismatches in 1000" + fmt(", %.2fs", secs)};
}

Outcome euler_relation()
{
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::size_t> nd(1, 3);
    int faces = 0, failures = 0;
    for (int i = 0; i < 100; ++i) {
        const Polynomial f = oracle::random_polynomial(rng, nd(rng), 12);
        const auto gamma = newton_polyhedron(f);
        for (const auto& face_vertices : all_faces(gamma)) {
            // the sum of the normals of the facets through a face realizes it
            IntVector q(f.num_vars(), 0);
            for (const auto& facet : gamma.facets())
                if (std::includes(facet.vertices.begin(), facet.vertices.end(), face_vertices.begin(), face_vertices.end()))
                    for (std::size_t j = 0; j < q.size(); ++j) q[j] += facet.normal[j];
            const Face face = d_and_face(q, gamma);
            PointSet expect;
            for (auto k : face_vertices) expect.push_back(gamma.vertices()[k]);
            std::sort(expect.begin(), expect.end());
            auto got = face.vertices();
            std::sort(got.begin(), got.end());
            ++faces;
            if (got != expect || !euler_residual(face_part(f, face), to_rational(q), face.d).is_zero()) ++failures;
        }
    }
    return {failures == 0, std::to_string(failures) + " failures over " + std::to_string(faces) + " faces"};
}

Outcome completion()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5005);
    int failures = 0;
    std::string first;
    for (int i = 0; i < 500; ++i) {
        const auto inst = instances::random_completion_instance(rng);
        std::string why;
        try {
            why = instances::check_completion(inst, unimodular_complete(inst.q_list, inst.support, inst.n));
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!why.empty()) {
            ++failures;
            if (first.empty()) first = " (first: " + why + ")";
        }
    }
    const double secs = seconds_since(t0);
    return {failures == 0 && secs < 60.0, std::to_string(failures) + " failures in 500" + first + fmt(", %.2fs", secs)};
}

Outcome reduction()
{
    std::mt19937_64 rng(6006);
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        const auto F = instances::random_degenerate_support_mapping(rng);
        const auto rep = verify_reduction(reduce_mapping(F), 100, 7000 + static_cast<std::uint64_t>(i));
        if (!rep.passed() || rep.samples != 100) ++failures;
    }
    auto bad = reduce_mapping(parse_mapping("x1*x2 + x1^2*x2^2 - 3; x1^3*x2^3", 2));
    for (auto& x : bad.basis.rows.back()) x *= 2;
    const bool control_fails = !verify_reduction(bad, 100, 1).passed();
    return {failures == 0 && control_fails,
            std::to_string(failures) + " failures in 100; corrupted-basis control " + (control_fails ? "fails" : "passes")};
}

Outcome degeneracy()
{
    std::ostringstream d;
    const auto rep = nondegenerate_at_infinity(PolynomialMapping({parse_polynomial("(x1 - x2)^2", 2)}));
    double residual = 1.0;
    if (rep.verdict == Verdict::Degenerate && rep.failing_subset && rep.failing_tuple) {
        const auto& ev = rep.subsets[*rep.failing_subset].tuples[*rep.failing_tuple].evidence;
        if (ev.witness) residual = std::max(ev.witness->max_value, ev.witness->max_minor);
    }
    d << "(x1-x2)^2 " << to_string(rep.verdict) << fmt(" witness residual=%.3g", residual);
    bool ok = rep.verdict == Verdict::Degenerate && residual < 1e-12;

    std::mt19937_64 rng(7007);
    std::uniform_int_distribution<int> num(-9, 9);
    int monomials = 0, bad = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        IntVector e(n, 0);
        for (;;) {
            int c = 0;
            while (c == 0) c = num(rng);
            Polynomial m(n);
            m.add_term(e, Rational(c));
            ++monomials;
            if (nondegenerate_at_infinity(PolynomialMapping({m})).verdict != Verdict::NonDegenerate) ++bad;
            std::size_t j = 0;
            while (j < n && ++e[j] > 3) e[j++] = 0;
            if (j == n) break;
        }
    }
    d << "; monomials " << monomials - bad << "/" << monomials << " NonDegenerate";
    ok = ok && bad == 0;

    CheckOptions exact;
    exact.mode = CheckMode::Exact2D;
    for (const auto& [g, h] : {std::pair{example31_g, example31_h}, std::pair{example32_g, example32_h}}) {
        const auto v = nondegenerate_at_infinity(PolynomialMapping({parse_polynomial(g, 2), parse_polynomial(h, 2)}), exact);
        d << "; pair " << to_string(v.verdict);
        ok = ok && v.verdict == Verdict::NonDegenerate;
    }
    return {ok, d.str()};
}

Outcome genericity()
{
    const std::vector<PointSet> supports{{{2, 0}, {0, 4}}, {{2, 0}, {0, 2}}};
    const auto st = genericity_trial(supports, CoefficientSampler::uniform(-1.0, 1.0), 1000, 8008);
    const PolynomialMapping pair({parse_polynomial(example32_g, 2), parse_polynomial(example32_h, 2)});
    const auto open = openness_probe(pair, 1e-6, 100, 8009);
    const auto pinned = genericity_trial({{{2, 0}, {1, 1}, {0, 2}}},
                                         CoefficientSampler::fixed({{Rational(1), Rational(-2), Rational(1)}}), 1, 1);
    std::ostringstream d;
    d << st.nondegenerate_count << "/" << st.trials << " NonDegenerate (" << to_string(st.mode) << ", "
      << st.degenerate_count << " degenerate, " << st.undecided_count << " undecided); openness "
      << open.nondegenerate_count << "/" << open.trials << "; pinned (1,-2,1) "
      << (pinned.degenerate_count == 1 ? "Degenerate" : "not flagged");
    const bool pass = st.trials == 1000 && st.mode == CheckMode::Exact2D && st.nondegenerate_count >= 990 &&
                      open.trials == 100 && open.nondegenerate_count == 100 && pinned.trials == 1 &&
                      pinned.degenerate_count == 1;
    return {pass, d.str()};
}

Outcome ktilde()
{
    std::ostringstream d;
    bool ok = true;
    const auto f = ktilde_probe(parse_polynomial("(x1*x2 - 1)^2", 2), std::nullopt, {100, 1000, 10000});
    for (const auto& r : f.radii) {
        ok = ok && r.feasible && r.min_gradient_norm < 1e-6 && std::fabs(r.f_value) < 1e-8;
        d << fmt("R=%g", r.radius) << fmt(": |grad f|=%.2g", r.min_gradient_norm) << fmt(" f=%.2g; ", r.f_value);
    }
    const auto g = ktilde_probe(parse_polynomial(example32_g, 2), std::nullopt, {10, 100, 1000});
    for (const auto& r : g.radii) {
        ok = ok && r.feasible && r.min_gradient_norm >= r.radius;
        d << fmt("R=%g", r.radius) << fmt(": |grad g|=%.4g; ", r.min_gradient_norm);
    }
    ok = ok && f.radii.size() == 3 && g.radii.size() == 3;
    return {ok, d.str()};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"worked pair A reproduction", pair_a},
        {"worked pair B reproduction", pair_b},
        {"d_and_face against brute force", polyhedral_oracle},
        {"Euler relation on every face", euler_relation},
        {"unimodular completion properties", completion},
        {"monomial reduction", reduction},
        {"degeneracy detection", degeneracy},
        {"genericity and openness", genericity},
        {"asymptotic critical value probes", ktilde},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
