#pragma once

// JSON forms of the report types. nlohmann::json keeps object keys sorted, so
// equal reports dump to equal bytes.

#include "newtonloj/face_enumeration.hpp"
#include "newtonloj/genericity.hpp"
#include "newtonloj/lattice.hpp"
#include "newtonloj/lojasiewicz.hpp"
#include "newtonloj/nondegeneracy.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial_io.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace newtonloj {

using json = nlohmann::json;

inline json rational_json(const Rational& r) { return to_string(r); }

inline json rational_vector_json(const RationalVector& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

template <class T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

inline json to_json(const NewtonPolyhedron& p)
{
    json facets = json::array();
    for (const auto& f : p.facets())
        facets.push_back({{"normal", f.normal}, {"offset", rational_json(f.offset)}, {"vertices", f.vertices}});
    return {{"ambient_dim", p.ambient_dim()}, {"dim", p.dim()}, {"vertices", p.vertices()}, {"facets", facets},
            {"convenient", is_convenient(p)}};
}

inline json to_json(const Face& f)
{
    return {{"points", f.points}, {"vertices", f.vertices()}, {"d", rational_json(f.d)}, {"witness_q", f.witness_q},
            {"dim", f.dim()}};
}

inline json to_json(const FaceTuple& t)
{
    json faces = json::array();
    for (const auto& f : t.faces) faces.push_back(to_json(f));
    json degs = json::array();
    for (const auto& d : t.degrees) degs.push_back(rational_json(d));
    return {{"faces", faces}, {"witness_q", t.witness_q}, {"degrees", degs}};
}

inline json to_json(const FaceTupleEnumeration& e)
{
    json tuples = json::array();
    for (const auto& t : e.tuples) tuples.push_back(to_json(t));
    return {{"tuples", tuples}, {"complete", e.complete}, {"samples", e.samples}};
}

inline const char* to_string(CellKind k) { return k == CellKind::Simplex ? "simplex" : "parallelepiped"; }

inline json to_json(const UnimodularBasis& b)
{
    json trace = json::array();
    for (const auto& s : b.trace)
        trace.push_back({{"index", s.index},
                         {"replaced_by", s.replaced_by},
                         {"cell", to_string(s.cell)},
                         {"extra_points_before", s.extra_points_before},
                         {"gram_before", rational_json(s.gram_before)}});
    return {{"n", b.n}, {"rows", b.rows}, {"extended", b.extended}, {"trace", trace}};
}

inline json to_json(const ReducedMapping& r)
{
    return {{"original", to_json(r.original)},
            {"basis", to_json(r.basis)},
            {"shift_axis", r.shift_axis},
            {"shift", r.shift},
            {"prefactors", r.prefactors},
            {"reduced", to_json(r.reduced)},
            {"dim", r.dim}};
}

inline json to_json(const ReductionCheck& c)
{
    return {{"samples", c.samples}, {"value_pass", c.value_pass}, {"rank_pass", c.rank_pass},
            {"unimodular", c.unimodular}, {"failures", c.failures}, {"passed", c.passed()}};
}

inline json to_json(const Witness& w)
{
    json j = {{"point", w.point}, {"max_value", w.max_value}, {"max_minor", w.max_minor}};
    j["exact_point"] = w.exact_point ? rational_vector_json(*w.exact_point) : json(nullptr);
    return j;
}

inline json to_json(const NondegeneracyReport& rep)
{
    json subsets = json::array();
    for (const auto& s : rep.subsets) {
        json tuples = json::array();
        for (const auto& t : s.tuples) {
            json polys = json::array();
            for (const auto& f : t.system.face_polys) polys.push_back(to_string(f));
            json degs = json::array();
            for (const auto& d : t.system.degrees) degs.push_back(rational_json(d));
            tuples.push_back({{"q", t.system.q},
                              {"degrees", degs},
                              {"face_polynomials", polys},
                              {"evidence", to_string(t.evidence.kind)},
                              {"reason", t.evidence.reason},
                              {"trials", t.evidence.trials},
                              {"witness", t.evidence.witness ? to_json(*t.evidence.witness) : json(nullptr)}});
        }
        subsets.push_back({{"subset", s.subset},
                           {"verdict", to_string(s.verdict)},
                           {"enumeration_complete", s.enumeration_complete},
                           {"tuples", tuples}});
    }
    return {{"verdict", to_string(rep.verdict)},
            {"mode", to_string(rep.mode)},
            {"subsets", subsets},
            {"failing_subset", optional_json(rep.failing_subset)},
            {"failing_tuple", optional_json(rep.failing_tuple)}};
}

inline json to_json(const MuEstimate& m)
{
    return {{"t", m.t}, {"value", m.value}, {"argmax", m.argmax}, {"crossing_found", m.crossing_found},
            {"crossings", m.crossings}, {"value_half_budget", m.value_half_budget}, {"growth_flag", m.growth_flag}};
}

inline json to_json(const GridPoint& p)
{
    return {{"t", p.t}, {"mu", p.mu}, {"argmax", p.argmax}, {"usable", p.usable}, {"growth_flag", p.growth_flag}};
}

inline json to_json(const Regression& r)
{
    return {{"slope", r.slope}, {"intercept", r.intercept}, {"slope_stderr", r.slope_stderr},
            {"r_squared", r.r_squared}, {"points", r.points}};
}

inline json to_json(const ExponentFit& f)
{
    json small = json::array(), large = json::array();
    for (const auto& p : f.small_grid) small.push_back(to_json(p));
    for (const auto& p : f.large_grid) large.push_back(to_json(p));
    return {{"alpha", f.alpha},         {"beta", f.beta},
            {"c", f.c},                 {"exponents", "fitted"},
            {"small_grid", small},      {"large_grid", large},
            {"small_fit", to_json(f.small_fit)}, {"large_fit", to_json(f.large_fit)},
            {"growth_flag", f.growth_flag}};
}

inline json to_json(const SequenceEvidence& ev)
{
    return {{"kind", to_string(ev.kind)},
            {"q", ev.q},
            {"a", ev.a},
            {"exact_a", ev.exact_a ? rational_vector_json(*ev.exact_a) : json(nullptr)},
            {"s", ev.s},
            {"points", ev.points},
            {"g_values", ev.g_values},
            {"h_values", ev.h_values},
            {"delta", ev.delta},
            {"g_bound", ev.g_bound}};
}

inline json to_json(const InequalityReport& r)
{
    return {{"alpha", r.alpha},
            {"beta", r.beta},
            {"c", r.c},
            {"samples", r.samples},
            {"worst_ratio", r.worst_ratio},
            {"worst_point", r.worst_point},
            {"worst_source", r.worst_source},
            {"first_violation", optional_json(r.first_violation)},
            {"holds", r.holds()}};
}

inline json to_json(const KtildeProbeReport& r)
{
    json radii = json::array();
    for (const auto& k : r.radii)
        radii.push_back({{"radius", k.radius},
                         {"feasible", k.feasible},
                         {"min_gradient_norm", k.min_gradient_norm},
                         {"f_value", k.f_value},
                         {"point", k.point},
                         {"lambda", optional_json(k.lambda)}});
    json c = nullptr;
    if (r.constraint) c = {{"h", to_string(r.constraint->h)}, {"r", r.constraint->r}};
    return {{"constraint", c}, {"radii", radii}, {"trend", to_string(r.trend)},
            {"growth_exponent", optional_json(r.growth_exponent)}};
}

inline json to_json(const MultiplierReport& r)
{
    return {{"ell", r.ell},           {"N", r.N},         {"samples", r.samples}, {"max_ratio", r.max_ratio},
            {"worst_point", r.worst_point}, {"bounded", r.bounded}, {"bound", r.bound}};
}

inline json to_json(const GenericityStats& s)
{
    json inst = json::array();
    for (std::size_t k = 0; k < s.degenerate_instances.size(); ++k)
        inst.push_back({{"trial", s.degenerate_trials[k]}, {"mapping", to_json(s.degenerate_instances[k])}});
    return {{"supports", s.supports},
            {"trials", s.trials},
            {"nondegenerate_count", s.nondegenerate_count},
            {"degenerate_count", s.degenerate_count},
            {"undecided_count", s.undecided_count},
            {"redraws", s.redraws},
            {"degenerate_instances", inst},
            {"seed", s.seed},
            {"mode", to_string(s.mode)},
            {"nondegenerate_fraction", s.nondegenerate_fraction()},
            {"note", "Monte-Carlo frequency; evidence for density, not a proof"}};
}

inline json to_json(const OpennessReport& r)
{
    json fails = json::array();
    for (const auto& F : r.failures) fails.push_back(to_json(F));
    return {{"epsilon", r.epsilon},
            {"trials", r.trials},
            {"nondegenerate_count", r.nondegenerate_count},
            {"degenerate_count", r.degenerate_count},
            {"undecided_count", r.undecided_count},
            {"redraws", r.redraws},
            {"redraw_policy_engaged", r.redraw_policy_engaged()},
            {"seed", r.seed},
            {"failures", fails}};
}

}  // namespace newtonloj
