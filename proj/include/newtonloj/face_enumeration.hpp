#pragma once

// Enumeration of the face tuples (Δ(q, Γ_1), ..., Δ(q, Γ_p)) realized by
// covectors q with d(q, Γ_i) < 0 for every i.
//
// The common refinement of the normal fans of the Γ_i is the normal fan of
// their Minkowski sum P, so every tuple corresponds to a face F of P. For each
// face we look for a q in the relative interior of its normal cone that also
// satisfies the strict inequalities d_i(q) < 0, by exact linear programming.

#include "newtonloj/exact_linalg.hpp"
#include "newtonloj/polyhedra.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace newtonloj {

enum class EnumerationMode { Exact, Sampled };

struct FaceTupleEnumeration {
    std::vector<FaceTuple> tuples;  // sorted canonical order
    bool complete = true;           // false for sampled enumeration
    std::size_t samples = 0;
};

/// All faces of a polytope as sorted vertex-index sets, the polytope itself included.
inline std::vector<std::vector<std::size_t>> all_faces(const NewtonPolyhedron& p)
{
    std::vector<std::size_t> everything(p.vertices().size());
    for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;
    std::set<std::vector<std::size_t>> found{everything};
    std::vector<std::vector<std::size_t>> frontier;
    for (const auto& f : p.facets())
        if (found.insert(f.vertices).second) frontier.push_back(f.vertices);
    std::vector<std::vector<std::size_t>> facets;
    for (const auto& f : p.facets()) facets.push_back(f.vertices);
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& a : frontier)
            for (const auto& b : facets) {
                std::vector<std::size_t> c;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
                if (!c.empty() && found.insert(c).second) next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }
    return {found.begin(), found.end()};
}

namespace detail {

inline FaceTuple tuple_at(const IntVector& q, const std::vector<NewtonPolyhedron>& polys)
{
    FaceTuple t;
    t.witness_q = q;
    for (const auto& g : polys) {
        t.faces.push_back(d_and_face(q, g));
        t.degrees.push_back(t.faces.back().d);
    }
    return t;
}

inline bool all_negative(const FaceTuple& t)
{
    return std::all_of(t.degrees.begin(), t.degrees.end(), [](const Rational& d) { return d < 0; });
}

}  // namespace detail

inline FaceTupleEnumeration enumerate_negative_face_tuples(const std::vector<NewtonPolyhedron>& polys,
                                                           EnumerationMode mode = EnumerationMode::Exact,
                                                           std::size_t samples = 20000, std::uint64_t seed = 1)
{
    if (polys.empty()) throw std::invalid_argument("no polyhedra given");
    const std::size_t n = polys.front().ambient_dim();
    for (const auto& g : polys)
        if (g.ambient_dim() != n) throw std::invalid_argument("polyhedra have different ambient dimensions");

    FaceTupleEnumeration out;
    std::set<FaceTuple> found;

    if (mode == EnumerationMode::Sampled) {
        out.complete = false;
        out.samples = samples;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> coord(-6, 6);
        for (std::size_t s = 0; s < samples; ++s) {
            IntVector q(n);
            bool zero = true;
            for (auto& x : q) {
                x = coord(rng);
                zero = zero && x == 0;
            }
            if (zero) continue;
            q = primitive_integer(to_rational(q));
            FaceTuple t = detail::tuple_at(q, polys);
            if (detail::all_negative(t)) found.insert(std::move(t));
        }
        out.tuples.assign(found.begin(), found.end());
        return out;
    }

    if (n > 4) throw std::invalid_argument("exact face-tuple enumeration supports n <= 4; use sampled mode");

    const NewtonPolyhedron sum = minkowski_sum(polys);
    const auto& verts = sum.vertices();
    for (const auto& face : all_faces(sum)) {
        // Relative interior of the normal cone of the face.
        RationalMatrix equalities, strict;
        const auto& v0 = verts[face.front()];
        for (std::size_t i = 1; i < face.size(); ++i) {
            RationalVector row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rational(verts[face[i]][j] - v0[j]);
            equalities.push_back(std::move(row));
        }
        std::size_t pos = 0;
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (pos < face.size() && face[pos] == v) {
                ++pos;
                continue;
            }
            RationalVector row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rational(verts[v][j] - v0[j]);
            strict.push_back(std::move(row));
        }
        const auto q0 = cone_interior_point(equalities, strict, n);
        if (!q0) continue;
        // Faces Δ(q, Γ_i) are constant on the relative interior; add d_i(q) < 0.
        for (const auto& g : polys) {
            const Face fi = d_and_face(*q0, g);
            RationalVector row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rational(-fi.points.front()[j]);
            strict.push_back(std::move(row));
        }
        const auto q = cone_interior_point(equalities, strict, n);
        if (!q) continue;
        FaceTuple t = detail::tuple_at(primitive_integer(*q), polys);
        if (!detail::all_negative(t)) throw std::logic_error("face-tuple witness lost negativity");
        found.insert(std::move(t));
    }
    out.tuples.assign(found.begin(), found.end());
    return out;
}

}  // namespace newtonloj
