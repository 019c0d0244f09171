#pragma once

// Newton polyhedra: exact convex hulls of finite sets of lattice points,
// supporting faces Δ(q, Γ) with values d(q, Γ), convenience, Minkowski sums
// and lattice points.

#include "newtonloj/exact_linalg.hpp"
#include "newtonloj/polynomial.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace newtonloj {

using PointSet = std::vector<IntVector>;

struct Facet {
    IntVector normal;  // primitive, points into the polyhedron
    Rational offset;   // <normal, κ> >= offset on the polyhedron
    std::vector<std::size_t> vertices;  // indices into NewtonPolyhedron::vertices()

    friend bool operator==(const Facet& a, const Facet& b) { return a.normal == b.normal && a.offset == b.offset; }
};

class NewtonPolyhedron {
    struct Data {
        std::size_t n = 0;
        PointSet generators;
        PointSet vertices;
        std::vector<Facet> facets;
        RationalMatrix directions;  // row basis of the linear space parallel to the affine hull
        std::size_t dim = 0;
    };

public:
    NewtonPolyhedron() = default;

    /// Convex hull of a nonempty set of points of Z^n_+.
    static NewtonPolyhedron from_points(PointSet points)
    {
        if (points.empty()) throw std::invalid_argument("Newton polyhedron of an empty support (zero polynomial)");
        const std::size_t n = points.front().size();
        for (const auto& p : points) {
            if (p.size() != n) throw std::invalid_argument("support points have different dimensions");
            for (auto x : p)
                if (x < 0) throw std::invalid_argument("support point with a negative coordinate");
        }
        return hull(std::move(points));
    }

    std::size_t ambient_dim() const { return data_->n; }
    std::size_t dim() const { return data_->dim; }
    const PointSet& generators() const { return data_->generators; }
    const PointSet& vertices() const { return data_->vertices; }
    const std::vector<Facet>& facets() const { return data_->facets; }
    const RationalMatrix& directions() const { return data_->directions; }

    /// Exact membership test for a rational point.
    bool contains(const RationalVector& x) const
    {
        const auto& d = *data_;
        if (x.size() != d.n) return false;
        RationalVector diff(d.n);
        for (std::size_t j = 0; j < d.n; ++j) diff[j] = x[j] - d.vertices.front()[j];
        if (d.dim == 0) {
            for (const auto& v : diff)
                if (v != 0) return false;
            return true;
        }
        if (d.dim < d.n) {
            RationalMatrix stacked = d.directions;
            stacked.push_back(diff);
            if (rank(stacked) != d.dim) return false;
        }
        for (const auto& f : d.facets)
            if (dot(f.normal, x) < f.offset) return false;
        return true;
    }

    bool contains(const IntVector& x) const { return contains(to_rational(x)); }

    friend bool operator==(const NewtonPolyhedron& a, const NewtonPolyhedron& b)
    {
        return a.ambient_dim() == b.ambient_dim() && a.vertices() == b.vertices();
    }

private:
    static NewtonPolyhedron hull(PointSet points)
    {
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());

        auto data = std::make_shared<Data>();
        data->n = points.front().size();
        data->generators = points;
        const std::size_t n = data->n;

        RationalMatrix diffs;
        for (std::size_t i = 1; i < points.size(); ++i) {
            RationalVector d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = Rational(points[i][j] - points[0][j]);
            diffs.push_back(std::move(d));
        }
        if (!diffs.empty()) data->directions = rref(diffs, n).reduced;
        data->dim = data->directions.size();
        const std::size_t k = data->dim;

        if (k == 0) {
            data->vertices = {points.front()};
            NewtonPolyhedron p;
            p.data_ = std::move(data);
            return p;
        }

        // Facets: every k-subset of affinely independent points spans a candidate
        // hyperplane inside the affine hull; keep those with all points on one side.
        struct RawFacet {
            IntVector normal;
            std::int64_t offset;
        };
        std::vector<RawFacet> raw;
        std::set<IntVector> seen;
        const std::size_t m = points.size();
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        auto on_known_facet = [&]() {
            for (const auto& f : raw) {
                bool all = true;
                for (auto i : idx)
                    if (dot(f.normal, points[i]) != f.offset) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
            return false;
        };
        for (;;) {
            if (!on_known_facet()) {
                // Normal a = Σ y_r B_r with <a, p_il - p_i0> = 0.
                RationalMatrix sys;
                for (std::size_t l = 1; l < k; ++l) {
                    RationalVector row(k);
                    for (std::size_t r = 0; r < k; ++r) {
                        Rational s(0);
                        for (std::size_t j = 0; j < n; ++j)
                            s += data->directions[r][j] * (points[idx[l]][j] - points[idx[0]][j]);
                        row[r] = s;
                    }
                    sys.push_back(std::move(row));
                }
                const RationalMatrix ker = nullspace(sys, k);
                if (ker.size() == 1) {
                    RationalVector a(n, Rational(0));
                    for (std::size_t r = 0; r < k; ++r)
                        for (std::size_t j = 0; j < n; ++j) a[j] += ker[0][r] * data->directions[r][j];
                    IntVector normal = primitive_integer(a);
                    const std::int64_t b = dot(normal, points[idx[0]]);
                    bool ge = true, le = true;
                    for (const auto& p : points) {
                        const std::int64_t v = dot(normal, p);
                        if (v < b) ge = false;
                        if (v > b) le = false;
                        if (!ge && !le) break;
                    }
                    if (ge || le) {
                        if (!ge)
                            for (auto& x : normal) x = -x;
                        const std::int64_t off = ge ? b : -b;
                        if (seen.insert(normal).second) raw.push_back({normal, off});
                    }
                }
            }
            // next k-combination
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t r = pos; r < k; ++r) idx[r] = idx[r - 1] + 1;
        }

        // Vertices: points whose incident facet normals span the direction space.
        for (const auto& p : points) {
            std::vector<IntVector> normals;
            for (const auto& f : raw)
                if (dot(f.normal, p) == f.offset) normals.push_back(f.normal);
            if (normals.size() >= k && rank(normals) == k) data->vertices.push_back(p);
        }
        std::sort(raw.begin(), raw.end(), [](const RawFacet& a, const RawFacet& b) { return a.normal < b.normal; });
        for (const auto& f : raw) {
            Facet facet{f.normal, Rational(f.offset), {}};
            for (std::size_t v = 0; v < data->vertices.size(); ++v)
                if (dot(f.normal, data->vertices[v]) == f.offset) facet.vertices.push_back(v);
            data->facets.push_back(std::move(facet));
        }
        NewtonPolyhedron p;
        p.data_ = std::move(data);
        return p;
    }

    std::shared_ptr<const Data> data_ = std::make_shared<Data>();
};

inline NewtonPolyhedron newton_polyhedron(const PointSet& support) { return NewtonPolyhedron::from_points(support); }

inline NewtonPolyhedron newton_polyhedron(const Polynomial& f)
{
    if (f.is_zero()) throw std::invalid_argument("the zero polynomial has no Newton polyhedron");
    return NewtonPolyhedron::from_points(f.support());
}

/// Affine dimension of a point set (−1 is never returned; empty sets throw).
inline std::size_t affine_dimension(const PointSet& points)
{
    if (points.empty()) throw std::invalid_argument("affine dimension of an empty set");
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        IntVector d(points[i].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    return diffs.empty() ? 0 : rank(diffs);
}

/// The face Δ(q, Γ) together with d(q, Γ) and a primitive witness covector.
struct Face {
    NewtonPolyhedron parent;
    PointSet points;     // generators κ of Γ with <q, κ> = d, sorted
    IntVector witness_q; // primitive; zero vector for q = 0
    Rational d;

    std::size_t dim() const { return affine_dimension(points); }

    PointSet vertices() const
    {
        PointSet out;
        for (const auto& v : parent.vertices())
            if (std::binary_search(points.begin(), points.end(), v)) out.push_back(v);
        return out;
    }

    friend bool operator==(const Face& a, const Face& b) { return a.points == b.points; }
    friend bool operator<(const Face& a, const Face& b) { return a.points < b.points; }
};

/// Primitive integer representative of a rational covector (zero stays zero).
inline IntVector primitive_covector(const RationalVector& q)
{
    for (const auto& x : q)
        if (x != 0) return primitive_integer(q);
    return IntVector(q.size(), 0);
}

inline Face d_and_face(const RationalVector& q, const NewtonPolyhedron& gamma)
{
    if (q.size() != gamma.ambient_dim()) throw std::invalid_argument("covector dimension mismatch");
    Face face;
    face.parent = gamma;
    face.witness_q = primitive_covector(q);
    bool first = true;
    for (const auto& k : gamma.generators()) {
        const Rational v = dot(k, q);
        if (first || v < face.d) {
            face.d = v;
            face.points.clear();
            first = false;
        }
        if (v == face.d) face.points.push_back(k);
    }
    return face;
}

inline Face d_and_face(const IntVector& q, const NewtonPolyhedron& gamma) { return d_and_face(to_rational(q), gamma); }

/// True iff Γ meets every coordinate axis away from the origin.
inline bool is_convenient(const NewtonPolyhedron& gamma)
{
    // Γ ⊂ R^n_+, so Γ ∩ (axis j) is the hull of the generators on that axis.
    const std::size_t n = gamma.ambient_dim();
    for (std::size_t j = 0; j < n; ++j) {
        bool hit = false;
        for (const auto& k : gamma.generators()) {
            bool on_axis = k[j] > 0;
            for (std::size_t i = 0; i < n && on_axis; ++i)
                if (i != j && k[i] != 0) on_axis = false;
            if (on_axis) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

inline NewtonPolyhedron minkowski_sum(const NewtonPolyhedron& a, const NewtonPolyhedron& b)
{
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("Minkowski sum of different dimensions");
    PointSet sums;
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) {
            IntVector s(u.size());
            for (std::size_t j = 0; j < s.size(); ++j) s[j] = u[j] + v[j];
            sums.push_back(std::move(s));
        }
    return NewtonPolyhedron::from_points(std::move(sums));
}

inline NewtonPolyhedron minkowski_sum(const std::vector<NewtonPolyhedron>& list)
{
    if (list.empty()) throw std::invalid_argument("Minkowski sum of an empty list");
    NewtonPolyhedron acc = list.front();
    for (std::size_t i = 1; i < list.size(); ++i) acc = minkowski_sum(acc, list[i]);
    return acc;
}

/// Γ ∩ Z^n by bounding-box scan with exact membership, in lexicographic order.
inline PointSet integer_points(const NewtonPolyhedron& gamma)
{
    const std::size_t n = gamma.ambient_dim();
    IntVector lo = gamma.vertices().front(), hi = lo;
    for (const auto& v : gamma.vertices())
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    PointSet out;
    IntVector p = lo;
    auto advance = [&]() {
        for (std::size_t j = n; j-- > 0;) {
            if (p[j] < hi[j]) {
                ++p[j];
                for (std::size_t r = j + 1; r < n; ++r) p[r] = lo[r];
                return true;
            }
        }
        return false;
    };
    do {
        if (gamma.contains(p)) out.push_back(p);
    } while (advance());
    return out;
}

/// Terms of f whose exponents lie in the face.
inline Polynomial face_part(const Polynomial& f, const Face& face)
{
    if (f.is_zero()) throw std::invalid_argument("face_part of the zero polynomial");
    const auto support = f.support();
    if (face.parent.generators() != support)
        throw std::invalid_argument("face is not a face of the Newton polyhedron of f");
    return filter_terms(f, [&](const Exponent& e) { return std::binary_search(face.points.begin(), face.points.end(), e); });
}

/// Face tuple (Δ(q, Γ_1), ..., Δ(q, Γ_p)) realized by one covector.
struct FaceTuple {
    std::vector<Face> faces;
    IntVector witness_q;
    std::vector<Rational> degrees;

    friend bool operator==(const FaceTuple& a, const FaceTuple& b) { return a.faces == b.faces; }
    friend bool operator<(const FaceTuple& a, const FaceTuple& b) { return a.faces < b.faces; }
};

}  // namespace newtonloj
