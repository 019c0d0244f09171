#include "newtonloj/face_enumeration.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial_io.hpp"
#include "instances.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace newtonloj;
using namespace instances;

namespace {

PointSet sorted(PointSet s)
{
    std::sort(s.begin(), s.end());
    return s;
}

/// Vertices by exhaustive search for covectors with a unique minimizer.
PointSet vertices_by_scan(const PointSet& pts, std::size_t n, std::int64_t range)
{
    std::set<IntVector> out;
    IntVector q(n, -range);
    for (;;) {
        RationalVector qr(q.begin(), q.end());
        auto [d, arg] = oracle::brute_argmin(pts, qr);
        if (arg.size() == 1) out.insert(arg.front());
        std::size_t j = n;
        while (j > 0 && q[j - 1] == range) {
            q[j - 1] = -range;
            --j;
        }
        if (j == 0) break;
        ++q[j - 1];
    }
    if (out.empty()) out.insert(pts.front());  // a single point has no unique-minimizer covector other than q = 0
    return {out.begin(), out.end()};
}

}  // namespace

TEST(Hull, PairA)
{
    const auto g = newton_polyhedron(parse_polynomial("(x1^2 - 1)^2 + (x1*x2 - 1)^2", 2));
    EXPECT_EQ(sorted(g.vertices()), (PointSet{{0, 0}, {2, 2}, {4, 0}}));
    EXPECT_EQ(g.dim(), 2u);
    EXPECT_EQ(g.facets().size(), 3u);
    for (const auto& f : g.facets())
        for (const auto& k : g.generators()) EXPECT_GE(dot(f.normal, to_rational(k)), f.offset);
}

TEST(Hull, PointAndSegment)
{
    const auto p = newton_polyhedron(PointSet{{3, 5}});
    EXPECT_EQ(p.dim(), 0u);
    EXPECT_EQ(p.vertices(), (PointSet{{3, 5}}));
    const auto s = newton_polyhedron(PointSet{{2, 0}, {0, 2}});
    EXPECT_EQ(s.dim(), 1u);
    EXPECT_EQ(sorted(s.vertices()), (PointSet{{0, 2}, {2, 0}}));
}

TEST(Hull, Errors)
{
    EXPECT_THROW(newton_polyhedron(PointSet{}), std::invalid_argument);
    EXPECT_THROW(newton_polyhedron(PointSet{{1, -1}}), std::invalid_argument);
    EXPECT_THROW(newton_polyhedron(PointSet{{1, 1}, {1}}), std::invalid_argument);
    EXPECT_THROW(newton_polyhedron(Polynomial(2)), std::invalid_argument);
}

TEST(Hull, VerticesMatchScan2D)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const PointSet s = random_support(rng, 2, 9, 4);
        const auto g = newton_polyhedron(s);
        ASSERT_EQ(sorted(g.vertices()), vertices_by_scan(s, 2, 9));
        ASSERT_EQ(newton_polyhedron(g.vertices()), g);  // idempotence
    }
}

TEST(Hull, VerticesMatchScan3D)
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 60; ++i) {
        const PointSet s = random_support(rng, 3, 8, 2);
        const auto g = newton_polyhedron(s);
        ASSERT_EQ(sorted(g.vertices()), vertices_by_scan(s, 3, 7));
        for (const auto& k : s) ASSERT_TRUE(g.contains(k));
        ASSERT_EQ(g.dim(), affine_dimension(s));
    }
}

TEST(DAndFace, Examples)
{
    const auto g = newton_polyhedron(parse_polynomial("(x1^2 - 1)^2 + (x1*x2 - 1)^2", 2));
    const Face e = d_and_face(IntVector{-1, -1}, g);
    EXPECT_EQ(e.d, -4);
    EXPECT_EQ(e.points, (PointSet{{2, 2}, {4, 0}}));
    EXPECT_EQ(e.dim(), 1u);
    const Face v = d_and_face(IntVector{0, -1}, g);
    EXPECT_EQ(v.d, -2);
    EXPECT_EQ(v.points, (PointSet{{2, 2}}));
    const Face o = d_and_face(IntVector{1, 1}, g);
    EXPECT_EQ(o.d, 0);
    EXPECT_EQ(o.points, (PointSet{{0, 0}}));
    const Face whole = d_and_face(IntVector{0, 0}, g);
    EXPECT_EQ(whole.d, 0);
    EXPECT_EQ(whole.points, g.generators());
    EXPECT_EQ(d_and_face(RationalVector{Rational(-2), Rational(-2)}, g).witness_q, (IntVector{-1, -1}));
}

TEST(DAndFace, MatchesBruteForce)
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> nd(1, 4);
    std::uniform_int_distribution<std::int64_t> qd(-6, 6);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = nd(rng);
        const PointSet s = random_support(rng, n, 10, 5);
        RationalVector q(n);
        for (auto& x : q) x = Rational(qd(rng), 1 + (qd(rng) + 6) % 3);
        const auto [d, arg] = oracle::brute_argmin(s, q);
        const Face f = d_and_face(q, newton_polyhedron(s));
        ASSERT_EQ(f.d, d);
        ASSERT_EQ(f.points, arg);
    }
}

TEST(Convenient, Examples)
{
    EXPECT_FALSE(is_convenient(newton_polyhedron(parse_polynomial("(x1^2 - 1)^2 + (x1*x2 - 1)^2", 2))));
    EXPECT_TRUE(is_convenient(newton_polyhedron(parse_polynomial("(x1^2 - 1)^2 + (x2^2 - 1)^2", 2))));
    EXPECT_TRUE(is_convenient(newton_polyhedron(parse_polynomial("x1^2 + x2^2", 2))));
    EXPECT_FALSE(is_convenient(newton_polyhedron(parse_polynomial("x1^2 + x2^2 + 1", 3))));
}

TEST(Minkowski, Examples)
{
    const auto a = newton_polyhedron(PointSet{{2, 0}, {0, 4}});
    const auto b = newton_polyhedron(PointSet{{2, 0}, {0, 2}});
    const auto s = minkowski_sum(a, b);
    EXPECT_EQ(sorted(s.vertices()), (PointSet{{0, 6}, {2, 2}, {2, 4}, {4, 0}}));
    EXPECT_EQ(s.dim(), 2u);

    const auto t = minkowski_sum(a, newton_polyhedron(PointSet{{1, 1}}));
    EXPECT_EQ(sorted(t.vertices()), (PointSet{{1, 5}, {3, 1}}));
    EXPECT_EQ(t.dim(), 1u);

    const auto seg = minkowski_sum(newton_polyhedron(PointSet{{0, 0}, {1, 1}}), newton_polyhedron(PointSet{{0, 0}, {2, 2}}));
    EXPECT_EQ(seg.dim(), 1u);
    EXPECT_EQ(sorted(seg.vertices()), (PointSet{{0, 0}, {3, 3}}));
    EXPECT_THROW(minkowski_sum(a, newton_polyhedron(PointSet{{1, 1, 1}})), std::invalid_argument);
}

TEST(Minkowski, DimensionAndTranslation)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const PointSet s1 = random_support(rng, 3, 5, 3), s2 = random_support(rng, 3, 5, 3);
        const auto a = newton_polyhedron(s1), b = newton_polyhedron(s2);
        ASSERT_GE(minkowski_sum(a, b).dim(), std::max(a.dim(), b.dim()));
        PointSet shifted = s1;
        for (auto& p : shifted) p[0] += 3;
        const auto t = newton_polyhedron(shifted);
        ASSERT_EQ(t.dim(), a.dim());
        ASSERT_EQ(t.facets().size(), a.facets().size());
        ASSERT_EQ(t.vertices().size(), a.vertices().size());
    }
}

TEST(IntegerPoints, Examples)
{
    EXPECT_EQ(integer_points(newton_polyhedron(PointSet{{2, 0}, {0, 2}})), (PointSet{{0, 2}, {1, 1}, {2, 0}}));
    EXPECT_EQ(integer_points(newton_polyhedron(PointSet{{0, 0}, {2, 0}, {0, 2}})).size(), 6u);
    EXPECT_EQ(integer_points(newton_polyhedron(PointSet{{1, 2, 3}})), (PointSet{{1, 2, 3}}));
}

TEST(FaceTuples, PairB)
{
    const auto g = newton_polyhedron(PointSet{{2, 0}, {0, 4}});
    const auto h = newton_polyhedron(PointSet{{2, 0}, {0, 2}});
    const auto e = enumerate_negative_face_tuples({g, h});
    EXPECT_TRUE(e.complete);
    ASSERT_EQ(e.tuples.size(), 5u);
    std::set<std::pair<PointSet, PointSet>> got;
    for (const auto& t : e.tuples) got.insert({t.faces[0].points, t.faces[1].points});
    const std::set<std::pair<PointSet, PointSet>> want = {
        {{{2, 0}}, {{2, 0}}},
        {{{0, 4}, {2, 0}}, {{2, 0}}},
        {{{0, 4}}, {{2, 0}}},
        {{{0, 4}}, {{0, 2}, {2, 0}}},
        {{{0, 4}}, {{0, 2}}},
    };
    EXPECT_EQ(got, want);
}

TEST(FaceTuples, TriangleAndPoint)
{
    EXPECT_TRUE(enumerate_negative_face_tuples({newton_polyhedron(PointSet{{0, 0}})}).tuples.empty());
    const auto e = enumerate_negative_face_tuples({newton_polyhedron(PointSet{{0, 0}, {2, 0}, {0, 2}})});
    ASSERT_EQ(e.tuples.size(), 3u);
    std::set<PointSet> got;
    for (const auto& t : e.tuples) got.insert(t.faces[0].points);
    EXPECT_EQ(got, (std::set<PointSet>{{{2, 0}}, {{0, 2}}, {{0, 2}, {2, 0}}}));
}

TEST(FaceTuples, Errors)
{
    EXPECT_THROW(enumerate_negative_face_tuples({}), std::invalid_argument);
    EXPECT_THROW(enumerate_negative_face_tuples({newton_polyhedron(PointSet{{1, 1}}), newton_polyhedron(PointSet{{1, 1, 1}})}),
                 std::invalid_argument);
    EXPECT_THROW(enumerate_negative_face_tuples({newton_polyhedron(PointSet{{1, 1, 1, 1, 1}})}), std::invalid_argument);
    const auto s = enumerate_negative_face_tuples({newton_polyhedron(PointSet{{1, 1, 1, 1, 1}, {2, 0, 0, 0, 0}})},
                                                  EnumerationMode::Sampled, 2000, 3);
    EXPECT_FALSE(s.complete);
    EXPECT_FALSE(s.tuples.empty());
}

TEST(FaceTuples, MatchesCovectorScan)
{
    // Every tuple seen by scanning small covectors must be enumerated, and vice versa.
    std::mt19937_64 rng(51);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + (i % 2);
        const std::int64_t range = n == 2 ? 12 : 6;
        const std::size_t p = 1 + (i / 2) % 2;
        std::vector<NewtonPolyhedron> polys;
        for (std::size_t k = 0; k < p; ++k) polys.push_back(newton_polyhedron(random_support(rng, n, 5, 3)));
        const auto e = enumerate_negative_face_tuples(polys);
        std::set<std::vector<PointSet>> enumerated, scanned;
        for (const auto& t : e.tuples) {
            std::vector<PointSet> key;
            for (std::size_t k = 0; k < p; ++k) {
                const auto [d, arg] = oracle::brute_argmin(polys[k].generators(), to_rational(t.witness_q));
                ASSERT_LT(d, 0);
                ASSERT_EQ(arg, t.faces[k].points);
                key.push_back(arg);
            }
            enumerated.insert(key);
        }
        IntVector q(n, -range);
        for (;;) {
            std::vector<PointSet> key;
            bool neg = true;
            for (const auto& g : polys) {
                const auto [d, arg] = oracle::brute_argmin(g.generators(), to_rational(q));
                neg = neg && d < 0;
                key.push_back(arg);
            }
            if (neg) scanned.insert(key);
            std::size_t j = n;
            while (j > 0 && q[j - 1] == range) {
                q[j - 1] = -range;
                --j;
            }
            if (j == 0) break;
            ++q[j - 1];
        }
        // Small-range scans can miss cones that contain only long covectors; in the plane the range is ample.
        for (const auto& key : scanned) ASSERT_TRUE(enumerated.count(key)) << "instance " << i;
        if (n == 2) ASSERT_EQ(enumerated, scanned) << "instance " << i;
    }
}
