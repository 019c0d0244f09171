#include "newtonloj/lattice.hpp"
#include "newtonloj/polynomial_io.hpp"
#include "instances.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace newtonloj;
using namespace instances;

TEST(Primitive, Examples)
{
    EXPECT_EQ(primitive({2, 2}), (IntVector{1, 1}));
    EXPECT_EQ(primitive({-4, 6}), (IntVector{-2, 3}));
    EXPECT_EQ(primitive({0, 5, 0}), (IntVector{0, 1, 0}));
    EXPECT_THROW(primitive({0, 0}), std::invalid_argument);
}

TEST(Completion, Examples)
{
    const PointSet s{{1, 0}, {0, 1}};
    const auto a = unimodular_complete({{1, 1}}, s, 2);
    EXPECT_EQ(a.rows, (std::vector<IntVector>{{1, 1}, {1, 0}}));
    EXPECT_EQ(oracle::leibniz_det(a.rows), -1);
    EXPECT_EQ(oracle::simplex_lattice_points(a.rows).size(), 3u);
    const auto b = unimodular_complete({{2, 2}}, s, 2);
    EXPECT_EQ(b.rows, a.rows);
    const auto id = unimodular_complete({}, PointSet{{3, 1, 2}}, 3);
    EXPECT_EQ(id.rows, (std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Completion, Errors)
{
    EXPECT_THROW(unimodular_complete({{1, 1}, {2, 2}}, {}, 2), std::invalid_argument);
    EXPECT_THROW(unimodular_complete({{1, -1}}, PointSet{{0, 1}}, 2), std::invalid_argument);
    EXPECT_THROW(unimodular_complete({{1, 1, 0}}, {}, 2), std::invalid_argument);
}

TEST(Completion, DescentReplacesInteriorPoints)
{
    // conv{0, (1,0), (1,3)} has lattice points (1,1), (1,2) besides its vertices.
    const auto b = unimodular_complete({{1, 0}, {1, 3}}, {}, 2);
    EXPECT_EQ(std::abs(static_cast<long>(oracle::leibniz_det(b.rows))), 1);
    EXPECT_EQ(b.rows.front(), (IntVector{1, 0}));
    ASSERT_FALSE(b.trace.empty());
    EXPECT_EQ(b.trace.front().cell, CellKind::Simplex);
    EXPECT_EQ(b.trace.front().extra_points_before, 2u);
}

TEST(Completion, ReeveTetrahedronNeedsParallelepipedStep)
{
    // conv{0, e1, e2, (1,1,5)} contains no other lattice point yet has volume 5.
    const std::vector<IntVector> q{{1, 0, 0}, {0, 1, 0}, {1, 1, 5}};
    EXPECT_EQ(oracle::simplex_lattice_points(q).size(), 4u);
    EXPECT_EQ(oracle::leibniz_det(q), 5);
    const auto b = unimodular_complete(q, {}, 3);
    bool used = false;
    for (const auto& s : b.trace) used = used || s.cell == CellKind::Parallelepiped;
    EXPECT_TRUE(used);
    EXPECT_EQ(check_completion({3, q, {}}, b), "");
}

TEST(Completion, RandomInstancesSatisfyAllProperties)
{
    std::mt19937_64 rng(61);
    for (int i = 0; i < 500; ++i) {
        const auto inst = random_completion_instance(rng);
        const auto b = unimodular_complete(inst.q_list, inst.support, inst.n);
        ASSERT_EQ(check_completion(inst, b), "") << "instance " << i;
        for (const auto& step : b.trace)
            if (step.cell == CellKind::Simplex) ASSERT_GT(step.extra_points_before, 0u);
    }
}

TEST(Cells, LatticePointsMatchOracle)
{
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<std::int64_t> e(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + i % 2;
        std::vector<IntVector> ws(n, IntVector(n));
        do
            for (auto& w : ws)
                for (auto& x : w) x = e(rng);
        while (oracle::leibniz_det(ws) == 0);
        auto mine = lattice_points_in_cell(ws, CellKind::Simplex);
        std::sort(mine.begin(), mine.end());
        ASSERT_EQ(mine, oracle::simplex_lattice_points(ws));
        // Half-open parallelepiped holds exactly |det| lattice points.
        ASSERT_EQ(Integer(lattice_points_in_cell(ws, CellKind::Parallelepiped).size()), abs(Rational(oracle::leibniz_det(ws))));
    }
}

TEST(Covectors, Examples)
{
    const auto a = affine_support_covectors(parse_mapping("x1*x2 + x1^2*x2^2", 2));
    EXPECT_EQ(a.q_list, (std::vector<IntVector>{{1, -1}}));
    EXPECT_EQ(a.d_matrix, (std::vector<std::vector<std::int64_t>>{{0}}));
    EXPECT_FALSE(a.needs_shift());

    const auto m = affine_support_covectors(parse_mapping("x1^2*x2", 2));
    EXPECT_EQ(m.dim, 0u);
    EXPECT_EQ(m.q_list.size(), 2u);

    EXPECT_THROW(affine_support_covectors(parse_mapping("x1 + x2 + 1", 2)), std::invalid_argument);
}

TEST(Covectors, ShiftMakesConstantsNonnegative)
{
    // Support on the line κ1 + 2 = κ2: the covector (1,-1) takes the value -2.
    const auto a = affine_support_covectors(parse_mapping("x2^2 + x1*x2^3", 2));
    ASSERT_EQ(a.q_list.size(), 1u);
    EXPECT_TRUE(a.needs_shift());
    EXPECT_EQ(a.shift_axis, 0u);
    EXPECT_EQ(a.shift, 2);
    const auto r = reduce_mapping(parse_mapping("x2^2 + x1*x2^3", 2));
    for (const auto& row : r.prefactors)
        for (auto v : row) EXPECT_GE(v, 0);
    EXPECT_TRUE(verify_reduction(r, 50, 1).passed());
}

TEST(Reduce, Examples)
{
    const auto r = reduce_mapping(parse_mapping("x1*x2 + x1^2*x2^2", 2));
    EXPECT_EQ(r.basis.rows, (std::vector<IntVector>{{1, -1}, {1, 0}}));
    EXPECT_EQ(r.reduced[0], parse_polynomial("x1 + x1^2", 1));
    EXPECT_EQ(r.prefactors, (std::vector<std::vector<std::int64_t>>{{0}}));
    EXPECT_EQ(r.shift, 0);

    const auto h = reduce_mapping(parse_mapping("x1*x2 - 1", 2));
    EXPECT_EQ(h.reduced[0], parse_polynomial("x1 - 1", 1));

    EXPECT_THROW(reduce_mapping(parse_mapping("x1^2 + x2^4 + 1", 2)), std::invalid_argument);

    const auto mono = reduce_mapping(parse_mapping("3*x1^2*x2", 2));
    EXPECT_EQ(mono.reduced.num_vars(), 0u);
    EXPECT_EQ(mono.reduced[0].size(), 1u);
    EXPECT_TRUE(verify_reduction(mono, 20, 2).passed());
}

TEST(Reduce, VerificationAndNegativeControl)
{
    const auto r = reduce_mapping(parse_mapping("x1*x2 + x1^2*x2^2", 2));
    const auto rep = verify_reduction(r, 100, 7);
    EXPECT_EQ(rep.value_pass, 100u);
    EXPECT_EQ(rep.rank_pass, 100u);
    EXPECT_TRUE(rep.passed());

    auto bad = r;
    for (auto& x : bad.basis.rows.back()) x *= 2;
    const auto neg = verify_reduction(bad, 100, 7);
    EXPECT_FALSE(neg.unimodular);
    EXPECT_LT(neg.value_pass, 100u);
    EXPECT_FALSE(neg.passed());
}

TEST(Reduce, RandomMappings)
{
    std::mt19937_64 rng(71);
    for (int i = 0; i < 100; ++i) {
        const auto F = random_degenerate_support_mapping(rng);
        const auto r = reduce_mapping(F);
        for (std::size_t k = 0; k < F.size(); ++k) ASSERT_EQ(r.reduced[k].size(), F[k].size());
        const auto rep = verify_reduction(r, 100, 1000 + i);
        ASSERT_TRUE(rep.passed()) << "instance " << i << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    }
}

TEST(Reduce, MonomialMapRoundTrip)
{
    // A^{-1} is integral, so u(x) = x^{A^{-1}} inverts x(u).
    const auto r = reduce_mapping(parse_mapping("x1*x2*x3 + x1^2*x2^3*x3^4", 3));
    RationalMatrix a(3, RationalVector(6, Rational(0)));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) a[i][j] = r.basis.rows[i][j];
        a[i][3 + i] = 1;
    }
    const auto inv = rref(a, 6);
    std::vector<IntVector> inverse(3, IntVector(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            ASSERT_TRUE(is_integer(inv.reduced[i][3 + j]));
            inverse[i][j] = to_int64(numerator_of(inv.reduced[i][3 + j]));
        }
    const RationalVector u{Rational(2, 3), Rational(-5, 2), Rational(7)};
    EXPECT_EQ(monomial_map(inverse, monomial_map(r.basis.rows, u)), u);
}
