#include <hexashrink/error.hpp>
#include <hexashrink/lift.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace hexashrink;
using hexashrink::testing::random_signal;

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    return std::int64_t(std::floor(double(a) / double(b)));
}

// Reference evaluation straight from the lifting equations, with the border
// details spelled out as separate cases.
LiftPair reference_analyze(const std::vector<std::int64_t>& z)
{
    const int n = int(z.size());
    LiftPair p;
    p.odd_length = n % 2 == 1;
    if (n == 1) {
        p.approx = {z[0]};
        return p;
    }
    if (n == 2) {
        p.approx = {z[0]};
        p.details = {z[1] - z[0]};
        return p;
    }
    const int nd = n / 2;
    const int na = (n + 1) / 2;
    std::vector<std::int64_t> d(nd);
    for (int m = 0; m < nd; ++m) {
        if (2 * m + 2 < n)
            d[m] = z[2 * m + 1] - floor_div(z[2 * m] + z[2 * m + 2], 2);
        else
            d[m] = -d[m - 1] + 4 * z[n - 1] - 4 * z[n - 2];
    }
    for (int m = 0; m < na; ++m) {
        const std::int64_t left = m == 0 ? -d[0] : d[m - 1];
        const std::int64_t right = m < nd ? d[m] : -d[nd - 1];
        p.approx.push_back(z[2 * m] + floor_div(left + right, 4));
    }
    p.details = d;
    return p;
}

}  // namespace

TEST(Lift, ConstantSignal)
{
    const std::vector<std::int64_t> z(5, 42);
    const auto p = analyze_1d(z);
    EXPECT_EQ(p.approx, (std::vector<std::int64_t>{42, 42, 42}));
    EXPECT_EQ(p.details, (std::vector<std::int64_t>{0, 0}));
}

TEST(Lift, OddExample)
{
    const std::vector<std::int64_t> z = {10, 12, 14, 20, 30};
    const auto p = analyze_1d(z);
    EXPECT_EQ(p, reference_analyze(z));
    EXPECT_EQ(p.approx, (std::vector<std::int64_t>{10, 13, 30}));
    EXPECT_EQ(p.details, (std::vector<std::int64_t>{0, -2}));
    EXPECT_TRUE(p.odd_length);
    EXPECT_EQ(synthesize_1d({{10, 13, 30}, {0, -2}, true}), z);
}

TEST(Lift, EvenExample)
{
    const std::vector<std::int64_t> z = {0, 0, 8, 8};
    const auto p = analyze_1d(z);
    EXPECT_EQ(p, reference_analyze(z));
    EXPECT_EQ(p.approx, (std::vector<std::int64_t>{0, 8}));
    EXPECT_EQ(p.details, (std::vector<std::int64_t>{-4, 4}));
    EXPECT_EQ(synthesize_1d(p), z);
}

TEST(Lift, DegenerateLengths)
{
    const auto one = analyze_1d(std::vector<std::int64_t>{7});
    EXPECT_EQ(one.approx, (std::vector<std::int64_t>{7}));
    EXPECT_TRUE(one.details.empty());

    const auto two = analyze_1d(std::vector<std::int64_t>{3, 9});
    EXPECT_EQ(two.approx, (std::vector<std::int64_t>{3}));
    EXPECT_EQ(two.details, (std::vector<std::int64_t>{6}));
    EXPECT_EQ(synthesize_1d(two), (std::vector<std::int64_t>{3, 9}));
}

TEST(Lift, MatchesReferenceAndRoundTrips)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> len(1, 65);
    for (int t = 0; t < 1000000; ++t) {
        const int n = len(rng);
        const auto z = random_signal(rng, n, -1000000, 1000000);
        const auto p = analyze_1d(z);
        ASSERT_EQ(p.length(), std::size_t(n));
        ASSERT_EQ(p.approx.size(), std::size_t((n + 1) / 2));
        if (t < 20000)
            ASSERT_EQ(p, reference_analyze(z));
        ASSERT_EQ(synthesize_1d(p), z);
    }
}

TEST(Lift, BordersPinned)
{
    std::mt19937_64 rng(6);
    for (int n = 1; n <= 65; ++n) {
        for (int t = 0; t < 200; ++t) {
            const auto z = random_signal(rng, n, -5000, 5000);
            const auto p = analyze_1d(z);
            EXPECT_EQ(p.approx.front(), z.front());
            if (n != 2)
                EXPECT_EQ(p.approx.back(), z.back()) << "n=" << n;
        }
    }
}

TEST(Lift, LinearRampDetailsAreRoundingOnly)
{
    for (int n = 3; n <= 65; ++n) {
        for (std::int64_t alpha : {-7, -1, 1, 3, 1000}) {
            std::vector<std::int64_t> z(n);
            for (int s = 0; s < n; ++s)
                z[s] = alpha * s;
            const auto p = analyze_1d(z);
            // The stored last detail of an even length is the border-pinning
            // value, not a prediction residual.
            const std::size_t raw = n % 2 == 1 ? p.details.size() : p.details.size() - 1;
            for (std::size_t m = 0; m < raw; ++m)
                EXPECT_TRUE(p.details[m] == 0 || p.details[m] == -1) << "n=" << n << " alpha=" << alpha;
        }
    }
}

TEST(Lift, AccessorFormsAgree)
{
    std::mt19937_64 rng(8);
    for (int n = 1; n <= 40; ++n) {
        const auto z = random_signal(rng, n, -100000, 100000);
        const auto p = analyze_1d(z);
        auto sample = [&](int s) { return z[s]; };
        for (int m = 0; m < int(p.details.size()); ++m)
            EXPECT_EQ(lift_detail_at(sample, n, m), p.details[m]);
        for (int m = 0; m < int(p.approx.size()); ++m)
            EXPECT_EQ(lift_approx_at(sample, n, m), p.approx[m]);
    }
}

TEST(Lift, CorruptPair)
{
    EXPECT_THROW(synthesize_1d({{1, 2}, {}, true}), Error);
    EXPECT_THROW(synthesize_1d({{1}, {1, 2}, false}), Error);
}

TEST(NodeLine, PlanShapes)
{
    const NodeLinePlan even(4);
    EXPECT_EQ(even.lifted(), 5);
    EXPECT_EQ(even.coarse_nodes(), 3);
    EXPECT_EQ(even.details(), 2);
    EXPECT_FALSE(even.has_passthrough());

    const NodeLinePlan odd(5);
    EXPECT_EQ(odd.lifted(), 5);
    EXPECT_EQ(odd.coarse_nodes(), 4);
    EXPECT_EQ(odd.details(), 2);
    EXPECT_TRUE(odd.has_passthrough());
    EXPECT_EQ(odd.fine_of_coarse(3), 5);

    for (int cells = 1; cells <= 40; ++cells) {
        const NodeLinePlan p(cells);
        EXPECT_EQ(p.coarse_nodes() + p.details(), p.nodes());
        EXPECT_EQ(p.coarse_nodes(), (cells + 1) / 2 + 1);
    }
}

TEST(NodeLine, RoundTrip)
{
    std::mt19937_64 rng(9);
    for (int cells = 1; cells <= 33; ++cells) {
        const NodeLinePlan plan(cells);
        for (int t = 0; t < 100; ++t) {
            const auto fine = random_signal(rng, plan.nodes(), -1 << 20, 1 << 20);
            std::vector<std::int64_t> coarse(plan.coarse_nodes()), details(plan.details()), back(plan.nodes());
            analyze_node_line(fine, coarse, details);
            for (int K = 0; K < plan.coarse_nodes(); ++K)
                if (K == 0 || K == plan.coarse_nodes() - 1)
                    EXPECT_EQ(coarse[K], fine[plan.fine_of_coarse(K)]);
            synthesize_node_line(coarse, details, back);
            ASSERT_EQ(back, fine);
        }
    }
}

TEST(Axis, ConstantPlane)
{
    IntArray a(7, 5);
    for (auto& v : a.data)
        v = 13;
    for (int axis : {0, 1}) {
        const auto s = analyze_axis(a, axis);
        for (auto v : s.approx.data)
            EXPECT_EQ(v, 13);
        for (auto v : s.details.data)
            EXPECT_EQ(v, 0);
    }
}

TEST(Axis, BilinearRampSeparable)
{
    // Odd extents, so every stored detail is a prediction residual.
    IntArray a(9, 7);
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 9; ++i)
            a.at(i, j) = 5 * i - 3 * j + 2 * i * j;
    const auto along_i = analyze_axis(a, 0);
    for (auto v : along_i.details.data)
        EXPECT_LE(std::abs(v), 1);
    const auto along_j = analyze_axis(along_i.approx, 1);
    for (auto v : along_j.details.data)
        EXPECT_LE(std::abs(v), 1);
    EXPECT_EQ(synthesize_axis(along_i, 0), a);
    EXPECT_EQ(synthesize_axis(along_j, 1), along_i.approx);
}

TEST(Axis, RandomRoundTrip)
{
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> ext(1, 12);
    for (int t = 0; t < 300; ++t) {
        IntArray a(ext(rng), ext(rng), ext(rng));
        a.data = random_signal(rng, int(a.data.size()), -50000, 50000);
        for (int axis = 0; axis < 3; ++axis) {
            EXPECT_EQ(synthesize_axis(analyze_axis(a, axis), axis), a);
            if (a.extent[axis] >= 2)
                EXPECT_EQ(synthesize_node_axis(analyze_node_axis(a, axis), axis), a);
        }
    }
}
