#include <hexashrink/error.hpp>
#include <hexashrink/grid.hpp>

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace hexashrink;

TEST(GridDims, CoarsenHalvesUpward)
{
    EXPECT_EQ(coarsen({80, 45, 26}), (GridDims{40, 23, 13}));
    EXPECT_EQ(coarsen({40, 23, 13}), (GridDims{20, 12, 7}));
    EXPECT_EQ(coarsen({20, 12, 7}), (GridDims{10, 6, 4}));
    EXPECT_EQ(coarsen({10, 6, 4}), (GridDims{5, 3, 2}));
    EXPECT_EQ(coarsen({1, 1, 1}), (GridDims{1, 1, 1}));
}

TEST(GridDims, MaxLevels)
{
    EXPECT_EQ(max_levels({100, 100, 100}), 7);
    EXPECT_EQ(max_levels({1, 1, 1}), 1);
    EXPECT_EQ(max_levels({64, 64, 64}), 7);
    EXPECT_EQ(max_levels({80, 45, 26}), 7);

    GridDims d{100, 100, 100};
    for (int l = 0; l < max_levels({100, 100, 100}); ++l)
        d = coarsen(d);
    EXPECT_EQ(d, (GridDims{1, 1, 1}));
}

TEST(GridDims, NodeLattice)
{
    const GridDims d{5, 4, 3};
    EXPECT_EQ(d.nodes_i(), 6);
    EXPECT_EQ(d.nodes_j(), 5);
    EXPECT_EQ(d.nodes_k(), 4);
    EXPECT_EQ(d.node_count(), 120u);
}

TEST(Quantize, Rounding)
{
    EXPECT_EQ(quantize_value(1234.5678, 1000), 1234568);
    EXPECT_EQ(quantize_value(0.2345, 1000000), 234500);
    EXPECT_EQ(quantize_value(-0.0005, 1000), -1);
    EXPECT_THROW(quantize_value(1e30, 1000), Error);
}

TEST(Quantize, HalfUlpBound)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> x(-5000, 5000);
    for (int t = 0; t < 100000; ++t) {
        const double v = x(rng);
        EXPECT_LE(std::abs(dequantize_value(quantize_value(v, 1000), 1000) - v), 0.5e-3 + 1e-12);
    }
}

TEST(NodeZ, SingleCellLayout)
{
    const GridDims d{1, 1, 1};
    const std::vector<std::int64_t> zcorn = {0, 0, 0, 0, 100, 100, 100, 100};
    const auto conv = zcorn_to_nodez(zcorn, d);
    EXPECT_FALSE(conv.top_z);
    for (int j = 0; j <= 1; ++j)
        for (int i = 0; i <= 1; ++i) {
            // The one present quadrant is the cell column diagonal to the node.
            const int q = (1 - i) + 2 * (1 - j);
            EXPECT_TRUE(quadrant_present(d, i, j, q));
            EXPECT_EQ(conv.field.at(i, j, 0, q), 0);
            EXPECT_EQ(conv.field.at(i, j, 1, q), 100);
        }
    EXPECT_EQ(nodez_to_zcorn(conv.field, d), zcorn);
}

TEST(NodeZ, LatticeExtent)
{
    const GridDims d{5, 4, 3};
    const auto conv = zcorn_to_nodez(std::vector<std::int64_t>(8 * d.cell_count(), 7), d);
    EXPECT_EQ(conv.field.nx, 6);
    EXPECT_EQ(conv.field.ny, 5);
    EXPECT_EQ(conv.field.nz, 4);
}

TEST(NodeZ, FaultedCentralNode)
{
    // West column of cells at 10..110, east column thrown down to 20..120.
    const GridDims d{2, 2, 1};
    std::vector<std::int64_t> zc(8 * d.cell_count());
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            for (int c = 0; c < 4; ++c)
                for (int b = 0; b < 2; ++b)
                    zc[zcorn_index(d, i, j, 0, c & 1, c >> 1, b)] = 10 * (i + 1) + 100 * b;
    const auto f = zcorn_to_nodez(zc, d).field;
    EXPECT_EQ(f.at(1, 1, 0, SW), 10);
    EXPECT_EQ(f.at(1, 1, 0, NW), 10);
    EXPECT_EQ(f.at(1, 1, 0, SE), 20);
    EXPECT_EQ(f.at(1, 1, 0, NE), 20);
    const auto back = nodez_to_zcorn(f, d);
    for (int cj = 0; cj < 2; ++cj) {
        EXPECT_EQ(back[zcorn_index(d, 0, cj, 0, 1, 1 - cj, 0)], 10);  // west cells at the central pillar
        EXPECT_EQ(back[zcorn_index(d, 1, cj, 0, 0, 1 - cj, 0)], 20);  // east cells
    }
    EXPECT_EQ(back, zc);
}

TEST(NodeZ, ConstantLayersRepeatFourFold)
{
    const GridDims d{3, 2, 2};
    NodeZField f(4, 3, 3);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 4; ++i)
                for (int q = 0; q < 4; ++q)
                    f.at(i, j, k, q) = 1000 + 50 * k;
    const auto zc = nodez_to_zcorn(f, d);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 3; ++i)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 4; ++c)
                        EXPECT_EQ(zc[zcorn_index(d, i, j, k, c & 1, c >> 1, b)], 1000 + 50 * (k + b));
}

TEST(NodeZ, RandomConsistentRoundTrip)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> dim(1, 4);
        const GridDims d{dim(rng), dim(rng), dim(rng)};
        // Each cell column gets its own corner depths per interface, so the
        // layout exercises faults in every direction.
        std::vector<std::int64_t> zc(8 * d.cell_count());
        std::uniform_int_distribution<std::int64_t> step(0, 50);
        for (int j = 0; j < d.nj; ++j)
            for (int i = 0; i < d.ni; ++i)
                for (int c = 0; c < 4; ++c) {
                    std::int64_t z = step(rng) * 10;
                    for (int k = 0; k < d.nk; ++k) {
                        zc[zcorn_index(d, i, j, k, c & 1, c >> 1, 0)] = z;
                        z += step(rng);
                        zc[zcorn_index(d, i, j, k, c & 1, c >> 1, 1)] = z;
                    }
                }
        const auto conv = zcorn_to_nodez(zc, d);
        EXPECT_EQ(nodez_to_zcorn(conv.field, d), zc);
    }
}

TEST(NodeZ, HorizontalGapPolicy)
{
    const GridDims d{1, 1, 2};
    std::vector<std::int64_t> zc = {0, 0, 0, 0, 10, 10, 10, 10, 12, 12, 12, 12, 20, 20, 20, 20};
    EXPECT_THROW(
        {
            try {
                zcorn_to_nodez(zc, d);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::HorizontalFaultViolation);
                throw;
            }
        },
        Error);
    const auto conv = zcorn_to_nodez(zc, d, HorizontalFaultPolicy::KeepTopZ);
    ASSERT_TRUE(conv.top_z);
    EXPECT_EQ(nodez_to_zcorn(conv.field, d, conv.top_z), zc);
}

TEST(NodeZ, LengthMismatch)
{
    EXPECT_THROW(zcorn_to_nodez(std::vector<std::int64_t>(7), {1, 1, 1}), Error);
}

TEST(Validate, WellFormedModelIsClean)
{
    const auto m = generate_synthetic(synthetic_preset("faulted"));
    const auto r = validate(m);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(validate(m), r);
}

TEST(Validate, CategoryOutsideUniverse)
{
    auto m = generate_synthetic(synthetic_preset("faulted"));
    auto& cat = m.properties[0];
    ASSERT_EQ(cat.kind, PropertyKind::Categorical);
    cat.values[5] = 9;
    const auto r = validate(m);
    ASSERT_EQ(r.findings.size(), 1u);
    EXPECT_EQ(r.findings[0].kind, FindingKind::CategoryOutOfUniverse);
}

TEST(Validate, MonotonicityViolation)
{
    auto m = generate_synthetic(synthetic_preset("faulted"));
    // Node (3,3) lies inside the grid; its SW column gets one inverted step.
    m.z.at(3, 3, 5, SW) = m.z.at(3, 3, 4, SW) - 1;
    const auto r = validate(m);
    ASSERT_FALSE(r.ok());
    bool found = false;
    for (const auto& f : r.findings)
        found = found || (f.kind == FindingKind::MonotonicityViolation && f.where.find("(3,3,") != std::string::npos);
    EXPECT_TRUE(found);
}

TEST(Validate, DegeneratePillars)
{
    auto m = generate_synthetic(synthetic_preset("faulted"));
    for (int c = 0; c < 3; ++c)
        m.pillars.at(0, 0, c + 3) = m.pillars.at(0, 0, c);
    EXPECT_EQ(validate(m).degenerate_pillars, 1u);
}

TEST(AggregatedCells, BorderHistory)
{
    // Depth-2 cell at the far border of a 5-cell axis covers cell 4 only.
    EXPECT_EQ(aggregated_cell_count({5, 4, 4}, 2, 1, 0, 0), 1 * 4 * 4);
    EXPECT_EQ(aggregated_cell_count({8, 8, 8}, 2, 1, 1, 1), 64);
    EXPECT_EQ(aggregated_cell_count({8, 8, 8}, 0, 3, 3, 3), 1);
}
