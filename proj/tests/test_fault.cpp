#include <hexashrink/fault.hpp>
#include <hexashrink/geometry.hpp>
#include <hexashrink/pyramid.hpp>

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace hexashrink;

namespace {

constexpr FaultConfig kFree{};
constexpr FaultConfig kStraightNS{true, true, false, false};
constexpr FaultConfig kStraightEW{false, false, true, true};
constexpr FaultConfig kCross{true, true, true, true};

NodeGroup group_of(FaultConfig a, FaultConfig b, FaultConfig c, FaultConfig d)
{
    return {{a, b, c, d}};
}

}  // namespace

TEST(FaultConfig, QuadrantComparisons)
{
    std::array<std::int64_t, 4> quad{};
    quad[NW] = 5;
    quad[NE] = 5;
    quad[SW] = 7;
    quad[SE] = 7;
    const auto c = config_from_quadrants(quad);
    EXPECT_EQ(c, kStraightEW);
    EXPECT_EQ(config_name(c), "straight-EW");
    EXPECT_EQ(config_from_quadrants({3, 3, 3, 3}), kFree);
    EXPECT_EQ(config_from_quadrants({0, 1, 2, 3}), kCross);
    EXPECT_EQ(config_from_quadrants(quad, 2), kFree);
}

TEST(FaultConfig, AllEqualityPartitionsAreAdmissible)
{
    // Every assignment of labels 0..3 to the quadrants covers every set
    // partition of four values.
    std::set<std::uint8_t> seen;
    for (int code = 0; code < 256; ++code) {
        const std::array<std::int64_t, 4> quad{code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
        const auto c = config_from_quadrants(quad);
        EXPECT_NE(c.active_count(), 1);
        EXPECT_TRUE(is_admissible(c));
        seen.insert(c.bits());
    }
    EXPECT_EQ(seen.size(), 12u);
}

TEST(FaultConfig, NamesCoverTwelveStates)
{
    std::set<std::string_view> names;
    for (std::uint8_t b = 0; b < 16; ++b) {
        const auto c = FaultConfig::from_bits(b);
        EXPECT_EQ(c.bits(), b);
        if (is_admissible(c))
            names.insert(config_name(c));
    }
    EXPECT_EQ(names.size(), 12u);
}

TEST(Predict, Examples)
{
    EXPECT_EQ(predict_config(group_of(kFree, kFree, kFree, kFree)), kFree);
    EXPECT_EQ(predict_config(group_of(kCross, kCross, kCross, kCross)), kCross);

    // Left pair {straight N-S on top, fault-free}: west stays inactive, north
    // comes from the top pair, south from the bottom pair.
    const auto p = predict_config(group_of(kFree, kFree, kStraightNS, kFree));
    EXPECT_FALSE(p.west);
    EXPECT_FALSE(p.east);
    EXPECT_TRUE(p.north);
    EXPECT_FALSE(p.south);
}

TEST(Predict, SideRulesPersistAxes)
{
    for (int code = 0; code < (1 << 16); code += 7) {
        NodeGroup g;
        for (int s = 0; s < 4; ++s)
            g.members[s] = FaultConfig::from_bits(std::uint8_t((code >> (4 * s)) & 15));
        const auto p = predict_config(g);
        for (int s = 0; s < 4; ++s) {
            const auto& m = *g.members[s];
            const bool east_side = s & 1;
            const bool north_side = s >> 1;
            if (!east_side && m.west)
                EXPECT_TRUE(p.west);
            if (east_side && m.east)
                EXPECT_TRUE(p.east);
            if (north_side && m.north)
                EXPECT_TRUE(p.north);
            if (!north_side && m.south)
                EXPECT_TRUE(p.south);
        }
    }
}

TEST(Predict, SingleColumnGroupIsBothSides)
{
    NodeGroup g;
    g.members[0] = kStraightEW;
    g.members[2] = kFree;
    const auto p = predict_config(g);
    EXPECT_TRUE(p.east);
    EXPECT_TRUE(p.west);
}

TEST(Select, Examples)
{
    EXPECT_EQ(select_node(group_of(kCross, kCross, kCross, kCross), kCross), 0);
    EXPECT_EQ(select_node(group_of(kFree, kFree, kFree, kFree), kStraightNS), 0);
    const auto g = group_of(kFree, kStraightEW, kFree, kFree);
    EXPECT_EQ(hamming(kFree, kStraightEW), 2);
    EXPECT_EQ(select_node(g, kStraightEW), 1);
    EXPECT_EQ(select_node(group_of(kFree, kStraightEW, kStraightNS, kCross), kStraightNS), 2);

    NodeGroup partial;
    partial.members[2] = kCross;
    EXPECT_EQ(select_node(partial, kFree), 2);
}

TEST(NodeGroups, TileTheLattice)
{
    for (int cells = 1; cells <= 20; ++cells) {
        const int coarse = coarsen({cells, 1, 1}).ni + 1;
        int next = 0;
        for (int K = 0; K < coarse; ++K) {
            const auto g = node_group(cells, K);
            EXPECT_EQ(g.first, next);
            EXPECT_GE(g.count, 1);
            next = g.first + g.count;
        }
        EXPECT_EQ(next, cells + 1);
    }
}

TEST(ConfigMap, FlatMeshIsFaultFree)
{
    auto s = synthetic_preset("faulted");
    s.faults.clear();
    s.anticline_amplitude = 0;
    const auto m = generate_synthetic(s);
    for (const auto& c : derive_config_map(m.z, m.dims).configs)
        EXPECT_EQ(c, kFree);
}

TEST(ConfigMap, FaultPersistsAcrossLevels)
{
    const auto model = generate_synthetic(synthetic_preset("faulted"));
    const auto pyr = analyze_pyramid(model, {.levels = 4});
    for (int depth = 0; depth <= 3; ++depth) {
        const auto m = synthesize_to_level(pyr, depth);
        const auto map = derive_config_map(m.z, m.dims);
        const int node = 16 >> depth;
        for (int j = 1; j < m.dims.nj; ++j) {
            EXPECT_TRUE(map.at(node, j).north) << "depth " << depth << " j " << j;
            EXPECT_TRUE(map.at(node, j).south) << "depth " << depth << " j " << j;
        }
    }
}

TEST(ConfigMap, OrCombinesLayers)
{
    const GridDims d{2, 1, 2};
    NodeZField f(3, 2, 3);
    for (std::size_t v = 0; v < f.values.size(); ++v)
        f.values[v] = 100;
    // Only the bottom layer of the middle pillars is thrown.
    for (int j = 0; j < 2; ++j)
        for (int q : {SE, NE})
            f.at(1, j, 2, q) = 130;
    const auto map = derive_config_map(f, d);
    EXPECT_TRUE(map.at(1, 0).north || map.at(1, 0).south);
    EXPECT_TRUE(map.at(1, 1).south || map.at(1, 1).north);
    EXPECT_EQ(map.at(0, 0), kFree);
}
