#include <hexashrink/error.hpp>
#include <hexashrink/property.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "support.hpp"

using namespace hexashrink;
using hexashrink::testing::random_signal;

namespace {

using Values = std::vector<std::int64_t>;

CellPropertyField random_field(std::mt19937_64& rng, const GridDims& d, PropertyKind kind, const Values& universe)
{
    CellPropertyField f;
    f.name = kind == PropertyKind::Continuous ? "PORO" : "SATNUM";
    f.kind = kind;
    if (kind == PropertyKind::Continuous) {
        f.values = random_signal(rng, int(d.cell_count()), 0, 450000);
    } else {
        f.universe = universe;
        std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
        for (std::size_t c = 0; c < d.cell_count(); ++c)
            f.values.push_back(universe[pick(rng)]);
    }
    return f;
}

GridDims random_dims(std::mt19937_64& rng, int hi)
{
    std::uniform_int_distribution<int> e(1, hi);
    return {e(rng), e(rng), e(rng)};
}

}  // namespace

TEST(Haar, FullBlockExample)
{
    const Values block = {1, 2, 3, 4, 5, 6, 7, 8};
    const auto set = haar_analyze_block(block);
    EXPECT_EQ(set.approx, 36);
    EXPECT_EQ(set.details, (Values{-20, -12, -4, 4, 12, 20, 28}));
    EXPECT_EQ(haar_synthesize_block(set), block);
}

TEST(Haar, PartialBlockExample)
{
    const auto set = haar_analyze_block(Values{10, 14});
    EXPECT_EQ(set.approx, 24);
    EXPECT_EQ(set.details, (Values{4}));
    EXPECT_EQ(haar_synthesize_block(set), (Values{10, 14}));

    const auto single = haar_analyze_block(Values{-3});
    EXPECT_EQ(single.approx, -3);
    EXPECT_TRUE(single.details.empty());
}

TEST(Haar, ConstantBlockHasZeroDetails)
{
    const auto set = haar_analyze_block(Values(8, 234500));
    EXPECT_EQ(set.approx, 8 * 234500);
    for (auto d : set.details)
        EXPECT_EQ(d, 0);
}

TEST(Haar, IncongruentDetailIsCorrupt)
{
    EXPECT_THROW(haar_synthesize_block({36, {-20, -12, -4, 4, 12, 20, 27}}), Error);
}

TEST(Haar, DisplayValue)
{
    EXPECT_DOUBLE_EQ(haar_display_value(234500, 1, 1000000), 0.2345);
    EXPECT_DOUBLE_EQ(haar_display_value_full(64 * 234500, 2, 1000000), 0.2345);
    // Border block of a 5-cell axis at depth 2 covering 1 x 4 x 4 cells.
    EXPECT_DOUBLE_EQ(haar_display_value(16 * 100000, aggregated_cell_count({5, 4, 4}, 2, 1, 0, 0), 1000000), 0.1);
}

TEST(Haar, RandomRoundTrip)
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> m(1, 8);
    for (int t = 0; t < 100000; ++t) {
        const auto block = random_signal(rng, m(rng), -1000000000, 1000000000);
        const auto set = haar_analyze_block(block);
        EXPECT_EQ(set.details.size(), block.size() - 1);
        EXPECT_EQ(set.approx, std::accumulate(block.begin(), block.end(), std::int64_t(0)));
        ASSERT_EQ(haar_synthesize_block(set), block);
    }
}

TEST(Modelet, ModeAndTies)
{
    EXPECT_EQ(modelet_mode(Values{2, 2, 3, 1}, {}), 2);
    // Two-way tie without a shell: the lowest class.
    EXPECT_EQ(modelet_mode(Values{3, 3, 1, 1}, {}), 1);
    // The shell breaks the tie.
    EXPECT_EQ(modelet_mode(Values{3, 3, 1, 1}, Values{3, 0, 0}), 3);
    // Tie that survives the shell: lowest class again.
    EXPECT_EQ(modelet_mode(Values{3, 3, 1, 1}, Values{3, 1}), 1);
}

TEST(Modelet, SignControl)
{
    const Values universe = {0, 1, 2, 3};
    // 1 - 3 = -2, mirror 5 is not a class, so the sign flips.
    EXPECT_EQ(modelet_detail(1, 3, universe), 2);
    EXPECT_EQ(modelet_value(2, 3, universe), 1);
    // 1 - 2 = -1, mirror 3 is a class, so the sign stays.
    EXPECT_EQ(modelet_detail(1, 2, universe), -1);
    EXPECT_EQ(modelet_value(-1, 2, universe), 1);
    EXPECT_EQ(modelet_detail(2, 2, universe), 0);
}

TEST(Modelet, ExhaustivePairs)
{
    for (const Values& universe : {Values{0, 1, 2, 3}, Values{1, 4, 5, 9}, Values{0, 7}, Values{2}}) {
        for (auto mode : universe)
            for (auto v : universe) {
                const auto d = modelet_detail(v, mode, universe);
                EXPECT_EQ(modelet_value(d, mode, universe), v) << "mode " << mode << " value " << v;
            }
    }
}

TEST(Modelet, ExhaustiveSmallBlocks)
{
    const Values universe = {0, 1, 2, 3};
    for (int size = 1; size <= 4; ++size) {
        int combos = 1;
        for (int s = 0; s < size; ++s)
            combos *= 4;
        for (int code = 0; code < combos; ++code) {
            Values block;
            for (int s = 0, c = code; s < size; ++s, c /= 4)
                block.push_back(c % 4);
            const auto set = modelet_analyze_block(block, universe, {});
            EXPECT_EQ(set.details.size(), block.size());
            EXPECT_TRUE(in_universe(universe, set.mode));
            EXPECT_EQ(modelet_synthesize_block(set, universe), block);
        }
    }
}

TEST(Modelet, OutsideUniverse)
{
    EXPECT_THROW(modelet_analyze_block(Values{1, 7}, Values{0, 1, 2}, {}), Error);
    EXPECT_THROW(modelet_synthesize_block({5, {0}}, Values{0, 1, 2}), Error);
}

TEST(PropertyField, DetailCounts)
{
    const GridDims d{5, 3, 3};
    EXPECT_EQ(property_detail_count(PropertyKind::Categorical, d), d.cell_count());
    EXPECT_EQ(property_detail_count(PropertyKind::Continuous, d), d.cell_count() - coarsen(d).cell_count());
}

TEST(PropertyField, MultiLevelRoundTrip)
{
    std::mt19937_64 rng(22);
    for (int t = 0; t < 150; ++t) {
        const GridDims d = random_dims(rng, 13);
        const int levels = std::uniform_int_distribution<int>(1, max_levels(d))(rng);
        for (auto kind : {PropertyKind::Continuous, PropertyKind::Categorical}) {
            const auto field = random_field(rng, d, kind, {1, 2, 5, 8});
            const auto dec = transform_field(field, d, levels);
            ASSERT_EQ(inverse_transform_field(dec, field, d), field.values);
        }
    }
}

TEST(PropertyField, SumConservation)
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        const GridDims d = random_dims(rng, 17);
        const auto field = random_field(rng, d, PropertyKind::Continuous, {});
        const auto total = std::accumulate(field.values.begin(), field.values.end(), std::int64_t(0));
        const auto dec = transform_field(field, d, max_levels(d));
        ASSERT_EQ(dec.coarsest.size(), 1u);
        EXPECT_EQ(dec.coarsest[0], total);
    }
}

TEST(PropertyField, PartialReconstructionMatchesDirectAnalysis)
{
    std::mt19937_64 rng(24);
    for (int t = 0; t < 40; ++t) {
        const GridDims d = random_dims(rng, 15);
        const int levels = max_levels(d);
        for (auto kind : {PropertyKind::Continuous, PropertyKind::Categorical}) {
            const auto field = random_field(rng, d, kind, {0, 3, 4});
            const auto dec = transform_field(field, d, levels);
            for (int depth = 0; depth <= levels; ++depth) {
                const auto direct = depth == 0 ? field.values : transform_field(field, d, depth).coarsest;
                const auto partial = inverse_transform_field(dec, field, d, depth);
                ASSERT_EQ(partial, direct);
                if (kind == PropertyKind::Categorical)
                    for (auto v : partial)
                        EXPECT_TRUE(in_universe(field.universe, v));
            }
        }
    }
}

TEST(PropertyField, ConstantFieldHasZeroDetails)
{
    // Power-of-two extents keep every block full, so sums stay uniform.
    const GridDims d{16, 8, 8};
    CellPropertyField f{"PORO", PropertyKind::Continuous, 6, Values(d.cell_count(), 250000), {}};
    const auto dec = transform_field(f, d, 3);
    for (const auto& level : dec.details)
        for (auto v : level)
            EXPECT_EQ(v, 0);
}

TEST(PropertyField, OverflowGuard)
{
    const GridDims d{2, 1, 1};
    CellPropertyField f{"PORO", PropertyKind::Continuous, 6, {kWorkingRangeLimit / 4, 1}, {}};
    EXPECT_THROW(transform_field(f, d, 1), Error);
}
