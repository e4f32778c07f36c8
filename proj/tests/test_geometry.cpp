#include <hexashrink/error.hpp>
#include <hexashrink/geometry.hpp>
#include <hexashrink/pyramid.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "support.hpp"

using namespace hexashrink;
using hexashrink::testing::random_spec;

namespace {

using Vertex = std::tuple<int, int, int, int>;  // node i, j, k and quadrant

// Vertices owned by active cells, enumerated cell by cell.
std::set<Vertex> active_vertices(const CornerPointModel& m)
{
    std::set<Vertex> out;
    const GridDims& d = m.dims;
    for (int k = 0; k < d.nk; ++k)
        for (int j = 0; j < d.nj; ++j)
            for (int i = 0; i < d.ni; ++i) {
                if (!m.actnum[d.cell_index(i, j, k)])
                    continue;
                for (int b = 0; b < 2; ++b)
                    for (int dj = 0; dj < 2; ++dj)
                        for (int di = 0; di < 2; ++di)
                            out.insert({i + di, j + dj, k + b, (1 - di) + 2 * (1 - dj)});
            }
    return out;
}

std::size_t active_count(const std::vector<std::uint8_t>& actnum)
{
    return std::size_t(std::count(actnum.begin(), actnum.end(), 1));
}

}  // namespace

TEST(Geometry, RandomRoundTrip)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 60; ++t) {
        const auto spec = random_spec(rng, 17);
        const auto model = generate_synthetic(spec);
        const int levels = std::uniform_int_distribution<int>(1, std::min(4, max_levels(model.dims)))(rng);
        const auto pyr = analyze_pyramid(model, {.levels = levels});
        const auto back = synthesize_to_level(pyr, 0);
        ASSERT_EQ(back.z, model.z) << "trial " << t;
        ASSERT_EQ(back.pillars, model.pillars);
        ASSERT_EQ(back.actnum, model.actnum);
        ASSERT_EQ(back, model);
        EXPECT_EQ(derive_config_map(back.z, back.dims), derive_config_map(model.z, model.dims));
    }
}

TEST(Geometry, SixteenParentActivity)
{
    std::mt19937_64 rng(32);
    for (int t = 0; t < 40; ++t) {
        auto model = generate_synthetic(random_spec(rng, 12));
        std::bernoulli_distribution on(0.85);
        for (auto& a : model.actnum)
            a = on(rng) ? 1 : 0;

        const auto pyr = analyze_pyramid(model, {.levels = 1});
        const GridDims& fd = model.dims;
        const GridDims cd = coarsen(fd);
        const auto& selection = pyr.details[0].geometry.selection;
        const auto vertices = active_vertices(model);
        auto fine_of = [](int K, int cells) { return std::min(2 * K, cells); };

        for (int K = 0; K < cd.nk; ++K)
            for (int J = 0; J < cd.nj; ++J)
                for (int I = 0; I < cd.ni; ++I) {
                    bool expected = true;
                    for (int c = 0; c < 2; ++c)
                        for (int b = 0; b < 2; ++b)
                            for (int a = 0; a < 2; ++a) {
                                const int s = selection[std::size_t(J + b) * cd.nodes_i() + (I + a)];
                                const int fi = fine_of(I + a, fd.ni) + (s & 1);
                                const int fj = fine_of(J + b, fd.nj) + (s >> 1);
                                const int fk = fine_of(K + c, fd.nk);
                                const int q = (1 - a) + 2 * (1 - b);
                                const int inward = c == 0 ? fk + 1 : fk - 1;
                                expected = expected && vertices.count({fi, fj, fk, q}) &&
                                           vertices.count({fi, fj, inward, q});
                            }
                    ASSERT_EQ(pyr.coarsest.actnum[cd.cell_index(I, J, K)], expected ? 1 : 0)
                        << "trial " << t << " cell " << I << "," << J << "," << K;
                }
        EXPECT_LE(active_count(pyr.coarsest.actnum), active_count(model.actnum));
        EXPECT_EQ(pyr.details[0].geometry.fine_actnum, model.actnum);
    }
}

TEST(Geometry, ActivityMonotoneAcrossLevels)
{
    const auto model = generate_synthetic(synthetic_preset("carved"));
    const int levels = max_levels(model.dims);
    const auto pyr = analyze_pyramid(model, {.levels = levels});
    std::size_t previous = active_count(model.actnum);
    for (int depth = 1; depth <= levels; ++depth) {
        const auto m = synthesize_to_level(pyr, depth);
        const std::size_t now = active_count(m.actnum);
        EXPECT_LE(now, previous) << "depth " << depth;
        previous = now;
    }
}

TEST(Geometry, FlatMeshHasZeroDetails)
{
    auto all_zero = [](const auto& v) { return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }); };
    // Even extents keep the coarse node spacing uniform at every level; odd
    // extents pass their last node through, so only the first step is flat.
    for (const GridDims dims : {GridDims{16, 8, 8}, GridDims{13, 10, 7}}) {
        SyntheticSpec s;
        s.dims = dims;
        s.rock_proportions = {1.0};
        const auto pyr = analyze_pyramid(generate_synthetic(s), {.levels = 3});
        const std::size_t checked = dims.ni % 2 == 0 ? pyr.details.size() : 1;
        for (std::size_t l = 0; l < checked; ++l) {
            const auto& g = pyr.details[l].geometry;
            EXPECT_TRUE(all_zero(g.residuals)) << "level " << l;
            EXPECT_TRUE(all_zero(g.lift_details)) << "level " << l;
            EXPECT_TRUE(all_zero(g.pillar_details)) << "level " << l;
            EXPECT_TRUE(all_zero(g.selection)) << "level " << l;
        }
    }
}

TEST(Geometry, ZeroDetailsGiveConstantMesh)
{
    SyntheticSpec s;
    s.dims = {6, 5, 4};
    s.rock_proportions = {1.0};
    s.porosity = false;
    const auto model = generate_synthetic(s);
    auto pyr = analyze_pyramid(model, {.levels = 1});
    for (auto& v : pyr.coarsest.z.values)
        v = 777;
    for (auto& v : pyr.coarsest.pillars.coords)
        v = 5;
    const auto m = synthesize_to_level(pyr, 0);
    for (auto v : m.z.values)
        EXPECT_EQ(v, 777);
    for (auto v : m.pillars.coords)
        EXPECT_EQ(v, 5);
}

TEST(Geometry, InconsistentDetailIsCorrupt)
{
    const auto model = generate_synthetic(synthetic_preset("faulted"));
    auto pyr = analyze_pyramid(model, {.levels = 2});
    pyr.details[0].geometry.selection.pop_back();
    try {
        synthesize_to_level(pyr, 0);
        FAIL() << "expected CorruptDetail";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CorruptDetail);
    }
    // The coarser level is still reachable.
    EXPECT_NO_THROW(synthesize_to_level(pyr, 1));
}

TEST(Geometry, HeadroomGuard)
{
    const std::vector<std::int64_t> ok = {0, 1, -1};
    EXPECT_NO_THROW(check_geometry_headroom(ok, "z"));
    const std::vector<std::int64_t> big = {std::int64_t(1) << 60};
    EXPECT_THROW(check_geometry_headroom(big, "z"), Error);
}
