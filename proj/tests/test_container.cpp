#include <hexashrink/codec.hpp>
#include <hexashrink/container.hpp>
#include <hexashrink/error.hpp>
#include <hexashrink/pyramid.hpp>
#include <hexashrink/report.hpp>
#include <hexashrink/vtk.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace hexashrink;
using hexashrink::testing::random_spec;

namespace {

using Bytes = std::vector<std::uint8_t>;

ErrorKind kind_of(const std::function<void()>& f, std::string* message = nullptr)
{
    try {
        f();
    } catch (const Error& e) {
        if (message)
            *message = e.what();
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Usage;
}

const CornerPointModel& faulted()
{
    static const CornerPointModel m = generate_synthetic(synthetic_preset("faulted"));
    return m;
}

}  // namespace

TEST(Pyramid, LevelDimsChain)
{
    const auto dims = level_dims({80, 45, 26}, 4);
    ASSERT_EQ(dims.size(), 5u);
    EXPECT_EQ(dims[1], (GridDims{40, 23, 13}));
    EXPECT_EQ(dims[4], (GridDims{5, 3, 2}));
}

TEST(Pyramid, LevelRange)
{
    EXPECT_EQ(kind_of([] { check_levels({80, 45, 26}, 8); }), ErrorKind::LevelOutOfRange);
    EXPECT_EQ(kind_of([] { check_levels({80, 45, 26}, -1); }), ErrorKind::LevelOutOfRange);
    EXPECT_NO_THROW(check_levels({80, 45, 26}, 7));
    const auto pyr = analyze_pyramid(faulted(), {.levels = 2});
    EXPECT_EQ(kind_of([&] { synthesize_to_level(pyr, 3); }), ErrorKind::LevelOutOfRange);
}

TEST(Pyramid, ZeroLevelsIsVerbatim)
{
    const auto pyr = raw_pyramid(faulted());
    EXPECT_EQ(pyr.header.levels, 0);
    EXPECT_EQ(synthesize_to_level(pyr, 0), faulted());
}

TEST(Container, RoundTripAndDeterminism)
{
    std::mt19937_64 rng(51);
    for (int t = 0; t < 20; ++t) {
        const auto model = generate_synthetic(random_spec(rng, 14));
        const int levels = std::uniform_int_distribution<int>(0, max_levels(model.dims))(rng);
        const auto pyr = analyze_pyramid(model, {.levels = levels, .config_echo = "{\"trial\":1}"});
        for (Codec c : kAllCodecs) {
            const auto bytes = serialize(pyr, CodecPlan::uniform(c));
            const auto back = deserialize(bytes);
            ASSERT_EQ(back, pyr);
            ASSERT_EQ(serialize(back, CodecPlan::uniform(c)), bytes);
        }
        EXPECT_EQ(synthesize_to_level(deserialize(serialize(pyr)), 0), model);
    }
}

TEST(Container, MixedCodecPlan)
{
    const auto pyr = analyze_pyramid(faulted(), {.levels = 3});
    CodecPlan plan;
    plan.by_kind = {Codec::LzMarkov, Codec::BwtBlock, Codec::Store, Codec::Deflate, Codec::Store};
    const auto bytes = serialize(pyr, plan);
    const auto info = inspect_container(bytes);
    for (const auto& e : info.chunks)
        EXPECT_EQ(e.codec, std::uint8_t(plan.by_kind[e.kind]));
    EXPECT_EQ(deserialize(bytes), pyr);
}

TEST(Container, ProgressivePrefixes)
{
    const auto pyr = analyze_pyramid(faulted(), {.levels = 4});
    const auto bytes = serialize(pyr);
    const auto info = inspect_container(bytes);
    std::vector<CornerPointModel> full;
    for (int d = 0; d <= 4; ++d)
        full.push_back(synthesize_to_level(pyr, d));

    std::vector<std::size_t> cuts = {info.preamble_bytes};
    for (const auto& e : info.chunks)
        cuts.push_back(std::size_t(e.offset + e.compressed_length));
    int previous_best = 5;
    for (auto cut : cuts) {
        const auto part = deserialize(std::span(bytes).first(cut));
        int best = 5;
        for (int d = 4; d >= 0; --d) {
            try {
                EXPECT_EQ(synthesize_to_level(part, d), full[std::size_t(d)]) << "cut " << cut << " depth " << d;
                best = d;
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::MissingChunk);
                break;
            }
        }
        EXPECT_LE(best, previous_best);
        previous_best = best;
    }
    EXPECT_EQ(previous_best, 0);
    EXPECT_TRUE(deserialize(bytes).absent.empty());
}

TEST(Container, CoarsestFirstInStream)
{
    const auto pyr = analyze_pyramid(faulted(), {.levels = 3});
    const auto info = inspect_container(serialize(pyr));
    int last_depth = 1000;
    bool in_details = false;
    for (const auto& e : info.chunks) {
        if (e.kind == std::uint8_t(ChunkKind::Extra))
            break;
        if (e.kind == std::uint8_t(ChunkKind::Approx)) {
            EXPECT_FALSE(in_details);
            EXPECT_EQ(e.depth, 3);
            continue;
        }
        in_details = true;
        EXPECT_LE(int(e.depth), last_depth);
        last_depth = e.depth;
    }
}

TEST(Container, CorruptedChunkNamesItself)
{
    const auto pyr = analyze_pyramid(faulted(), {.levels = 2});
    auto bytes = serialize(pyr);
    const auto info = inspect_container(bytes);
    const auto& victim = info.chunks[info.chunks.size() / 2];
    bytes[std::size_t(victim.offset + victim.compressed_length / 2)] ^= 0x5a;
    std::string message;
    EXPECT_EQ(kind_of([&] { deserialize(bytes); }, &message), ErrorKind::ChecksumMismatch);
    EXPECT_NE(message.find(chunk_name(victim.field, victim.depth, victim.kind)), std::string::npos) << message;
}

TEST(Container, HeaderErrors)
{
    const auto bytes = serialize(analyze_pyramid(faulted(), {.levels = 1}));
    auto bad_magic = bytes;
    bad_magic[0] ^= 1;
    EXPECT_EQ(kind_of([&] { deserialize(bad_magic); }), ErrorKind::BadMagic);
    auto bad_version = bytes;
    bad_version[4] = 9;
    EXPECT_EQ(kind_of([&] { deserialize(bad_version); }), ErrorKind::VersionUnsupported);
    auto bad_header = bytes;
    bad_header[14] ^= 0xff;
    EXPECT_EQ(kind_of([&] { deserialize(bad_header); }), ErrorKind::ChecksumMismatch);
}

TEST(Container, PreservedChunksWrittenBack)
{
    auto pyr = analyze_pyramid(faulted(), {.levels = 1});
    const Bytes payload = {1, 2, 3, 4, 5};
    PreservedChunk pc;
    pc.field = 200;
    pc.depth = 1;
    pc.kind = 9;
    pc.codec = std::uint8_t(Codec::Store);
    pc.element_count = payload.size();
    pc.raw_length = payload.size();
    pc.crc = crc32c(payload);
    pc.compressed = payload;
    pyr.preserved.push_back(pc);
    const auto bytes = serialize(pyr);
    const auto back = deserialize(bytes);
    ASSERT_EQ(back.preserved.size(), 1u);
    EXPECT_EQ(back.preserved[0], pc);
    EXPECT_EQ(serialize(back), bytes);
    EXPECT_EQ(synthesize_to_level(back, 0), faulted());
}

TEST(Container, MinimalWidth)
{
    EXPECT_EQ(minimal_width(std::vector<std::int64_t>{0, -128, 127}), 1);
    EXPECT_EQ(minimal_width(std::vector<std::int64_t>{128}), 2);
    EXPECT_EQ(minimal_width(std::vector<std::int64_t>{-40000}), 4);
    EXPECT_EQ(minimal_width(std::vector<std::int64_t>{std::int64_t(1) << 40}), 8);
}

TEST(Container, Crc32cCheckValue)
{
    const std::string s = "123456789";
    EXPECT_EQ(crc32c(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())), 0xE3069283u);
}

TEST(Codec, RoundTripsAndBounds)
{
    const Bytes zeros(1 << 20, 0);
    Bytes noise(1 << 20);
    std::mt19937_64 rng(52);
    for (auto& b : noise)
        b = std::uint8_t(rng());
    for (Codec c : kAllCodecs) {
        const auto z = compress_payload(zeros, c);
        const auto n = compress_payload(noise, c);
        EXPECT_EQ(decompress_payload(z, c, zeros.size()), zeros) << codec_name(c);
        EXPECT_EQ(decompress_payload(n, c, noise.size()), noise) << codec_name(c);
        EXPECT_GE(double(n.size()), 0.99 * double(noise.size())) << codec_name(c);
        if (c != Codec::Store)
            EXPECT_LT(double(z.size()), 0.01 * double(zeros.size())) << codec_name(c);
        EXPECT_EQ(codec_from_name(codec_name(c)), c);
        EXPECT_EQ(codec_from_id(std::uint8_t(c)), c);
    }
    EXPECT_EQ(kind_of([] { codec_from_name("zstd"); }), ErrorKind::CodecUnavailable);
    EXPECT_EQ(kind_of([] { codec_from_id(9); }), ErrorKind::CodecUnavailable);
}

TEST(Codec, ParallelMatchesSerial)
{
    std::vector<Bytes> raws;
    std::mt19937_64 rng(53);
    for (int r = 0; r < 12; ++r) {
        Bytes b(std::size_t(1000 + 997 * r));
        for (auto& x : b)
            x = std::uint8_t(rng() % 7);
        raws.push_back(std::move(b));
    }
    std::vector<CompressJob> jobs;
    for (std::size_t r = 0; r < raws.size(); ++r)
        jobs.push_back({raws[r], kAllCodecs[r % 4]});
    const auto packed = compress_all(jobs);
    std::vector<DecompressJob> back;
    for (std::size_t r = 0; r < raws.size(); ++r) {
        EXPECT_EQ(packed[r], compress_payload(raws[r], jobs[r].codec));
        back.push_back({packed[r], jobs[r].codec, raws[r].size()});
    }
    const auto unpacked = decompress_all(back);
    for (std::size_t r = 0; r < raws.size(); ++r)
        EXPECT_EQ(unpacked[r], raws[r]);
}

TEST(Streaming, MatchesInMemoryAnalysis)
{
    std::mt19937_64 rng(54);
    for (int t = 0; t < 25; ++t) {
        auto spec = random_spec(rng, 12);
        spec.dims.nk = std::uniform_int_distribution<int>(2, 24)(rng);
        if (spec.dims.ni < 2 || spec.dims.nj < 2)
            spec.faults.clear();
        const auto model = generate_synthetic(spec);
        const int levels = std::uniform_int_distribution<int>(1, max_levels(model.dims))(rng);
        const int count = std::uniform_int_distribution<int>(1, std::max(1, spec.dims.nk / 2))(rng);
        const auto ranges = even_slabs(spec.dims.nk, count);
        const AnalysisOptions options{.levels = levels};
        int widest = 0;
        const auto streamed = analyze_streaming(ModelSlabSource(model, ranges), options,
                                                [&](int b, int e) { widest = std::max(widest, e - b); });
        ASSERT_EQ(streamed, analyze_pyramid(model, options)) << "trial " << t;
        int thickest = 0;
        for (const auto& [b, e] : ranges)
            thickest = std::max(thickest, e - b);
        EXPECT_LE(widest, thickest + 4);
    }
}

TEST(Streaming, CoverageErrors)
{
    const auto& m = faulted();
    const AnalysisOptions options{.levels = 2};
    auto run = [&](std::vector<std::pair<int, int>> ranges) {
        return kind_of([&] { analyze_streaming(ModelSlabSource(m, ranges), options); });
    };
    EXPECT_EQ(run({{0, 8}, {9, 16}}), ErrorKind::SlabCoverageGap);
    EXPECT_EQ(run({{0, 8}, {7, 16}}), ErrorKind::SlabCoverageGap);
    EXPECT_EQ(run({{0, 8}, {8, 15}}), ErrorKind::SlabCoverageGap);
    EXPECT_EQ(run({{0, 15}, {15, 16}}), ErrorKind::SlabCoverageGap);
    EXPECT_EQ(run({}), ErrorKind::SlabCoverageGap);
}

TEST(Report, AccountingIdentity)
{
    const auto pyr = analyze_pyramid(faulted(), {.levels = 3});
    const auto r = entropy_report(pyr, 123456);
    EXPECT_EQ(r.original_bytes, 123456u);
    std::size_t raw = 0;
    for (const auto& c : r.chunks) {
        raw += c.raw_bytes;
        EXPECT_GE(c.byte_entropy, 0.0);
        EXPECT_LE(c.byte_entropy, 8.0);
    }
    EXPECT_EQ(raw, r.raw_total);
    for (std::size_t c = 0; c < kCodecCount; ++c) {
        std::size_t sum = 0;
        for (const auto& ch : r.chunks)
            sum += ch.compressed[c];
        EXPECT_EQ(sum, r.compressed_total[c]);
        EXPECT_EQ(r.container_bytes[c], serialize(pyr, CodecPlan::uniform(kAllCodecs[c])).size());
        EXPECT_DOUBLE_EQ(r.ratio[c], 123456.0 / double(r.container_bytes[c]));
    }
    EXPECT_EQ(r.compressed_total[0], r.raw_total);
}

TEST(Report, Entropy)
{
    EXPECT_DOUBLE_EQ(shannon_entropy({10}), 0.0);
    EXPECT_DOUBLE_EQ(shannon_entropy({5, 5}), 1.0);
    EXPECT_DOUBLE_EQ(shannon_entropy({1, 1, 1, 1}), 2.0);
}

TEST(Report, LevelStats)
{
    const auto s = level_stats(faulted());
    EXPECT_EQ(s.depth, 0);
    EXPECT_EQ(s.active_cells, faulted().dims.cell_count());
    ASSERT_EQ(s.fields.size(), 2u);
    double share = 0;
    for (const auto& [cls, p] : s.fields[0].proportions)
        share += p;
    EXPECT_NEAR(share, 1.0, 1e-12);
    EXPECT_LE(s.fields[1].min, s.fields[1].mean);
    EXPECT_LE(s.fields[1].mean, s.fields[1].max);
}

TEST(Vtk, SingleCell)
{
    SyntheticSpec spec;
    spec.dims = {1, 1, 1};
    spec.rock_proportions = {1.0};
    const auto m = generate_synthetic(spec);
    const auto text = write_vtk(m);
    EXPECT_NE(text.find("POINTS 8 "), std::string::npos);
    EXPECT_NE(text.find("CELLS 1 9"), std::string::npos);
    EXPECT_NE(text.find("CELL_TYPES 1\n12"), std::string::npos);
    EXPECT_NE(text.find("SCALARS ROCKTYPE int"), std::string::npos);
}

TEST(Vtk, InactiveCellsDropped)
{
    const auto m = generate_synthetic(synthetic_preset("carved"));
    const auto active = std::size_t(std::count(m.actnum.begin(), m.actnum.end(), 1));
    EXPECT_NE(write_vtk(m).find("CELLS " + std::to_string(active) + " "), std::string::npos);
    const auto all = write_vtk(m, {.keep_inactive = true});
    EXPECT_NE(all.find("CELLS " + std::to_string(m.dims.cell_count()) + " "), std::string::npos);
    EXPECT_NE(all.find("SCALARS ACTNUM int"), std::string::npos);
}
