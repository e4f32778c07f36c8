#pragma once

#include <hexashrink/codec.hpp>
#include <hexashrink/pyramid.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <span>
#include <utility>
#include <vector>

namespace hexashrink {

inline constexpr std::size_t kCodecCount = std::size(kAllCodecs);

struct ChunkStats
{
    std::string name;
    std::uint32_t field = 0;
    int depth = 0;
    std::uint8_t kind = 0;
    std::uint64_t elements = 0;
    std::size_t raw_bytes = 0;
    double byte_entropy = 0;    // bits per byte
    double symbol_entropy = 0;  // bits per element
    double zero_fraction = 0;   // share of zero elements
    std::array<std::size_t, kCodecCount> compressed{};  // indexed by codec id
};

struct EntropyReport
{
    std::vector<ChunkStats> chunks;
    std::size_t raw_total = 0;
    std::array<std::size_t, kCodecCount> compressed_total{};  // sum over chunks
    std::array<std::size_t, kCodecCount> container_bytes{};   // whole file per codec
    std::size_t original_bytes = 0;
    std::array<double, kCodecCount> ratio{};  // original_bytes / container_bytes
};

double shannon_entropy(const std::vector<std::size_t>& counts);

/// `original_bytes` is the size the ratios refer to, typically the input file;
/// 0 uses the uncompressed container.
EntropyReport entropy_report(const Pyramid& pyramid, std::size_t original_bytes = 0);

}  // namespace hexashrink

namespace hexashrink {

struct FieldLevelStats
{
    std::string name;
    PropertyKind kind = PropertyKind::Continuous;
    std::vector<std::pair<std::int64_t, double>> proportions;  // categorical: class, share of cells
    double min = 0, mean = 0, max = 0;                          // continuous display values
};

struct LevelStats
{
    int depth = 0;
    GridDims dims;
    std::size_t active_cells = 0;
    std::vector<FieldLevelStats> fields;
};

/// Histograms and ranges over every cell of the model at its own depth.
LevelStats level_stats(const CornerPointModel& model);

struct BenchRow
{
    std::string fixture;
    int levels = 0;  // 0 is the undecomposed baseline
    std::size_t original_bytes = 0;
    std::array<std::size_t, kCodecCount> container_bytes{};
    std::array<double, kCodecCount> ratio{};
    std::array<double, kCodecCount> analysis_seconds{};   // analyze + serialize
    std::array<double, kCodecCount> synthesis_seconds{};  // deserialize + synthesize depth 0
};

/// One row per level count in {0, 1, ..., max_levels}; times are the minimum
/// over `repeats` runs. Rows use the codecs listed; other entries stay zero.
std::vector<BenchRow> bench_model(const std::string& fixture, const CornerPointModel& model,
                                  std::size_t original_bytes, std::span<const Codec> codecs, int repeats);

}  // namespace hexashrink
