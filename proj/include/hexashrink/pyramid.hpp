#pragma once

#include <hexashrink/geometry.hpp>
#include <hexashrink/grid.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hexashrink {

struct FieldInfo
{
    std::string name;
    PropertyKind kind = PropertyKind::Continuous;
    int scale_exponent = 6;
    std::vector<std::int64_t> universe;

    bool operator==(const FieldInfo&) const = default;
};

struct PyramidHeader
{
    GridDims dims;
    int levels = 0;
    Quantization quantization;
    std::int64_t epsilon = 0;
    std::vector<FieldInfo> fields;
    bool has_top_z = false;
    std::string config_echo;

    bool operator==(const PyramidHeader&) const = default;
};

/// Model payload at one depth.
struct LevelModel
{
    NodeZField z;
    PillarSet pillars;
    std::vector<std::uint8_t> actnum;
    std::vector<std::vector<std::int64_t>> properties;

    bool operator==(const LevelModel&) const = default;
};

/// Coefficients that rebuild depth l-1 from depth l.
struct LevelDetail
{
    GeometryDetail geometry;
    std::vector<std::vector<std::int64_t>> properties;

    bool operator==(const LevelDetail&) const = default;
};

enum class ChunkKind : std::uint8_t { Approx = 0, Detail = 1, Activity = 2, Selection = 3, Extra = 4 };

/// A chunk read from a container whose field or kind this version does not
/// interpret. Kept byte-for-byte and written back unchanged.
struct PreservedChunk
{
    std::uint32_t field = 0;
    std::uint16_t depth = 0;
    std::uint8_t kind = 0;
    std::uint8_t codec = 0;
    std::uint8_t encoding = 0;
    std::uint8_t width = 0;
    std::uint64_t element_count = 0;
    std::uint64_t raw_length = 0;
    std::uint32_t crc = 0;
    std::vector<std::uint8_t> compressed;

    bool operator==(const PreservedChunk&) const = default;
};

/// Chunk listed in a container directory but absent from a truncated stream.
struct AbsentChunk
{
    std::uint32_t field = 0;
    int depth = 0;
    std::uint8_t kind = 0;
    std::string name;

    bool operator==(const AbsentChunk&) const = default;
};

struct Pyramid
{
    PyramidHeader header;
    LevelModel coarsest;
    std::vector<LevelDetail> details;  // details[l - 1] rebuilds depth l - 1
    std::optional<std::vector<std::int64_t>> top_z;
    std::vector<std::string> opaque_keywords;
    std::vector<PreservedChunk> preserved;
    std::vector<AbsentChunk> absent;

    bool operator==(const Pyramid&) const = default;
};

/// Dims of every depth, from 0 to `levels`.
std::vector<GridDims> level_dims(const GridDims& base, int levels);

struct AnalysisOptions
{
    int levels = 1;
    std::int64_t epsilon = 0;
    std::string config_echo;
};

/// Throws LevelOutOfRange unless 0 <= levels <= max_levels(dims).
void check_levels(const GridDims& dims, int levels);

Pyramid analyze_pyramid(const CornerPointModel& model, const AnalysisOptions& options);

/// Zero-level pyramid holding the model verbatim; the baseline for ratios.
Pyramid raw_pyramid(const CornerPointModel& model, const std::string& config_echo = {});

/// Model at `depth` (0 = original). Needs the coarsest approximations and the
/// details of depths levels..depth+1; depth 0 also needs the extra chunks.
CornerPointModel synthesize_to_level(const Pyramid& pyramid, int depth);

// ---------------------------------------------------------------------------
// Streaming analysis over k-slabs

/// Everything about the model that does not scale with nk.
struct SlabModelInfo
{
    GridDims dims;
    Quantization quantization;
    PillarSet pillars;
    std::vector<FieldInfo> fields;
    std::optional<std::vector<std::int64_t>> top_z;
    std::vector<std::string> opaque_keywords;
};

/// Cell layers [k_begin, k_end) and node layers [k_begin, k_end].
struct Slab
{
    int k_begin = 0;
    int k_end = 0;
    NodeZField z;
    std::vector<std::uint8_t> actnum;
    std::vector<std::vector<std::int64_t>> properties;
};

class SlabSource
{
public:
    virtual ~SlabSource() = default;
    virtual SlabModelInfo info() const = 0;
    /// Declared cell-layer ranges, in k order.
    virtual std::vector<std::pair<int, int>> ranges() const = 0;
    virtual Slab read(std::size_t index) const = 0;
};

/// Serves slabs cut from an in-memory model.
class ModelSlabSource : public SlabSource
{
public:
    ModelSlabSource(const CornerPointModel& model, std::vector<std::pair<int, int>> ranges);

    SlabModelInfo info() const override;
    std::vector<std::pair<int, int>> ranges() const override { return ranges_; }
    Slab read(std::size_t index) const override;

private:
    const CornerPointModel& model_;
    std::vector<std::pair<int, int>> ranges_;
};

/// `count` contiguous ranges of near-equal thickness covering [0, nk).
std::vector<std::pair<int, int>> even_slabs(int nk, int count);

/// Reports each assembled window as its resident cell-layer range.
using WindowHook = std::function<void(int k_begin, int k_end)>;

/// Same pyramid as analyze_pyramid on the assembled model. The first level
/// runs over a window of at most one slab plus two halo layers on each side;
/// deeper levels work on the (eight times smaller) coarse model in memory.
Pyramid analyze_streaming(const SlabSource& source, const AnalysisOptions& options, const WindowHook& hook = {});

}  // namespace hexashrink
