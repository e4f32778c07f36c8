#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hexashrink {

/// Cell counts of a structured corner-point grid. The node lattice is
/// (ni+1) x (nj+1) x (nk+1).
struct GridDims
{
    int ni = 1;
    int nj = 1;
    int nk = 1;

    std::size_t cell_count() const { return std::size_t(ni) * nj * nk; }
    int nodes_i() const { return ni + 1; }
    int nodes_j() const { return nj + 1; }
    int nodes_k() const { return nk + 1; }
    std::size_t pillar_count() const { return std::size_t(ni + 1) * (nj + 1); }
    std::size_t node_count() const { return pillar_count() * (nk + 1); }

    std::size_t cell_index(int i, int j, int k) const
    {
        return (std::size_t(k) * nj + j) * ni + i;
    }
    std::size_t pillar_index(int i, int j) const { return std::size_t(j) * (ni + 1) + i; }
    std::size_t node_index(int i, int j, int k) const
    {
        return std::size_t(k) * pillar_count() + pillar_index(i, j);
    }

    bool valid() const { return ni >= 1 && nj >= 1 && nk >= 1; }
    bool operator==(const GridDims&) const = default;
};

/// Dimensions after one dyadic coarsening step (ceil-halving per axis).
GridDims coarsen(const GridDims& dims);

/// Largest admissible decomposition depth: floor(log2(max dim)) + 1.
int max_levels(const GridDims& dims);

/// Fixed-point scales, stored as powers of ten.
struct Quantization
{
    int geometry_exponent = 3;
    int property_exponent = 6;

    std::int64_t geometry_scale() const;
    std::int64_t property_scale() const;
    bool operator==(const Quantization&) const = default;
};

std::int64_t pow10_i64(int exponent);

/// Largest magnitude accepted in the fixed-point working domain (62 bits).
inline constexpr std::int64_t kWorkingRangeLimit = std::int64_t(1) << 62;

/// Pillar endpoints in COORD order: ceil x,y,z then floor x,y,z.
struct PillarSet
{
    static constexpr int kComponents = 6;

    int nx = 0;  // pillars along i (ni + 1)
    int ny = 0;  // pillars along j (nj + 1)
    std::vector<std::int64_t> coords;

    PillarSet() = default;
    PillarSet(int nx_, int ny_) : nx(nx_), ny(ny_), coords(std::size_t(nx_) * ny_ * kComponents, 0) {}

    std::int64_t& at(int i, int j, int c) { return coords[(std::size_t(j) * nx + i) * kComponents + c]; }
    std::int64_t at(int i, int j, int c) const { return coords[(std::size_t(j) * nx + i) * kComponents + c]; }

    bool operator==(const PillarSet&) const = default;
};

/// Bottom-vertex quadrants around a node, named by the cell column they belong
/// to. Index = di + 2*dj where the cell column is (i-1+di, j-1+dj).
/// In Back/Front, Left/Right corner naming: BBL = NW, BBR = NE, FBL = SW, FBR = SE.
enum Quadrant : int { SW = 0, SE = 1, NW = 2, NE = 3 };

inline constexpr int quadrant_di(int q) { return q & 1; }
inline constexpr int quadrant_dj(int q) { return q >> 1; }

/// True when the cell column behind quadrant q of node (i,j) exists.
bool quadrant_present(const GridDims& dims, int i, int j, int q);

/// Per-node depths of the four bottom-vertex quadrants on the full node lattice.
/// Quadrants outside the grid are structurally absent; their slots still hold
/// a value (a copy of a present neighbour at ingest) so that every transform
/// works on complete quadruples.
struct NodeZField
{
    int nx = 0;
    int ny = 0;
    int nz = 0;
    std::vector<std::int64_t> values;

    NodeZField() = default;
    NodeZField(int nx_, int ny_, int nz_)
        : nx(nx_), ny(ny_), nz(nz_), values(std::size_t(nx_) * ny_ * nz_ * 4, 0) {}

    std::size_t index(int i, int j, int k, int q) const
    {
        return ((std::size_t(k) * ny + j) * nx + i) * 4 + q;
    }
    std::int64_t& at(int i, int j, int k, int q) { return values[index(i, j, k, q)]; }
    std::int64_t at(int i, int j, int k, int q) const { return values[index(i, j, k, q)]; }

    bool operator==(const NodeZField&) const = default;
};

/// Absent-quadrant substitution: the east-west partner if present, otherwise
/// the north-south partner, otherwise the diagonal.
int quadrant_fill_source(const GridDims& dims, int i, int j, int q);

enum class PropertyKind : std::uint8_t { Continuous = 0, Categorical = 1 };

struct CellPropertyField
{
    std::string name;
    PropertyKind kind = PropertyKind::Continuous;
    int scale_exponent = 6;             // continuous only
    std::vector<std::int64_t> values;   // one per cell
    std::vector<std::int64_t> universe; // categorical only, sorted, non-negative

    bool operator==(const CellPropertyField&) const = default;
};

/// Full quantized corner-point model at some resolution depth.
struct CornerPointModel
{
    GridDims dims;
    Quantization quantization;
    PillarSet pillars;
    NodeZField z;
    std::vector<std::uint8_t> actnum;  // 0/1 per cell
    std::vector<CellPropertyField> properties;

    // Top corners of layers 1..nk-1 in ZCORN plane order, present only when
    // the grid has vertical gaps between layers and they were kept verbatim.
    std::optional<std::vector<std::int64_t>> top_z;

    // Unrecognized keyword blocks, kept verbatim.
    std::vector<std::string> opaque_keywords;

    // Resolution depth (0 = original) and the dims of depth 0; continuous
    // values at depth > 0 are block sums over the covered original cells.
    int depth = 0;
    GridDims base_dims;

    bool operator==(const CornerPointModel&) const = default;
};

/// Number of depth-0 cells aggregated into cell (i,j,k) of a depth-d model.
std::int64_t aggregated_cell_count(const GridDims& base, int depth, int i, int j, int k);

enum class HorizontalFaultPolicy { Reject, KeepTopZ };

struct NodeZConversion
{
    NodeZField field;
    std::optional<std::vector<std::int64_t>> top_z;
};

/// ZCORN (8 corners per cell, GRDECL plane order) to the node-centric field.
NodeZConversion zcorn_to_nodez(std::span<const std::int64_t> zcorn, const GridDims& dims,
                               HorizontalFaultPolicy policy = HorizontalFaultPolicy::Reject);

/// Inverse of zcorn_to_nodez. Only present quadrants are read.
std::vector<std::int64_t> nodez_to_zcorn(const NodeZField& field, const GridDims& dims,
                                         const std::optional<std::vector<std::int64_t>>& top_z = std::nullopt);

std::size_t zcorn_index(const GridDims& dims, int i, int j, int k, int corner_i, int corner_j, int bottom);

/// Real-valued model as read from a modeling package, before fixed-point mapping.
struct RealPropertyField
{
    std::string name;
    PropertyKind kind = PropertyKind::Continuous;
    std::vector<double> values;
};

struct RealModel
{
    GridDims dims;
    std::vector<double> coord;  // 6 per pillar
    std::vector<double> zcorn;  // 8 per cell
    std::vector<std::uint8_t> actnum;
    std::vector<RealPropertyField> properties;
};

/// round(x * scale) with overflow detection against the 62-bit working range.
std::int64_t quantize_value(double x, std::int64_t scale);
double dequantize_value(std::int64_t q, std::int64_t scale);

CornerPointModel quantize_model(const RealModel& real, const Quantization& params = {},
                                HorizontalFaultPolicy policy = HorizontalFaultPolicy::Reject);

/// Sorted set of distinct values, used as the default categorical universe.
std::vector<std::int64_t> distinct_values(std::span<const std::int64_t> values);

enum class FindingKind {
    MonotonicityViolation,
    ExtentMismatch,
    CategoryOutOfUniverse,
};

struct Finding
{
    FindingKind kind;
    std::string where;
    std::string message;
    bool operator==(const Finding&) const = default;
};

struct ValidationReport
{
    std::vector<Finding> findings;
    std::size_t degenerate_pillars = 0;

    bool ok() const { return findings.empty(); }
    bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const CornerPointModel& model);

}  // namespace hexashrink
