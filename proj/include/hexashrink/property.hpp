#pragma once

#include <hexashrink/grid.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace hexashrink {

// ---------------------------------------------------------------------------
// Block partition

/// Fine cells [lo, hi) along one axis covered by coarse index c.
struct AxisBlock
{
    int lo;
    int hi;
    int size() const { return hi - lo; }
};

inline AxisBlock axis_block(int c, int fine_extent)
{
    const int lo = 2 * c;
    return {lo, lo + 2 <= fine_extent ? lo + 2 : fine_extent};
}

// ---------------------------------------------------------------------------
// Continuous properties: sum-Haar
//
// Block members are ordered i fastest, then j, then k; member 0 is the anchor
// and carries no detail.

struct ContinuousDetailSet
{
    std::int64_t approx = 0;            // block sum
    std::vector<std::int64_t> details;  // m * p_n - sum, n != anchor
    bool operator==(const ContinuousDetailSet&) const = default;
};

ContinuousDetailSet haar_analyze_block(std::span<const std::int64_t> block);
/// Throws CorruptDetail when a detail is not congruent with the sum.
std::vector<std::int64_t> haar_synthesize_block(const ContinuousDetailSet& set);

/// Mean real value behind an aggregated sum: sum / (scale * cells covered).
double haar_display_value(std::int64_t sum, std::int64_t aggregated_cells, std::int64_t scale);
/// Full-block form: the divisor is 8^depth.
double haar_display_value_full(std::int64_t sum, int depth, std::int64_t scale);

// ---------------------------------------------------------------------------
// Categorical properties: modelet

/// Every member, anchor included, carries a detail: the mode alone does not
/// determine any member.
struct CategoricalDetailSet
{
    std::int64_t mode = 0;
    std::vector<std::int64_t> details;  // one per member
    bool operator==(const CategoricalDetailSet&) const = default;
};

bool in_universe(std::span<const std::int64_t> universe, std::int64_t v);

/// Most frequent class of `block`; ties are re-scored by class counts over
/// `shell` (the fine cells surrounding the block), then the lowest class wins.
std::int64_t modelet_mode(std::span<const std::int64_t> block, std::span<const std::int64_t> shell);

/// Signed difference to the mode, negated when it is negative and its mirror
/// value 2*mode - p lies outside the universe.
std::int64_t modelet_detail(std::int64_t value, std::int64_t mode, std::span<const std::int64_t> universe);
std::int64_t modelet_value(std::int64_t detail, std::int64_t mode, std::span<const std::int64_t> universe);

CategoricalDetailSet modelet_analyze_block(std::span<const std::int64_t> block, std::span<const std::int64_t> universe,
                                           std::span<const std::int64_t> shell);
std::vector<std::int64_t> modelet_synthesize_block(const CategoricalDetailSet& set,
                                                   std::span<const std::int64_t> universe);

// ---------------------------------------------------------------------------
// Level step over a (possibly partial) stack of cell layers

/// Cell values of layers [k_offset, k_offset + layers) of a grid with `dims`.
struct CellWindow
{
    GridDims dims;
    int k_offset = 0;
    std::span<const std::int64_t> values;

    std::int64_t at(int i, int j, int k) const
    {
        return values[(std::size_t(k - k_offset) * dims.nj + j) * dims.ni + i];
    }
};

/// Number of detail coefficients emitted for coarse layers [0, K).
std::size_t property_detail_offset(PropertyKind kind, const GridDims& fine, int K);
inline std::size_t property_detail_count(PropertyKind kind, const GridDims& fine)
{
    return property_detail_offset(kind, fine, coarsen(fine).nk);
}

struct PropertyScheme
{
    PropertyKind kind = PropertyKind::Continuous;
    std::span<const std::int64_t> universe;
};

/// Analyzes coarse layers [K_begin, K_end). `coarse` and `details` are the
/// full-level outputs; only the entries of those layers are written. The window
/// must hold fine layers [2*K_begin - 1, 2*K_end + 1) clipped to the grid.
void analyze_property_layers(const PropertyScheme& scheme, const CellWindow& fine, int K_begin, int K_end,
                             std::span<std::int64_t> coarse, std::span<std::int64_t> details);

void synthesize_property_level(const PropertyScheme& scheme, const GridDims& fine_dims,
                               std::span<const std::int64_t> coarse, std::span<const std::int64_t> details,
                               std::span<std::int64_t> fine);

/// Multi-level decomposition of one field: the coarsest approximation and one
/// detail array per level (index 0 reconstructs depth 0 from depth 1).
struct PropertyDecomposition
{
    std::vector<std::int64_t> coarsest;
    std::vector<std::vector<std::int64_t>> details;
};

PropertyDecomposition transform_field(const CellPropertyField& field, const GridDims& dims, int levels);
/// Reconstruction down to `target_depth` (0 = original resolution).
std::vector<std::int64_t> inverse_transform_field(const PropertyDecomposition& dec, const CellPropertyField& meta,
                                                  const GridDims& dims, int target_depth = 0);

}  // namespace hexashrink
