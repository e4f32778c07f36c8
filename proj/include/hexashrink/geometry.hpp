#pragma once

#include <hexashrink/fault.hpp>
#include <hexashrink/grid.hpp>
#include <hexashrink/property.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace hexashrink {

/// Fine nodes [first, first + count) merged into coarse node K along an axis
/// of `cells` cells. Coarse node K gathers {2K, 2K+1} clipped to the lattice;
/// the last coarse node is the last fine node alone.
struct NodeGroupSpan
{
    int first;
    int count;
};

NodeGroupSpan node_group(int cells, int K);

/// Member s of a 2x2 group sits at offset (s & 1, s >> 1).
NodeGroup gather_group(const FaultConfigMap& configs, int cells_i, int cells_j, int I, int J);

/// Selection, residual and lifting coefficients of one level.
struct GeometryDetail
{
    std::vector<std::uint8_t> selection;     // per coarse node, [J][I]
    std::vector<std::int64_t> lift_details;  // selected columns along k, [m][J][I][q]
    std::vector<std::int64_t> residuals;     // other members minus selected, [k][J][I][slot][q]
    std::vector<std::int64_t> pillar_details;
    std::vector<std::uint8_t> fine_actnum;   // ACTNUM of the finer level

    bool operator==(const GeometryDetail&) const = default;
};

std::size_t residuals_per_layer(const GridDims& fine);
std::size_t lift_details_per_layer(const GridDims& fine);

/// Level quantities that only depend on the (i,j) lattice.
struct LevelPlan
{
    FaultConfigMap configs;
    std::vector<std::uint8_t> selection;
    PillarSet coarse_pillars;
    std::vector<std::int64_t> pillar_details;
};

LevelPlan plan_geometry_level(const FaultConfigMap& configs, const PillarSet& fine_pillars, const GridDims& fine);

/// Resident part of a fine level: cell layers and node layers [k0, k0 + n).
struct FineWindow
{
    GridDims dims;
    int k0 = 0;
    int cell_layers = 0;
    const NodeZField* z = nullptr;  // nz = resident node layers
    std::span<const std::uint8_t> actnum;
    std::vector<std::span<const std::int64_t>> properties;

    std::int64_t z_at(int i, int j, int k, int q) const;
    /// Cells outside the grid are inactive.
    bool active(int i, int j, int k) const;
    CellWindow property_window(std::size_t f) const;
};

/// Coarse level and details under construction; every array has its final
/// size so that windows write their owned entries in place.
struct LevelOutput
{
    GridDims fine_dims;
    GridDims coarse_dims;
    NodeZField coarse_z;
    std::vector<std::uint8_t> coarse_actnum;
    std::vector<std::vector<std::int64_t>> coarse_properties;
    GeometryDetail geometry;
    std::vector<std::vector<std::int64_t>> property_details;
};

LevelOutput make_level_output(const GridDims& fine, std::span<const PropertyScheme> schemes);

/// Whether the coarse cell is active: each of its 8 corners needs both parent
/// vertices of the selected fine node active, 16 parents in total.
bool coarse_cell_active(const FineWindow& w, const LevelPlan& plan, int I, int J, int K);

/// Fills every output owned by fine cell layers [b, e) (and by the last node
/// layer when e == nk). The window must hold cell and node layers
/// [b - 2, e + 2] clipped to the grid.
void analyze_level_layers(const LevelPlan& plan, std::span<const PropertyScheme> schemes, const FineWindow& w, int b,
                          int e, LevelOutput& out);

struct FineLevel
{
    NodeZField z;
    PillarSet pillars;
    std::vector<std::uint8_t> actnum;
    std::vector<std::vector<std::int64_t>> properties;
};

/// Exact inverse of one analysis step.
FineLevel synthesize_level(const GridDims& fine, std::span<const PropertyScheme> schemes, const NodeZField& coarse_z,
                           const PillarSet& coarse_pillars,
                           const std::vector<std::vector<std::int64_t>>& coarse_properties,
                           const GeometryDetail& geometry,
                           const std::vector<std::vector<std::int64_t>>& property_details);

/// Throws OverflowRisk when a value leaves the headroom kept for lifting.
void check_geometry_headroom(std::span<const std::int64_t> values, const char* what);

}  // namespace hexashrink
