#pragma once

#include <hexashrink/grid.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hexashrink {

/// Active cardinal axes of the fault pattern at a node. North separates NW/NE,
/// south SW/SE, east NE/SE and west NW/SW.
struct FaultConfig
{
    bool north = false;
    bool south = false;
    bool east = false;
    bool west = false;

    int active_count() const { return int(north) + int(south) + int(east) + int(west); }
    std::uint8_t bits() const { return std::uint8_t(north | (south << 1) | (east << 2) | (west << 3)); }
    static FaultConfig from_bits(std::uint8_t b) { return {bool(b & 1), bool(b & 2), bool(b & 4), bool(b & 8)}; }

    FaultConfig& operator|=(const FaultConfig& o)
    {
        north |= o.north;
        south |= o.south;
        east |= o.east;
        west |= o.west;
        return *this;
    }
    bool operator==(const FaultConfig&) const = default;
};

/// One of the twelve admissible node patterns: fault-free, straight (2),
/// corner (4), T (4), cross. Single-axis patterns are not admissible.
bool is_admissible(const FaultConfig& c);
std::string_view config_name(const FaultConfig& c);

int hamming(const FaultConfig& a, const FaultConfig& b);

/// Configuration of one depth quadruple indexed by Quadrant. `epsilon` is the
/// largest depth difference still treated as equal.
FaultConfig config_from_quadrants(const std::array<std::int64_t, 4>& quad, std::int64_t epsilon = 0);

/// (nx x ny) map of per-node configurations, OR-combined over all layers.
struct FaultConfigMap
{
    int nx = 0;
    int ny = 0;
    std::vector<FaultConfig> configs;

    FaultConfigMap() = default;
    FaultConfigMap(int nx_, int ny_) : nx(nx_), ny(ny_), configs(std::size_t(nx_) * ny_) {}

    FaultConfig& at(int i, int j) { return configs[std::size_t(j) * nx + i]; }
    const FaultConfig& at(int i, int j) const { return configs[std::size_t(j) * nx + i]; }
    bool operator==(const FaultConfigMap&) const = default;
};

/// Quadruple seen by the fault comparisons: absent quadrants take the value of
/// their fill source so they compare equal to the neighbour across the border.
std::array<std::int64_t, 4> comparison_quadruple(const NodeZField& field, const GridDims& dims, int i, int j, int k);

/// ORs the configurations of node layers [k_begin, k_end) into `map`.
void accumulate_config_map(FaultConfigMap& map, const NodeZField& field, const GridDims& dims, int k_begin,
                           int k_end, std::int64_t epsilon = 0, int k_offset = 0);

FaultConfigMap derive_config_map(const NodeZField& field, const GridDims& dims, std::int64_t epsilon = 0);

/// A group of up to 2x2 fine nodes, members in row-major order
/// (0,0), (1,0), (0,1), (1,1) with the second coordinate pointing north.
struct NodeGroup
{
    std::array<std::optional<FaultConfig>, 4> members;
};

/// OR prediction of the coarse configuration: west from the western members,
/// east from the eastern members, north from the northern members, south from
/// the southern members. A single-column (or single-row) group is its own
/// western and eastern (northern and southern) side.
FaultConfig predict_config(const NodeGroup& group);

/// Index of the member closest to `predicted` in Hamming distance over the
/// four axes; ties go to the lowest index.
int select_node(const NodeGroup& group, const FaultConfig& predicted);

}  // namespace hexashrink
