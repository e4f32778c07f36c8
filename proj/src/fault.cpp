#include <hexashrink/fault.hpp>

#include <cstdlib>

namespace hexashrink {

bool is_admissible(const FaultConfig& c)
{
    return c.active_count() != 1;
}

std::string_view config_name(const FaultConfig& c)
{
    switch (c.active_count()) {
    case 0:
        return "fault-free";
    case 1:
        return "dangling";
    case 2:
        if (c.north && c.south)
            return "straight-NS";
        if (c.east && c.west)
            return "straight-EW";
        if (c.north && c.east)
            return "corner-NE";
        if (c.north && c.west)
            return "corner-NW";
        if (c.south && c.east)
            return "corner-SE";
        return "corner-SW";
    case 3:
        if (!c.south)
            return "T-north";
        if (!c.north)
            return "T-south";
        if (!c.west)
            return "T-east";
        return "T-west";
    default:
        return "cross";
    }
}

int hamming(const FaultConfig& a, const FaultConfig& b)
{
    return int(a.north != b.north) + int(a.south != b.south) + int(a.east != b.east) + int(a.west != b.west);
}

FaultConfig config_from_quadrants(const std::array<std::int64_t, 4>& quad, std::int64_t epsilon)
{
    auto differ = [epsilon](std::int64_t a, std::int64_t b) { return std::llabs(a - b) > epsilon; };
    FaultConfig c;
    c.north = differ(quad[NW], quad[NE]);
    c.south = differ(quad[SW], quad[SE]);
    c.east = differ(quad[NE], quad[SE]);
    c.west = differ(quad[NW], quad[SW]);
    return c;
}

std::array<std::int64_t, 4> comparison_quadruple(const NodeZField& field, const GridDims& dims, int i, int j, int k)
{
    std::array<std::int64_t, 4> quad{};
    for (int q = 0; q < 4; ++q) {
        const int src = quadrant_present(dims, i, j, q) ? q : quadrant_fill_source(dims, i, j, q);
        quad[q] = field.at(i, j, k, src);
    }
    return quad;
}

void accumulate_config_map(FaultConfigMap& map, const NodeZField& field, const GridDims& dims, int k_begin,
                           int k_end, std::int64_t epsilon, int k_offset)
{
    for (int k = k_begin; k < k_end; ++k)
        for (int j = 0; j < map.ny; ++j)
            for (int i = 0; i < map.nx; ++i)
                map.at(i, j) |= config_from_quadrants(comparison_quadruple(field, dims, i, j, k - k_offset), epsilon);
}

FaultConfigMap derive_config_map(const NodeZField& field, const GridDims& dims, std::int64_t epsilon)
{
    FaultConfigMap map(field.nx, field.ny);
    accumulate_config_map(map, field, dims, 0, field.nz, epsilon);
    return map;
}

FaultConfig predict_config(const NodeGroup& group)
{
    const auto& m = group.members;
    const int east_col = (m[1] || m[3]) ? 1 : 0;
    const int north_row = (m[2] || m[3]) ? 1 : 0;
    auto member = [&](int di, int dj) -> const std::optional<FaultConfig>& { return m[di + 2 * dj]; };

    FaultConfig p;
    for (int dj = 0; dj < 2; ++dj) {
        if (const auto& w = member(0, dj))
            p.west |= w->west;
        if (const auto& e = member(east_col, dj))
            p.east |= e->east;
    }
    for (int di = 0; di < 2; ++di) {
        if (const auto& n = member(di, north_row))
            p.north |= n->north;
        if (const auto& s = member(di, 0))
            p.south |= s->south;
    }
    return p;
}

int select_node(const NodeGroup& group, const FaultConfig& predicted)
{
    int best = -1;
    int best_distance = 5;
    for (int s = 0; s < 4; ++s) {
        if (!group.members[s])
            continue;
        const int dist = hamming(*group.members[s], predicted);
        if (dist < best_distance) {
            best = s;
            best_distance = dist;
        }
    }
    return best < 0 ? 0 : best;
}

}  // namespace hexashrink
