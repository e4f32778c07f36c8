#include <hexashrink/property.hpp>
#include <hexashrink/vtk.hpp>

#include <fmt/format.h>

#include <array>

namespace hexashrink {

std::string write_vtk(const CornerPointModel& model, const VtkOptions& options)
{
    const GridDims& d = model.dims;
    const double gscale = double(model.quantization.geometry_scale());
    const auto zcorn = nodez_to_zcorn(model.z, d, model.depth == 0 ? model.top_z : std::nullopt);

    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < d.cell_count(); ++c)
        if (options.keep_inactive || model.actnum[c])
            cells.push_back(c);

    std::string out = fmt::format("# vtk DataFile Version 3.0\n{}\nASCII\nDATASET UNSTRUCTURED_GRID\n", options.title);
    out += fmt::format("POINTS {} double\n", 8 * cells.size());

    // VTK hexahedron order: deeper face first, counter-clockwise from above.
    constexpr std::array<std::array<int, 3>, 8> corners = {{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
                                                           {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}};
    for (std::size_t c : cells) {
        const int i = int(c % d.ni);
        const int j = int(c / d.ni % d.nj);
        const int k = int(c / (std::size_t(d.ni) * d.nj));
        for (const auto& [ci, cj, bottom] : corners) {
            const double z = double(zcorn[zcorn_index(d, i, j, k, ci, cj, bottom)]) / gscale;
            const PillarSet& p = model.pillars;
            const double xc = p.at(i + ci, j + cj, 0) / gscale;
            const double yc = p.at(i + ci, j + cj, 1) / gscale;
            const double zc = p.at(i + ci, j + cj, 2) / gscale;
            const double xf = p.at(i + ci, j + cj, 3) / gscale;
            const double yf = p.at(i + ci, j + cj, 4) / gscale;
            const double zf = p.at(i + ci, j + cj, 5) / gscale;
            const double t = zf != zc ? (z - zc) / (zf - zc) : 0.0;
            out += fmt::format("{} {} {}\n", xc + t * (xf - xc), yc + t * (yf - yc), -z);
        }
    }

    out += fmt::format("CELLS {} {}\n", cells.size(), 9 * cells.size());
    for (std::size_t n = 0; n < cells.size(); ++n) {
        const std::size_t b = 8 * n;
        out += fmt::format("8 {} {} {} {} {} {} {} {}\n", b, b + 1, b + 2, b + 3, b + 4, b + 5, b + 6, b + 7);
    }
    out += fmt::format("CELL_TYPES {}\n", cells.size());
    for (std::size_t n = 0; n < cells.size(); ++n)
        out += "12\n";

    if (model.properties.empty() && !options.keep_inactive)
        return out;
    out += fmt::format("CELL_DATA {}\n", cells.size());
    if (options.keep_inactive) {
        out += "SCALARS ACTNUM int 1\nLOOKUP_TABLE default\n";
        for (std::size_t c : cells)
            out += model.actnum[c] ? "1\n" : "0\n";
    }
    for (const auto& f : model.properties) {
        if (f.kind == PropertyKind::Categorical) {
            out += fmt::format("SCALARS {} int 1\nLOOKUP_TABLE default\n", f.name);
            for (std::size_t c : cells)
                out += fmt::format("{}\n", f.values[c]);
        } else {
            out += fmt::format("SCALARS {} double 1\nLOOKUP_TABLE default\n", f.name);
            const std::int64_t scale = pow10_i64(f.scale_exponent);
            for (std::size_t c : cells) {
                const int i = int(c % d.ni);
                const int j = int(c / d.ni % d.nj);
                const int k = int(c / (std::size_t(d.ni) * d.nj));
                const auto n = aggregated_cell_count(model.base_dims, model.depth, i, j, k);
                out += fmt::format("{}\n", haar_display_value(f.values[c], n, scale));
            }
        }
    }
    return out;
}

}  // namespace hexashrink
