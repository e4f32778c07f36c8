#include <hexashrink/error.hpp>
#include <hexashrink/geometry.hpp>
#include <hexashrink/lift.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace hexashrink {

namespace {

constexpr std::int64_t kGeometryHeadroom = kWorkingRangeLimit >> 4;

int coarse_nodes(int cells)
{
    return NodeLinePlan(cells).coarse_nodes();
}

bool member_present(const NodeGroupSpan& gi, const NodeGroupSpan& gj, int s)
{
    return (s & 1) < gi.count && (s >> 1) < gj.count;
}

struct SelectedNode
{
    int i;
    int j;
    NodeGroupSpan gi;
    NodeGroupSpan gj;
    int s;
};

SelectedNode selected_node(const GridDims& fine, std::span<const std::uint8_t> selection, int I, int J)
{
    const int nx = coarse_nodes(fine.ni);
    const NodeGroupSpan gi = node_group(fine.ni, I);
    const NodeGroupSpan gj = node_group(fine.nj, J);
    const int s = selection[std::size_t(J) * nx + I];
    if (s > 3 || !member_present(gi, gj, s))
        fail(ErrorKind::CorruptDetail, fmt::format("selection {} at coarse node ({},{}) names no fine node", s, I, J));
    return {gi.first + (s & 1), gj.first + (s >> 1), gi, gj, s};
}

IntArray pillar_array(const PillarSet& p)
{
    IntArray a(p.nx, p.ny, PillarSet::kComponents);
    for (int c = 0; c < PillarSet::kComponents; ++c)
        for (int j = 0; j < p.ny; ++j)
            for (int i = 0; i < p.nx; ++i)
                a.at(i, j, c) = p.at(i, j, c);
    return a;
}

PillarSet pillar_set(const IntArray& a)
{
    PillarSet p(a.extent[0], a.extent[1]);
    for (int c = 0; c < PillarSet::kComponents; ++c)
        for (int j = 0; j < p.ny; ++j)
            for (int i = 0; i < p.nx; ++i)
                p.at(i, j, c) = a.at(i, j, c);
    return p;
}

}  // namespace

NodeGroupSpan node_group(int cells, int K)
{
    if (K == coarse_nodes(cells) - 1)
        return {cells, 1};
    return {2 * K, std::min(2, cells - 2 * K)};
}

NodeGroup gather_group(const FaultConfigMap& configs, int cells_i, int cells_j, int I, int J)
{
    const NodeGroupSpan gi = node_group(cells_i, I);
    const NodeGroupSpan gj = node_group(cells_j, J);
    NodeGroup g;
    for (int s = 0; s < 4; ++s)
        if (member_present(gi, gj, s))
            g.members[s] = configs.at(gi.first + (s & 1), gj.first + (s >> 1));
    return g;
}

std::size_t residuals_per_layer(const GridDims& fine)
{
    return 4 * (fine.pillar_count() - coarsen(fine).pillar_count());
}

std::size_t lift_details_per_layer(const GridDims& fine)
{
    return 4 * coarsen(fine).pillar_count();
}

void check_geometry_headroom(std::span<const std::int64_t> values, const char* what)
{
    for (auto v : values)
        if (v > kGeometryHeadroom || v < -kGeometryHeadroom)
            fail(ErrorKind::OverflowRisk, fmt::format("{} value {} leaves the lifting headroom", what, v));
}

LevelPlan plan_geometry_level(const FaultConfigMap& configs, const PillarSet& fine_pillars, const GridDims& fine)
{
    const int nx = coarse_nodes(fine.ni);
    const int ny = coarse_nodes(fine.nj);
    LevelPlan plan;
    plan.configs = configs;
    plan.selection.resize(std::size_t(nx) * ny);
    for (int J = 0; J < ny; ++J)
        for (int I = 0; I < nx; ++I) {
            const NodeGroup g = gather_group(configs, fine.ni, fine.nj, I, J);
            plan.selection[std::size_t(J) * nx + I] = std::uint8_t(select_node(g, predict_config(g)));
        }

    check_geometry_headroom(fine_pillars.coords, "pillar");
    const AxisSplit along_i = analyze_node_axis(pillar_array(fine_pillars), 0);
    const AxisSplit along_j = analyze_node_axis(along_i.approx, 1);
    plan.coarse_pillars = pillar_set(along_j.approx);
    plan.pillar_details = along_i.details.data;
    plan.pillar_details.insert(plan.pillar_details.end(), along_j.details.data.begin(), along_j.details.data.end());
    return plan;
}

std::int64_t FineWindow::z_at(int i, int j, int k, int q) const
{
    const int local = k - k0;
    if (local < 0 || local >= z->nz)
        fail(ErrorKind::SlabCoverageGap, fmt::format("node layer {} is not resident", k));
    return z->at(i, j, local, q);
}

bool FineWindow::active(int i, int j, int k) const
{
    if (k < 0 || k >= dims.nk)
        return false;
    const int local = k - k0;
    if (local < 0 || local >= cell_layers)
        fail(ErrorKind::SlabCoverageGap, fmt::format("cell layer {} is not resident", k));
    return actnum[(std::size_t(local) * dims.nj + j) * dims.ni + i] != 0;
}

CellWindow FineWindow::property_window(std::size_t f) const
{
    return CellWindow{dims, k0, properties[f]};
}

LevelOutput make_level_output(const GridDims& fine, std::span<const PropertyScheme> schemes)
{
    LevelOutput out;
    out.fine_dims = fine;
    out.coarse_dims = coarsen(fine);
    const GridDims& cd = out.coarse_dims;
    out.coarse_z = NodeZField(cd.nodes_i(), cd.nodes_j(), cd.nodes_k());
    out.coarse_actnum.assign(cd.cell_count(), 0);
    out.geometry.selection.assign(cd.pillar_count(), 0);
    out.geometry.lift_details.assign(std::size_t(NodeLinePlan(fine.nk).details()) * lift_details_per_layer(fine), 0);
    out.geometry.residuals.assign(std::size_t(fine.nodes_k()) * residuals_per_layer(fine), 0);
    out.geometry.fine_actnum.assign(fine.cell_count(), 0);
    for (const auto& s : schemes) {
        out.coarse_properties.emplace_back(cd.cell_count(), 0);
        out.property_details.emplace_back(property_detail_count(s.kind, fine), 0);
    }
    return out;
}

bool coarse_cell_active(const FineWindow& w, const LevelPlan& plan, int I, int J, int K)
{
    const GridDims& fd = w.dims;
    const NodeLinePlan kp(fd.nk);
    auto vertex_active = [&](int fi, int fj, int q, int k) {
        const int ci = fi - 1 + quadrant_di(q);
        const int cj = fj - 1 + quadrant_dj(q);
        if (ci < 0 || ci >= fd.ni || cj < 0 || cj >= fd.nj)
            return false;
        return w.active(ci, cj, k - 1) || w.active(ci, cj, k);
    };
    for (int c = 0; c < 2; ++c) {
        const int k1 = kp.fine_of_coarse(K + c);
        const int k2 = c == 0 ? k1 + 1 : k1 - 1;
        for (int b = 0; b < 2; ++b)
            for (int a = 0; a < 2; ++a) {
                const SelectedNode n = selected_node(fd, plan.selection, I + a, J + b);
                const int q = (1 - a) + 2 * (1 - b);
                if (!vertex_active(n.i, n.j, q, k1) || !vertex_active(n.i, n.j, q, k2))
                    return false;
            }
    }
    return true;
}

void analyze_level_layers(const LevelPlan& plan, std::span<const PropertyScheme> schemes, const FineWindow& w, int b,
                          int e, LevelOutput& out)
{
    const GridDims& fd = w.dims;
    const GridDims& cd = out.coarse_dims;
    const int nx = cd.nodes_i();
    const int ny = cd.nodes_j();
    const NodeLinePlan kp(fd.nk);
    const int n = kp.lifted();
    const int node_end = e == fd.nk ? e + 1 : e;
    auto owned_node = [&](int k) { return k >= b && k < node_end; };

    for (int K = 0; K < kp.coarse_nodes(); ++K) {
        const int kf = kp.fine_of_coarse(K);
        if (!owned_node(kf))
            continue;
        for (int J = 0; J < ny; ++J)
            for (int I = 0; I < nx; ++I) {
                const SelectedNode s = selected_node(fd, plan.selection, I, J);
                for (int q = 0; q < 4; ++q) {
                    auto sample = [&](int t) { return w.z_at(s.i, s.j, t, q); };
                    out.coarse_z.at(I, J, K, q) =
                        K < kp.lifted_approx() ? lift_approx_at(sample, n, K) : sample(fd.nk);
                }
            }
    }

    for (int m = 0; m < kp.details(); ++m) {
        if (!owned_node(kp.fine_of_detail(m)))
            continue;
        for (int J = 0; J < ny; ++J)
            for (int I = 0; I < nx; ++I) {
                const SelectedNode s = selected_node(fd, plan.selection, I, J);
                for (int q = 0; q < 4; ++q) {
                    auto sample = [&](int t) { return w.z_at(s.i, s.j, t, q); };
                    out.geometry.lift_details[((std::size_t(m) * ny + J) * nx + I) * 4 + q] =
                        lift_detail_at(sample, n, m);
                }
            }
    }

    const std::size_t per_layer = residuals_per_layer(fd);
    for (int k = b; k < node_end; ++k) {
        std::size_t at = std::size_t(k) * per_layer;
        for (int J = 0; J < ny; ++J)
            for (int I = 0; I < nx; ++I) {
                const SelectedNode s = selected_node(fd, plan.selection, I, J);
                for (int o = 0; o < 4; ++o) {
                    if (o == s.s || !member_present(s.gi, s.gj, o))
                        continue;
                    const int oi = s.gi.first + (o & 1);
                    const int oj = s.gj.first + (o >> 1);
                    for (int q = 0; q < 4; ++q)
                        out.geometry.residuals[at++] = w.z_at(oi, oj, k, q) - w.z_at(s.i, s.j, k, q);
                }
            }
    }

    for (int k = b; k < e; ++k)
        for (int j = 0; j < fd.nj; ++j)
            for (int i = 0; i < fd.ni; ++i)
                out.geometry.fine_actnum[fd.cell_index(i, j, k)] = w.active(i, j, k) ? 1 : 0;

    const int K_begin = (b + 1) / 2;
    const int K_end = (e + 1) / 2;
    for (int K = K_begin; K < K_end; ++K)
        for (int J = 0; J < cd.nj; ++J)
            for (int I = 0; I < cd.ni; ++I)
                out.coarse_actnum[cd.cell_index(I, J, K)] = coarse_cell_active(w, plan, I, J, K) ? 1 : 0;

    for (std::size_t f = 0; f < schemes.size(); ++f)
        analyze_property_layers(schemes[f], w.property_window(f), K_begin, K_end, out.coarse_properties[f],
                                out.property_details[f]);
}

FineLevel synthesize_level(const GridDims& fine, std::span<const PropertyScheme> schemes, const NodeZField& coarse_z,
                           const PillarSet& coarse_pillars,
                           const std::vector<std::vector<std::int64_t>>& coarse_properties,
                           const GeometryDetail& geometry,
                           const std::vector<std::vector<std::int64_t>>& property_details)
{
    const GridDims cd = coarsen(fine);
    const NodeLinePlan kp(fine.nk);
    const NodeLinePlan ip(fine.ni);
    const NodeLinePlan jp(fine.nj);
    const int nx = cd.nodes_i();
    const int ny = cd.nodes_j();
    const std::size_t pillar_detail_count = std::size_t(ip.details()) * fine.nodes_j() * PillarSet::kComponents +
                                            std::size_t(nx) * jp.details() * PillarSet::kComponents;

    if (coarse_z.nx != nx || coarse_z.ny != ny || coarse_z.nz != cd.nodes_k() ||
        geometry.selection.size() != cd.pillar_count() ||
        geometry.lift_details.size() != std::size_t(kp.details()) * lift_details_per_layer(fine) ||
        geometry.residuals.size() != std::size_t(fine.nodes_k()) * residuals_per_layer(fine) ||
        geometry.fine_actnum.size() != fine.cell_count() || coarse_pillars.nx != nx || coarse_pillars.ny != ny ||
        geometry.pillar_details.size() != pillar_detail_count || coarse_properties.size() != schemes.size() ||
        property_details.size() != schemes.size())
        fail(ErrorKind::CorruptDetail,
             fmt::format("level payloads do not match a {}x{}x{} fine grid", fine.ni, fine.nj, fine.nk));

    FineLevel out;
    out.z = NodeZField(fine.nodes_i(), fine.nodes_j(), fine.nodes_k());
    std::vector<std::int64_t> coarse_col(kp.coarse_nodes());
    std::vector<std::int64_t> detail_col(kp.details());
    std::vector<std::int64_t> fine_col(kp.nodes());
    for (int J = 0; J < ny; ++J)
        for (int I = 0; I < nx; ++I) {
            const SelectedNode s = selected_node(fine, geometry.selection, I, J);
            for (int q = 0; q < 4; ++q) {
                for (int K = 0; K < kp.coarse_nodes(); ++K)
                    coarse_col[K] = coarse_z.at(I, J, K, q);
                for (int m = 0; m < kp.details(); ++m)
                    detail_col[m] = geometry.lift_details[((std::size_t(m) * ny + J) * nx + I) * 4 + q];
                synthesize_node_line(coarse_col, detail_col, fine_col);
                for (int k = 0; k < kp.nodes(); ++k)
                    out.z.at(s.i, s.j, k, q) = fine_col[k];
            }
        }

    std::size_t at = 0;
    for (int k = 0; k < fine.nodes_k(); ++k)
        for (int J = 0; J < ny; ++J)
            for (int I = 0; I < nx; ++I) {
                const SelectedNode s = selected_node(fine, geometry.selection, I, J);
                for (int o = 0; o < 4; ++o) {
                    if (o == s.s || !member_present(s.gi, s.gj, o))
                        continue;
                    const int oi = s.gi.first + (o & 1);
                    const int oj = s.gj.first + (o >> 1);
                    for (int q = 0; q < 4; ++q)
                        out.z.at(oi, oj, k, q) = out.z.at(s.i, s.j, k, q) + geometry.residuals[at++];
                }
            }

    const auto split_at = geometry.pillar_details.begin() +
                          std::ptrdiff_t(std::size_t(ip.details()) * fine.nodes_j() * PillarSet::kComponents);
    AxisSplit along_j{pillar_array(coarse_pillars), IntArray(nx, jp.details(), PillarSet::kComponents)};
    std::copy(split_at, geometry.pillar_details.end(), along_j.details.data.begin());
    AxisSplit along_i{synthesize_node_axis(along_j, 1),
                      IntArray(ip.details(), fine.nodes_j(), PillarSet::kComponents)};
    std::copy(geometry.pillar_details.begin(), split_at, along_i.details.data.begin());
    out.pillars = pillar_set(synthesize_node_axis(along_i, 0));

    out.actnum = geometry.fine_actnum;
    for (std::size_t f = 0; f < schemes.size(); ++f) {
        out.properties.emplace_back(fine.cell_count());
        synthesize_property_level(schemes[f], fine, coarse_properties[f], property_details[f], out.properties.back());
    }
    return out;
}

}  // namespace hexashrink
