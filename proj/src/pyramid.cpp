#include <hexashrink/error.hpp>
#include <hexashrink/pyramid.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <deque>

namespace hexashrink {

std::vector<GridDims> level_dims(const GridDims& base, int levels)
{
    std::vector<GridDims> dims{base};
    for (int l = 0; l < levels; ++l)
        dims.push_back(coarsen(dims.back()));
    return dims;
}

void check_levels(const GridDims& dims, int levels)
{
    const int top = max_levels(dims);
    if (levels < 0 || levels > top)
        fail(ErrorKind::LevelOutOfRange,
             fmt::format("{} levels requested, a {}x{}x{} grid allows 0..{}", levels, dims.ni, dims.nj, dims.nk, top));
}

namespace {

std::vector<PropertyScheme> schemes_of(const std::vector<FieldInfo>& fields)
{
    std::vector<PropertyScheme> s;
    for (const auto& f : fields)
        s.push_back({f.kind, f.universe});
    return s;
}

std::vector<FieldInfo> fields_of(const CornerPointModel& model)
{
    std::vector<FieldInfo> fields;
    for (const auto& p : model.properties)
        fields.push_back({p.name, p.kind, p.scale_exponent, p.universe});
    return fields;
}

PyramidHeader header_of(const GridDims& dims, const Quantization& q, std::vector<FieldInfo> fields, bool has_top_z,
                        const AnalysisOptions& options)
{
    PyramidHeader h;
    h.dims = dims;
    h.levels = options.levels;
    h.quantization = q;
    h.epsilon = options.epsilon;
    h.fields = std::move(fields);
    h.has_top_z = has_top_z;
    h.config_echo = options.config_echo;
    return h;
}

LevelModel take_coarse(LevelOutput& out, PillarSet pillars)
{
    return {std::move(out.coarse_z), std::move(pillars), std::move(out.coarse_actnum),
            std::move(out.coarse_properties)};
}

LevelDetail take_detail(LevelOutput& out, const LevelPlan& plan)
{
    out.geometry.selection = plan.selection;
    out.geometry.pillar_details = plan.pillar_details;
    return {std::move(out.geometry), std::move(out.property_details)};
}

FineWindow whole_window(const GridDims& dims, const LevelModel& m)
{
    FineWindow w;
    w.dims = dims;
    w.k0 = 0;
    w.cell_layers = dims.nk;
    w.z = &m.z;
    w.actnum = m.actnum;
    for (const auto& p : m.properties)
        w.properties.emplace_back(p);
    return w;
}

// Analyzes depths [from, levels) in memory, starting from the model at depth `from`.
void analyze_in_core(Pyramid& pyr, LevelModel current, int from)
{
    const auto schemes = schemes_of(pyr.header.fields);
    const auto dims = level_dims(pyr.header.dims, pyr.header.levels);
    for (int l = from; l < pyr.header.levels; ++l) {
        check_geometry_headroom(current.z.values, "depth");
        const LevelPlan plan =
            plan_geometry_level(derive_config_map(current.z, dims[l], pyr.header.epsilon), current.pillars, dims[l]);
        LevelOutput out = make_level_output(dims[l], schemes);
        analyze_level_layers(plan, schemes, whole_window(dims[l], current), 0, dims[l].nk, out);
        pyr.details.push_back(take_detail(out, plan));
        current = take_coarse(out, plan.coarse_pillars);
    }
    pyr.coarsest = std::move(current);
}

LevelModel level_model_of(const CornerPointModel& model)
{
    std::vector<std::vector<std::int64_t>> props;
    for (const auto& p : model.properties)
        props.push_back(p.values);
    return {model.z, model.pillars, model.actnum, std::move(props)};
}

void check_model_extents(const CornerPointModel& model)
{
    const GridDims& d = model.dims;
    if (!d.valid() || model.z.nx != d.nodes_i() || model.z.ny != d.nodes_j() || model.z.nz != d.nodes_k() ||
        model.pillars.nx != d.nodes_i() || model.pillars.ny != d.nodes_j() || model.actnum.size() != d.cell_count())
        fail(ErrorKind::DimensionMismatch, "model arrays do not match the grid dimensions");
    for (const auto& p : model.properties)
        if (p.values.size() != d.cell_count())
            fail(ErrorKind::DimensionMismatch, fmt::format("property {} has {} values for {} cells", p.name,
                                                           p.values.size(), d.cell_count()));
}

}  // namespace

Pyramid analyze_pyramid(const CornerPointModel& model, const AnalysisOptions& options)
{
    check_model_extents(model);
    check_levels(model.dims, options.levels);
    Pyramid pyr;
    pyr.header = header_of(model.dims, model.quantization, fields_of(model), model.top_z.has_value(), options);
    pyr.top_z = model.top_z;
    pyr.opaque_keywords = model.opaque_keywords;
    analyze_in_core(pyr, level_model_of(model), 0);
    return pyr;
}

Pyramid raw_pyramid(const CornerPointModel& model, const std::string& config_echo)
{
    AnalysisOptions options;
    options.levels = 0;
    options.config_echo = config_echo;
    return analyze_pyramid(model, options);
}

CornerPointModel synthesize_to_level(const Pyramid& pyr, int depth)
{
    const PyramidHeader& h = pyr.header;
    if (depth < 0 || depth > h.levels)
        fail(ErrorKind::LevelOutOfRange, fmt::format("level -{} requested, the container holds 0..-{}", depth, h.levels));
    for (const auto& a : pyr.absent) {
        const auto kind = ChunkKind(a.kind);
        const bool needed = kind == ChunkKind::Approx ? a.depth == h.levels
                            : kind == ChunkKind::Extra ? depth == 0
                                                       : a.depth > depth;
        if (needed)
            fail(ErrorKind::MissingChunk, fmt::format("chunk {} is needed for level {} but absent", a.name, -depth));
    }
    if (pyr.details.size() != std::size_t(h.levels))
        fail(ErrorKind::MissingChunk, "detail levels are missing");

    const auto dims = level_dims(h.dims, h.levels);
    const auto schemes = schemes_of(h.fields);
    LevelModel current = pyr.coarsest;
    for (int l = h.levels; l > depth; --l) {
        const LevelDetail& d = pyr.details[l - 1];
        FineLevel fine = synthesize_level(dims[l - 1], schemes, current.z, current.pillars, current.properties,
                                          d.geometry, d.properties);
        current = {std::move(fine.z), std::move(fine.pillars), std::move(fine.actnum), std::move(fine.properties)};
    }

    CornerPointModel model;
    model.dims = dims[depth];
    model.quantization = h.quantization;
    model.pillars = std::move(current.pillars);
    model.z = std::move(current.z);
    model.actnum = std::move(current.actnum);
    for (std::size_t f = 0; f < h.fields.size(); ++f) {
        const FieldInfo& info = h.fields[f];
        model.properties.push_back(
            {info.name, info.kind, info.scale_exponent, std::move(current.properties[f]), info.universe});
    }
    if (depth == 0) {
        model.top_z = pyr.top_z;
        model.opaque_keywords = pyr.opaque_keywords;
    }
    model.depth = depth;
    model.base_dims = h.dims;
    return model;
}

// ---------------------------------------------------------------------------

ModelSlabSource::ModelSlabSource(const CornerPointModel& model, std::vector<std::pair<int, int>> ranges)
    : model_(model), ranges_(std::move(ranges))
{
}

SlabModelInfo ModelSlabSource::info() const
{
    return {model_.dims, model_.quantization, model_.pillars, fields_of(model_), model_.top_z,
            model_.opaque_keywords};
}

Slab ModelSlabSource::read(std::size_t index) const
{
    const auto [b, e] = ranges_.at(index);
    const GridDims& d = model_.dims;
    Slab s;
    s.k_begin = b;
    s.k_end = e;
    const std::size_t node_plane = d.pillar_count() * 4;
    s.z = NodeZField(model_.z.nx, model_.z.ny, e - b + 1);
    std::copy(model_.z.values.begin() + std::ptrdiff_t(b * node_plane),
              model_.z.values.begin() + std::ptrdiff_t((e + 1) * node_plane), s.z.values.begin());
    const std::size_t plane = std::size_t(d.ni) * d.nj;
    s.actnum.assign(model_.actnum.begin() + std::ptrdiff_t(b * plane), model_.actnum.begin() + std::ptrdiff_t(e * plane));
    for (const auto& p : model_.properties)
        s.properties.emplace_back(p.values.begin() + std::ptrdiff_t(b * plane),
                                  p.values.begin() + std::ptrdiff_t(e * plane));
    return s;
}

std::vector<std::pair<int, int>> even_slabs(int nk, int count)
{
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < count; ++s)
        out.emplace_back(int(std::int64_t(nk) * s / count), int(std::int64_t(nk) * (s + 1) / count));
    return out;
}

namespace {

void check_coverage(const std::vector<std::pair<int, int>>& ranges, int nk)
{
    if (ranges.empty())
        fail(ErrorKind::SlabCoverageGap, "no slabs declared");
    int expect = 0;
    for (const auto& [b, e] : ranges) {
        if (b != expect)
            fail(ErrorKind::SlabCoverageGap,
                 fmt::format("slab [{}, {}) does not start where the previous one ended ({})", b, e, expect));
        if (e <= b)
            fail(ErrorKind::SlabCoverageGap, fmt::format("slab [{}, {}) is empty", b, e));
        if (ranges.size() > 1 && e - b < 2)
            fail(ErrorKind::SlabCoverageGap,
                 fmt::format("slab [{}, {}) is thinner than the two-layer halo it must provide", b, e));
        expect = e;
    }
    if (expect != nk)
        fail(ErrorKind::SlabCoverageGap, fmt::format("slabs end at layer {}, the grid has {}", expect, nk));
}

void check_slab(const Slab& s, const SlabModelInfo& info, int b, int e)
{
    const GridDims& d = info.dims;
    const std::size_t cells = std::size_t(d.ni) * d.nj * (e - b);
    bool ok = s.k_begin == b && s.k_end == e && s.z.nx == d.nodes_i() && s.z.ny == d.nodes_j() &&
              s.z.nz == e - b + 1 && s.actnum.size() == cells && s.properties.size() == info.fields.size();
    for (const auto& p : s.properties)
        ok = ok && p.size() == cells;
    if (!ok)
        fail(ErrorKind::SlabCoverageGap, fmt::format("slab [{}, {}) does not match its declaration", b, e));
}

// Contiguous copy of cell layers [lo, hi) and node layers [lo, hi] out of the
// resident slabs.
struct AssembledWindow
{
    NodeZField z;
    std::vector<std::uint8_t> actnum;
    std::vector<std::vector<std::int64_t>> properties;
};

AssembledWindow assemble(const std::deque<Slab>& resident, const GridDims& d, int lo, int hi)
{
    AssembledWindow w;
    w.z = NodeZField(d.nodes_i(), d.nodes_j(), hi - lo + 1);
    const std::size_t node_plane = d.pillar_count() * 4;
    const std::size_t plane = std::size_t(d.ni) * d.nj;
    const std::size_t field_count = resident.front().properties.size();
    w.actnum.resize((hi - lo) * plane);
    w.properties.assign(field_count, std::vector<std::int64_t>((hi - lo) * plane));
    for (const Slab& s : resident) {
        const int nb = std::max(s.k_begin, lo);
        for (int k = nb; k <= std::min(s.k_end, hi); ++k)
            std::copy_n(s.z.values.begin() + std::ptrdiff_t((k - s.k_begin) * node_plane), node_plane,
                        w.z.values.begin() + std::ptrdiff_t((k - lo) * node_plane));
        for (int k = nb; k < std::min(s.k_end, hi); ++k) {
            std::copy_n(s.actnum.begin() + std::ptrdiff_t((k - s.k_begin) * plane), plane,
                        w.actnum.begin() + std::ptrdiff_t((k - lo) * plane));
            for (std::size_t f = 0; f < field_count; ++f)
                std::copy_n(s.properties[f].begin() + std::ptrdiff_t((k - s.k_begin) * plane), plane,
                            w.properties[f].begin() + std::ptrdiff_t((k - lo) * plane));
        }
    }
    return w;
}

}  // namespace

Pyramid analyze_streaming(const SlabSource& source, const AnalysisOptions& options, const WindowHook& hook)
{
    const SlabModelInfo info = source.info();
    const GridDims& d = info.dims;
    const auto ranges = source.ranges();
    check_levels(d, options.levels);
    check_coverage(ranges, d.nk);
    if (info.pillars.nx != d.nodes_i() || info.pillars.ny != d.nodes_j())
        fail(ErrorKind::DimensionMismatch, "pillar lattice does not match the grid dimensions");

    Pyramid pyr;
    pyr.header = header_of(d, info.quantization, info.fields, info.top_z.has_value(), options);
    pyr.top_z = info.top_z;
    pyr.opaque_keywords = info.opaque_keywords;
    if (options.levels == 0) {
        // Nothing to analyze: the coarsest level is the model itself.
        LevelModel whole;
        whole.pillars = info.pillars;
        std::deque<Slab> all;
        for (std::size_t s = 0; s < ranges.size(); ++s) {
            all.push_back(source.read(s));
            check_slab(all.back(), info, ranges[s].first, ranges[s].second);
        }
        AssembledWindow w = assemble(all, d, 0, d.nk);
        if (hook)
            hook(0, d.nk);
        pyr.coarsest = {std::move(w.z), info.pillars, std::move(w.actnum), std::move(w.properties)};
        return pyr;
    }

    FaultConfigMap configs(d.nodes_i(), d.nodes_j());
    for (std::size_t s = 0; s < ranges.size(); ++s) {
        const Slab slab = source.read(s);
        check_slab(slab, info, ranges[s].first, ranges[s].second);
        check_geometry_headroom(slab.z.values, "depth");
        const int node_end = slab.k_end == d.nk ? slab.k_end + 1 : slab.k_end;
        accumulate_config_map(configs, slab.z, d, slab.k_begin, node_end, options.epsilon, slab.k_begin);
    }
    const LevelPlan plan = plan_geometry_level(configs, info.pillars, d);

    const auto schemes = schemes_of(info.fields);
    LevelOutput out = make_level_output(d, schemes);
    std::deque<Slab> resident;
    std::size_t next = 0;
    for (std::size_t s = 0; s < ranges.size(); ++s) {
        const auto [b, e] = ranges[s];
        const int lo = std::max(b - 2, 0);
        const int hi = std::min(e + 2, d.nk);
        while (next < ranges.size() && ranges[next].first < hi) {
            resident.push_back(source.read(next));
            check_slab(resident.back(), info, ranges[next].first, ranges[next].second);
            ++next;
        }
        while (resident.front().k_end <= lo)
            resident.pop_front();

        AssembledWindow aw = assemble(resident, d, lo, hi);
        if (hook)
            hook(lo, hi);
        FineWindow w;
        w.dims = d;
        w.k0 = lo;
        w.cell_layers = hi - lo;
        w.z = &aw.z;
        w.actnum = aw.actnum;
        for (const auto& p : aw.properties)
            w.properties.emplace_back(p);
        analyze_level_layers(plan, schemes, w, b, e, out);
    }

    pyr.details.push_back(take_detail(out, plan));
    analyze_in_core(pyr, take_coarse(out, plan.coarse_pillars), 1);
    return pyr;
}

}  // namespace hexashrink
