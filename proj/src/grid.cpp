#include <hexashrink/error.hpp>
#include <hexashrink/grid.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace hexashrink {

GridDims coarsen(const GridDims& dims)
{
    return {(dims.ni + 1) / 2, (dims.nj + 1) / 2, (dims.nk + 1) / 2};
}

int max_levels(const GridDims& dims)
{
    int m = std::max({dims.ni, dims.nj, dims.nk});
    int lg = 0;
    while ((m >> 1) > 0) {
        m >>= 1;
        ++lg;
    }
    return lg + 1;
}

std::int64_t pow10_i64(int exponent)
{
    if (exponent < 0 || exponent > 18)
        fail(ErrorKind::SpecInvalid, fmt::format("scale exponent {} outside [0,18]", exponent));
    std::int64_t v = 1;
    for (int e = 0; e < exponent; ++e)
        v *= 10;
    return v;
}

std::int64_t Quantization::geometry_scale() const { return pow10_i64(geometry_exponent); }
std::int64_t Quantization::property_scale() const { return pow10_i64(property_exponent); }

bool quadrant_present(const GridDims& dims, int i, int j, int q)
{
    const int ci = i - 1 + quadrant_di(q);
    const int cj = j - 1 + quadrant_dj(q);
    return ci >= 0 && ci < dims.ni && cj >= 0 && cj < dims.nj;
}

int quadrant_fill_source(const GridDims& dims, int i, int j, int q)
{
    for (int partner : {q ^ 1, q ^ 2, q ^ 3}) {
        if (quadrant_present(dims, i, j, partner))
            return partner;
    }
    return q;
}

std::int64_t aggregated_cell_count(const GridDims& base, int depth, int i, int j, int k)
{
    auto cover = [depth](int c, int n0) -> std::int64_t {
        const std::int64_t lo = std::int64_t(c) << depth;
        const std::int64_t hi = std::min<std::int64_t>((std::int64_t(c) + 1) << depth, n0);
        return hi - lo;
    };
    return cover(i, base.ni) * cover(j, base.nj) * cover(k, base.nk);
}

std::size_t zcorn_index(const GridDims& dims, int i, int j, int k, int corner_i, int corner_j, int bottom)
{
    return ((std::size_t(2 * k + bottom) * (2 * dims.nj)) + (2 * j + corner_j)) * (2 * dims.ni)
         + (2 * i + corner_i);
}

namespace {

void fill_absent_quadrants(NodeZField& field, const GridDims& dims)
{
    for (int k = 0; k < field.nz; ++k)
        for (int j = 0; j < field.ny; ++j)
            for (int i = 0; i < field.nx; ++i)
                for (int q = 0; q < 4; ++q)
                    if (!quadrant_present(dims, i, j, q))
                        field.at(i, j, k, q) = field.at(i, j, k, quadrant_fill_source(dims, i, j, q));
}

}  // namespace

NodeZConversion zcorn_to_nodez(std::span<const std::int64_t> zcorn, const GridDims& dims,
                               HorizontalFaultPolicy policy)
{
    if (!dims.valid())
        fail(ErrorKind::DimensionMismatch, "grid dimensions must be positive");
    if (zcorn.size() != 8 * dims.cell_count())
        fail(ErrorKind::DimensionMismatch,
             fmt::format("ZCORN has {} values, expected {}", zcorn.size(), 8 * dims.cell_count()));

    NodeZConversion out;
    out.field = NodeZField(dims.nodes_i(), dims.nodes_j(), dims.nodes_k());
    bool gap = false;

    for (int k = 0; k <= dims.nk; ++k) {
        for (int j = 0; j <= dims.nj; ++j) {
            for (int i = 0; i <= dims.ni; ++i) {
                for (int q = 0; q < 4; ++q) {
                    if (!quadrant_present(dims, i, j, q))
                        continue;
                    const int ci = i - 1 + quadrant_di(q);
                    const int cj = j - 1 + quadrant_dj(q);
                    const int a = 1 - quadrant_di(q);
                    const int b = 1 - quadrant_dj(q);
                    const std::int64_t depth = k == 0 ? zcorn[zcorn_index(dims, ci, cj, 0, a, b, 0)]
                                                      : zcorn[zcorn_index(dims, ci, cj, k - 1, a, b, 1)];
                    out.field.at(i, j, k, q) = depth;
                    if (k > 0 && k < dims.nk) {
                        const std::int64_t top = zcorn[zcorn_index(dims, ci, cj, k, a, b, 0)];
                        if (top != depth) {
                            if (policy == HorizontalFaultPolicy::Reject)
                                fail(ErrorKind::HorizontalFaultViolation,
                                     fmt::format("cell ({},{},{}) top corner differs from the bottom of the "
                                                 "cell above ({} vs {})",
                                                 ci, cj, k, top, depth));
                            gap = true;
                        }
                    }
                }
            }
        }
    }

    if (gap) {
        const std::size_t plane = 4 * std::size_t(dims.ni) * dims.nj;
        std::vector<std::int64_t> tops(plane * std::size_t(dims.nk - 1));
        for (int k = 1; k < dims.nk; ++k) {
            const std::size_t base = zcorn_index(dims, 0, 0, k, 0, 0, 0);
            std::copy_n(zcorn.begin() + std::ptrdiff_t(base), plane, tops.begin() + std::ptrdiff_t((k - 1) * plane));
        }
        out.top_z = std::move(tops);
    }

    fill_absent_quadrants(out.field, dims);
    return out;
}

std::vector<std::int64_t> nodez_to_zcorn(const NodeZField& field, const GridDims& dims,
                                         const std::optional<std::vector<std::int64_t>>& top_z)
{
    if (field.nx != dims.nodes_i() || field.ny != dims.nodes_j() || field.nz != dims.nodes_k()
        || field.values.size() != 4 * dims.node_count())
        fail(ErrorKind::DimensionMismatch, "node field extent does not match grid dimensions");
    const std::size_t plane = 4 * std::size_t(dims.ni) * dims.nj;
    if (top_z && top_z->size() != plane * std::size_t(dims.nk - 1))
        fail(ErrorKind::DimensionMismatch, "top-z side channel has the wrong length");

    std::vector<std::int64_t> zcorn(8 * dims.cell_count());
    for (int k = 0; k < dims.nk; ++k) {
        for (int cj = 0; cj < dims.nj; ++cj) {
            for (int ci = 0; ci < dims.ni; ++ci) {
                for (int b = 0; b < 2; ++b) {
                    for (int a = 0; a < 2; ++a) {
                        const int q = (1 - a) + 2 * (1 - b);
                        const int i = ci + a;
                        const int j = cj + b;
                        zcorn[zcorn_index(dims, ci, cj, k, a, b, 1)] = field.at(i, j, k + 1, q);
                        const std::size_t top = zcorn_index(dims, ci, cj, k, a, b, 0);
                        if (top_z && k > 0)
                            zcorn[top] = (*top_z)[std::size_t(k - 1) * plane + (top - zcorn_index(dims, 0, 0, k, 0, 0, 0))];
                        else
                            zcorn[top] = field.at(i, j, k, q);
                    }
                }
            }
        }
    }
    return zcorn;
}

std::int64_t quantize_value(double x, std::int64_t scale)
{
    if (!std::isfinite(x))
        fail(ErrorKind::OverflowRisk, "non-finite value cannot be quantized");
    const double scaled = std::round(x * double(scale));
    if (std::fabs(scaled) >= double(kWorkingRangeLimit))
        fail(ErrorKind::OverflowRisk, fmt::format("value {} exceeds the 62-bit working range at scale {}", x, scale));
    return static_cast<std::int64_t>(scaled);
}

double dequantize_value(std::int64_t q, std::int64_t scale)
{
    return double(q) / double(scale);
}

std::vector<std::int64_t> distinct_values(std::span<const std::int64_t> values)
{
    std::set<std::int64_t> s(values.begin(), values.end());
    return {s.begin(), s.end()};
}

CornerPointModel quantize_model(const RealModel& real, const Quantization& params, HorizontalFaultPolicy policy)
{
    const GridDims& dims = real.dims;
    if (!dims.valid())
        fail(ErrorKind::DimensionMismatch, "grid dimensions must be positive");
    if (real.coord.size() != 6 * dims.pillar_count())
        fail(ErrorKind::DimensionMismatch, "COORD length mismatch");

    CornerPointModel model;
    model.dims = dims;
    model.base_dims = dims;
    model.quantization = params;

    const std::int64_t gscale = params.geometry_scale();
    model.pillars = PillarSet(dims.nodes_i(), dims.nodes_j());
    for (std::size_t n = 0; n < real.coord.size(); ++n)
        model.pillars.coords[n] = quantize_value(real.coord[n], gscale);

    std::vector<std::int64_t> zq(real.zcorn.size());
    for (std::size_t n = 0; n < real.zcorn.size(); ++n)
        zq[n] = quantize_value(real.zcorn[n], gscale);
    auto conv = zcorn_to_nodez(zq, dims, policy);
    model.z = std::move(conv.field);
    model.top_z = std::move(conv.top_z);

    if (real.actnum.empty())
        model.actnum.assign(dims.cell_count(), 1);
    else if (real.actnum.size() != dims.cell_count())
        fail(ErrorKind::DimensionMismatch, "ACTNUM length mismatch");
    else
        for (auto a : real.actnum)
            model.actnum.push_back(a ? 1 : 0);

    for (const auto& p : real.properties) {
        if (p.values.size() != dims.cell_count())
            fail(ErrorKind::DimensionMismatch, fmt::format("property {} length mismatch", p.name));
        CellPropertyField f;
        f.name = p.name;
        f.kind = p.kind;
        f.values.resize(p.values.size());
        if (p.kind == PropertyKind::Continuous) {
            f.scale_exponent = params.property_exponent;
            const std::int64_t pscale = params.property_scale();
            for (std::size_t n = 0; n < p.values.size(); ++n)
                f.values[n] = quantize_value(p.values[n], pscale);
        }
        else {
            f.scale_exponent = 0;
            for (std::size_t n = 0; n < p.values.size(); ++n) {
                const std::int64_t v = quantize_value(p.values[n], 1);
                if (v < 0 || double(v) != p.values[n])
                    fail(ErrorKind::ValueOutsideUniverse,
                         fmt::format("categorical property {} holds non-class value {}", p.name, p.values[n]));
                f.values[n] = v;
            }
            f.universe = distinct_values(f.values);
        }
        model.properties.push_back(std::move(f));
    }
    return model;
}

ValidationReport validate(const CornerPointModel& model)
{
    ValidationReport report;
    const GridDims& d = model.dims;
    auto extent = [&](const std::string& what, std::size_t got, std::size_t want) {
        if (got != want)
            report.findings.push_back({FindingKind::ExtentMismatch, what,
                                       fmt::format("{} entries, expected {}", got, want)});
    };

    if (!d.valid()) {
        report.findings.push_back({FindingKind::ExtentMismatch, "dims", "non-positive grid dimension"});
        return report;
    }
    extent("pillars", model.pillars.coords.size(), 6 * d.pillar_count());
    extent("z", model.z.values.size(), 4 * d.node_count());
    if (model.z.nx != d.nodes_i() || model.z.ny != d.nodes_j() || model.z.nz != d.nodes_k())
        report.findings.push_back({FindingKind::ExtentMismatch, "z", "node lattice extent mismatch"});
    extent("actnum", model.actnum.size(), d.cell_count());
    for (const auto& p : model.properties)
        extent("property " + p.name, p.values.size(), d.cell_count());
    if (!report.findings.empty())
        return report;

    for (int j = 0; j <= d.nj; ++j) {
        for (int i = 0; i <= d.ni; ++i) {
            bool degenerate = true;
            for (int c = 0; c < 3; ++c)
                degenerate = degenerate && model.pillars.at(i, j, c) == model.pillars.at(i, j, c + 3);
            if (degenerate)
                ++report.degenerate_pillars;

            for (int q = 0; q < 4; ++q) {
                if (!quadrant_present(d, i, j, q))
                    continue;
                for (int k = 0; k < d.nk; ++k) {
                    if (model.z.at(i, j, k + 1, q) < model.z.at(i, j, k, q))
                        report.findings.push_back(
                            {FindingKind::MonotonicityViolation, fmt::format("node ({},{},{}) quadrant {}", i, j, k + 1, q),
                             fmt::format("depth {} above previous {}", model.z.at(i, j, k + 1, q), model.z.at(i, j, k, q))});
                }
            }
        }
    }

    for (const auto& p : model.properties) {
        if (p.kind != PropertyKind::Categorical)
            continue;
        for (std::size_t n = 0; n < p.values.size(); ++n) {
            if (!std::binary_search(p.universe.begin(), p.universe.end(), p.values[n]))
                report.findings.push_back({FindingKind::CategoryOutOfUniverse,
                                           fmt::format("property {} cell {}", p.name, n),
                                           fmt::format("class {} not in universe", p.values[n])});
        }
    }
    return report;
}

}  // namespace hexashrink
