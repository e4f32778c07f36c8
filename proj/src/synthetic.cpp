#include <hexashrink/error.hpp>
#include <hexashrink/synthetic.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <iterator>
#include <limits>
#include <random>

namespace hexashrink {

namespace {

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) from the top 53 bits; identical on every platform.
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
    double symmetric() { return 2.0 * uniform() - 1.0; }

private:
    std::mt19937_64 engine_;
};

/// Sum of a few plane waves with random directions and phases, scaled to
/// unit peak amplitude.
class SmoothField
{
public:
    SmoothField(Rng& rng, int waves, double min_wavelength, double max_wavelength)
    {
        for (int w = 0; w < waves; ++w) {
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            const double wavelength = min_wavelength + (max_wavelength - min_wavelength) * rng.uniform();
            const double k = 2.0 * std::numbers::pi / wavelength;
            waves_.push_back({k * std::cos(angle), k * std::sin(angle), 2.0 * std::numbers::pi * rng.uniform()});
        }
    }

    double operator()(double x, double y) const
    {
        if (waves_.empty())
            return 0.0;
        double s = 0.0;
        for (const auto& w : waves_)
            s += std::sin(w.kx * x + w.ky * y + w.phase);
        return s / double(waves_.size());
    }

private:
    struct Wave
    {
        double kx, ky, phase;
    };
    std::vector<Wave> waves_;
};

void check_spec(const SyntheticSpec& s)
{
    const GridDims& d = s.dims;
    auto bad = [](const std::string& what) { fail(ErrorKind::SpecInvalid, what); };
    if (!d.valid())
        bad("dimensions must be positive");
    if (!(s.cell_size > 0) || !(s.layer_thickness > 0))
        bad("cell size and layer thickness must be positive");
    if (!(s.crest_thinning >= 0 && s.crest_thinning < 1))
        bad("crest thinning must lie in [0, 1)");
    if (!(s.active_fraction > 0 && s.active_fraction <= 1))
        bad("active fraction must lie in (0, 1]");
    if (!s.faults.empty() && (d.ni < 2 || d.nj < 2 || d.nk < 2))
        bad("faulted specs need at least 2x2x2 cells");
    for (const auto& f : s.faults) {
        const int across = f.axis == FaultAxis::NorthSouth ? d.ni : d.nj;
        const int along = f.axis == FaultAxis::NorthSouth ? d.nj : d.ni;
        if (f.position < 1 || f.position >= across)
            bad(fmt::format("fault position {} outside [1, {}]", f.position, across - 1));
        const int end = f.end < 0 ? along : f.end;
        if (f.begin < 0 || f.begin >= end || end > along)
            bad(fmt::format("fault trace [{}, {}) outside [0, {}]", f.begin, end, along));
        if (!std::isfinite(f.throw_m))
            bad("fault throw must be finite");
    }
    if (!s.rock_proportions.empty()) {
        double sum = 0;
        for (double p : s.rock_proportions) {
            if (!(p >= 0))
                bad("rock proportions must be non-negative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            bad(fmt::format("rock proportions sum to {}, expected 1", sum));
    }
}

double column_throw(const SyntheticSpec& s, int ci, int cj)
{
    double t = 0;
    for (const auto& f : s.faults) {
        const bool ns = f.axis == FaultAxis::NorthSouth;
        const int across = ns ? ci : cj;
        const int along = ns ? cj : ci;
        const int end = f.end < 0 ? (ns ? s.dims.nj : s.dims.ni) : f.end;
        if (across >= f.position && along >= f.begin && along < end)
            t += f.throw_m;
    }
    return t;
}

}  // namespace

CornerPointModel generate_synthetic(const SyntheticSpec& s)
{
    check_spec(s);
    const GridDims& d = s.dims;
    Rng rng(s.seed);

    const double width = d.ni * s.cell_size;
    const double height = d.nj * s.cell_size;
    auto bump = [&](double x, double y) {
        const double u = (x - 0.5 * width) / (0.5 * width);
        const double v = (y - 0.5 * height) / (0.5 * height);
        return std::exp(-1.5 * (u * u + v * v));
    };
    const double affine_step = std::max(1.0, std::round(s.layer_thickness));
    auto horizon = [&](int i, int j, int k) {
        if (s.affine_depth)
            return std::round(s.top_depth) + 2.0 * i + 3.0 * j + affine_step * k;
        const double b = bump(i * s.cell_size, j * s.cell_size);
        return s.top_depth - s.anticline_amplitude * b + k * s.layer_thickness * (1.0 - s.crest_thinning * b);
    };

    RealModel real;
    real.dims = d;
    real.zcorn.resize(8 * d.cell_count());
    double zmin = std::numeric_limits<double>::max();
    double zmax = std::numeric_limits<double>::lowest();
    for (int k = 0; k < d.nk; ++k)
        for (int j = 0; j < d.nj; ++j)
            for (int i = 0; i < d.ni; ++i) {
                const double t = column_throw(s, i, j);
                for (int bottom = 0; bottom < 2; ++bottom)
                    for (int cj = 0; cj < 2; ++cj)
                        for (int ci = 0; ci < 2; ++ci) {
                            const double z = horizon(i + ci, j + cj, k + bottom) + t;
                            real.zcorn[zcorn_index(d, i, j, k, ci, cj, bottom)] = z;
                            zmin = std::min(zmin, z);
                            zmax = std::max(zmax, z);
                        }
            }

    const double ceil_z = std::floor(zmin) - 10.0;
    const double floor_z = std::ceil(zmax) + 10.0;
    real.coord.reserve(6 * d.pillar_count());
    for (int j = 0; j <= d.nj; ++j)
        for (int i = 0; i <= d.ni; ++i) {
            const double x = i * s.cell_size;
            const double y = j * s.cell_size;
            const double shift = s.pillar_tilt * (floor_z - ceil_z);
            real.coord.insert(real.coord.end(), {x, y, ceil_z, x + shift, y + 0.5 * shift, floor_z});
        }

    // Activity: keep the cells closest to the centre of the volume, carving
    // the lateral boundary first, with a little noise on the cut.
    const std::size_t n = d.cell_count();
    std::vector<double> score(n);
    for (int k = 0; k < d.nk; ++k)
        for (int j = 0; j < d.nj; ++j)
            for (int i = 0; i < d.ni; ++i) {
                const double u = (i + 0.5) / d.ni - 0.5;
                const double v = (j + 0.5) / d.nj - 0.5;
                const double w = (k + 0.5) / d.nk - 0.5;
                score[d.cell_index(i, j, k)] = 4.0 * (u * u + v * v) + 0.5 * w * w + 0.15 * rng.uniform();
            }
    real.actnum.assign(n, 1);
    if (s.active_fraction < 1.0) {
        const auto keep = std::size_t(std::max<long>(1, std::lround(s.active_fraction * double(n))));
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
        for (std::size_t r = keep; r < n; ++r)
            real.actnum[order[r]] = 0;
    }

    // Categories follow the layering, with undulating boundaries.
    std::vector<int> category(n, 0);
    const SmoothField boundary(rng, 3, 4.0 * s.cell_size, 0.5 * std::max(width, height) + 4.0 * s.cell_size);
    if (!s.rock_proportions.empty()) {
        std::vector<double> cumulative;
        std::partial_sum(s.rock_proportions.begin(), s.rock_proportions.end(), std::back_inserter(cumulative));
        for (int k = 0; k < d.nk; ++k)
            for (int j = 0; j < d.nj; ++j)
                for (int i = 0; i < d.ni; ++i) {
                    const double lift =
                        s.boundary_undulation * boundary((i + 0.5) * s.cell_size, (j + 0.5) * s.cell_size);
                    const double depth = std::clamp((k + 0.5 + lift) / d.nk, 0.0, 1.0);
                    int c = 0;
                    while (c + 1 < int(cumulative.size()) && depth >= cumulative[c])
                        ++c;
                    category[d.cell_index(i, j, k)] = c;
                }
        real.properties.push_back({s.category_keyword, PropertyKind::Categorical, {}});
        for (int c : category)
            real.properties.back().values.push_back(double(c + 1));
    }

    if (s.porosity) {
        const SmoothField trend(rng, 4, 6.0 * s.cell_size, std::max(width, height) + 6.0 * s.cell_size);
        RealPropertyField poro{"PORO", PropertyKind::Continuous, {}};
        poro.values.reserve(n);
        for (int k = 0; k < d.nk; ++k)
            for (int j = 0; j < d.nj; ++j)
                for (int i = 0; i < d.ni; ++i) {
                    const int c = category[d.cell_index(i, j, k)];
                    const double base = 0.28 - 0.05 * c - 0.002 * k;
                    const double smooth = 0.03 * trend((i + 0.5) * s.cell_size, (j + 0.5) * s.cell_size);
                    const double p = base + smooth + s.porosity_noise * rng.symmetric();
                    poro.values.push_back(std::clamp(p, 0.005, 0.45));
                }
        real.properties.push_back(std::move(poro));
    }

    return quantize_model(real, s.quantization);
}

std::vector<std::string> synthetic_preset_names()
{
    return {"smooth", "faulted", "carved", "affine", "histogram", "field-scale"};
}

SyntheticSpec synthetic_preset(const std::string& name)
{
    SyntheticSpec s;
    if (name == "smooth") {
        s.dims = {64, 64, 64};
        s.seed = 7;
        s.anticline_amplitude = 60.0;
        s.rock_proportions = {0.4, 0.3, 0.2, 0.1};
        s.boundary_undulation = 2.0;
        s.porosity_noise = 0.0;
    } else if (name == "faulted") {
        s.dims = {32, 32, 16};
        s.seed = 11;
        s.anticline_amplitude = 30.0;
        s.faults = {{FaultAxis::NorthSouth, 16, 50.0, 0, -1}};
        s.rock_proportions = {0.5, 0.5};
    } else if (name == "carved") {
        s.dims = {48, 40, 20};
        s.seed = 13;
        s.anticline_amplitude = 40.0;
        s.active_fraction = 0.2;
        s.rock_proportions = {0.4, 0.3, 0.3};
        s.boundary_undulation = 1.5;
    } else if (name == "affine") {
        s.dims = {48, 48, 24};
        s.seed = 17;
        s.affine_depth = true;
        s.rock_proportions = {0.6, 0.4};
    } else if (name == "histogram") {
        s.dims = {64, 64, 32};
        s.seed = 19;
        s.anticline_amplitude = 40.0;
        s.rock_proportions = {0.4, 0.3, 0.2, 0.1};
        s.boundary_undulation = 4.0;
    } else if (name == "field-scale") {
        s.dims = {80, 45, 26};
        s.seed = 23;
        s.anticline_amplitude = 50.0;
        s.crest_thinning = 0.1;
        s.faults = {{FaultAxis::NorthSouth, 30, 40.0, 0, -1}, {FaultAxis::EastWest, 20, 25.0, 10, 60}};
        s.active_fraction = 0.9;
        s.rock_proportions = {0.4, 0.3, 0.2, 0.1};
        s.boundary_undulation = 2.0;
    } else {
        fail(ErrorKind::SpecInvalid, fmt::format("unknown fixture '{}'", name));
    }
    return s;
}

}  // namespace hexashrink
