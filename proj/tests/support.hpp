#pragma once

#include <hexashrink/synthetic.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace hexashrink::testing {

inline std::vector<std::int64_t> random_signal(std::mt19937_64& rng, int n, std::int64_t lo, std::int64_t hi)
{
    std::uniform_int_distribution<std::int64_t> v(lo, hi);
    std::vector<std::int64_t> z(static_cast<std::size_t>(n));
    for (auto& x : z)
        x = v(rng);
    return z;
}

/// Random generator spec: dims in [1, max_dim], 0-3 faults when every axis
/// has at least 2 cells, activity density in [0.2, 1], one categorical and one
/// continuous field.
inline SyntheticSpec random_spec(std::mt19937_64& rng, int max_dim = 33)
{
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto integer = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    SyntheticSpec s;
    s.dims = {integer(1, max_dim), integer(1, max_dim), integer(1, max_dim)};
    s.seed = rng();
    s.cell_size = uniform(20, 200);
    s.layer_thickness = uniform(0.5, 20);
    s.anticline_amplitude = uniform(0, 80);
    s.crest_thinning = uniform(0, 0.5);
    s.pillar_tilt = integer(0, 1) ? uniform(-0.2, 0.2) : 0.0;
    s.active_fraction = uniform(0.2, 1.0);
    if (s.dims.ni >= 2 && s.dims.nj >= 2 && s.dims.nk >= 2) {
        const int faults = integer(0, 3);
        for (int f = 0; f < faults; ++f) {
            SyntheticFault fault;
            fault.axis = integer(0, 1) ? FaultAxis::NorthSouth : FaultAxis::EastWest;
            const int across = fault.axis == FaultAxis::NorthSouth ? s.dims.ni : s.dims.nj;
            const int along = fault.axis == FaultAxis::NorthSouth ? s.dims.nj : s.dims.ni;
            fault.position = integer(1, across - 1);
            fault.throw_m = uniform(-60, 60);
            if (integer(0, 1)) {
                fault.begin = integer(0, along - 1);
                fault.end = integer(fault.begin + 1, along);
            }
            s.faults.push_back(fault);
        }
    }
    const int classes = integer(2, 5);
    s.rock_proportions.assign(std::size_t(classes), 1.0 / classes);
    s.rock_proportions.back() = 1.0;
    for (int c = 0; c + 1 < classes; ++c)
        s.rock_proportions.back() -= s.rock_proportions[std::size_t(c)];
    s.boundary_undulation = uniform(0, 3);
    s.porosity_noise = uniform(0, 0.05);
    return s;
}

}  // namespace hexashrink::testing
