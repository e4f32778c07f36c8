#pragma once

#include <hexashrink/grid.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hexashrink {

enum class FaultAxis { NorthSouth, EastWest };

/// Vertical fault on a node line. A north-south fault at `position` p shifts
/// the cell columns with i >= p down by `throw_m`; the trace can be limited to
/// cell columns [begin, end) along the fault (end < 0 means the full length).
struct SyntheticFault
{
    FaultAxis axis = FaultAxis::NorthSouth;
    int position = 1;
    double throw_m = 50.0;
    int begin = 0;
    int end = -1;
};

struct SyntheticSpec
{
    GridDims dims{8, 8, 4};
    std::uint64_t seed = 1;

    double cell_size = 100.0;
    double top_depth = 1000.0;
    double layer_thickness = 10.0;
    double anticline_amplitude = 0.0;  // crest uplift, metres
    double crest_thinning = 0.0;       // relative layer thinning at the crest, in [0, 1)
    double pillar_tilt = 0.0;          // horizontal offset of pillar floors per metre of depth
    std::vector<SyntheticFault> faults;

    // Every depth is top + a*i + b*j + c*k with small integer steps.
    bool affine_depth = false;

    double active_fraction = 1.0;

    // Layered categories; proportions are from the top down and sum to 1.
    std::vector<double> rock_proportions;
    double boundary_undulation = 0.0;  // amplitude of class boundaries, in layers
    std::string category_keyword = "ROCKTYPE";

    bool porosity = true;
    double porosity_noise = 0.01;

    Quantization quantization;
};

/// Deterministic for a given spec. Throws SpecInvalid on inconsistent specs.
CornerPointModel generate_synthetic(const SyntheticSpec& spec);

/// Named fixtures used by the benchmark and acceptance runs: "smooth",
/// "faulted", "carved", "affine", "histogram", "field-scale".
SyntheticSpec synthetic_preset(const std::string& name);
std::vector<std::string> synthetic_preset_names();

}  // namespace hexashrink
