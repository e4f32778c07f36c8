#pragma once

#include <hexashrink/grid.hpp>

#include <string>
#include <string_view>

namespace hexashrink {

struct VtkOptions
{
    bool keep_inactive = false;  // also writes an ACTNUM cell array
    std::string title = "hexashrink";
};

/// Legacy ASCII unstructured grid: one hexahedron with 8 private points per
/// cell, corners placed on their pillars, z pointing up (z = -depth).
/// Continuous fields are written as display means, categorical ones as ints.
std::string write_vtk(const CornerPointModel& model, const VtkOptions& options = {});

}  // namespace hexashrink
