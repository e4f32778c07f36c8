"""Multiresolution lossless compression of corner-point reservoir grids."""

from ._core import (
    GridDims,
    HexaShrinkError,
    Model,
    class_proportions,
    decompose,
    inspect,
    max_levels,
    parse_grdecl,
    preset_names,
    reconstruct,
    synthetic,
    write_grdecl,
    write_vtk,
)

__all__ = [
    "GridDims",
    "HexaShrinkError",
    "Model",
    "class_proportions",
    "decompose",
    "inspect",
    "max_levels",
    "parse_grdecl",
    "preset_names",
    "reconstruct",
    "synthetic",
    "write_grdecl",
    "write_vtk",
]
