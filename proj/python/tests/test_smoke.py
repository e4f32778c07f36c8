import numpy as np
import pytest

import hexashrink as hs


def test_presets_listed():
    assert "faulted" in hs.preset_names()


def test_round_trip_every_level():
    model = hs.synthetic("faulted")
    levels = hs.max_levels(model.dims)
    data = hs.decompose(model, levels="max", codec="lz-markov")
    info = hs.inspect(data)
    assert info["levels"] == levels
    assert info["total_bytes"] == len(data)
    assert hs.reconstruct(data) == model
    for level in range(1, levels + 1):
        coarse = hs.reconstruct(data, -level)
        assert coarse.depth == level


def test_arrays_have_grid_shape():
    model = hs.synthetic("carved")
    ni, nj, nk = model.dims
    assert model.actnum.shape == (nk, nj, ni)
    assert model.node_z.shape == (nk + 1, nj + 1, ni + 1, 4)
    poro = model.property("PORO")
    assert poro.dtype == np.int64 and poro.shape == (nk, nj, ni)
    assert model.is_categorical("ROCKTYPE")
    with pytest.raises(KeyError):
        model.property("NOPE")


def test_grdecl_text_round_trip():
    model = hs.synthetic("affine")
    text = hs.write_grdecl(model, "smoke")
    assert hs.parse_grdecl(text) == model


def test_streamed_container_is_identical():
    model = hs.synthetic("faulted")
    assert hs.decompose(model, levels=3, slabs=4) == hs.decompose(model, levels=3)


def test_errors_carry_kind():
    model = hs.synthetic("faulted")
    with pytest.raises(hs.HexaShrinkError) as err:
        hs.decompose(model, levels=12)
    assert err.value.kind == "LevelOutOfRange"
    with pytest.raises(hs.HexaShrinkError) as err:
        hs.reconstruct(b"not a container")
    assert err.value.kind == "BadMagic"


def test_vtk_and_proportions():
    model = hs.synthetic("faulted")
    assert "UNSTRUCTURED_GRID" in hs.write_vtk(model)
    shares = hs.class_proportions(model)["ROCKTYPE"]
    assert abs(sum(shares.values()) - 1.0) < 1e-12
