#include <hexashrink/codec.hpp>
#include <hexashrink/container.hpp>
#include <hexashrink/error.hpp>
#include <hexashrink/grdecl.hpp>
#include <hexashrink/pyramid.hpp>
#include <hexashrink/report.hpp>
#include <hexashrink/synthetic.hpp>
#include <hexashrink/vtk.hpp>

#include <fmt/format.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hexashrink;

namespace {

py::array_t<std::int64_t> int_array(const std::vector<std::int64_t>& v, std::vector<py::ssize_t> shape)
{
    py::array_t<std::int64_t> a(shape);
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

std::span<const std::uint8_t> as_span(const py::bytes& b)
{
    const std::string_view view = b;
    return {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()};
}

Pyramid decompose(const CornerPointModel& model, int levels, std::int64_t epsilon, int slabs)
{
    AnalysisOptions options{levels, epsilon, {}};
    if (slabs > 1)
        return analyze_streaming(ModelSlabSource(model, even_slabs(model.dims.nk, slabs)), options);
    return analyze_pyramid(model, options);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Multiresolution lossless compression of corner-point grids";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result([&] { return py::exception<Error>(m, "HexaShrinkError"); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            py::object instance = type(e.what());
            instance.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(type.ptr(), instance.ptr());
        }
    });

    py::class_<GridDims>(m, "GridDims")
        .def(py::init<int, int, int>(), py::arg("ni"), py::arg("nj"), py::arg("nk"))
        .def_readwrite("ni", &GridDims::ni)
        .def_readwrite("nj", &GridDims::nj)
        .def_readwrite("nk", &GridDims::nk)
        .def("cell_count", &GridDims::cell_count)
        .def("__eq__", [](const GridDims& a, const GridDims& b) { return a == b; })
        .def("__iter__", [](const GridDims& d) { return py::iter(py::make_tuple(d.ni, d.nj, d.nk)); })
        .def("__repr__", [](const GridDims& d) { return fmt::format("GridDims({}, {}, {})", d.ni, d.nj, d.nk); });

    py::class_<CornerPointModel>(m, "Model")
        .def_readonly("dims", &CornerPointModel::dims)
        .def_readonly("depth", &CornerPointModel::depth)
        .def_property_readonly("geometry_exponent",
                               [](const CornerPointModel& c) { return c.quantization.geometry_exponent; })
        .def_property_readonly("actnum",
                               [](const CornerPointModel& c) {
                                   py::array_t<std::uint8_t> a({c.dims.nk, c.dims.nj, c.dims.ni});
                                   std::copy(c.actnum.begin(), c.actnum.end(), a.mutable_data());
                                   return a;
                               })
        .def_property_readonly("node_z",
                               [](const CornerPointModel& c) {
                                   return int_array(c.z.values, {c.z.nz, c.z.ny, c.z.nx, 4});
                               })
        .def_property_readonly("pillars",
                               [](const CornerPointModel& c) {
                                   return int_array(c.pillars.coords, {c.pillars.ny, c.pillars.nx, 6});
                               })
        .def_property_readonly("property_names",
                               [](const CornerPointModel& c) {
                                   std::vector<std::string> names;
                                   for (const auto& f : c.properties)
                                       names.push_back(f.name);
                                   return names;
                               })
        .def(
            "property",
            [](const CornerPointModel& c, const std::string& name) {
                for (const auto& f : c.properties)
                    if (f.name == name)
                        return int_array(f.values, {c.dims.nk, c.dims.nj, c.dims.ni});
                throw py::key_error(name);
            },
            py::arg("name"), "Fixed-point cell values, shape (nk, nj, ni)")
        .def(
            "is_categorical",
            [](const CornerPointModel& c, const std::string& name) {
                for (const auto& f : c.properties)
                    if (f.name == name)
                        return f.kind == PropertyKind::Categorical;
                throw py::key_error(name);
            },
            py::arg("name"))
        .def("__eq__", [](const CornerPointModel& a, const CornerPointModel& b) { return a == b; });

    m.def(
        "parse_grdecl",
        [](const std::string& text, int geometry_exponent, int property_exponent) {
            ParseOptions o;
            o.quantization = {geometry_exponent, property_exponent};
            return parse_grdecl(text, o);
        },
        py::arg("text"), py::arg("geometry_exponent") = 3, py::arg("property_exponent") = 6);
    m.def("write_grdecl", [](const CornerPointModel& model, const std::string& comment) {
        return write_grdecl(model, comment);
    }, py::arg("model"), py::arg("comment") = "");
    m.def(
        "synthetic",
        [](const std::string& preset, std::optional<std::uint64_t> seed) {
            auto spec = synthetic_preset(preset);
            if (seed)
                spec.seed = *seed;
            return generate_synthetic(spec);
        },
        py::arg("preset") = "faulted", py::arg("seed") = py::none());
    m.def("preset_names", &synthetic_preset_names);
    m.def("max_levels", &max_levels, py::arg("dims"));

    m.def(
        "decompose",
        [](const CornerPointModel& model, py::object levels, const std::string& codec, std::int64_t epsilon,
           int slabs) {
            const int l = py::isinstance<py::str>(levels) && levels.cast<std::string>() == "max"
                              ? max_levels(model.dims)
                              : levels.cast<int>();
            const auto pyr = decompose(model, l, epsilon, slabs);
            const auto bytes = serialize(pyr, CodecPlan::uniform(codec_from_name(codec)));
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("model"), py::arg("levels") = 1, py::arg("codec") = "deflate", py::arg("epsilon") = 0,
        py::arg("slabs") = 1, "Container bytes of the multiresolution decomposition");
    m.def(
        "reconstruct",
        [](const py::bytes& data, int level) { return synthesize_to_level(deserialize(as_span(data)), -level); },
        py::arg("data"), py::arg("level") = 0, "Model at level 0, -1, ..., -L");
    m.def(
        "inspect",
        [](const py::bytes& data) {
            const auto info = inspect_container(as_span(data));
            py::dict d;
            d["dims"] = info.header.dims;
            d["levels"] = info.header.levels;
            d["config_echo"] = info.header.config_echo;
            d["total_bytes"] = info.total_bytes;
            py::list chunks;
            for (const auto& e : info.chunks) {
                py::dict c;
                c["name"] = chunk_name(e.field, e.depth, e.kind);
                c["codec"] = std::string(codec_name(codec_from_id(e.codec)));
                c["raw_bytes"] = e.raw_length;
                c["compressed_bytes"] = e.compressed_length;
                chunks.append(c);
            }
            d["chunks"] = chunks;
            return d;
        },
        py::arg("data"));
    m.def(
        "write_vtk",
        [](const CornerPointModel& model, bool keep_inactive) {
            return write_vtk(model, {.keep_inactive = keep_inactive});
        },
        py::arg("model"), py::arg("keep_inactive") = false);
    m.def(
        "class_proportions",
        [](const CornerPointModel& model) {
            py::dict out;
            for (const auto& f : level_stats(model).fields)
                if (f.kind == PropertyKind::Categorical) {
                    py::dict shares;
                    for (const auto& [c, p] : f.proportions)
                        shares[py::int_(c)] = p;
                    out[py::str(f.name)] = shares;
                }
            return out;
        },
        py::arg("model"));
}
