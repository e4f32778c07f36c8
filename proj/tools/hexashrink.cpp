#include <hexashrink/container.hpp>
#include <hexashrink/error.hpp>
#include <hexashrink/grdecl.hpp>
#include <hexashrink/pyramid.hpp>
#include <hexashrink/report.hpp>
#include <hexashrink/synthetic.hpp>
#include <hexashrink/vtk.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hexashrink;

namespace {

constexpr const char* kVersion = "1.0";

std::vector<std::uint8_t> read_bytes(const fs::path& path)
{
    const std::string s = read_text_file(path);
    return {s.begin(), s.end()};
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes)
{
    write_text_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

bool is_container(const fs::path& path)
{
    const std::string s = read_text_file(path);
    return s.size() >= 4 && s.compare(0, 4, "HXSH") == 0;
}

ChunkKind chunk_kind_from_name(const std::string& name)
{
    static const std::map<std::string, ChunkKind> kinds = {{"approx", ChunkKind::Approx},
                                                           {"detail", ChunkKind::Detail},
                                                           {"activity", ChunkKind::Activity},
                                                           {"selection", ChunkKind::Selection},
                                                           {"extra", ChunkKind::Extra}};
    const auto it = kinds.find(name);
    if (it == kinds.end())
        fail(ErrorKind::Usage, fmt::format("unknown payload kind '{}'", name));
    return it->second;
}

constexpr const char* kKindNames[] = {"approx", "detail", "activity", "selection", "extra"};

/// "deflate" sets every kind; "detail=lz-markov" sets one.
CodecPlan codec_plan(const std::vector<std::string>& specs)
{
    CodecPlan plan;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            plan = CodecPlan::uniform(codec_from_name(s));
        else
            plan.by_kind[std::size_t(chunk_kind_from_name(s.substr(0, eq)))] = codec_from_name(s.substr(eq + 1));
    }
    return plan;
}

std::map<std::string, PropertyKind> kind_overrides(const std::vector<std::string>& specs)
{
    std::map<std::string, PropertyKind> out;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        const std::string kind = eq == std::string::npos ? "" : s.substr(eq + 1);
        if (kind == "continuous")
            out[s.substr(0, eq)] = PropertyKind::Continuous;
        else if (kind == "categorical")
            out[s.substr(0, eq)] = PropertyKind::Categorical;
        else
            fail(ErrorKind::Usage, fmt::format("--kind expects NAME=continuous|categorical, got '{}'", s));
    }
    return out;
}

/// User-facing levels are 0, -1, ..., -L; positive input is read as its negation.
int depth_of(int level, int levels)
{
    const int depth = level < 0 ? -level : level;
    if (depth > levels)
        fail(ErrorKind::LevelOutOfRange, fmt::format("level -{} requested, the container holds levels 0..-{}", depth, levels));
    return depth;
}

struct InputOptions
{
    int geometry_exponent = 3;
    int property_exponent = 6;
    std::vector<std::string> kinds;
    bool keep_gaps = false;

    ParseOptions parse_options() const
    {
        ParseOptions o;
        o.quantization = {geometry_exponent, property_exponent};
        o.kinds = kind_overrides(kinds);
        o.policy = keep_gaps ? HorizontalFaultPolicy::KeepTopZ : HorizontalFaultPolicy::Reject;
        return o;
    }
    void add_to(CLI::App* app)
    {
        app->add_option("--geometry-exponent", geometry_exponent, "Decimal digits kept for coordinates")
            ->check(CLI::Range(0, 9));
        app->add_option("--property-exponent", property_exponent, "Decimal digits kept for continuous properties")
            ->check(CLI::Range(0, 12));
        app->add_option("--kind", kinds, "Property kind override, NAME=continuous|categorical");
        app->add_flag("--keep-layer-gaps", keep_gaps, "Keep top corners that differ from the layer above");
    }
    json echo() const
    {
        json j;
        j["geometry_exponent"] = geometry_exponent;
        j["property_exponent"] = property_exponent;
        j["kinds"] = kinds;
        j["keep_layer_gaps"] = keep_gaps;
        return j;
    }
};

// Re-raises `e` with the file name in front of its message.
[[noreturn]] void rethrow_with_path(const Error& e, const fs::path& path)
{
    std::string message = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (message.starts_with(prefix))
        message.erase(0, prefix.size());
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), message));
}

CornerPointModel load_grdecl(const fs::path& path, const InputOptions& in)
{
    try {
        return parse_grdecl(read_text_file(path), in.parse_options());
    } catch (const Error& e) {
        rethrow_with_path(e, path);
    }
}

Pyramid load_container(const fs::path& path)
{
    try {
        return deserialize(read_bytes(path));
    } catch (const Error& e) {
        rethrow_with_path(e, path);
    }
}

std::string dims_text(const GridDims& d)
{
    return fmt::format("{}x{}x{}", d.ni, d.nj, d.nk);
}

// ---------------------------------------------------------------------------

struct DecomposeArgs
{
    fs::path input;
    fs::path output;
    std::string levels = "1";
    std::vector<std::string> codecs;
    std::int64_t epsilon = 0;
    int slabs = 0;
    std::string format = "text";
    InputOptions in;
};

int run_decompose(const DecomposeArgs& a)
{
    const CornerPointModel model = load_grdecl(a.input, a.in);
    const int levels = a.levels == "max" ? max_levels(model.dims) : std::stoi(a.levels);
    check_levels(model.dims, levels);
    const CodecPlan plan = codec_plan(a.codecs);

    json echo;
    echo["tool"] = "hexashrink";
    echo["version"] = kVersion;
    echo["command"] = "decompose";
    echo["input"] = a.input.filename().string();
    echo["levels"] = levels;
    json codecs;
    for (std::size_t k = 0; k < plan.by_kind.size(); ++k)
        codecs[kKindNames[k]] = std::string(codec_name(plan.by_kind[k]));
    echo["codecs"] = codecs;
    echo["epsilon"] = a.epsilon;
    echo["slabs"] = a.slabs;
    echo["input_options"] = a.in.echo();

    const AnalysisOptions options{levels, a.epsilon, echo.dump()};
    Pyramid pyr;
    if (a.slabs > 1) {
        const ModelSlabSource source(model, even_slabs(model.dims.nk, a.slabs));
        pyr = analyze_streaming(source, options);
    } else {
        pyr = levels == 0 ? raw_pyramid(model, options.config_echo) : analyze_pyramid(model, options);
    }
    const auto bytes = serialize(pyr, plan);
    write_bytes(a.output, bytes);

    const auto input_size = fs::file_size(a.input);
    const auto info = inspect_container(bytes);
    const bool csv = a.format == "csv";
    if (csv) {
        fmt::print("chunk,field,depth,kind,codec,elements,raw_bytes,compressed_bytes\n");
        for (const auto& c : info.chunks)
            fmt::print("{},{},{},{},{},{},{},{}\n", chunk_name(c.field, c.depth, c.kind), c.field, c.depth, c.kind,
                       codec_name(codec_from_id(c.codec)), c.element_count, c.raw_length, c.compressed_length);
        fmt::print("\nlevel,dims\n");
        for (int l = 0; l <= levels; ++l)
            fmt::print("{},{}\n", -l, dims_text(level_dims(model.dims, levels)[l]));
        fmt::print("\ninput_bytes,container_bytes,ratio\n{},{},{:.4f}\n", input_size, bytes.size(),
                   double(input_size) / double(bytes.size()));
        return 0;
    }
    fmt::print("{} -> {}\n", a.input.string(), a.output.string());
    fmt::print("levels: {}\n", levels);
    const auto dims = level_dims(model.dims, levels);
    for (int l = 0; l <= levels; ++l)
        fmt::print("  level {:>3}: {}\n", -l, dims_text(dims[l]));
    fmt::print("chunks:\n");
    for (const auto& c : info.chunks)
        fmt::print("  {:<34} {:>10} -> {:>10} bytes ({})\n", chunk_name(c.field, c.depth, c.kind), c.raw_length,
                   c.compressed_length, codec_name(codec_from_id(c.codec)));
    fmt::print("input {} bytes, container {} bytes, ratio {:.3f}\n", input_size, bytes.size(),
               double(input_size) / double(bytes.size()));
    return 0;
}

// ---------------------------------------------------------------------------

int run_reconstruct(const fs::path& input, int level, const fs::path& output)
{
    const Pyramid pyr = load_container(input);
    const int depth = depth_of(level, pyr.header.levels);
    const CornerPointModel model = synthesize_to_level(pyr, depth);
    json echo;
    echo["command"] = "reconstruct";
    echo["input"] = input.filename().string();
    echo["level"] = -depth;
    const std::string comment = fmt::format("hexashrink {} level {}\n{}\n{}", kVersion, -depth, pyr.header.config_echo,
                                            echo.dump());
    write_text_file(output, write_grdecl(model, comment));
    fmt::print("level {} ({}) written to {}\n", -depth, dims_text(model.dims), output.string());
    return 0;
}

CornerPointModel model_at_level(const fs::path& input, int level, const InputOptions& in)
{
    if (is_container(input)) {
        const Pyramid pyr = load_container(input);
        return synthesize_to_level(pyr, depth_of(level, pyr.header.levels));
    }
    CornerPointModel model = load_grdecl(input, in);
    const int depth = depth_of(level, max_levels(model.dims));
    if (depth == 0)
        return model;
    return synthesize_to_level(analyze_pyramid(model, {depth, 0, {}}), depth);
}

int run_export_vtk(const fs::path& input, int level, const fs::path& output, bool keep_inactive,
                   const InputOptions& in)
{
    const CornerPointModel model = model_at_level(input, level, in);
    VtkOptions options;
    options.keep_inactive = keep_inactive;
    options.title = fmt::format("hexashrink level {} of {}", -model.depth, input.filename().string());
    write_text_file(output, write_vtk(model, options));
    std::size_t cells = 0;
    for (auto a : model.actnum)
        cells += keep_inactive || a ? 1 : 0;
    fmt::print("level {} ({}): {} cells written to {}\n", -model.depth, dims_text(model.dims), cells, output.string());
    return 0;
}

// ---------------------------------------------------------------------------

void print_stats(const std::vector<LevelStats>& levels, bool csv)
{
    if (csv) {
        fmt::print("level,dims,active_cells,field,kind,class,proportion,min,mean,max\n");
        for (const auto& s : levels) {
            if (s.fields.empty())
                fmt::print("{},{},{},,,,,,,\n", -s.depth, dims_text(s.dims), s.active_cells);
            for (const auto& f : s.fields) {
                if (f.kind == PropertyKind::Categorical)
                    for (const auto& [c, p] : f.proportions)
                        fmt::print("{},{},{},{},categorical,{},{:.9f},,,\n", -s.depth, dims_text(s.dims),
                                   s.active_cells, f.name, c, p);
                else
                    fmt::print("{},{},{},{},continuous,,,{},{},{}\n", -s.depth, dims_text(s.dims), s.active_cells,
                               f.name, f.min, f.mean, f.max);
            }
        }
        return;
    }
    for (const auto& s : levels) {
        fmt::print("level {:>3}  {:<12} active {}\n", -s.depth, dims_text(s.dims), s.active_cells);
        for (const auto& f : s.fields) {
            if (f.kind == PropertyKind::Categorical) {
                fmt::print("  {:<10}", f.name);
                for (const auto& [c, p] : f.proportions)
                    fmt::print(" {}:{:.4f}", c, p);
                fmt::print("\n");
            } else {
                fmt::print("  {:<10} min {:.6g} mean {:.6g} max {:.6g}\n", f.name, f.min, f.mean, f.max);
            }
        }
    }
}

void print_entropy(const EntropyReport& r, bool csv)
{
    if (csv) {
        fmt::print("chunk,elements,raw_bytes,byte_entropy,symbol_entropy,zero_fraction");
        for (Codec c : kAllCodecs)
            fmt::print(",{}", codec_name(c));
        fmt::print("\n");
        for (const auto& c : r.chunks) {
            fmt::print("{},{},{},{:.4f},{:.4f},{:.4f}", c.name, c.elements, c.raw_bytes, c.byte_entropy,
                       c.symbol_entropy, c.zero_fraction);
            for (auto n : c.compressed)
                fmt::print(",{}", n);
            fmt::print("\n");
        }
        fmt::print("total,,{},,,", r.raw_total);
        for (auto n : r.compressed_total)
            fmt::print(",{}", n);
        fmt::print("\n\ncodec,container_bytes,ratio\n");
        for (Codec c : kAllCodecs)
            fmt::print("{},{},{:.4f}\n", codec_name(c), r.container_bytes[std::size_t(c)], r.ratio[std::size_t(c)]);
        return;
    }
    fmt::print("\n{:<34} {:>9} {:>10} {:>6} {:>6} {:>6}", "chunk", "elements", "raw", "H8", "Hsym", "zero");
    for (Codec c : kAllCodecs)
        fmt::print(" {:>10}", codec_name(c));
    fmt::print("\n");
    for (const auto& c : r.chunks) {
        fmt::print("{:<34} {:>9} {:>10} {:>6.3f} {:>6.3f} {:>6.3f}", c.name, c.elements, c.raw_bytes, c.byte_entropy,
                   c.symbol_entropy, c.zero_fraction);
        for (auto n : c.compressed)
            fmt::print(" {:>10}", n);
        fmt::print("\n");
    }
    fmt::print("{:<34} {:>9} {:>10} {:>6} {:>6} {:>6}", "total", "", r.raw_total, "", "", "");
    for (auto n : r.compressed_total)
        fmt::print(" {:>10}", n);
    fmt::print("\nratio vs {} bytes:", r.original_bytes);
    for (Codec c : kAllCodecs)
        fmt::print(" {} {:.3f}", codec_name(c), r.ratio[std::size_t(c)]);
    fmt::print("\n");
}

int run_stats(const fs::path& input, const std::string& levels_arg, const std::string& format, const InputOptions& in)
{
    Pyramid pyr;
    std::size_t original = 0;
    if (is_container(input)) {
        pyr = load_container(input);
    } else {
        const CornerPointModel model = load_grdecl(input, in);
        const int levels = levels_arg == "max" ? max_levels(model.dims) : std::stoi(levels_arg);
        check_levels(model.dims, levels);
        pyr = levels == 0 ? raw_pyramid(model) : analyze_pyramid(model, {levels, 0, {}});
        original = fs::file_size(input);
    }
    std::vector<LevelStats> stats;
    for (int depth = 0; depth <= pyr.header.levels; ++depth) {
        try {
            stats.push_back(level_stats(synthesize_to_level(pyr, depth)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::MissingChunk)
                throw;
        }
    }
    const bool csv = format == "csv";
    print_stats(stats, csv);
    if (csv)
        fmt::print("\n");
    print_entropy(entropy_report(pyr, original), csv);
    return 0;
}

// ---------------------------------------------------------------------------

int run_bench(std::vector<std::string> fixtures, const std::vector<std::string>& codec_names, int repeats,
              const std::string& format)
{
    if (fixtures.empty())
        fixtures = {"smooth", "faulted", "carved", "affine", "field-scale"};
    std::vector<Codec> codecs;
    for (const auto& n : codec_names)
        codecs.push_back(codec_from_name(n));
    if (codecs.empty())
        codecs = {Codec::Deflate, Codec::BwtBlock, Codec::LzMarkov};

    const bool csv = format == "csv";
    if (csv) {
        fmt::print("mesh,levels,codec,original_bytes,container_bytes,ratio,analysis_s,synthesis_s\n");
    } else {
        fmt::print("{:<10} {:>6}", "mesh", "levels");
        for (Codec c : codecs)
            fmt::print(" {:>11} {:>9} {:>9}", codec_name(c), "ana s", "syn s");
        fmt::print("\n");
    }
    for (const auto& name : fixtures) {
        const CornerPointModel model = generate_synthetic(synthetic_preset(name));
        const std::size_t original = write_grdecl(model).size();
        for (const auto& row : bench_model(name, model, original, codecs, repeats)) {
            const std::string label = row.levels == 0 ? "none" : std::to_string(row.levels);
            if (csv) {
                for (Codec c : codecs) {
                    const auto id = std::size_t(c);
                    fmt::print("{},{},{},{},{},{:.4f},{:.6f},{:.6f}\n", name, label, codec_name(c), row.original_bytes,
                               row.container_bytes[id], row.ratio[id], row.analysis_seconds[id],
                               row.synthesis_seconds[id]);
                }
                continue;
            }
            fmt::print("{:<10} {:>6}", name, label);
            for (Codec c : codecs) {
                const auto id = std::size_t(c);
                fmt::print(" {:>11.3f} {:>9.4f} {:>9.4f}", row.ratio[id], row.analysis_seconds[id],
                           row.synthesis_seconds[id]);
            }
            fmt::print("\n");
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

json spec_to_json(const SyntheticSpec& s)
{
    json j;
    j["dims"] = {s.dims.ni, s.dims.nj, s.dims.nk};
    j["seed"] = s.seed;
    j["cell_size"] = s.cell_size;
    j["top_depth"] = s.top_depth;
    j["layer_thickness"] = s.layer_thickness;
    j["anticline_amplitude"] = s.anticline_amplitude;
    j["crest_thinning"] = s.crest_thinning;
    j["pillar_tilt"] = s.pillar_tilt;
    j["faults"] = json::array();
    for (const auto& f : s.faults)
        j["faults"].push_back({{"axis", f.axis == FaultAxis::NorthSouth ? "ns" : "ew"},
                               {"position", f.position},
                               {"throw", f.throw_m},
                               {"begin", f.begin},
                               {"end", f.end}});
    j["affine_depth"] = s.affine_depth;
    j["active_fraction"] = s.active_fraction;
    j["rock_proportions"] = s.rock_proportions;
    j["boundary_undulation"] = s.boundary_undulation;
    j["category_keyword"] = s.category_keyword;
    j["porosity"] = s.porosity;
    j["porosity_noise"] = s.porosity_noise;
    j["geometry_exponent"] = s.quantization.geometry_exponent;
    j["property_exponent"] = s.quantization.property_exponent;
    return j;
}

SyntheticSpec spec_from_json(const json& j, SyntheticSpec s)
{
    try {
        if (j.contains("dims")) {
            const auto d = j.at("dims").get<std::vector<int>>();
            if (d.size() != 3)
                fail(ErrorKind::SpecInvalid, "dims needs three entries");
            s.dims = {d[0], d[1], d[2]};
        }
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key))
                field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        get("seed", s.seed);
        get("cell_size", s.cell_size);
        get("top_depth", s.top_depth);
        get("layer_thickness", s.layer_thickness);
        get("anticline_amplitude", s.anticline_amplitude);
        get("crest_thinning", s.crest_thinning);
        get("pillar_tilt", s.pillar_tilt);
        get("affine_depth", s.affine_depth);
        get("active_fraction", s.active_fraction);
        get("rock_proportions", s.rock_proportions);
        get("boundary_undulation", s.boundary_undulation);
        get("category_keyword", s.category_keyword);
        get("porosity", s.porosity);
        get("porosity_noise", s.porosity_noise);
        get("geometry_exponent", s.quantization.geometry_exponent);
        get("property_exponent", s.quantization.property_exponent);
        if (j.contains("faults")) {
            s.faults.clear();
            for (const auto& f : j.at("faults")) {
                SyntheticFault fault;
                const std::string axis = f.value("axis", "ns");
                if (axis != "ns" && axis != "ew")
                    fail(ErrorKind::SpecInvalid, fmt::format("fault axis '{}' is neither ns nor ew", axis));
                fault.axis = axis == "ns" ? FaultAxis::NorthSouth : FaultAxis::EastWest;
                fault.position = f.at("position").get<int>();
                fault.throw_m = f.value("throw", 50.0);
                fault.begin = f.value("begin", 0);
                fault.end = f.value("end", -1);
                s.faults.push_back(fault);
            }
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::SpecInvalid, e.what());
    }
    return s;
}

struct GenerateArgs
{
    std::string preset = "smooth";
    fs::path spec_file;
    std::optional<std::uint64_t> seed;
    std::vector<int> dims;
    fs::path output;
    bool dump_spec = false;
};

int run_generate(const GenerateArgs& a)
{
    SyntheticSpec spec = synthetic_preset(a.preset);
    if (!a.spec_file.empty()) {
        json j;
        try {
            j = json::parse(read_text_file(a.spec_file));
        } catch (const json::exception& e) {
            fail(ErrorKind::SpecInvalid, fmt::format("{}: {}", a.spec_file.string(), e.what()));
        }
        spec = spec_from_json(j, spec);
    }
    if (a.seed)
        spec.seed = *a.seed;
    if (!a.dims.empty()) {
        if (a.dims.size() != 3)
            fail(ErrorKind::Usage, "--dims takes NI,NJ,NK");
        spec.dims = {a.dims[0], a.dims[1], a.dims[2]};
    }
    const json echo = spec_to_json(spec);
    if (a.dump_spec) {
        fmt::print("{}\n", echo.dump(2));
        if (a.output.empty())
            return 0;
    }
    if (a.output.empty())
        fail(ErrorKind::Usage, "generate needs -o unless --dump-spec is given");
    const CornerPointModel model = generate_synthetic(spec);
    write_text_file(a.output, write_grdecl(model, fmt::format("hexashrink {} synthetic\n{}", kVersion, echo.dump())));
    fmt::print("{} written to {}\n", dims_text(model.dims), a.output.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reversible multiresolution decomposition of corner-point grids"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    DecomposeArgs dec;
    auto* decompose = app.add_subcommand("decompose", "GRDECL to a multiresolution container");
    decompose->add_option("input", dec.input, "GRDECL file")->required()->check(CLI::ExistingFile);
    decompose->add_option("-o,--output", dec.output, "Container path (.hxs)")->required();
    decompose->add_option("-L,--levels", dec.levels, "Decomposition depth, or 'max'");
    decompose->add_option("--codec", dec.codecs, "CODEC or KIND=CODEC (store, deflate, bwt-block, lz-markov)");
    decompose->add_option("--epsilon", dec.epsilon, "Depth tolerance for fault detection, fixed-point units")
        ->check(CLI::NonNegativeNumber);
    decompose->add_option("--slabs", dec.slabs, "Stream the first level over this many k-slabs");
    decompose->add_option("--format", dec.format, "Summary format")->check(CLI::IsMember({"text", "csv"}));
    dec.in.add_to(decompose);

    fs::path rec_input, rec_output;
    int rec_level = 0;
    auto* reconstruct = app.add_subcommand("reconstruct", "Container level to GRDECL");
    reconstruct->add_option("input", rec_input, "Container")->required()->check(CLI::ExistingFile);
    reconstruct->add_option("-t,--level", rec_level, "Level 0, -1, ..., -L");
    reconstruct->add_option("-o,--output", rec_output, "GRDECL path")->required();

    fs::path vtk_input, vtk_output;
    int vtk_level = 0;
    bool keep_inactive = false;
    InputOptions vtk_in;
    auto* export_vtk = app.add_subcommand("export-vtk", "Level to a legacy VTK unstructured grid");
    export_vtk->add_option("input", vtk_input, "Container or GRDECL")->required()->check(CLI::ExistingFile);
    export_vtk->add_option("-t,--level", vtk_level, "Level 0, -1, ..., -L");
    export_vtk->add_option("-o,--output", vtk_output, "VTK path")->required();
    export_vtk->add_flag("--keep-inactive", keep_inactive, "Write inactive cells and an ACTNUM array");
    vtk_in.add_to(export_vtk);

    fs::path stats_input;
    std::string stats_levels = "max";
    std::string stats_format = "text";
    InputOptions stats_in;
    auto* stats = app.add_subcommand("stats", "Per-level histograms and chunk entropy");
    stats->add_option("input", stats_input, "Container or GRDECL")->required()->check(CLI::ExistingFile);
    stats->add_option("-L,--levels", stats_levels, "Depth used for GRDECL input, or 'max'");
    stats->add_option("--format", stats_format, "Report format")->check(CLI::IsMember({"text", "csv"}));
    stats_in.add_to(stats);

    std::vector<std::string> bench_fixtures, bench_codecs;
    int bench_repeats = 3;
    std::string bench_format = "text";
    auto* bench = app.add_subcommand("bench", "Ratios and timings on the synthetic fixtures");
    bench->add_option("--fixture", bench_fixtures, "Fixture preset (repeatable)");
    bench->add_option("--codec", bench_codecs, "Codec (repeatable)");
    bench->add_option("--repeat", bench_repeats, "Timing repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--format", bench_format, "Table format")->check(CLI::IsMember({"text", "csv"}));

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic GRDECL fixture");
    generate->add_option("--preset", gen.preset, "Base preset")->check(CLI::IsMember(synthetic_preset_names()));
    generate->add_option("--spec", gen.spec_file, "JSON generator spec applied over the preset")
        ->check(CLI::ExistingFile);
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--dims", gen.dims, "NI,NJ,NK")->delimiter(',');
    generate->add_option("-o,--output", gen.output, "GRDECL path");
    generate->add_flag("--dump-spec", gen.dump_spec, "Print the resolved spec as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*decompose)
            return run_decompose(dec);
        if (*reconstruct)
            return run_reconstruct(rec_input, rec_level, rec_output);
        if (*export_vtk)
            return run_export_vtk(vtk_input, vtk_level, vtk_output, keep_inactive, vtk_in);
        if (*stats)
            return run_stats(stats_input, stats_levels, stats_format, stats_in);
        if (*bench)
            return run_bench(bench_fixtures, bench_codecs, bench_repeats, bench_format);
        if (*generate)
            return run_generate(gen);
    } catch (const Error& e) {
        std::cerr << "hexashrink: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "hexashrink: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hexashrink: invalid number: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hexashrink: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
