#include <hexashrink/container.hpp>
#include <hexashrink/error.hpp>
#include <hexashrink/property.hpp>
#include <hexashrink/report.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

namespace hexashrink {

namespace {

std::vector<std::int64_t> elements_of(const RawChunk& c)
{
    std::vector<std::int64_t> out;
    out.reserve(c.element_count);
    switch (c.encoding) {
    case Encoding::SignedLE:
        for (std::size_t n = 0; n < c.element_count; ++n) {
            std::uint64_t u = 0;
            for (int b = 0; b < c.width; ++b)
                u |= std::uint64_t(c.bytes[n * c.width + b]) << (8 * b);
            const int shift = 64 - 8 * c.width;
            out.push_back(std::int64_t(u << shift) >> shift);
        }
        break;
    case Encoding::BitPacked:
        for (std::size_t n = 0; n < c.element_count; ++n)
            out.push_back((c.bytes[n / 8] >> (n % 8)) & 1);
        break;
    case Encoding::Unsigned8:
    case Encoding::Bytes:
        for (auto b : c.bytes)
            out.push_back(b);
        break;
    }
    return out;
}

}  // namespace

double shannon_entropy(const std::vector<std::size_t>& counts)
{
    std::size_t total = 0;
    for (auto c : counts)
        total += c;
    if (total == 0)
        return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0)
            continue;
        const double p = double(c) / double(total);
        h -= p * std::log2(p);
    }
    return h == 0.0 ? 0.0 : h;
}

EntropyReport entropy_report(const Pyramid& pyramid, std::size_t original_bytes)
{
    EntropyReport r;
    for (const RawChunk& c : encode_chunks(pyramid)) {
        ChunkStats s;
        s.name = chunk_name(c.field, c.depth, std::uint8_t(c.kind));
        s.field = c.field;
        s.depth = c.depth;
        s.kind = std::uint8_t(c.kind);
        s.elements = c.element_count;
        s.raw_bytes = c.bytes.size();

        std::vector<std::size_t> byte_counts(256, 0);
        for (auto b : c.bytes)
            ++byte_counts[b];
        s.byte_entropy = shannon_entropy(byte_counts);

        const auto values = elements_of(c);
        std::map<std::int64_t, std::size_t> symbols;
        std::size_t zeros = 0;
        for (auto v : values) {
            ++symbols[v];
            zeros += v == 0 ? 1 : 0;
        }
        std::vector<std::size_t> symbol_counts;
        for (const auto& [v, n] : symbols)
            symbol_counts.push_back(n);
        s.symbol_entropy = shannon_entropy(symbol_counts);
        s.zero_fraction = values.empty() ? 0.0 : double(zeros) / double(values.size());

        r.raw_total += s.raw_bytes;
        r.chunks.push_back(std::move(s));
    }

    for (Codec codec : kAllCodecs) {
        const auto id = std::size_t(codec);
        const auto bytes = serialize(pyramid, CodecPlan::uniform(codec));
        const auto info = inspect_container(bytes);
        for (std::size_t n = 0; n < r.chunks.size() && n < info.chunks.size(); ++n) {
            r.chunks[n].compressed[id] = info.chunks[n].compressed_length;
            r.compressed_total[id] += info.chunks[n].compressed_length;
        }
        r.container_bytes[id] = bytes.size();
    }
    r.original_bytes = original_bytes ? original_bytes : r.container_bytes[std::size_t(Codec::Store)];
    for (std::size_t id = 0; id < kCodecCount; ++id)
        r.ratio[id] = double(r.original_bytes) / double(r.container_bytes[id]);
    return r;
}

}  // namespace hexashrink

namespace hexashrink {

LevelStats level_stats(const CornerPointModel& model)
{
    LevelStats s;
    s.depth = model.depth;
    s.dims = model.dims;
    for (auto a : model.actnum)
        s.active_cells += a ? 1 : 0;
    const GridDims& d = model.dims;
    for (const auto& f : model.properties) {
        FieldLevelStats fs;
        fs.name = f.name;
        fs.kind = f.kind;
        if (f.values.empty()) {
            s.fields.push_back(std::move(fs));
            continue;
        }
        if (f.kind == PropertyKind::Categorical) {
            std::map<std::int64_t, std::size_t> counts;
            for (auto v : f.values)
                ++counts[v];
            for (const auto& [v, n] : counts)
                fs.proportions.emplace_back(v, double(n) / double(f.values.size()));
        } else {
            const std::int64_t scale = pow10_i64(f.scale_exponent);
            fs.min = std::numeric_limits<double>::max();
            fs.max = std::numeric_limits<double>::lowest();
            double sum = 0;
            for (std::size_t c = 0; c < f.values.size(); ++c) {
                const int i = int(c % d.ni);
                const int j = int(c / d.ni % d.nj);
                const int k = int(c / (std::size_t(d.ni) * d.nj));
                const double v =
                    haar_display_value(f.values[c], aggregated_cell_count(model.base_dims, model.depth, i, j, k), scale);
                fs.min = std::min(fs.min, v);
                fs.max = std::max(fs.max, v);
                sum += v;
            }
            fs.mean = sum / double(f.values.size());
        }
        s.fields.push_back(std::move(fs));
    }
    return s;
}

std::vector<BenchRow> bench_model(const std::string& fixture, const CornerPointModel& model,
                                  std::size_t original_bytes, std::span<const Codec> codecs, int repeats)
{
    using Clock = std::chrono::steady_clock;
    auto seconds = [](Clock::time_point a, Clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };

    std::vector<BenchRow> rows;
    for (int levels = 0; levels <= max_levels(model.dims); ++levels) {
        BenchRow row;
        row.fixture = fixture;
        row.levels = levels;
        row.original_bytes = original_bytes;
        for (Codec codec : codecs) {
            const auto id = std::size_t(codec);
            const CodecPlan plan = CodecPlan::uniform(codec);
            double best_analysis = std::numeric_limits<double>::max();
            double best_synthesis = std::numeric_limits<double>::max();
            for (int r = 0; r < std::max(1, repeats); ++r) {
                const auto t0 = Clock::now();
                const Pyramid pyr = levels == 0 ? raw_pyramid(model) : analyze_pyramid(model, {levels, 0, {}});
                const auto bytes = serialize(pyr, plan);
                const auto t1 = Clock::now();
                const CornerPointModel back = synthesize_to_level(deserialize(bytes), 0);
                const auto t2 = Clock::now();
                if (!(back == model))
                    fail(ErrorKind::CorruptDetail, fmt::format("{}: level-{} round trip is not exact", fixture, levels));
                best_analysis = std::min(best_analysis, seconds(t0, t1));
                best_synthesis = std::min(best_synthesis, seconds(t1, t2));
                row.container_bytes[id] = bytes.size();
            }
            row.ratio[id] = double(original_bytes) / double(row.container_bytes[id]);
            row.analysis_seconds[id] = best_analysis;
            row.synthesis_seconds[id] = best_synthesis;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hexashrink
