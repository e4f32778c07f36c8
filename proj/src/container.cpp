#include <hexashrink/container.hpp>
#include <hexashrink/error.hpp>
#include <hexashrink/lift.hpp>

#include <boost/crc.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <tuple>

namespace hexashrink {

namespace {

constexpr char kMagic[4] = {'H', 'X', 'S', 'H'};
constexpr std::uint16_t kVersionMajor = 1;
constexpr std::uint16_t kVersionMinor = 0;
constexpr std::size_t kEntryBytes = 48;

class ByteWriter
{
public:
    std::vector<std::uint8_t> bytes;

    template <class T>
    void put(T v)
    {
        using U = std::make_unsigned_t<T>;
        auto u = static_cast<U>(v);
        for (std::size_t b = 0; b < sizeof(T); ++b)
            bytes.push_back(std::uint8_t(u >> (8 * b)));
    }
    void put_bytes(std::span<const std::uint8_t> s) { bytes.insert(bytes.end(), s.begin(), s.end()); }
    void put_string(const std::string& s)
    {
        put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        bytes.insert(bytes.end(), s.begin(), s.end());
    }
};

class ByteReader
{
public:
    ByteReader(std::span<const std::uint8_t> s, const char* what) : data_(s), what_(what) {}

    template <class T>
    T get()
    {
        need(sizeof(T));
        using U = std::make_unsigned_t<T>;
        U u = 0;
        for (std::size_t b = 0; b < sizeof(T); ++b)
            u |= U(data_[pos_ + b]) << (8 * b);
        pos_ += sizeof(T);
        return static_cast<T>(u);
    }
    std::span<const std::uint8_t> get_bytes(std::size_t n)
    {
        need(n);
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::string get_string()
    {
        const auto n = get<std::uint32_t>();
        auto s = get_bytes(n);
        return {s.begin(), s.end()};
    }
    std::size_t pos() const { return pos_; }

private:
    void need(std::size_t n) const
    {
        if (pos_ + n > data_.size())
            fail(ErrorKind::MissingChunk, fmt::format("{} is truncated", what_));
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    const char* what_;
};

std::string_view field_label(std::uint32_t field)
{
    switch (field) {
    case kFieldNodeZ:
        return "node-z";
    case kFieldPillars:
        return "pillars";
    case kFieldActivity:
        return "activity";
    case kFieldOpaque:
        return "keywords";
    case kFieldTopZ:
        return "top-z";
    case kFieldResiduals:
        return "residuals";
    default:
        return {};
    }
}

std::string_view kind_label(std::uint8_t kind)
{
    static constexpr std::string_view names[] = {"approx", "detail", "activity", "selection", "extra"};
    return kind < 5 ? names[kind] : "unknown";
}

RawChunk signed_chunk(std::uint32_t field, int depth, ChunkKind kind, std::span<const std::int64_t> values)
{
    RawChunk c{field, std::uint16_t(depth), kind, Encoding::SignedLE, minimal_width(values), values.size(), {}};
    c.bytes.reserve(values.size() * c.width);
    for (auto v : values) {
        const auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < c.width; ++b)
            c.bytes.push_back(std::uint8_t(u >> (8 * b)));
    }
    return c;
}

RawChunk bit_chunk(std::uint32_t field, int depth, ChunkKind kind, std::span<const std::uint8_t> flags)
{
    RawChunk c{field, std::uint16_t(depth), kind, Encoding::BitPacked, 1, flags.size(), {}};
    c.bytes.assign((flags.size() + 7) / 8, 0);
    for (std::size_t n = 0; n < flags.size(); ++n)
        if (flags[n])
            c.bytes[n / 8] |= std::uint8_t(1u << (n % 8));
    return c;
}

RawChunk byte_chunk(std::uint32_t field, int depth, ChunkKind kind, std::span<const std::uint8_t> values)
{
    return {field, std::uint16_t(depth), kind, Encoding::Unsigned8, 1, values.size(), {values.begin(), values.end()}};
}

RawChunk keyword_chunk(const std::vector<std::string>& keywords)
{
    ByteWriter w;
    w.put<std::uint32_t>(static_cast<std::uint32_t>(keywords.size()));
    for (const auto& k : keywords)
        w.put_string(k);
    return {kFieldOpaque, 0, ChunkKind::Extra, Encoding::Bytes, 1, keywords.size(), std::move(w.bytes)};
}

std::vector<std::int64_t> decode_signed(std::span<const std::uint8_t> bytes, std::uint8_t width, std::uint64_t count)
{
    if (width != 1 && width != 2 && width != 4 && width != 8)
        fail(ErrorKind::CorruptDetail, fmt::format("integer width {} is not supported", width));
    if (bytes.size() != count * width)
        fail(ErrorKind::CorruptDetail, "integer payload length does not match its element count");
    std::vector<std::int64_t> out(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::uint64_t u = 0;
        for (int b = 0; b < width; ++b)
            u |= std::uint64_t(bytes[n * width + b]) << (8 * b);
        if (width < 8 && (u >> (8 * width - 1)) & 1)
            u |= ~std::uint64_t(0) << (8 * width);
        out[n] = static_cast<std::int64_t>(u);
    }
    return out;
}

std::vector<std::uint8_t> decode_bits(std::span<const std::uint8_t> bytes, std::uint64_t count)
{
    if (bytes.size() != (count + 7) / 8)
        fail(ErrorKind::CorruptDetail, "bit payload length does not match its element count");
    std::vector<std::uint8_t> out(count);
    for (std::size_t n = 0; n < count; ++n)
        out[n] = (bytes[n / 8] >> (n % 8)) & 1;
    return out;
}

std::vector<std::string> decode_keywords(std::span<const std::uint8_t> bytes)
{
    ByteReader r(bytes, "keyword chunk");
    std::vector<std::string> out(r.get<std::uint32_t>());
    for (auto& k : out)
        k = r.get_string();
    return out;
}

std::vector<std::uint8_t> encode_header(const PyramidHeader& h)
{
    ByteWriter w;
    w.put<std::int32_t>(h.dims.ni);
    w.put<std::int32_t>(h.dims.nj);
    w.put<std::int32_t>(h.dims.nk);
    w.put<std::uint16_t>(static_cast<std::uint16_t>(h.levels));
    w.put<std::int8_t>(static_cast<std::int8_t>(h.quantization.geometry_exponent));
    w.put<std::int8_t>(static_cast<std::int8_t>(h.quantization.property_exponent));
    w.put<std::int64_t>(h.epsilon);
    w.put<std::uint32_t>(h.has_top_z ? 1u : 0u);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(h.fields.size()));
    for (const auto& f : h.fields) {
        w.put_string(f.name);
        w.put<std::uint8_t>(std::uint8_t(f.kind));
        w.put<std::int8_t>(static_cast<std::int8_t>(f.scale_exponent));
        w.put<std::uint32_t>(static_cast<std::uint32_t>(f.universe.size()));
        for (auto v : f.universe)
            w.put<std::int64_t>(v);
    }
    w.put_string(h.config_echo);
    return std::move(w.bytes);
}

PyramidHeader decode_header(std::span<const std::uint8_t> bytes)
{
    ByteReader r(bytes, "container header");
    PyramidHeader h;
    h.dims.ni = r.get<std::int32_t>();
    h.dims.nj = r.get<std::int32_t>();
    h.dims.nk = r.get<std::int32_t>();
    h.levels = r.get<std::uint16_t>();
    h.quantization.geometry_exponent = r.get<std::int8_t>();
    h.quantization.property_exponent = r.get<std::int8_t>();
    h.epsilon = r.get<std::int64_t>();
    h.has_top_z = (r.get<std::uint32_t>() & 1u) != 0;
    const auto fields = r.get<std::uint32_t>();
    for (std::uint32_t f = 0; f < fields; ++f) {
        FieldInfo info;
        info.name = r.get_string();
        const auto kind = r.get<std::uint8_t>();
        if (kind > 1)
            fail(ErrorKind::CorruptDetail, fmt::format("field {} has unknown kind {}", info.name, kind));
        info.kind = PropertyKind(kind);
        info.scale_exponent = r.get<std::int8_t>();
        info.universe.resize(r.get<std::uint32_t>());
        for (auto& v : info.universe)
            v = r.get<std::int64_t>();
        h.fields.push_back(std::move(info));
    }
    h.config_echo = r.get_string();
    if (!h.dims.valid() || h.levels > max_levels(h.dims))
        fail(ErrorKind::CorruptDetail, "container header describes an impossible grid");
    return h;
}

ContainerInfo read_preamble(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        fail(ErrorKind::BadMagic, "not a HexaShrink container");
    ByteReader r(bytes.subspan(4), "container preamble");
    const auto major = r.get<std::uint16_t>();
    const auto minor = r.get<std::uint16_t>();
    if (major != kVersionMajor)
        fail(ErrorKind::VersionUnsupported, fmt::format("container version {}.{} is not readable", major, minor));

    ContainerInfo info;
    const auto header_len = r.get<std::uint32_t>();
    const auto header_bytes = r.get_bytes(header_len);
    if (r.get<std::uint32_t>() != crc32c(header_bytes))
        fail(ErrorKind::ChecksumMismatch, "container header checksum mismatch");
    info.header = decode_header(header_bytes);

    const auto count = r.get<std::uint32_t>();
    const auto dir = r.get_bytes(std::size_t(count) * kEntryBytes);
    if (r.get<std::uint32_t>() != crc32c(dir))
        fail(ErrorKind::ChecksumMismatch, "chunk directory checksum mismatch");
    ByteReader d(dir, "chunk directory");
    for (std::uint32_t c = 0; c < count; ++c) {
        ChunkEntry e;
        e.field = d.get<std::uint32_t>();
        e.depth = d.get<std::uint16_t>();
        e.kind = d.get<std::uint8_t>();
        e.codec = d.get<std::uint8_t>();
        e.encoding = d.get<std::uint8_t>();
        e.width = d.get<std::uint8_t>();
        d.get<std::uint16_t>();
        e.element_count = d.get<std::uint64_t>();
        e.raw_length = d.get<std::uint64_t>();
        e.compressed_length = d.get<std::uint64_t>();
        e.offset = d.get<std::uint64_t>();
        e.crc = d.get<std::uint32_t>();
        info.chunks.push_back(e);
    }
    info.preamble_bytes = 4 + r.pos();
    info.total_bytes = bytes.size();
    return info;
}

// Where each decoded chunk lands in the pyramid, with its expected size.
struct Slot
{
    std::uint64_t elements;
    std::function<void(std::span<const std::uint8_t> raw, const ChunkEntry& e)> store;
};

bool fits(const ChunkEntry& e, std::size_t file_size)
{
    return e.offset <= file_size && e.compressed_length <= file_size - e.offset;
}

}  // namespace

std::string chunk_name(std::uint32_t field, int depth, std::uint8_t kind)
{
    const std::string_view label = field_label(field);
    const std::string f = !label.empty()                ? std::string(label)
                          : field >= kPropertyFieldBase ? fmt::format("property{}", field - kPropertyFieldBase)
                                                        : fmt::format("field{}", field);
    return fmt::format("{}/level-{}/{}", f, depth, kind_label(kind));
}

std::uint8_t minimal_width(std::span<const std::int64_t> values)
{
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (auto v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (std::uint8_t w : {1, 2, 4}) {
        const std::int64_t top = (std::int64_t(1) << (8 * w - 1)) - 1;
        if (lo >= -top - 1 && hi <= top)
            return w;
    }
    return 8;
}

std::uint32_t crc32c(std::span<const std::uint8_t> bytes)
{
    boost::crc_optimal<32, 0x1EDC6F41, 0xFFFFFFFF, 0xFFFFFFFF, true, true> crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

std::vector<RawChunk> encode_chunks(const Pyramid& p)
{
    const int L = p.header.levels;
    std::vector<RawChunk> out;
    out.push_back(signed_chunk(kFieldNodeZ, L, ChunkKind::Approx, p.coarsest.z.values));
    out.push_back(signed_chunk(kFieldPillars, L, ChunkKind::Approx, p.coarsest.pillars.coords));
    out.push_back(bit_chunk(kFieldActivity, L, ChunkKind::Approx, p.coarsest.actnum));
    for (std::size_t f = 0; f < p.coarsest.properties.size(); ++f)
        out.push_back(signed_chunk(kPropertyFieldBase + std::uint32_t(f), L, ChunkKind::Approx,
                                   p.coarsest.properties[f]));

    for (int l = L; l >= 1; --l) {
        const LevelDetail& d = p.details[l - 1];
        out.push_back(byte_chunk(kFieldNodeZ, l, ChunkKind::Selection, d.geometry.selection));
        out.push_back(signed_chunk(kFieldNodeZ, l, ChunkKind::Detail, d.geometry.lift_details));
        out.push_back(signed_chunk(kFieldResiduals, l, ChunkKind::Detail, d.geometry.residuals));
        out.push_back(signed_chunk(kFieldPillars, l, ChunkKind::Detail, d.geometry.pillar_details));
        out.push_back(bit_chunk(kFieldActivity, l, ChunkKind::Activity, d.geometry.fine_actnum));
        for (std::size_t f = 0; f < d.properties.size(); ++f)
            out.push_back(
                signed_chunk(kPropertyFieldBase + std::uint32_t(f), l, ChunkKind::Detail, d.properties[f]));
    }

    if (!p.opaque_keywords.empty())
        out.push_back(keyword_chunk(p.opaque_keywords));
    if (p.top_z)
        out.push_back(signed_chunk(kFieldTopZ, 0, ChunkKind::Extra, *p.top_z));
    return out;
}

std::vector<std::uint8_t> serialize(const Pyramid& pyramid, const CodecPlan& codecs)
{
    const auto chunks = encode_chunks(pyramid);
    std::vector<CompressJob> jobs;
    for (const auto& c : chunks)
        jobs.push_back({c.bytes, codecs.for_kind(c.kind)});
    const auto packed = compress_all(jobs);

    const auto header = encode_header(pyramid.header);
    const std::size_t total_chunks = chunks.size() + pyramid.preserved.size();
    ByteWriter w;
    w.put_bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
    w.put<std::uint16_t>(kVersionMajor);
    w.put<std::uint16_t>(kVersionMinor);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(header.size()));
    w.put_bytes(header);
    w.put<std::uint32_t>(crc32c(header));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(total_chunks));

    std::uint64_t offset = w.bytes.size() + total_chunks * kEntryBytes + 4;
    ByteWriter dir;
    auto entry = [&](std::uint32_t field, std::uint16_t depth, std::uint8_t kind, std::uint8_t codec,
                     std::uint8_t encoding, std::uint8_t width, std::uint64_t elements, std::uint64_t raw_length,
                     std::uint64_t compressed_length, std::uint32_t crc) {
        dir.put<std::uint32_t>(field);
        dir.put<std::uint16_t>(depth);
        dir.put<std::uint8_t>(kind);
        dir.put<std::uint8_t>(codec);
        dir.put<std::uint8_t>(encoding);
        dir.put<std::uint8_t>(width);
        dir.put<std::uint16_t>(0);
        dir.put<std::uint64_t>(elements);
        dir.put<std::uint64_t>(raw_length);
        dir.put<std::uint64_t>(compressed_length);
        dir.put<std::uint64_t>(offset);
        dir.put<std::uint32_t>(crc);
        offset += compressed_length;
    };
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        const RawChunk& rc = chunks[c];
        entry(rc.field, rc.depth, std::uint8_t(rc.kind), std::uint8_t(jobs[c].codec), std::uint8_t(rc.encoding),
              rc.width, rc.element_count, rc.bytes.size(), packed[c].size(), crc32c(packed[c]));
    }
    for (const auto& pc : pyramid.preserved)
        entry(pc.field, pc.depth, pc.kind, pc.codec, pc.encoding, pc.width, pc.element_count, pc.raw_length,
              pc.compressed.size(), pc.crc);

    w.put_bytes(dir.bytes);
    w.put<std::uint32_t>(crc32c(dir.bytes));
    for (const auto& b : packed)
        w.put_bytes(b);
    for (const auto& pc : pyramid.preserved)
        w.put_bytes(pc.compressed);
    return std::move(w.bytes);
}

ContainerInfo inspect_container(std::span<const std::uint8_t> bytes)
{
    return read_preamble(bytes);
}

Pyramid deserialize(std::span<const std::uint8_t> bytes)
{
    const ContainerInfo info = read_preamble(bytes);
    Pyramid p;
    p.header = info.header;
    const PyramidHeader& h = p.header;
    const int L = h.levels;
    const auto dims = level_dims(h.dims, L);
    const std::size_t nf = h.fields.size();

    const GridDims& cd = dims[L];
    p.coarsest.z = NodeZField(cd.nodes_i(), cd.nodes_j(), cd.nodes_k());
    p.coarsest.pillars = PillarSet(cd.nodes_i(), cd.nodes_j());
    p.coarsest.actnum.assign(cd.cell_count(), 0);
    p.coarsest.properties.assign(nf, std::vector<std::int64_t>(cd.cell_count(), 0));
    p.details.resize(L);
    for (auto& d : p.details)
        d.properties.resize(nf);

    using Key = std::tuple<std::uint32_t, int, std::uint8_t>;
    std::map<Key, Slot> slots;
    auto ints = [](std::vector<std::int64_t>& dst) {
        return [&dst](std::span<const std::uint8_t> raw, const ChunkEntry& e) {
            dst = decode_signed(raw, e.width, e.element_count);
        };
    };
    auto bits = [](std::vector<std::uint8_t>& dst) {
        return [&dst](std::span<const std::uint8_t> raw, const ChunkEntry& e) { dst = decode_bits(raw, e.element_count); };
    };
    const auto A = std::uint8_t(ChunkKind::Approx);
    const auto D = std::uint8_t(ChunkKind::Detail);
    slots[{kFieldNodeZ, L, A}] = {p.coarsest.z.values.size(), ints(p.coarsest.z.values)};
    slots[{kFieldPillars, L, A}] = {p.coarsest.pillars.coords.size(), ints(p.coarsest.pillars.coords)};
    slots[{kFieldActivity, L, A}] = {cd.cell_count(), bits(p.coarsest.actnum)};
    for (std::size_t f = 0; f < nf; ++f)
        slots[{kPropertyFieldBase + std::uint32_t(f), L, A}] = {cd.cell_count(), ints(p.coarsest.properties[f])};
    for (int l = 1; l <= L; ++l) {
        const GridDims& fine = dims[l - 1];
        const NodeLinePlan kp(fine.nk);
        const NodeLinePlan ip(fine.ni);
        const NodeLinePlan jp(fine.nj);
        GeometryDetail& g = p.details[l - 1].geometry;
        slots[{kFieldNodeZ, l, std::uint8_t(ChunkKind::Selection)}] = {
            dims[l].pillar_count(), [&g](std::span<const std::uint8_t> raw, const ChunkEntry& e) {
                if (raw.size() != e.element_count)
                    fail(ErrorKind::CorruptDetail, "selection payload length does not match its element count");
                g.selection.assign(raw.begin(), raw.end());
            }};
        slots[{kFieldNodeZ, l, D}] = {std::uint64_t(kp.details()) * lift_details_per_layer(fine),
                                      ints(g.lift_details)};
        slots[{kFieldResiduals, l, D}] = {std::uint64_t(fine.nodes_k()) * residuals_per_layer(fine),
                                          ints(g.residuals)};
        slots[{kFieldPillars, l, D}] = {(std::uint64_t(ip.details()) * fine.nodes_j() +
                                         std::uint64_t(dims[l].nodes_i()) * jp.details()) *
                                            PillarSet::kComponents,
                                        ints(g.pillar_details)};
        slots[{kFieldActivity, l, std::uint8_t(ChunkKind::Activity)}] = {fine.cell_count(), bits(g.fine_actnum)};
        for (std::size_t f = 0; f < nf; ++f)
            slots[{kPropertyFieldBase + std::uint32_t(f), l, D}] = {
                property_detail_count(h.fields[f].kind, fine), ints(p.details[l - 1].properties[f])};
    }
    slots[{kFieldOpaque, 0, std::uint8_t(ChunkKind::Extra)}] = {
        std::numeric_limits<std::uint64_t>::max(),
        [&p](std::span<const std::uint8_t> raw, const ChunkEntry&) { p.opaque_keywords = decode_keywords(raw); }};
    if (h.has_top_z) {
        const std::uint64_t planes = std::uint64_t(h.dims.nk - 1) * 4 * h.dims.ni * h.dims.nj;
        slots[{kFieldTopZ, 0, std::uint8_t(ChunkKind::Extra)}] = {
            planes, [&p](std::span<const std::uint8_t> raw, const ChunkEntry& e) {
                p.top_z = decode_signed(raw, e.width, e.element_count);
            }};
    }

    std::vector<DecompressJob> jobs;
    std::vector<const ChunkEntry*> known;
    bool have_top_z = false;
    for (const ChunkEntry& e : info.chunks) {
        const std::string name = chunk_name(e.field, e.depth, e.kind);
        if (!fits(e, bytes.size())) {
            p.absent.push_back({e.field, e.depth, e.kind, name});
            continue;
        }
        const auto packed = bytes.subspan(e.offset, e.compressed_length);
        if (crc32c(packed) != e.crc)
            fail(ErrorKind::ChecksumMismatch, fmt::format("chunk {} fails its checksum", name));
        const auto it = slots.find({e.field, e.depth, e.kind});
        if (it == slots.end() || e.codec > std::uint8_t(Codec::LzMarkov)) {
            p.preserved.push_back({e.field, e.depth, e.kind, e.codec, e.encoding, e.width, e.element_count,
                                   e.raw_length, e.crc, {packed.begin(), packed.end()}});
            continue;
        }
        if (it->second.elements != std::numeric_limits<std::uint64_t>::max() &&
            it->second.elements != e.element_count)
            fail(ErrorKind::CorruptDetail, fmt::format("chunk {} holds {} elements, expected {}", name,
                                                       e.element_count, it->second.elements));
        have_top_z = have_top_z || e.field == kFieldTopZ;
        jobs.push_back({packed, codec_from_id(e.codec), e.raw_length});
        known.push_back(&e);
    }
    const auto raw = decompress_all(jobs);
    for (std::size_t c = 0; c < known.size(); ++c) {
        const ChunkEntry& e = *known[c];
        slots.at({e.field, e.depth, e.kind}).store(raw[c], e);
    }
    if (h.has_top_z && !have_top_z && p.absent.empty())
        fail(ErrorKind::MissingChunk, "container declares top-z planes but carries none");
    return p;
}

}  // namespace hexashrink
