#include <hexashrink/codec.hpp>
#include <hexashrink/error.hpp>

#include <bzlib.h>
#include <fmt/format.h>
#include <lzma.h>
#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace hexashrink {

std::string_view codec_name(Codec c)
{
    switch (c) {
    case Codec::Store:
        return "store";
    case Codec::Deflate:
        return "deflate";
    case Codec::BwtBlock:
        return "bwt-block";
    case Codec::LzMarkov:
        return "lz-markov";
    }
    return "unknown";
}

Codec codec_from_name(std::string_view name)
{
    for (Codec c : kAllCodecs)
        if (codec_name(c) == name)
            return c;
    fail(ErrorKind::CodecUnavailable, fmt::format("no codec named '{}'", name));
}

Codec codec_from_id(std::uint8_t id)
{
    if (id > std::uint8_t(Codec::LzMarkov))
        fail(ErrorKind::CodecUnavailable, fmt::format("codec id {} is not registered", id));
    return Codec(id);
}

namespace {

std::vector<std::uint8_t> deflate_raw(std::span<const std::uint8_t> raw)
{
    z_stream zs{};
    if (deflateInit2(&zs, 9, Z_DEFLATED, -15, 9, Z_DEFAULT_STRATEGY) != Z_OK)
        fail(ErrorKind::CodecUnavailable, "deflate initialisation failed");
    std::vector<std::uint8_t> out(deflateBound(&zs, uLong(raw.size())));
    zs.next_in = const_cast<Bytef*>(raw.data());
    zs.avail_in = uInt(raw.size());
    zs.next_out = out.data();
    zs.avail_out = uInt(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const std::size_t produced = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END)
        fail(ErrorKind::CodecUnavailable, "deflate did not finish");
    out.resize(produced);
    return out;
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> packed, std::size_t raw_length)
{
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK)
        fail(ErrorKind::CodecUnavailable, "inflate initialisation failed");
    std::vector<std::uint8_t> out(raw_length);
    zs.next_in = const_cast<Bytef*>(packed.data());
    zs.avail_in = uInt(packed.size());
    zs.next_out = out.data();
    zs.avail_out = uInt(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const std::size_t produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != raw_length)
        fail(ErrorKind::ChecksumMismatch, "deflate stream is damaged");
    return out;
}

std::vector<std::uint8_t> bzip_compress(std::span<const std::uint8_t> raw)
{
    std::vector<std::uint8_t> out(raw.size() + raw.size() / 100 + 601);
    auto len = static_cast<unsigned int>(out.size());
    const int rc = BZ2_bzBuffToBuffCompress(reinterpret_cast<char*>(out.data()), &len,
                                            const_cast<char*>(reinterpret_cast<const char*>(raw.data())),
                                            static_cast<unsigned int>(raw.size()), 9, 0, 0);
    if (rc != BZ_OK)
        fail(ErrorKind::CodecUnavailable, fmt::format("bzip2 compression failed ({})", rc));
    out.resize(len);
    return out;
}

std::vector<std::uint8_t> bzip_decompress(std::span<const std::uint8_t> packed, std::size_t raw_length)
{
    std::vector<std::uint8_t> out(raw_length);
    auto len = static_cast<unsigned int>(out.size());
    const int rc = BZ2_bzBuffToBuffDecompress(reinterpret_cast<char*>(out.data()), &len,
                                              const_cast<char*>(reinterpret_cast<const char*>(packed.data())),
                                              static_cast<unsigned int>(packed.size()), 0, 0);
    if (rc != BZ_OK || len != raw_length)
        fail(ErrorKind::ChecksumMismatch, fmt::format("bzip2 stream is damaged ({})", rc));
    return out;
}

struct Lzma2Filters
{
    lzma_options_lzma options{};
    lzma_filter filters[2];

    Lzma2Filters()
    {
        if (lzma_lzma_preset(&options, 6))
            fail(ErrorKind::CodecUnavailable, "LZMA preset 6 is unsupported");
        filters[0] = {LZMA_FILTER_LZMA2, &options};
        filters[1] = {LZMA_VLI_UNKNOWN, nullptr};
    }
};

std::vector<std::uint8_t> lzma_compress(std::span<const std::uint8_t> raw)
{
    Lzma2Filters f;
    std::vector<std::uint8_t> out(raw.size() + raw.size() / 16 + 1024);
    std::size_t pos = 0;
    const lzma_ret rc = lzma_raw_buffer_encode(f.filters, nullptr, raw.data(), raw.size(), out.data(), &pos, out.size());
    if (rc != LZMA_OK)
        fail(ErrorKind::CodecUnavailable, fmt::format("LZMA2 compression failed ({})", int(rc)));
    out.resize(pos);
    return out;
}

std::vector<std::uint8_t> lzma_decompress(std::span<const std::uint8_t> packed, std::size_t raw_length)
{
    Lzma2Filters f;
    std::vector<std::uint8_t> out(raw_length);
    std::size_t in_pos = 0;
    std::size_t out_pos = 0;
    const lzma_ret rc = lzma_raw_buffer_decode(f.filters, nullptr, packed.data(), &in_pos, packed.size(), out.data(),
                                               &out_pos, out.size());
    if (rc != LZMA_OK || out_pos != raw_length)
        fail(ErrorKind::ChecksumMismatch, fmt::format("LZMA2 stream is damaged ({})", int(rc)));
    return out;
}

template <class Job, class Fn>
std::vector<std::vector<std::uint8_t>> run_parallel(std::span<const Job> jobs, Fn&& fn)
{
    std::vector<std::vector<std::uint8_t>> results(jobs.size());
    const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(jobs.size()));
    if (n <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            results[i] = fn(jobs[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) {
                try {
                    results[i] = fn(jobs[i]);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
    return results;
}

}  // namespace

std::vector<std::uint8_t> compress_payload(std::span<const std::uint8_t> raw, Codec codec)
{
    if (raw.empty())
        return {};
    switch (codec) {
    case Codec::Store:
        return {raw.begin(), raw.end()};
    case Codec::Deflate:
        return deflate_raw(raw);
    case Codec::BwtBlock:
        return bzip_compress(raw);
    case Codec::LzMarkov:
        return lzma_compress(raw);
    }
    fail(ErrorKind::CodecUnavailable, "unknown codec");
}

std::vector<std::uint8_t> decompress_payload(std::span<const std::uint8_t> packed, Codec codec,
                                             std::size_t raw_length)
{
    if (raw_length == 0) {
        if (!packed.empty())
            fail(ErrorKind::ChecksumMismatch, "empty payload carries compressed bytes");
        return {};
    }
    switch (codec) {
    case Codec::Store:
        if (packed.size() != raw_length)
            fail(ErrorKind::ChecksumMismatch, "stored payload has the wrong length");
        return {packed.begin(), packed.end()};
    case Codec::Deflate:
        return inflate_raw(packed, raw_length);
    case Codec::BwtBlock:
        return bzip_decompress(packed, raw_length);
    case Codec::LzMarkov:
        return lzma_decompress(packed, raw_length);
    }
    fail(ErrorKind::CodecUnavailable, "unknown codec");
}

unsigned worker_count()
{
    if (const char* env = std::getenv("HEXASHRINK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<std::uint8_t>> compress_all(std::span<const CompressJob> jobs)
{
    return run_parallel(jobs, [](const CompressJob& j) { return compress_payload(j.raw, j.codec); });
}

std::vector<std::vector<std::uint8_t>> decompress_all(std::span<const DecompressJob> jobs)
{
    return run_parallel(jobs,
                        [](const DecompressJob& j) { return decompress_payload(j.packed, j.codec, j.raw_length); });
}

}  // namespace hexashrink
