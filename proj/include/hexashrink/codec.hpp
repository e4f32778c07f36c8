#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hexashrink {

/// Byte compressors, named by algorithm family.
enum class Codec : std::uint8_t {
    Store = 0,
    Deflate = 1,   // zlib raw deflate, level 9
    BwtBlock = 2,  // bzip2, 900k blocks
    LzMarkov = 3,  // raw LZMA2, preset 6
};

inline constexpr Codec kAllCodecs[] = {Codec::Store, Codec::Deflate, Codec::BwtBlock, Codec::LzMarkov};

std::string_view codec_name(Codec c);
/// Throws CodecUnavailable for unknown names.
Codec codec_from_name(std::string_view name);
/// Throws CodecUnavailable for unknown ids.
Codec codec_from_id(std::uint8_t id);

std::vector<std::uint8_t> compress_payload(std::span<const std::uint8_t> raw, Codec codec);
/// `raw_length` is the exact decompressed size recorded next to the payload.
std::vector<std::uint8_t> decompress_payload(std::span<const std::uint8_t> packed, Codec codec,
                                             std::size_t raw_length);

/// Worker count: HEXASHRINK_THREADS when set and positive, otherwise the
/// hardware concurrency.
unsigned worker_count();

struct CompressJob
{
    std::span<const std::uint8_t> raw;
    Codec codec;
};

std::vector<std::vector<std::uint8_t>> compress_all(std::span<const CompressJob> jobs);

struct DecompressJob
{
    std::span<const std::uint8_t> packed;
    Codec codec;
    std::size_t raw_length;
};

std::vector<std::vector<std::uint8_t>> decompress_all(std::span<const DecompressJob> jobs);

}  // namespace hexashrink
