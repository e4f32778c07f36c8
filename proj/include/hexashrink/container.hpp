#pragma once

#include <hexashrink/codec.hpp>
#include <hexashrink/pyramid.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hexashrink {

/// Field ids of the chunk directory. Property f uses kPropertyFieldBase + f.
inline constexpr std::uint32_t kFieldNodeZ = 0;
inline constexpr std::uint32_t kFieldPillars = 1;
inline constexpr std::uint32_t kFieldActivity = 2;
inline constexpr std::uint32_t kFieldOpaque = 3;
inline constexpr std::uint32_t kFieldTopZ = 4;
inline constexpr std::uint32_t kFieldResiduals = 5;
inline constexpr std::uint32_t kPropertyFieldBase = 16;

enum class Encoding : std::uint8_t { Bytes = 0, SignedLE = 1, BitPacked = 2, Unsigned8 = 3 };

/// Codec used for each payload kind.
struct CodecPlan
{
    std::array<Codec, 5> by_kind{Codec::Deflate, Codec::Deflate, Codec::Deflate, Codec::Deflate, Codec::Deflate};

    static CodecPlan uniform(Codec c) { return {{c, c, c, c, c}}; }
    Codec for_kind(ChunkKind k) const { return by_kind[std::size_t(k)]; }
};

/// Uncompressed payload of one chunk.
struct RawChunk
{
    std::uint32_t field = 0;
    std::uint16_t depth = 0;
    ChunkKind kind = ChunkKind::Approx;
    Encoding encoding = Encoding::Bytes;
    std::uint8_t width = 1;
    std::uint64_t element_count = 0;
    std::vector<std::uint8_t> bytes;
};

struct ChunkEntry
{
    std::uint32_t field = 0;
    std::uint16_t depth = 0;
    std::uint8_t kind = 0;
    std::uint8_t codec = 0;
    std::uint8_t encoding = 0;
    std::uint8_t width = 0;
    std::uint64_t element_count = 0;
    std::uint64_t raw_length = 0;
    std::uint64_t compressed_length = 0;
    std::uint64_t offset = 0;
    std::uint32_t crc = 0;
};

std::string chunk_name(std::uint32_t field, int depth, std::uint8_t kind);

/// Smallest of 1, 2, 4, 8 bytes holding every value as a signed integer.
std::uint8_t minimal_width(std::span<const std::int64_t> values);

/// Payloads in stream order: coarsest approximations, then details from the
/// coarsest level to the finest, then extras.
std::vector<RawChunk> encode_chunks(const Pyramid& pyramid);

std::uint32_t crc32c(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize(const Pyramid& pyramid, const CodecPlan& codecs = {});

/// Reads a container. Chunks cut off by truncation are listed in
/// Pyramid::absent; levels that do not need them still synthesize.
Pyramid deserialize(std::span<const std::uint8_t> bytes);

struct ContainerInfo
{
    PyramidHeader header;
    std::vector<ChunkEntry> chunks;
    std::size_t preamble_bytes = 0;  // magic, header and directory
    std::size_t total_bytes = 0;
};

ContainerInfo inspect_container(std::span<const std::uint8_t> bytes);

}  // namespace hexashrink
