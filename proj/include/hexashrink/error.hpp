#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hexashrink {

enum class ErrorKind {
    DimensionMismatch,
    HorizontalFaultViolation,
    OverflowRisk,
    SyntaxError,
    LengthMismatch,
    MissingDims,
    SpecInvalid,
    CorruptPair,
    CorruptDetail,
    ValueOutsideUniverse,
    Unreconstructible,
    LevelOutOfRange,
    MissingChunk,
    ChecksumMismatch,
    CodecUnavailable,
    BadMagic,
    VersionUnsupported,
    SlabCoverageGap,
    Io,
    Usage,
};

std::string_view to_string(ErrorKind kind);

// Exit-code class used by the command line tool: 1 I/O, 2 usage/range, 3 data corruption.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return m_kind; }

private:
    ErrorKind m_kind;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace hexashrink
