#include <hexashrink/error.hpp>

namespace hexashrink {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::HorizontalFaultViolation: return "HorizontalFaultViolation";
    case ErrorKind::OverflowRisk: return "OverflowRisk";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MissingDims: return "MissingDims";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::CorruptPair: return "CorruptPair";
    case ErrorKind::CorruptDetail: return "CorruptDetail";
    case ErrorKind::ValueOutsideUniverse: return "ValueOutsideUniverse";
    case ErrorKind::Unreconstructible: return "Unreconstructible";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::MissingChunk: return "MissingChunk";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::CodecUnavailable: return "CodecUnavailable";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::VersionUnsupported: return "VersionUnsupported";
    case ErrorKind::SlabCoverageGap: return "SlabCoverageGap";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Io:
        return 1;
    case ErrorKind::Usage:
    case ErrorKind::LevelOutOfRange:
    case ErrorKind::SpecInvalid:
    case ErrorKind::CodecUnavailable:
    case ErrorKind::SlabCoverageGap:
        return 2;
    default:
        return 3;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message)
    , m_kind(kind)
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

}  // namespace hexashrink
