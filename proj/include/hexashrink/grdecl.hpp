#pragma once

#include <hexashrink/grid.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hexashrink {

struct SourceLocation
{
    int line = 1;
    int column = 1;
};

enum class TokenKind { Keyword, Number, Repeat, Quoted, Slash };

struct GrdeclToken
{
    TokenKind kind;
    std::string_view text;   // the whole token as written
    std::string_view value;  // number text (the V of N*V for repeats)
    std::int64_t count = 1;
    SourceLocation where;
    std::size_t offset = 0;  // byte offset of the token in the source
};

/// Splits GRDECL text into tokens; `--` comments are dropped.
std::vector<GrdeclToken> tokenize(std::string_view text);

/// Exact decimal-to-fixed conversion: round(value * 10^exponent), halves away
/// from zero. Accepts integers, fixed notation and E/D exponents.
std::int64_t parse_fixed(std::string_view number, int exponent, SourceLocation where = {});

/// Shortest decimal text of q / 10^exponent. With `force_point` the text
/// always carries a decimal point.
std::string format_fixed(std::int64_t q, int exponent, bool force_point = false);

struct ParseOptions
{
    Quantization quantization;
    /// Property kind overrides by keyword; other properties are categorical
    /// when every value is a non-negative integer literal.
    std::map<std::string, PropertyKind> kinds;
    HorizontalFaultPolicy policy = HorizontalFaultPolicy::Reject;
};

/// Property keywords that are transformed; other keywords are kept verbatim.
bool is_property_keyword(std::string_view keyword);

CornerPointModel parse_grdecl(std::string_view text, const ParseOptions& options = {});

/// Self-contained GRDECL of the model at its own depth. Continuous values of
/// coarse levels are written as means over the covered cells.
std::string write_grdecl(const CornerPointModel& model, std::string_view comment = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hexashrink
