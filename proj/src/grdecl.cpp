#include <hexashrink/error.hpp>
#include <hexashrink/grdecl.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace hexashrink {

namespace {

[[noreturn]] void syntax_error(SourceLocation where, const std::string& what)
{
    fail(ErrorKind::SyntaxError, fmt::format("line {}, column {}: {}", where.line, where.column, what));
}

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

// [+-]? (digits [. digits*] | . digits) ([eEdD] [+-]? digits)?
bool is_number(std::string_view t)
{
    std::size_t p = 0;
    if (p < t.size() && (t[p] == '+' || t[p] == '-'))
        ++p;
    std::size_t mantissa = 0;
    while (p < t.size() && is_digit(t[p])) {
        ++p;
        ++mantissa;
    }
    if (p < t.size() && t[p] == '.') {
        ++p;
        while (p < t.size() && is_digit(t[p])) {
            ++p;
            ++mantissa;
        }
    }
    if (mantissa == 0)
        return false;
    if (p < t.size() && (t[p] == 'e' || t[p] == 'E' || t[p] == 'd' || t[p] == 'D')) {
        ++p;
        if (p < t.size() && (t[p] == '+' || t[p] == '-'))
            ++p;
        std::size_t exp_digits = 0;
        while (p < t.size() && is_digit(t[p])) {
            ++p;
            ++exp_digits;
        }
        if (exp_digits == 0)
            return false;
    }
    return p == t.size();
}

bool is_integer_literal(std::string_view t)
{
    std::size_t p = t.empty() || t[0] != '+' ? 0 : 1;
    if (p == t.size())
        return false;
    for (; p < t.size(); ++p)
        if (!is_digit(t[p]))
            return false;
    return true;
}

std::string upper(std::string_view s)
{
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

constexpr std::array<std::string_view, 14> kNoDataKeywords = {
    "RUNSPEC", "GRID", "EDIT", "PROPS", "REGIONS", "SOLUTION", "SUMMARY",
    "SCHEDULE", "END", "ECHO", "NOECHO", "METRIC", "FIELD", "NONNC"};

bool is_no_data_keyword(std::string_view kw)
{
    return std::find(kNoDataKeywords.begin(), kNoDataKeywords.end(), kw) != kNoDataKeywords.end();
}

bool is_array_keyword(std::string_view kw)
{
    return kw == "COORD" || kw == "ZCORN" || kw == "ACTNUM" || is_property_keyword(kw);
}

bool is_dims_keyword(std::string_view kw)
{
    return kw == "SPECGRID" || kw == "DIMENS";
}

struct RawArray
{
    std::string keyword;
    SourceLocation where;
    std::vector<std::pair<std::int64_t, std::string_view>> runs;
    std::uint64_t total = 0;
    bool integer_literals = true;
};

std::vector<std::int64_t> expand(const RawArray& a, int exponent)
{
    std::vector<std::int64_t> out;
    out.reserve(a.total);
    for (const auto& [count, text] : a.runs) {
        const std::int64_t v = parse_fixed(text, exponent, a.where);
        out.insert(out.end(), std::size_t(count), v);
    }
    return out;
}

void check_length(const RawArray& a, std::uint64_t expected)
{
    if (a.total != expected)
        fail(ErrorKind::LengthMismatch, fmt::format("line {}: {} holds {} values, expected {}", a.where.line,
                                                    a.keyword, a.total, expected));
}

std::int64_t mean_fixed(std::int64_t sum, std::int64_t cells)
{
    std::int64_t q = sum / cells;
    const std::int64_t r = sum % cells;
    if (2 * (r < 0 ? -r : r) >= cells)
        q += sum < 0 ? -1 : 1;
    return q;
}

class TokenWriter
{
public:
    explicit TokenWriter(std::string& out) : out_(out) {}

    void run(const std::string& value, std::size_t count)
    {
        if (count >= 4) {
            token(fmt::format("{}*{}", count, value));
        } else {
            for (std::size_t c = 0; c < count; ++c)
                token(value);
        }
    }
    template <class Format>
    void values(std::size_t n, Format&& format)
    {
        std::size_t n0 = 0;
        while (n0 < n) {
            const std::string v = format(n0);
            std::size_t n1 = n0 + 1;
            while (n1 < n && format(n1) == v)
                ++n1;
            run(v, n1 - n0);
            n0 = n1;
        }
    }
    void finish()
    {
        if (on_line_ > 0)
            out_ += '\n';
        out_ += "/\n\n";
        on_line_ = 0;
    }

private:
    void token(const std::string& t)
    {
        if (on_line_ > 0)
            out_ += ' ';
        out_ += t;
        if (++on_line_ == 8) {
            out_ += '\n';
            on_line_ = 0;
        }
    }

    std::string& out_;
    int on_line_ = 0;
};

}  // namespace

std::vector<GrdeclToken> tokenize(std::string_view text)
{
    std::vector<GrdeclToken> tokens;
    std::size_t p = 0;
    int line = 1;
    std::size_t line_start = 0;
    auto here = [&] { return SourceLocation{line, int(p - line_start) + 1}; };

    while (p < text.size()) {
        const char c = text[p];
        if (c == '\n') {
            ++p;
            ++line;
            line_start = p;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++p;
            continue;
        }
        if (c == '-' && p + 1 < text.size() && text[p + 1] == '-') {
            while (p < text.size() && text[p] != '\n')
                ++p;
            continue;
        }
        const SourceLocation where = here();
        const std::size_t start = p;
        if (c == '/') {
            ++p;
            tokens.push_back({TokenKind::Slash, text.substr(start, 1), {}, 1, where, start});
            continue;
        }
        if (c == '\'' || c == '"') {
            const std::size_t close = text.find(c, p + 1);
            if (close == std::string_view::npos)
                syntax_error(where, "unterminated quoted string");
            p = close + 1;
            tokens.push_back({TokenKind::Quoted, text.substr(start, p - start), {}, 1, where, start});
            continue;
        }
        while (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p])) && text[p] != '/')
            ++p;
        const std::string_view t = text.substr(start, p - start);
        const std::size_t star = t.find('*');
        if (star != std::string_view::npos) {
            const std::string_view count = t.substr(0, star);
            const std::string_view value = t.substr(star + 1);
            if (!is_integer_literal(count) || !is_number(value))
                syntax_error(where, fmt::format("malformed repeat '{}'", t));
            const std::int64_t n = parse_fixed(count, 0, where);
            if (n < 1)
                syntax_error(where, fmt::format("repeat count in '{}' must be at least 1", t));
            tokens.push_back({TokenKind::Repeat, t, value, n, where, start});
        } else if (is_number(t)) {
            tokens.push_back({TokenKind::Number, t, t, 1, where, start});
        } else if (std::isalpha(static_cast<unsigned char>(t[0]))) {
            tokens.push_back({TokenKind::Keyword, t, {}, 1, where, start});
        } else {
            syntax_error(where, fmt::format("unexpected token '{}'", t));
        }
    }
    return tokens;
}

std::int64_t parse_fixed(std::string_view t, int exponent, SourceLocation where)
{
    if (!is_number(t))
        syntax_error(where, fmt::format("'{}' is not a number", t));
    std::size_t p = 0;
    bool negative = false;
    if (t[p] == '+' || t[p] == '-')
        negative = t[p++] == '-';
    std::string digits;
    int frac = 0;
    bool in_frac = false;
    for (; p < t.size() && (is_digit(t[p]) || t[p] == '.'); ++p) {
        if (t[p] == '.') {
            in_frac = true;
            continue;
        }
        digits += t[p];
        frac += in_frac ? 1 : 0;
    }
    long long exp10 = 0;
    if (p < t.size()) {
        ++p;
        bool exp_negative = false;
        if (t[p] == '+' || t[p] == '-')
            exp_negative = t[p++] == '-';
        for (; p < t.size(); ++p) {
            exp10 = exp10 * 10 + (t[p] - '0');
            if (exp10 > 1000)
                exp10 = 1000;
        }
        if (exp_negative)
            exp10 = -exp10;
    }
    const std::size_t nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? std::string() : digits.substr(nz);
    if (digits.empty())
        return 0;

    const long long shift = exp10 - frac + exponent;
    bool round_up = false;
    if (shift < 0) {
        const auto k = static_cast<std::size_t>(-shift);
        if (k > digits.size()) {
            digits.clear();
        } else {
            round_up = digits[digits.size() - k] >= '5';
            digits.resize(digits.size() - k);
        }
    } else {
        if (shift > 19)
            fail(ErrorKind::OverflowRisk, fmt::format("line {}: '{}' overflows the working range", where.line, t));
        digits.append(std::size_t(shift), '0');
    }
    std::int64_t mag = 0;
    for (char d : digits) {
        if (mag > (kWorkingRangeLimit - 9) / 10)
            fail(ErrorKind::OverflowRisk, fmt::format("line {}: '{}' overflows the working range", where.line, t));
        mag = mag * 10 + (d - '0');
    }
    if (round_up)
        ++mag;
    if (mag >= kWorkingRangeLimit)
        fail(ErrorKind::OverflowRisk, fmt::format("line {}: '{}' overflows the working range", where.line, t));
    return negative ? -mag : mag;
}

std::string format_fixed(std::int64_t q, int exponent, bool force_point)
{
    const std::int64_t scale = pow10_i64(exponent);
    const bool negative = q < 0;
    const auto mag = negative ? std::uint64_t(0) - std::uint64_t(q) : std::uint64_t(q);
    const std::uint64_t ip = mag / std::uint64_t(scale);
    std::uint64_t fp = mag % std::uint64_t(scale);
    std::string out = negative ? "-" : "";
    out += std::to_string(ip);
    if (fp == 0) {
        if (force_point)
            out += ".0";
        return out;
    }
    std::string frac = fmt::format("{:0{}}", fp, exponent);
    frac.erase(frac.find_last_not_of('0') + 1);
    return out + "." + frac;
}

bool is_property_keyword(std::string_view kw)
{
    return kw == "PORO" || kw == "NTG" || kw == "SATNUM" || kw == "ROCKTYPE" || kw == "FIPNUM" ||
           (kw.size() > 4 && kw.substr(0, 4) == "PERM");
}

CornerPointModel parse_grdecl(std::string_view text, const ParseOptions& options)
{
    const auto tokens = tokenize(text);
    std::optional<GridDims> dims;
    std::optional<RawArray> coord;
    std::optional<RawArray> zcorn;
    std::optional<RawArray> actnum;
    std::vector<RawArray> props;
    std::vector<std::string> opaque;

    std::size_t t = 0;
    while (t < tokens.size()) {
        const GrdeclToken& kt = tokens[t];
        if (kt.kind != TokenKind::Keyword)
            syntax_error(kt.where, fmt::format("expected a keyword, found '{}'", kt.text));
        const std::string kw = upper(kt.text);
        ++t;

        if (is_dims_keyword(kw)) {
            std::vector<std::int64_t> v;
            while (t < tokens.size() && tokens[t].kind != TokenKind::Slash) {
                if (tokens[t].kind == TokenKind::Number && v.size() < 3)
                    v.push_back(parse_fixed(tokens[t].text, 0, tokens[t].where));
                ++t;
            }
            if (t == tokens.size())
                syntax_error(kt.where, fmt::format("{} is not terminated by '/'", kw));
            ++t;
            if (v.size() < 3 || v[0] < 1 || v[1] < 1 || v[2] < 1 || v[0] > 1 << 24 || v[1] > 1 << 24 ||
                v[2] > 1 << 24)
                syntax_error(kt.where, fmt::format("{} needs three positive dimensions", kw));
            dims = GridDims{int(v[0]), int(v[1]), int(v[2])};
            continue;
        }

        if (is_array_keyword(kw)) {
            if (!dims)
                fail(ErrorKind::MissingDims,
                     fmt::format("line {}: {} appears before SPECGRID or DIMENS", kt.where.line, kw));
            RawArray a{kw, kt.where, {}, 0, true};
            for (;; ++t) {
                if (t == tokens.size())
                    syntax_error(kt.where, fmt::format("{} is not terminated by '/'", kw));
                const GrdeclToken& v = tokens[t];
                if (v.kind == TokenKind::Slash)
                    break;
                if (v.kind != TokenKind::Number && v.kind != TokenKind::Repeat)
                    syntax_error(v.where, fmt::format("unexpected '{}' inside {}", v.text, kw));
                a.runs.emplace_back(v.count, v.value);
                a.total += std::uint64_t(v.count);
                a.integer_literals = a.integer_literals && is_integer_literal(v.value);
            }
            ++t;
            if (kw == "COORD")
                coord = std::move(a);
            else if (kw == "ZCORN")
                zcorn = std::move(a);
            else if (kw == "ACTNUM")
                actnum = std::move(a);
            else {
                auto same = [&](const RawArray& r) { return r.keyword == kw; };
                props.erase(std::remove_if(props.begin(), props.end(), same), props.end());
                props.push_back(std::move(a));
            }
            continue;
        }

        if (is_no_data_keyword(kw)) {
            opaque.emplace_back(kt.text);
            continue;
        }

        // Unknown keyword: kept verbatim up to its '/', or alone when the next
        // token is another keyword this parser interprets.
        std::size_t s = t;
        while (s < tokens.size() && tokens[s].kind != TokenKind::Slash &&
               !(tokens[s].kind == TokenKind::Keyword &&
                 (is_array_keyword(upper(tokens[s].text)) || is_dims_keyword(upper(tokens[s].text)) ||
                  is_no_data_keyword(upper(tokens[s].text)))))
            ++s;
        if (s < tokens.size() && tokens[s].kind == TokenKind::Slash) {
            opaque.emplace_back(text.substr(kt.offset, tokens[s].offset + 1 - kt.offset));
            t = s + 1;
        } else {
            opaque.emplace_back(kt.text);
        }
    }

    if (!dims)
        fail(ErrorKind::MissingDims, "no SPECGRID or DIMENS keyword");
    if (!coord)
        fail(ErrorKind::LengthMismatch, "COORD is missing");
    if (!zcorn)
        fail(ErrorKind::LengthMismatch, "ZCORN is missing");

    const GridDims& d = *dims;
    CornerPointModel model;
    model.dims = d;
    model.base_dims = d;
    model.quantization = options.quantization;
    const int gexp = options.quantization.geometry_exponent;

    check_length(*coord, 6 * d.pillar_count());
    model.pillars = PillarSet(d.nodes_i(), d.nodes_j());
    model.pillars.coords = expand(*coord, gexp);

    check_length(*zcorn, 8 * d.cell_count());
    auto conv = zcorn_to_nodez(expand(*zcorn, gexp), d, options.policy);
    model.z = std::move(conv.field);
    model.top_z = std::move(conv.top_z);

    if (actnum) {
        check_length(*actnum, d.cell_count());
        for (auto v : expand(*actnum, 0))
            model.actnum.push_back(v != 0 ? 1 : 0);
    } else {
        model.actnum.assign(d.cell_count(), 1);
    }

    for (const RawArray& a : props) {
        check_length(a, d.cell_count());
        CellPropertyField f;
        f.name = a.keyword;
        const auto forced = options.kinds.find(a.keyword);
        f.kind = forced != options.kinds.end() ? forced->second
                 : a.integer_literals          ? PropertyKind::Categorical
                                               : PropertyKind::Continuous;
        if (f.kind == PropertyKind::Continuous) {
            f.scale_exponent = options.quantization.property_exponent;
            f.values = expand(a, f.scale_exponent);
        } else {
            f.scale_exponent = 0;
            f.values = expand(a, 0);
            f.universe = distinct_values(f.values);
            if (!f.universe.empty() && f.universe.front() < 0)
                fail(ErrorKind::ValueOutsideUniverse,
                     fmt::format("{} is categorical but holds the negative class {}", a.keyword, f.universe.front()));
        }
        model.properties.push_back(std::move(f));
    }
    model.opaque_keywords = std::move(opaque);
    return model;
}

std::string write_grdecl(const CornerPointModel& model, std::string_view comment)
{
    const GridDims& d = model.dims;
    const int gexp = model.quantization.geometry_exponent;
    std::string out;
    if (!comment.empty()) {
        std::istringstream lines{std::string(comment)};
        for (std::string line; std::getline(lines, line);)
            out += "-- " + line + "\n";
        out += "\n";
    }
    out += fmt::format("SPECGRID\n{} {} {} 1 F /\n\n", d.ni, d.nj, d.nk);

    out += "COORD\n";
    for (std::size_t p = 0; p < model.pillars.coords.size(); p += PillarSet::kComponents) {
        for (int c = 0; c < PillarSet::kComponents; ++c)
            out += (c ? " " : "") + format_fixed(model.pillars.coords[p + c], gexp);
        out += '\n';
    }
    out += "/\n\n";

    const auto zc = nodez_to_zcorn(model.z, d, model.depth == 0 ? model.top_z : std::nullopt);
    out += "ZCORN\n";
    TokenWriter zw(out);
    zw.values(zc.size(), [&](std::size_t n) { return format_fixed(zc[n], gexp); });
    zw.finish();

    out += "ACTNUM\n";
    TokenWriter aw(out);
    aw.values(model.actnum.size(), [&](std::size_t n) { return std::string(model.actnum[n] ? "1" : "0"); });
    aw.finish();

    for (const auto& f : model.properties) {
        out += f.name + "\n";
        TokenWriter pw(out);
        if (f.kind == PropertyKind::Categorical) {
            pw.values(f.values.size(), [&](std::size_t n) { return std::to_string(f.values[n]); });
        } else {
            pw.values(f.values.size(), [&](std::size_t n) {
                const int i = int(n % d.ni);
                const int j = int(n / d.ni % d.nj);
                const int k = int(n / (std::size_t(d.ni) * d.nj));
                const std::int64_t cells = aggregated_cell_count(model.base_dims, model.depth, i, j, k);
                return format_fixed(mean_fixed(f.values[n], cells), f.scale_exponent, true);
            });
        }
        pw.finish();
    }

    for (const auto& k : model.opaque_keywords)
        out += k + "\n\n";
    return out;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, fmt::format("cannot open {}", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::Io, fmt::format("cannot write {}", path.string()));
    out.write(text.data(), std::streamsize(text.size()));
    if (!out)
        fail(ErrorKind::Io, fmt::format("write to {} failed", path.string()));
}

}  // namespace hexashrink
