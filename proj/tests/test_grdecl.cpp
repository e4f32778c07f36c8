#include <hexashrink/error.hpp>
#include <hexashrink/grdecl.hpp>
#include <hexashrink/pyramid.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "support.hpp"

using namespace hexashrink;
using hexashrink::testing::random_spec;

namespace {

const char* kTiny = R"(-- two cells
SPECGRID
 2 1 1 1 F /
COORD
 0 0 1000  0 0 1100
 100 0 1000  100 0 1100
 200 0 1000  200 0 1100
 0 100 1000  0 100 1100
 100 100 1000  100 100 1100
 200 100 1000  200 100 1100
/
ZCORN
 8*1000 8*1010 /
ACTNUM 1 0 /
PORO 0.25 0.5 /
)";

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Usage;
}

}  // namespace

TEST(Tokenize, RepeatsAndSlashes)
{
    const auto t = tokenize("ACTNUM 3*1 0 2*1/ -- trailing\n");
    ASSERT_EQ(t.size(), 5u);
    EXPECT_EQ(t[0].kind, TokenKind::Keyword);
    EXPECT_EQ(t[1].kind, TokenKind::Repeat);
    EXPECT_EQ(t[1].count, 3);
    EXPECT_EQ(t[1].value, "1");
    EXPECT_EQ(t[2].kind, TokenKind::Number);
    EXPECT_EQ(t[3].count, 2);
    EXPECT_EQ(t[4].kind, TokenKind::Slash);
}

TEST(Tokenize, ErrorLocations)
{
    try {
        tokenize("ZCORN\n  1 2 0*5 /");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    EXPECT_EQ(kind_of([] { tokenize("ACTNUM N*1 /"); }), ErrorKind::SyntaxError);
}

TEST(ParseFixed, ExactDecimal)
{
    EXPECT_EQ(parse_fixed("0.5", 3), 500);
    EXPECT_EQ(parse_fixed("1234.5678", 3), 1234568);
    EXPECT_EQ(parse_fixed("-1234.5675", 3), -1234568);
    EXPECT_EQ(parse_fixed("0.2345", 6), 234500);
    EXPECT_EQ(parse_fixed("1.5E2", 3), 150000);
    EXPECT_EQ(parse_fixed("25D-2", 6), 250000);
    EXPECT_EQ(parse_fixed("7", 0), 7);
    EXPECT_EQ(kind_of([] { parse_fixed("1e40", 3); }), ErrorKind::OverflowRisk);
    EXPECT_EQ(kind_of([] { parse_fixed("abc", 3); }), ErrorKind::SyntaxError);
}

TEST(FormatFixed, Shortest)
{
    EXPECT_EQ(format_fixed(1234568, 3), "1234.568");
    EXPECT_EQ(format_fixed(234500, 6), "0.2345");
    EXPECT_EQ(format_fixed(-500, 3), "-0.5");
    EXPECT_EQ(format_fixed(1000000, 3), "1000");
    EXPECT_EQ(format_fixed(1000000, 3, true), "1000.0");
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::int64_t> v(-1000000000000, 1000000000000);
    for (int t = 0; t < 10000; ++t) {
        const auto q = v(rng);
        EXPECT_EQ(parse_fixed(format_fixed(q, 6), 6), q);
    }
}

TEST(Grdecl, ParsesTinyDeck)
{
    const auto m = parse_grdecl(kTiny);
    EXPECT_EQ(m.dims, (GridDims{2, 1, 1}));
    EXPECT_EQ(m.actnum, (std::vector<std::uint8_t>{1, 0}));
    ASSERT_EQ(m.properties.size(), 1u);
    EXPECT_EQ(m.properties[0].kind, PropertyKind::Continuous);
    EXPECT_EQ(m.properties[0].values, (std::vector<std::int64_t>{250000, 500000}));
    EXPECT_EQ(m.z.at(0, 0, 0, NE), 1000000);
    EXPECT_EQ(m.z.at(0, 0, 1, NE), 1010000);
    EXPECT_EQ(m.pillars.at(2, 1, 0), 200000);
}

TEST(Grdecl, RepeatExpansion)
{
    std::string deck = kTiny;
    deck.replace(deck.find("ACTNUM 1 0 /"), 12, "ACTNUM 2*1 /");
    deck.replace(deck.find("PORO 0.25 0.5 /"), 15, "PORO 2*0.5 /");
    const auto m = parse_grdecl(deck);
    EXPECT_EQ(m.actnum, (std::vector<std::uint8_t>{1, 1}));
    EXPECT_EQ(m.properties[0].values, (std::vector<std::int64_t>{500000, 500000}));
}

TEST(Grdecl, IntegerLiteralsAreCategorical)
{
    std::string deck = kTiny;
    deck += "SATNUM 2 5 /\n";
    const auto m = parse_grdecl(deck);
    ASSERT_EQ(m.properties.size(), 2u);
    EXPECT_EQ(m.properties[1].kind, PropertyKind::Categorical);
    EXPECT_EQ(m.properties[1].universe, (std::vector<std::int64_t>{2, 5}));

    ParseOptions o;
    o.kinds["SATNUM"] = PropertyKind::Continuous;
    EXPECT_EQ(parse_grdecl(deck, o).properties[1].kind, PropertyKind::Continuous);
}

TEST(Grdecl, Errors)
{
    EXPECT_EQ(kind_of([] { parse_grdecl("COORD 1 2 3 /"); }), ErrorKind::MissingDims);
    std::string short_zcorn = kTiny;
    short_zcorn.replace(short_zcorn.find("8*1010"), 6, "7*1010");
    EXPECT_EQ(kind_of([&] { parse_grdecl(short_zcorn); }), ErrorKind::LengthMismatch);
    std::string no_coord = kTiny;
    no_coord.erase(no_coord.find("COORD"), no_coord.find("ZCORN") - no_coord.find("COORD"));
    EXPECT_EQ(kind_of([&] { parse_grdecl(no_coord); }), ErrorKind::LengthMismatch);
    std::string negative = kTiny;
    negative += "SATNUM -1 2 /\n";
    ParseOptions categorical;
    categorical.kinds["SATNUM"] = PropertyKind::Categorical;
    EXPECT_EQ(kind_of([&] { parse_grdecl(negative, categorical); }), ErrorKind::ValueOutsideUniverse);
}

TEST(Grdecl, OpaqueKeywordsSurvive)
{
    std::string deck = kTiny;
    deck += "MAPAXES\n 0 1 0 0 1 0 /\nNOECHO\n";
    const auto m = parse_grdecl(deck);
    ASSERT_EQ(m.opaque_keywords.size(), 2u);
    EXPECT_NE(m.opaque_keywords[0].find("MAPAXES"), std::string::npos);
    EXPECT_EQ(m.opaque_keywords[1], "NOECHO");
    const auto again = parse_grdecl(write_grdecl(m));
    EXPECT_EQ(again.opaque_keywords, m.opaque_keywords);

    const auto back = synthesize_to_level(analyze_pyramid(m, {.levels = 1}), 0);
    EXPECT_EQ(back.opaque_keywords, m.opaque_keywords);
}

TEST(Grdecl, WriteParseRoundTrip)
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 30; ++t) {
        const auto m = generate_synthetic(random_spec(rng, 12));
        const auto text = write_grdecl(m, "round trip");
        ParseOptions o;
        for (const auto& f : m.properties)
            o.kinds[f.name] = f.kind;
        EXPECT_EQ(parse_grdecl(text, o), m) << "trial " << t;
    }
}

TEST(Grdecl, CoarseLevelWritesMeans)
{
    const auto m = generate_synthetic(synthetic_preset("faulted"));
    const auto pyr = analyze_pyramid(m, {.levels = 2});
    const auto coarse = synthesize_to_level(pyr, 2);
    const auto text = write_grdecl(coarse);
    const auto parsed = parse_grdecl(text);
    EXPECT_EQ(parsed.dims, coarse.dims);
    EXPECT_EQ(parsed.z, coarse.z);
    // PORO stays in its physical range after averaging.
    for (const auto& f : parsed.properties)
        if (f.name == "PORO")
            for (auto v : f.values) {
                EXPECT_GE(v, 5000);
                EXPECT_LE(v, 450000);
            }
}
