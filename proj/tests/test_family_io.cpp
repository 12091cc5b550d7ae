#include "kwise/construction.hpp"
#include "kwise/family_io.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace kwise;

namespace {

Family parse(const std::string& text)
{
    std::istringstream in(text);
    return read_family(in);
}

std::string dump(const Family& f)
{
    std::ostringstream out;
    write_family(out, f);
    return out.str();
}

} // namespace

TEST_CASE("canonical text form")
{
    const Family f(Universe(3), {7, 0, 1, 6});
    CHECK(dump(f) == "n=3\n{}\n1\n2,3\n1,2,3\n");
}

TEST_CASE("reading accepts hex, braces, comments and blank lines")
{
    const Family f = parse("# header\nn=4\n\n0x6\n{1, 4}\n{}\n  3  \n");
    CHECK(f.members() == std::vector<Mask>{0, 4, 6, 9});
    CHECK(f.universe().size() == 4);
}

TEST_CASE("round trip through the canonical form is mask-identical")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 30);
        std::vector<Mask> members;
        for (int i = 0; i < 50; ++i)
            members.push_back(rng() & Universe(n).full());
        const Family f(Universe(n), members);
        const std::string text = dump(f);
        const Family back = parse(text);
        CHECK(back == f);
        CHECK(dump(back) == text);
    }
    const auto built = build_family({5, 12});
    CHECK(parse(dump(built.f)) == built.f);
}

TEST_CASE("malformed input is rejected with a line number")
{
    CHECK_THROWS_AS(parse(""), FormatError);
    CHECK_THROWS_AS(parse("1,2\n"), FormatError);
    CHECK_THROWS_AS(parse("n=0\n"), FormatError);
    CHECK_THROWS_AS(parse("n=3\n4\n"), FormatError);
    CHECK_THROWS_AS(parse("n=3\n2,1\n"), FormatError);
    CHECK_THROWS_AS(parse("n=3\n1,,2\n"), FormatError);
    CHECK_THROWS_AS(parse("n=3\n0x8\n"), FormatError);
    CHECK_THROWS_AS(parse("n=3\n0xzz\n"), FormatError);
    try {
        parse("n=3\n1\nbanana\n");
        FAIL("expected FormatError");
    }
    catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("format helpers")
{
    CHECK(format_set(0) == "{}");
    CHECK(format_set(0b1011) == "1,2,4");
    CHECK(format_hex(255) == "0xff");
    CHECK(parse_set("0xff", Universe(8)) == 255);
}
