#include "hypermod/cli.hpp"
#include "hypermod/io.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

using namespace hypermod;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    auto dir = std::filesystem::temp_directory_path() / "hypermod_cli_tests";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
}

std::string torus_json() { return variety_to_json(builtin("torus")).dump(2); }

// Runs the installed binary and captures stdout and the exit status.
Run run_binary(const std::string& args)
{
    const std::string cmd = std::string(HYPERMOD_BINARY) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
        out.append(buf.data(), n);
    const int status = pclose(pipe.release());
    return {WEXITSTATUS(status), out, ""};
}

}  // namespace

TEST_CASE("cdga golden output for the torus")
{
    auto r = run({"cdga", "--builtin", "torus", "--alpha", "3u"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "d(y1) = 6 z - 2 a' b'"));
    CHECK(contains(r.out, "d(y3) = z^2"));
    CHECK(contains(r.out, "generators: z (2), a' (1), b' (1), y1 (1), y2 (2), y2' (2), y3 (3)"));
}

TEST_CASE("betti golden output for P1")
{
    auto r = run({"betti", "--builtin", "p1", "--alpha", "9h", "--max-degree", "6"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "\n1 0 0 1 0 0 0\n"));
    auto j = run({"betti", "--builtin", "p1", "--alpha", "9h", "--max-degree", "6", "--format", "json"});
    CHECK(betti_table_from_json(json::parse(j.out)) == BettiTable{6, {1, 0, 0, 1, 0, 0, 0}});
}

TEST_CASE("range golden output")
{
    auto r = run({"range", "--curve-genus", "1", "--degree", "20"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "d = 18 (curve_RR, exact), max homology degree 7"));
    r = run({"range", "--toric", "3,5,7"});
    CHECK(contains(r.out, "d = 3 (toric, exact), max homology degree -1 (empty range)"));
    r = run({"range", "--jet-bound", "1", "--power", "30"});
    CHECK(contains(r.out, "d >= 30 (tensor_additivity, lower bound), max homology degree 13"));
    r = run({"range", "--builtin", "p2", "--alpha", "10h"});
    CHECK(contains(r.out, "d = 10 (toric, exact), max homology degree 3"));
    r = run({"range", "--builtin", "abelian2"});
    CHECK(r.code == kExitInputError);
    r = run({"range", "--builtin", "abelian2", "--jet-bound", "5"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "d >= 5 (user_supplied, lower bound)"));
}

TEST_CASE("compare, stable-series and hilbert commands")
{
    auto r = run({"compare", "--builtin", "p1", "--alpha", "30h"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "certified through degree 13"));
    CHECK(contains(r.out, "verdict: all equal in the certified range"));
    r = run({"compare", "--builtin", "torus", "--alpha", "3u"});
    CHECK(r.code == kExitInputError);
    CHECK(contains(r.err, "H^1 != 0"));

    r = run({"stable-series", "--builtin", "p2", "--max-degree", "8"});
    CHECK(contains(r.out, "1 0 0 1 0 1 0 0 1"));
    r = run({"stable-series", "--builtin", "torus", "--max-degree", "4", "--format", "json"});
    std::istringstream lines(r.out);
    std::string first, second;
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(poincare_series_from_json(json::parse(first)).coefficients == std::vector<std::uint64_t>{1, 0, 2, 1, 3});
    CHECK(poincare_series_from_json(json::parse(second)).coefficients == std::vector<std::uint64_t>{1, 2, 3, 5, 7});

    r = run({"hilbert", "--builtin", "p2", "--bundle", "2h"});
    CHECK(contains(r.out, "P(m) = 1/2 m^2 + 7/2 m + 6"));
    CHECK(contains(r.out, "integer-valued: yes"));
    r = run({"hilbert", "--builtin", "curve2", "--bundle", "5u", "--format", "json"});
    CHECK(json::parse(r.out)["coefficients"] == json::array({"4", "1"}));
}

TEST_CASE("exit codes")
{
    CHECK(run({"validate", "--builtin", "torus"}).code == kExitOk);
    CHECK(run({"validate", "--builtin", "nosuch"}).code == kExitInputError);
    CHECK(run({"cdga", "--builtin", "p1", "--alpha", "3x"}).code == kExitInputError);
    CHECK(run({"cdga", "--builtin", "p1", "--alpha", "h^0"}).code == kExitInputError);
    CHECK(run({"cdga"}).code == kExitInputError);
    CHECK(run({}).code == kExitInputError);
    CHECK(run({"frobnicate"}).code == kExitInputError);
    CHECK(run({"betti", "--builtin", "p1", "--max-degree", "-3"}).code == kExitInputError);
    CHECK(run({"cdga", "--help"}).code == kExitOk);

    ::setenv("HYPERMOD_MAX_MONOMIALS", "10", 1);
    auto r = run({"betti", "--builtin", "abelian2", "--max-degree", "6"});
    ::unsetenv("HYPERMOD_MAX_MONOMIALS");
    CHECK(r.code == kExitResourceLimit);
    CHECK(contains(r.err, "resource limit"));
}

TEST_CASE("variety files")
{
    auto path = write_temp("torus.json", torus_json());
    auto r = run({"validate", path.string()});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "valid: torus"));
    r = run({"cdga", path.string(), "--alpha", "3u"});
    CHECK(contains(r.out, "d(y1) = 6 z - 2 a' b'"));

    for (const auto& name : testing_support::builtin_names()) {
        auto v = builtin(name);
        auto back = parse_variety(variety_to_json(v).dump());
        CAPTURE(name);
        CHECK(variety_to_json(back) == variety_to_json(v));
        CHECK(back.ampleness_asserted == v.ampleness_asserted);
    }
}

TEST_CASE("variety file errors")
{
    SUBCASE("json syntax carries a position")
    {
        try {
            parse_variety("{\n  \"name\": \"x\",\n  \"dim\": 1,,\n}");
            FAIL("accepted broken JSON");
        } catch (const InputError& e) {
            CHECK(e.kind() == InputError::Kind::syntax);
            CHECK(contains(e.what(), "line 3"));
        }
    }
    SUBCASE("zero denominator")
    {
        auto j = variety_to_json(builtin("torus"));
        j["alpha"][0]["coeff"] = "1/0";
        try {
            parse_variety(j.dump());
            FAIL("accepted 1/0");
        } catch (const InputError& e) {
            CHECK(e.kind() == InputError::Kind::syntax);
            CHECK(contains(e.what(), "/alpha/0/coeff"));
        }
        auto path = write_temp("zero_den.json", j.dump());
        CHECK(run({"validate", path.string()}).code == kExitInputError);
    }
    SUBCASE("schema")
    {
        auto j = variety_to_json(builtin("torus"));
        j.erase("point_class");
        CHECK_THROWS_AS(parse_variety(j.dump()), InputError);
        j = variety_to_json(builtin("torus"));
        j["products"][0]["left"] = "q";
        try {
            parse_variety(j.dump());
            FAIL("accepted unknown label");
        } catch (const InputError& e) {
            CHECK(e.kind() == InputError::Kind::schema);
            CHECK(contains(e.what(), "/products/0/left"));
        }
    }
    SUBCASE("non-associative table names the triple")
    {
        // scale e1·(e2e3) and (e2e3)·e1 together: commutativity survives, associativity does not
        auto j = variety_to_json(builtin("abelian2"));
        int touched = 0;
        for (auto& p : j["products"]) {
            const bool hit = (p["left"] == "e1" && p["right"] == "e2e3") || (p["left"] == "e2e3" && p["right"] == "e1");
            if (hit) {
                p["result"][0]["coeff"] = "2";
                ++touched;
            }
        }
        REQUIRE(touched == 2);
        try {
            parse_variety(j.dump());
            FAIL("accepted a non-associative table");
        } catch (const InputError& e) {
            CHECK(e.kind() == InputError::Kind::validation);
            CHECK(contains(e.what(), "associativity: ("));
        }
        auto path = write_temp("nonassoc.json", j.dump());
        auto r = run({"validate", path.string()});
        CHECK(r.code == kExitInputError);
        CHECK(contains(r.out, "associativity"));
    }
}

TEST_CASE("element expressions")
{
    auto pp = builtin("product:p1,p1");
    CHECK(parse_element(pp.ring, "2h_1+3h_2") == ring_element(pp.ring, {{"h_1", 2}, {"h_2", 3}}));
    CHECK(parse_element(pp.ring, " - h_1 + 1/2 * h_2 ") == ring_element(pp.ring, {{"h_1", -1}, {"h_2", Rational(1, 2)}}));
    CHECK(parse_element(pp.ring, "h_1*h_2") == ring_element(pp.ring, "h_1*h_2"));
    CHECK(parse_element(pp.ring, "3") == Element::one(pp.ring) * Rational(3));
    CHECK_THROWS_AS(parse_element(pp.ring, ""), InputError);
    CHECK_THROWS_AS(parse_element(pp.ring, "2h_3"), InputError);
    CHECK_THROWS_AS(parse_element(pp.ring, "h_1 h_2"), InputError);
    CHECK_THROWS_AS(parse_element(pp.ring, "1/0 h_1"), InputError);
    auto t = builtin("torus");
    CHECK(parse_divisor_class(t.ring, "3u") == ring_element(t.ring, "u", 3));
    CHECK_THROWS_AS(parse_divisor_class(t.ring, "a"), InputError);
}

TEST_CASE("machine-readable records round-trip")
{
    const BettiTable t{4, {1, 0, 2, 7, 0}};
    CHECK(betti_table_from_json(json::parse(to_json(t).dump())) == t);
    const RangeReport r{18, BoundSource::curve_RR, true, 7, {"alpha ample", "second"}};
    CHECK(range_report_from_json(json::parse(to_json(r).dump())) == r);
    const PoincareSeries s{5, {1, 0, 2, 1, 3, 2}};
    CHECK(poincare_series_from_json(json::parse(to_json(s).dump())) == s);
    CHECK_THROWS_AS(betti_table_from_json(json::parse(to_json(s).dump())), InputError);

    auto out = run({"range", "--curve-genus", "2", "--degree", "11", "--format", "json"});
    auto back = range_report_from_json(json::parse(out.out));
    CHECK(back.jet_bound == 7);
    CHECK(json::parse(to_json(back).dump()) == json::parse(out.out));
}

TEST_CASE("installed binary is deterministic")
{
    for (const std::string args : {"cdga --builtin torus --alpha 3u", "betti --builtin product:p1,p1 --max-degree 7",
                                   "compare --builtin p2 --alpha 12h --format json",
                                   "stable-series --builtin abelian2 --max-degree 9", "hilbert --builtin p3"}) {
        CAPTURE(args);
        auto a = run_binary(args), b = run_binary(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        std::istringstream ss(args);
        std::vector<std::string> words;
        for (std::string w; ss >> w;)
            words.push_back(w);
        CHECK(a.out == run(words).out);
    }
    CHECK(run_binary("betti --builtin nosuch").code == 1);
    CHECK(run_binary("range --curve-genus 1 --degree 20").out ==
          "d = 18 (curve_RR, exact), max homology degree 7\nassumptions:\n"
          "  - alpha and alpha - c1(K_X) ample (degrees 20 and 20 are positive)\n");
}
