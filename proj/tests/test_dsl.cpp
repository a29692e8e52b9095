#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "mapspace/cli.hpp"
#include "mapspace/dsl.hpp"
#include "mapspace/errors.hpp"
#include "mapspace/library.hpp"

using namespace mapspace;

namespace {

std::string write_temp(const std::string& name, const std::string& text)
{
    std::string path = "dsl_test_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse the S8 model file")
{
    ModelFile f = parse_model("cdga S8 { gen x:8; gen y:15; d y = x^2; }");
    REQUIRE(f.is_cdga());
    const FreeModel& m = f.cdga();
    CHECK(m.ctx.size() == 2);
    CHECK(m.minimal);
    CHECK(differential_length(m) == 2);
}

TEST_CASE("parse the CP3 algebra file")
{
    ModelFile f = parse_model(
        "algebra CP3 { gen x:2; gen x2:4; gen x3:6; mul x*x = x2; mul x*x2 = x3; }");
    REQUIRE(!f.is_cdga());
    const FiniteAlgebra& a = f.algebra();
    CHECK(a.dim() == 3);
    CHECK(a.top_degree() == 6);
    // x2 * x = x3 filled in by the Koszul rule
    CHECK(a.mul[1][0] == SparseVec::unit(2));
}

TEST_CASE("unknown identifiers are positioned errors")
{
    try {
        parse_model("cdga Bad { gen x:8; d x = y; }");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("unknown identifier y") != std::string::npos);
    }
}

TEST_CASE("syntax errors carry line and column")
{
    try {
        parse_model("cdga X {\n gen x:;\n}");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("expected degree") != std::string::npos);
    }
}

TEST_CASE("coefficients, fractions and negatives parse")
{
    ModelFile f = parse_model(
        "cdga W { gen a:2; gen b:3; gen c:6; d c = 3/2*a^2*b + -1*a*b*a; }");
    const FreeModel& m = f.cdga();
    // -1*a*b*a collapses onto a^2*b: 3/2 - 1 = 1/2
    const Elem& dc = m.diff[2];
    REQUIRE(dc.term_count() == 1);
    CHECK(dc.terms().begin()->second == frac(1, 2));
}

TEST_CASE("algebra kind enforces unit discipline")
{
    // a degree-0 element must be declared as the unit
    CHECK_THROWS_AS(parse_model("algebra A { gen one:0; gen x:2; }"), ValidationError);
    // declared unit is absorbed and the unit law accepted
    ModelFile f = parse_model("algebra A { gen one:0; unit one; gen x:2; mul one*x = x; }");
    CHECK(f.algebra().dim() == 1);
    // violating the unit law is an error
    CHECK_THROWS_AS(parse_model("algebra A { gen one:0; unit one; gen x:2; mul one*x = 0; }"),
                    ValidationError);
    // nonzero-degree unit
    CHECK_THROWS_AS(parse_model("algebra A { gen u:1; unit u; }"), ValidationError);
}

TEST_CASE("round-trip: print(parse(t)) parses to an equal value")
{
    std::vector<std::string> sources = {
        "cdga S8 { gen x:8; gen y:15; d y = x^2; }",
        "algebra CP3 { gen x:2; gen x2:4; gen x3:6; mul x*x = x2; mul x*x2 = x3; }",
        "cdga M { gen a:2; gen b:5; d b = -2*a^3 + a*a^2; }",
        "algebra P { gen a5:5; gen b11:11; gen ab16:16; mul a5*b11 = ab16; }",
        "algebra D { gen e2:2; gen b3:3; d e2 = b3; }",
    };
    for (const std::string& src : sources) {
        ModelFile f1 = parse_model(src);
        std::string printed = print_model(f1);
        ModelFile f2 = parse_model(printed);
        CHECK(print_model(f2) == printed);
        CHECK(model_digest(f1) == model_digest(f2));
    }
}

TEST_CASE("round-trip across the library builders")
{
    for (const char* spec : {"sphere 8", "em 4", "power 2 4", "cp 3", "product-spheres 5 11",
                             "wedge 3 3 8", "s2big", "truncpoly 4 3"}) {
        std::istringstream ss(spec);
        std::string name, arg;
        ss >> name;
        std::vector<std::string> args;
        while (ss >> arg) args.push_back(arg);
        ModelFile f = library_make(name, args);
        ModelFile f2 = parse_model(print_model(f));
        CHECK(print_model(f2) == print_model(f));
    }
}

TEST_CASE("cli: exit codes follow the verdict category")
{
    std::string s8 = write_temp("s8.cdga", print_model(library_make("sphere", {"8"})));
    std::string s5xs11 = write_temp("s5xs11.alg", print_model(library_make("product-spheres", {"5", "11"})));
    std::string bad = write_temp("bad.cdga", "cdga Bad { gen x:8; d x = y; }");
    std::string nonmin = write_temp("nonmin.cdga", "cdga NM { gen x:3; gen y:2; d y = x; }");

    CHECK(run_cli({"validate", s8}).code == 0);
    CHECK(run_cli({"validate", bad}).code == 2);
    CHECK(run_cli({"freeness", s5xs11, s8, "--max-degree", "14"}).code == 0);
    // precondition failure: map-model needs a minimal Y
    CHECK(run_cli({"map-model", s5xs11, nonmin, "--max-degree", "10"}).code == 3);
    // postnikov with dl = inf
    std::string kq = write_temp("kq4.cdga", print_model(library_make("em", {"4"})));
    CHECK(run_cli({"postnikov", s5xs11, kq, "--max-degree", "10"}).code == 3);
    // missing mandatory degree bound
    CHECK(run_cli({"cohomology", s8}).code == 2);
    // unknown flag
    CHECK(run_cli({"validate", s8, "--frobnicate"}).code == 2);
}

TEST_CASE("cli: the worked freeness example, human and JSON agree")
{
    std::string s8 = write_temp("j_s8.cdga", print_model(library_make("sphere", {"8"})));
    std::string s5xs11 =
        write_temp("j_s5xs11.alg", print_model(library_make("product-spheres", {"5", "11"})));

    CliResult human = run_cli({"freeness", s5xs11, s8, "--max-degree", "14"});
    REQUIRE(human.code == 0);
    CHECK(human.out.find("FREE; generators at degrees 3, 4, 10") != std::string::npos);
    CHECK(human.out.find("cup = 2") != std::string::npos);
    CHECK(human.out.find("dl = 2") != std::string::npos);

    CliResult machine = run_cli({"freeness", s5xs11, s8, "--max-degree", "14", "--json"});
    REQUIRE(machine.code == 0);
    auto j = nlohmann::json::parse(machine.out);
    CHECK(j["invariants"]["cup"] == 2);
    CHECK(j["invariants"]["dl"] == 2);
    CHECK(j["invariants"]["conn"] == 7);
    CHECK(j["invariants"]["dim"] == 16);
    CHECK(j["generators"] == nlohmann::json::array({3, 4, 10}));
    CHECK(j["verdict"].get<std::string>().find("FREE") == 0);
    // every numeric field of the JSON shows up verbatim in the human text
    for (const char* needle : {"2", "7", "16", "3, 4, 10"})
        CHECK(human.out.find(needle) != std::string::npos);
}

TEST_CASE("cli: hn output matches the worked wording")
{
    std::string s8 = write_temp("h_s8.cdga", print_model(library_make("sphere", {"8"})));
    CliResult r = run_cli({"hn", s8});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("dl = 2; m_H of rationalization = 1") != std::string::npos);

    CliResult r3 = run_cli({"hn", s8, "--r", "3"});
    CHECK(r3.out.find("hn_check(3) = false") != std::string::npos);
}

TEST_CASE("cli: map-model --emit produces a file the toolchain accepts")
{
    std::string cp2 = write_temp("e_cp2.alg", print_model(library_make("cp", {"2"})));
    std::string s6 = write_temp("e_s6.cdga", print_model(library_make("sphere", {"6"})));
    CliResult r = run_cli({"map-model", cp2, s6, "--max-degree", "12", "--emit", "dsl_test_emitted.cdga"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("morphism verified") != std::string::npos);

    CliResult v = run_cli({"validate", "dsl_test_emitted.cdga"});
    CHECK(v.code == 0);
    // and its cohomology can be computed like any other model
    CliResult c = run_cli({"cohomology", "dsl_test_emitted.cdga", "--max-degree", "8"});
    CHECK(c.code == 0);
    CHECK(c.out.find("not free: first failure at degree 8") != std::string::npos);
}

TEST_CASE("cli: reports are deterministic apart from the timing line")
{
    std::string cp3 = write_temp("d_cp3.alg", print_model(library_make("cp", {"3"})));
    auto strip_timing = [](std::string s) {
        auto pos = s.find("timings_ms");
        return pos == std::string::npos ? s : s.substr(0, pos);
    };
    CliResult a = run_cli({"invariants", cp3});
    CliResult b = run_cli({"invariants", cp3});
    CHECK(strip_timing(a.out) == strip_timing(b.out));
    CHECK(a.out.find("cup = 3") != std::string::npos);
    CHECK(a.out.find("nilpotency = 3") != std::string::npos);
    CHECK(a.out.find("dim = 6") != std::string::npos);
}
