#include <doctest.h>

#include <sstream>

#include "config.hpp"
#include "plot.hpp"

using namespace gltool;

namespace {

std::string config_error(const std::string& text) {
    std::istringstream in(text);
    try {
        check_config(parse_config(in, "run.ini"));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "accepted";
}

}  // namespace

TEST_CASE("a full config parses") {
    std::istringstream in(
        "# comment\n[graph]\nkind = square\nnx = 6\nny = 4\nperiodic = false\n"
        "[sector]\nflux = pi\nV = [1, 2]\nU = 3 4\n"
        "[sweep]\ngamma_min = 0.1\ngamma_max = 10\npoints = 11\nspacing = linear\nmode = parity\n"
        "[output]\ncsv = out.csv\nplot = out.svg\ntiming = true\n");
    const RunConfig c = parse_config(in);
    CHECK(c.kind == "square");
    CHECK(c.nx == 6);
    CHECK_FALSE(c.periodic);
    CHECK(c.flux == "pi");
    CHECK(c.flipped_vertices == std::vector<int>{1, 2});
    CHECK(c.flipped_edges == std::vector<int>{3, 4});
    CHECK(c.gamma_max == 10);
    CHECK(c.points == 11);
    CHECK(c.spacing == "linear");
    CHECK(c.plot == "out.svg");
    CHECK(c.timing);
}

TEST_CASE("config errors name the line") {
    CHECK(config_error("[graph]\nnx = four\n").find("run.ini:2:") != std::string::npos);
    CHECK(config_error("[graph]\nkind = square\n[sweeps]\n").find("run.ini:3:") != std::string::npos);
    CHECK(config_error("[sweep]\npoints = 10\ncolour = red\n").find("run.ini:3:") != std::string::npos);
    CHECK(config_error("[sweep]\n\npoints = 0\n").find("run.ini:3:") != std::string::npos);
    CHECK(config_error("[sweep]\ngamma_min = 5\ngamma_max = 1\n").find("run.ini:2:") != std::string::npos);
    CHECK(config_error("[sector]\nflux = sideways\n").find("run.ini:2:") != std::string::npos);
}

TEST_CASE("integer lists accept the usual spellings") {
    CHECK(parse_int_list("[1, 2, 3]") == std::vector<int>{1, 2, 3});
    CHECK(parse_int_list("1 2 3") == std::vector<int>{1, 2, 3});
    CHECK(parse_int_list("1,2,3") == std::vector<int>{1, 2, 3});
    CHECK(parse_int_list("[]").empty());
    CHECK_THROWS_AS(parse_int_list("1, x"), ConfigError);
}

TEST_CASE("CSV reader and series grouping") {
    std::istringstream in("gamma,n,gap,bound_lower,bound_upper\n0.1,1,0.2,0.1,0.3\n0.1,3,0.6,0.5,0.7\n1,1,2,1,3\n1,3,6,5,7\n");
    const CsvTable t = read_csv(in);
    CHECK(t.column("gap") == 2);
    CHECK(t.column("nope") == -1);
    const std::vector<Series> s = series_from_csv(t, "run");
    REQUIRE(s.size() == 2);
    CHECK(s[0].x == std::vector<double>{0.1, 1});
    CHECK(s[1].y == std::vector<double>{0.6, 6});
    CHECK(s[0].lower.size() == 2);
    const std::string svg = render_svg(s, {"gaps", 640, 400, false});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("CSV problems are reported") {
    std::istringstream ragged("gamma,gap\n0.1,0.2\n0.3\n");
    try {
        read_csv(ragged, "x.csv");
        FAIL("ragged row accepted");
    } catch (const PlotError& e) {
        CHECK(std::string(e.what()).find("x.csv:3:") != std::string::npos);
    }
    std::istringstream no_gap("gamma,n\n0.1,1\n");
    CHECK_THROWS_AS(series_from_csv(read_csv(no_gap), "r"), PlotError);
}
