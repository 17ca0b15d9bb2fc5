#include <doctest.h>

#include <sstream>

#include "gammalind/errors.hpp"
#include "gammalind/sweep.hpp"

using namespace gammalind;

namespace {

GaugeConfig sector(const ColoredGraph& g, std::vector<int> U, std::vector<int> V) {
    return realize_fluxes(g, random_sector(g, 1, U, V));
}

SweepConfig small_grid(int points) {
    SweepConfig c;
    c.grid.min = 0.05;
    c.grid.max = 5;
    c.grid.points = points;
    return c;
}

}  // namespace

TEST_CASE("grids: log and linear endpoints, validation") {
    GammaGrid g;
    g.min = 0.01;
    g.max = 100;
    g.points = 5;
    const auto v = g.values();
    REQUIRE(v.size() == 5);
    CHECK(v[0] == doctest::Approx(0.01));
    CHECK(v[2] == doctest::Approx(1.0));
    CHECK(v[4] == doctest::Approx(100));
    g.spacing = Spacing::Linear;
    g.min = 0;
    g.max = 1;
    CHECK(g.values()[2] == doctest::Approx(0.5));
    g.points = 0;
    CHECK_THROWS_AS(g.values(), Error);
    g.points = 3;
    g.min = 2;
    CHECK_THROWS_AS(g.values(), Error);
    g.spacing = Spacing::Log;
    g.min = 0;
    CHECK_THROWS_AS(g.values(), Error);
    g.points = 1;
    g.min = g.max = 3;
    CHECK(g.values() == std::vector<double>{3});
}

TEST_CASE("parsers round trip and reject junk") {
    CHECK(parse_spacing(to_string(Spacing::Linear)) == Spacing::Linear);
    CHECK(parse_mode(to_string(ModeChoice::Number)) == ModeChoice::Number);
    CHECK_THROWS_AS(parse_mode("fast"), Error);
    CHECK_THROWS_AS(parse_spacing("geometric"), Error);
}

TEST_CASE("auto mode never sends flipped edges to number mode") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    CHECK(resolve_mode(ModeChoice::Auto, sector(g, {3}, {})) == Mode::Parity);
    CHECK(resolve_mode(ModeChoice::Auto, sector(g, {}, {1})) == Mode::Number);
    CHECK(resolve_mode(ModeChoice::Parity, sector(g, {}, {1})) == Mode::Parity);
    CHECK_THROWS_AS(resolve_mode(ModeChoice::Number, sector(g, {3}, {})), Error);
}

TEST_CASE("rows come out ordered by gamma then n") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 4, 4, true);
    SweepConfig c = small_grid(7);
    c.n_max = 5;
    c.threads = 3;
    const std::vector<GapRow> rows = run_sweep(g, sector(g, {}, {0, 6, 9}), c);
    REQUIRE(rows.size() == 7 * 3);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const bool ordered = rows[k - 1].gamma < rows[k].gamma ||
                             (rows[k - 1].gamma == rows[k].gamma && rows[k - 1].n < rows[k].n);
        CHECK(ordered);
    }
    for (const GapRow& r : rows) {
        CHECK(r.mode == Mode::Number);
        CHECK(r.n % 2 == 1);
        CHECK(r.gap >= r.bound_lower - 1e-10);
        CHECK(r.gap <= r.bound_upper + 1e-10);
    }
}

TEST_CASE("explicit n list overrides n_max") {
    const ColoredGraph g = cycle_graph(6);
    SweepConfig c = small_grid(2);
    c.n_list = {2, 4};
    const std::vector<GapRow> rows = run_sweep(g, sector(g, {}, {0, 3}), c);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].n == 2);
    CHECK(rows[1].n == 4);
}

TEST_CASE("CSV output is byte-stable across thread counts") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 4, 4, true);
    const GaugeConfig gauge = sector(g, {5}, {2});
    std::string first;
    for (int threads : {1, 4}) {
        SweepConfig c = small_grid(9);
        c.threads = threads;
        std::ostringstream out;
        write_csv(out, run_sweep(g, gauge, c));
        if (first.empty()) first = out.str();
        else CHECK(out.str() == first);
    }
    CHECK(first.rfind("gamma,n,gap,bound_lower,bound_upper,vacuum_physical,pf_sign,exceptional_flag,wall_time_ms\n", 0) == 0);
    std::istringstream lines(first);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 10);
}

TEST_CASE("parity rows leave number-only fields blank") {
    const ColoredGraph g = cycle_graph(4);
    SweepConfig c = small_grid(1);
    c.grid.min = c.grid.max = 0.5;
    std::ostringstream out;
    write_csv(out, run_sweep(g, sector(g, {1}, {}), c));
    const std::string row = out.str().substr(out.str().find('\n') + 1);
    CHECK(row.rfind("0.5,,", 0) == 0);
}

TEST_CASE("disorder profile is reproducible and in range") {
    const Eigen::VectorXd a = disorder_profile(100, 0.3, 7), b = disorder_profile(100, 0.3, 7);
    CHECK(a == b);
    CHECK(a.minCoeff() >= 0.7);
    CHECK(a.maxCoeff() <= 1.3);
    CHECK(disorder_profile(5, 0.0, 1) == Eigen::VectorXd::Ones(5));
    CHECK_THROWS_AS(disorder_profile(5, 1.5, 1), Error);
}

TEST_CASE("worker count is positive") {
    CHECK(worker_count(0) >= 1);
    CHECK(worker_count(3) >= 1);
}
