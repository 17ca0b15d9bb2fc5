#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "gammalind/errors.hpp"
#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"

using namespace gammalind;

namespace {

GaugeConfig reference_gauge(const ColoredGraph& g) {
    GaugeConfig c;
    c.u.assign(g.num_edges(), 1);
    c.u_tilde = c.u;
    c.v.assign(g.num_vertices(), -1);
    return c;
}

void check_realized(const ColoredGraph& g, const SectorSpec& s, const GaugeConfig& c) {
    for (std::size_t p = 0; p < g.plaquettes().size(); ++p) CHECK(flux(g, c.u, g.plaquettes()[p]) == s.plaquette_flux[p]);
    for (std::size_t l = 0; l < g.loops().size(); ++l) CHECK(flux(g, c.u, g.loops()[l]) == s.loop_flux[l]);
}

}  // namespace

TEST_CASE("Phase4 parsing and arithmetic") {
    CHECK(Phase4::parse("+1") == Phase4::one());
    CHECK(Phase4::parse("-1") == Phase4::minus_one());
    CHECK(Phase4::parse("i") == Phase4::i());
    CHECK(Phase4::parse("-i") == Phase4::minus_i());
    CHECK_THROWS_AS(Phase4::parse("2"), Error);
    CHECK(Phase4::i() * Phase4::i() == Phase4::minus_one());
    CHECK(Phase4::i().conj() == Phase4::minus_i());
    CHECK(Phase4::parse(Phase4::minus_i().str()) == Phase4::minus_i());
}

TEST_CASE("hexagon with u = +1 from A to B carries flux +1") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 4, 4, true);
    const GaugeConfig c = reference_gauge(g);
    for (const Cycle& p : g.plaquettes()) CHECK(flux(g, c.u, p) == Phase4::one());
}

TEST_CASE("odd plaquettes carry imaginary flux for any gauge") {
    const ColoredGraph g = cycle_graph(3);
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> u = {mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1};
        CHECK_FALSE(flux(g, u, g.plaquettes()[0]).is_real());
    }
}

TEST_CASE("square traversal against canonical direction") {
    // 0 -> 1 -> 3 -> 2 -> 0: the last two steps run against i < j.
    const ColoredGraph g(4, {{0, 1, 1, 1.0}, {1, 3, 2, 1.0}, {2, 3, 1, 1.0}, {0, 2, 2, 1.0}});
    const Cycle c = cycle_from_vertices(g, {0, 1, 3, 2});
    CHECK(c.step_sign(2, g.edges()) == -1);
    CHECK(c.step_sign(3, g.edges()) == -1);
    CHECK(flux(g, {1, 1, 1, 1}, c) == Phase4::one());
    CHECK(flux(g, {1, 1, 1, -1}, c) == Phase4::minus_one());
}

TEST_CASE("independent flux counts") {
    const FluxCounts tri = count_independent_fluxes(cycle_graph(3));
    CHECK(tri.strong == 1);
    CHECK(tri.weak == 3);
    CHECK(tri.total() == 4);
    for (int l : {2, 4, 6}) {
        const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, l, l, true);
        CHECK(count_independent_fluxes(g).strong == g.num_vertices() / 2 + 1);
    }
}

TEST_CASE("realize_fluxes on the reference sector gives u = +1") {
    for (auto kind : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular}) {
        const ColoredGraph g = build_lattice(kind, 4, 4, true);
        const SectorSpec s = observed_sector(g, reference_gauge(g));
        const GaugeConfig c = realize_fluxes(g, s);
        for (int x : c.u) CHECK(x == 1);
        CHECK(c.u_tilde == c.u);
    }
}

TEST_CASE("flipping a pair of plaquettes is realized exactly") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 4, 4, true);
    SectorSpec s = observed_sector(g, reference_gauge(g));
    s.plaquette_flux[3] = Phase4::minus_one();
    s.plaquette_flux[9] = Phase4::minus_one();
    check_realized(g, s, realize_fluxes(g, s));
}

TEST_CASE("random sectors: reproducible, constrained, realizable") {
    for (auto kind : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular}) {
        const ColoredGraph g = build_lattice(kind, 4, 4, true);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const SectorSpec s = random_sector(g, seed);
            const SectorSpec again = random_sector(g, seed);
            CHECK(s.plaquette_flux == again.plaquette_flux);
            CHECK(s.loop_flux == again.loop_flux);
            Phase4 product;
            for (Phase4 w : s.plaquette_flux) product *= w;
            CHECK(product == Phase4::one());
            const GaugeConfig c = realize_fluxes(g, s);
            check_realized(g, s, c);
            const SectorSpec back = observed_sector(g, c);
            CHECK(back.plaquette_flux == s.plaquette_flux);
            CHECK(back.loop_flux == s.loop_flux);
        }
    }
}

TEST_CASE("random sector flux histogram is uniform") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    const int samples = 10000;
    const std::size_t np = g.plaquettes().size();
    std::vector<int> minus(np, 0);
    for (int s = 0; s < samples; ++s) {
        const SectorSpec sec = random_sector(g, 1000 + s);
        for (std::size_t p = 0; p < np; ++p) minus[p] += sec.plaquette_flux[p] == Phase4::minus_one();
    }
    for (std::size_t p = 0; p < np; ++p) {
        CAPTURE(p);
        CHECK(std::abs(minus[p] / double(samples) - 0.5) < 0.02);
    }
}

TEST_CASE("product constraint violation is rejected") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 4, 4, true);
    SectorSpec s = observed_sector(g, reference_gauge(g));
    s.plaquette_flux[0] = Phase4::minus_one();
    try {
        realize_fluxes(g, s);
        FAIL("inconsistent sector accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentFlux);
    }
}

TEST_CASE("uniform sector rejects values forbidden by cycle length") {
    CHECK_THROWS_AS(uniform_sector(cycle_graph(3), Phase4::one()), Error);
    CHECK_NOTHROW(uniform_sector(cycle_graph(3), Phase4::i()));
    CHECK_THROWS_AS(uniform_sector(cycle_graph(4), Phase4::i()), Error);
}

TEST_CASE("vertex gauge transformations leave every flux unchanged") {
    const ColoredGraph g = build_lattice(LatticeKind::Triangular, 4, 4, true);
    GaugeConfig c = realize_fluxes(g, random_sector(g, 5, {2}, {7}));
    const SectorSpec before = observed_sector(g, c);
    std::vector<int> weak_before;
    for (int e = 0; e < g.num_edges(); ++e) weak_before.push_back(weak_flux(g, c, e));
    for (int v : {0, 3, 7, 11}) {
        gauge_transform(g, c, v, Layer::Left);
        gauge_transform(g, c, (v + 5) % g.num_vertices(), Layer::Right);
    }
    const SectorSpec after = observed_sector(g, c);
    CHECK(after.plaquette_flux == before.plaquette_flux);
    CHECK(after.loop_flux == before.loop_flux);
    const GaugeConfig untouched = realize_fluxes(g, random_sector(g, 5, {2}, {7}));
    for (const Cycle& p : g.plaquettes()) CHECK(right_flux(g, c.u_tilde, p) == right_flux(g, untouched.u_tilde, p));
    for (int e = 0; e < g.num_edges(); ++e) CHECK(weak_flux(g, c, e) == weak_before[e]);
}

TEST_CASE("odd valence gauge transformation toggles the inert sign") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    GaugeConfig c = reference_gauge(g);
    gauge_transform(g, c, 0, Layer::Right);
    CHECK(c.inert_sign == -1);
    CHECK(c.flipped_edges().size() == 3);
    CHECK(c.flipped_vertices().size() == 1);  // v_0 became +1
    gauge_transform(g, c, 0, Layer::Left);
    CHECK(c.inert_sign == 1);

    const ColoredGraph sq = build_lattice(LatticeKind::Square, 2, 2, true);
    GaugeConfig d = reference_gauge(sq);
    gauge_transform(sq, d, 1, Layer::Left);
    CHECK(d.inert_sign == 1);
}

TEST_CASE("weak fluxes flag exactly the flipped edges and the edges at flipped sites") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 4, 4, true);
    const std::vector<int> U = {0, 9}, V = {5};
    const GaugeConfig c = realize_fluxes(g, random_sector(g, 1, U, V));
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        const bool in_u = std::find(U.begin(), U.end(), e) != U.end();
        const bool at_v = (ed.i == 5) != (ed.j == 5);
        CHECK(weak_flux(g, c, e) == ((in_u != at_v) ? -1 : 1));
    }
}

TEST_CASE("flip sets are validated") {
    const ColoredGraph g = cycle_graph(4);
    CHECK_THROWS_AS(random_sector(g, 0, {9}), Error);
    CHECK_THROWS_AS(random_sector(g, 0, {}, {1, 1}), Error);
}

TEST_CASE("sector file round trip") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    const SectorSpec s = random_sector(g, 42, {1, 4}, {0});
    std::istringstream in(format_sector(s));
    const SectorSpec back = parse_sector(in, g);
    CHECK(back.plaquette_flux == s.plaquette_flux);
    CHECK(back.loop_flux == s.loop_flux);
    CHECK(back.flipped_edges == s.flipped_edges);
    CHECK(back.flipped_vertices == s.flipped_vertices);
}

TEST_CASE("sector parser reports line numbers") {
    const ColoredGraph g = cycle_graph(4);
    std::istringstream in("U = [0]\nplaquettes = +7\n");
    try {
        parse_sector(in, g);
        FAIL("bad flux accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
