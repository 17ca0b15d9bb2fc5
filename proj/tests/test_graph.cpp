#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "gammalind/errors.hpp"
#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"

using namespace gammalind;

namespace {

bool proper(const ColoredGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::set<int> colors;
        for (int e : g.incident(v))
            if (!colors.insert(g.edge(e).color).second) return false;
    }
    return true;
}

int faces(const ColoredGraph& g) { return static_cast<int>(g.plaquettes().size()); }

}  // namespace

TEST_CASE("honeycomb 4x4 torus counts") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 4, 4, true);
    CHECK(g.num_vertices() == 32);
    CHECK(g.num_edges() == 48);
    CHECK(faces(g) == 16);
    CHECK(g.loops().size() == 2);
    CHECK(g.dual_loops().size() == 2);
    CHECK(g.surface().betti1() == 2);
    CHECK(g.num_vertices() - g.num_edges() + faces(g) == 0);
    CHECK(count_independent_fluxes(g).strong == 17);
}

TEST_CASE("square 2x2 torus counts") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 2, 2, true);
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 8);
    CHECK(faces(g) == 4);
    CHECK(g.loops().size() == 2);
    const FluxCounts fc = count_independent_fluxes(g);
    CHECK(fc.strong == 5);
    CHECK(fc.weak == 8);
    CHECK(fc.total() == 13);
}

TEST_CASE("lattice colors match the valence") {
    const std::map<LatticeKind, int> colors = {
        {LatticeKind::Honeycomb, 3}, {LatticeKind::Square, 4}, {LatticeKind::Triangular, 6}};
    for (auto [kind, c] : colors) {
        CAPTURE(to_string(kind));
        const ColoredGraph g = build_lattice(kind, 4, 4, true);
        CHECK(g.max_color() == c);
        CHECK(g.max_valence() == c);
        CHECK(proper(g));
        for (const Edge& e : g.edges()) CHECK(e.coupling == 1.0);
    }
}

TEST_CASE("periodic lattices: handshaking and every edge on two plaquettes") {
    for (auto kind : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular})
        for (auto [nx, ny] : {std::pair{2, 2}, std::pair{4, 6}, std::pair{6, 4}}) {
            CAPTURE(to_string(kind));
            CAPTURE(nx);
            CAPTURE(ny);
            const ColoredGraph g = build_lattice(kind, nx, ny, true);
            int degree_sum = 0;
            for (int v = 0; v < g.num_vertices(); ++v) degree_sum += g.valence(v);
            CHECK(degree_sum == 2 * g.num_edges());
            std::vector<int> uses(g.num_edges(), 0);
            for (const Cycle& p : g.plaquettes())
                for (int e : p.edges) ++uses[e];
            for (int u : uses) CHECK(u == 2);
            CHECK(validate(g).ok());
        }
}

TEST_CASE("open lattices validate as disks") {
    for (auto kind : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular}) {
        const ColoredGraph g = build_lattice(kind, 3, 3, false);
        CAPTURE(to_string(kind));
        CHECK(g.loops().empty());
        CHECK(validate(g).ok());
        CHECK(g.num_vertices() - g.num_edges() + faces(g) == 1);
    }
}

TEST_CASE("periodic lattices need two cells per direction") {
    CHECK_THROWS_AS(build_lattice(LatticeKind::Honeycomb, 1, 4, true), Error);
    CHECK_THROWS_AS(build_lattice(LatticeKind::Square, 4, 0, false), Error);
}

TEST_CASE("loops and dual loops intersect oddly only when paired") {
    for (auto kind : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular}) {
        const ColoredGraph g = build_lattice(kind, 4, 4, true);
        for (std::size_t a = 0; a < g.loops().size(); ++a)
            for (std::size_t b = 0; b < g.dual_loops().size(); ++b)
                CHECK((crossing_count(g.loops()[a], g.dual_loops()[b]) % 2 == 1) == (a == b));
    }
}

TEST_CASE("color_edges small cases") {
    CHECK(color_edges(2, {{0, 1}}) == std::vector<int>{1});
    const auto tri = color_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(std::set<int>(tri.begin(), tri.end()).size() == 3);
}

TEST_CASE("color_edges stays within max degree + 1 and is deterministic") {
    const ColoredGraph tri = build_lattice(LatticeKind::Triangular, 3, 3, false);
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : tri.edges()) pairs.push_back({e.i, e.j});
    const auto colors = color_edges(tri.num_vertices(), pairs);
    const auto again = color_edges(tri.num_vertices(), pairs);
    CHECK(colors == again);
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) edges.push_back({pairs[k].first, pairs[k].second, colors[k], 1.0});
    const ColoredGraph g(tri.num_vertices(), edges);
    CHECK(proper(g));
    CHECK(g.max_color() <= tri.max_valence() + 1);

    // A dense random graph pushes greedy past the bound often enough to exercise the fallback.
    std::vector<std::pair<int, int>> dense;
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j)
            if ((i * 7 + j * 13) % 3) dense.push_back({i, j});
    const auto dc = color_edges(12, dense);
    std::vector<int> deg(12, 0);
    for (auto [i, j] : dense) ++deg[i], ++deg[j];
    const int maxdeg = *std::max_element(deg.begin(), deg.end());
    CHECK(*std::max_element(dc.begin(), dc.end()) <= maxdeg + 1);
    std::vector<Edge> de;
    for (std::size_t k = 0; k < dense.size(); ++k) de.push_back({dense[k].first, dense[k].second, dc[k], 1.0});
    CHECK(proper(ColoredGraph(12, de)));
}

TEST_CASE("validate flags a color clash") {
    const ColoredGraph g(3, {{0, 1, 1, 1.0}, {1, 2, 1, 1.0}});
    const ValidationReport r = validate(g);
    CHECK_FALSE(r.ok());
    REQUIRE(r.find("coloring") != nullptr);
    CHECK_FALSE(r.find("coloring")->passed);
}

TEST_CASE("validate flags an Euler mismatch") {
    ColoredGraph g = build_lattice(LatticeKind::Square, 2, 2, true);
    Embedding emb = g.embedding();
    emb.plaquettes.pop_back();  // declare F = 3
    g.set_embedding(emb);
    const ValidationReport r = validate(g);
    REQUIRE(r.find("euler") != nullptr);
    CHECK_FALSE(r.find("euler")->passed);
}

TEST_CASE("graph text format round trip") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    std::istringstream in(format_graph(g));
    const ColoredGraph h = parse_graph(in);
    CHECK(h.num_vertices() == g.num_vertices());
    CHECK(h.num_edges() == g.num_edges());
    CHECK(h.plaquettes().size() == g.plaquettes().size());
    CHECK(h.loops().size() == g.loops().size());
    CHECK(h.dual_loops() == g.dual_loops());
    CHECK(validate(h).ok());
    for (int e = 0; e < g.num_edges(); ++e) {
        CHECK(h.edge(e).i == g.edge(e).i);
        CHECK(h.edge(e).j == g.edge(e).j);
        CHECK(h.edge(e).color == g.edge(e).color);
    }
}

TEST_CASE("graph parser errors carry line numbers") {
    auto message = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_graph(in);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    CHECK(message("3 2\n0 1 1 1.0\n1 0 1 2.0\n").find("line 3") != std::string::npos);  // duplicate edge
    CHECK(message("3 2\n0 1 1 1.0\n0 7 2 1.0\n").find("line 3") != std::string::npos);  // out of range
    CHECK(message("3 1\n0 1 x 1.0\n").find("line 2") != std::string::npos);             // not a number
}

TEST_CASE("uncolored graph files are colored on load") {
    std::istringstream in("3 3\n0 1 0 1.0\n1 2 0 1.0\n0 2 0 1.0\n#plaquettes\n0 1 2\n");
    const ColoredGraph g = parse_graph(in);
    CHECK(g.max_color() == 3);
    CHECK(proper(g));
    CHECK(g.plaquettes().size() == 1);
}

TEST_CASE("cycle helpers") {
    const ColoredGraph g = cycle_graph(5);
    const Cycle c = g.plaquettes().front();
    CHECK(c.length() == 5);
    const Cycle r = reversed(c);
    CHECK(r.length() == 5);
    const Cycle v = cycle_from_vertices(g, c.vertices);
    CHECK(v.edges == c.edges);
    CHECK_THROWS_AS(cycle_from_edges(g, 0, {0, 1}), Error);
}
