#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gammalind {

// Bond between two sites, stored in canonical direction i < j.
struct Edge {
    int i = 0;
    int j = 0;
    int color = 0;  // 1-based, proper at both endpoints
    double coupling = 1.0;
};

// Closed walk stored as vertices plus the edge taken at every step. Vertex
// lists alone are ambiguous on multigraphs such as the 2x2 periodic square.
struct Cycle {
    std::vector<int> vertices;  // vertices[k] is the tail of step k
    std::vector<int> edges;     // edges[k] joins vertices[k] and vertices[(k+1) % m]

    std::size_t length() const { return edges.size(); }
    // Sign of step k relative to the canonical direction of edges[k].
    int step_sign(int k, const std::vector<Edge>& all) const;
};

struct Surface {
    int genus = 0;
    int boundaries = 1;  // a disk by default

    bool closed() const { return boundaries == 0; }
    int betti1() const { return 2 * genus + boundaries + (closed() ? 1 : 0) - 1; }
    int euler() const { return 2 - 2 * genus - boundaries; }
};

struct Embedding {
    std::vector<Cycle> plaquettes;               // counterclockwise faces
    std::vector<Cycle> loops;                    // noncontractible cycles
    std::vector<std::vector<int>> dual_loops;    // edges crossed by each dual loop
    Surface surface;
};

class ColoredGraph {
public:
    ColoredGraph() = default;
    // Edges are canonicalized to i < j. Throws on out-of-range or self-loop edges.
    ColoredGraph(int num_vertices, std::vector<Edge> edges, Embedding embedding = {});

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_.at(e); }
    void set_coupling(int e, double j) { edges_.at(e).coupling = j; }

    const std::vector<int>& incident(int v) const { return incident_.at(v); }
    int valence(int v) const { return static_cast<int>(incident_.at(v).size()); }
    int max_valence() const;
    int max_color() const;
    int other_end(int e, int v) const;

    // Local generator index (0-based) used by edge e at site v. Colors are
    // ranked per site so that a site of valence z uses generators 0..z-1.
    int slot(int v, int e) const;
    // Number of local generators 2k: z rounded up to even.
    int site_generators(int v) const { return valence(v) + (valence(v) % 2); }
    int odd_valence_count() const;

    const Embedding& embedding() const { return emb_; }
    const std::vector<Cycle>& plaquettes() const { return emb_.plaquettes; }
    const std::vector<Cycle>& loops() const { return emb_.loops; }
    const std::vector<std::vector<int>>& dual_loops() const { return emb_.dual_loops; }
    const Surface& surface() const { return emb_.surface; }
    void set_embedding(Embedding emb) { emb_ = std::move(emb); }

    int num_components() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<int>> slots_;  // parallel to incident_
    Embedding emb_;
};

// Build a cycle from a start vertex and the edges it traverses.
Cycle cycle_from_edges(const ColoredGraph& g, int start, std::vector<int> edges);
// Build a cycle from vertices; every consecutive pair must be joined by exactly one edge.
Cycle cycle_from_vertices(const ColoredGraph& g, const std::vector<int>& vertices);
Cycle reversed(const Cycle& c);

// Proper edge coloring with at most maxdeg + 1 colors: greedy over edges in
// (i, j) order, with a Misra-Gries pass when greedy overshoots. Simple graphs
// only for the fallback.
std::vector<int> color_edges(int num_vertices, const std::vector<std::pair<int, int>>& pairs);

enum class LatticeKind { Honeycomb, Square, Triangular };
LatticeKind parse_lattice_kind(const std::string& name);
std::string to_string(LatticeKind kind);

// nx, ny count unit cells (two sites each on the honeycomb). Periodic square
// and triangular lattices need even extents so the colors close around the torus.
ColoredGraph build_lattice(LatticeKind kind, int nx, int ny, bool periodic);

// Ring of n sites with a single plaquette; the smallest oracle-sized graphs.
ColoredGraph cycle_graph(int n);

// Text format: "N E" header, E lines "i j color J", then optional sections
// "#plaquettes", "#loops" (one vertex cycle per line, "| e0 e1 ..." to name
// edges explicitly), "#dualloops" (crossed edge ids) and "#surface" ("g B").
ColoredGraph parse_graph(std::istream& in);
ColoredGraph load_graph(const std::string& path);
std::string format_graph(const ColoredGraph& g);

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const;
    const ValidationCheck* find(const std::string& name) const;
    std::string summary() const;
};

ValidationReport validate(const ColoredGraph& g);

// Number of edges of `dual` that lie on `loop`, counted with multiplicity.
int crossing_count(const Cycle& loop, const std::vector<int>& dual);

}  // namespace gammalind
