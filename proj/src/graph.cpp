#include "gammalind/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gammalind/errors.hpp"

namespace gammalind {

int Cycle::step_sign(int k, const std::vector<Edge>& all) const {
    return all[edges[k]].i == vertices[k] ? 1 : -1;
}

ColoredGraph::ColoredGraph(int num_vertices, std::vector<Edge> edges, Embedding embedding)
    : n_(num_vertices), edges_(std::move(edges)), emb_(std::move(embedding)) {
    if (n_ <= 0) fail(ErrorCode::InvalidArgument, "graph needs at least one vertex");
    incident_.assign(n_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        Edge& ed = edges_[e];
        if (ed.i < 0 || ed.j < 0 || ed.i >= n_ || ed.j >= n_)
            fail(ErrorCode::InvalidArgument, fmt::format("edge {} has an endpoint outside [0, {})", e, n_));
        if (ed.i == ed.j) fail(ErrorCode::InvalidArgument, fmt::format("edge {} is a self-loop", e));
        if (ed.i > ed.j) std::swap(ed.i, ed.j);
        incident_[ed.i].push_back(static_cast<int>(e));
        incident_[ed.j].push_back(static_cast<int>(e));
    }
    slots_.assign(n_, {});
    for (int v = 0; v < n_; ++v) {
        auto& inc = incident_[v];
        std::stable_sort(inc.begin(), inc.end(), [&](int a, int b) { return edges_[a].color < edges_[b].color; });
        slots_[v].resize(inc.size());
        std::iota(slots_[v].begin(), slots_[v].end(), 0);
    }
}

int ColoredGraph::max_valence() const {
    int m = 0;
    for (const auto& inc : incident_) m = std::max(m, static_cast<int>(inc.size()));
    return m;
}

int ColoredGraph::max_color() const {
    int m = 0;
    for (const auto& e : edges_) m = std::max(m, e.color);
    return m;
}

int ColoredGraph::other_end(int e, int v) const {
    const Edge& ed = edges_.at(e);
    if (ed.i == v) return ed.j;
    if (ed.j == v) return ed.i;
    fail(ErrorCode::InvalidArgument, fmt::format("edge {} is not incident to vertex {}", e, v));
}

int ColoredGraph::slot(int v, int e) const {
    const auto& inc = incident_.at(v);
    auto it = std::find(inc.begin(), inc.end(), e);
    if (it == inc.end()) fail(ErrorCode::InvalidArgument, fmt::format("edge {} is not incident to vertex {}", e, v));
    return slots_[v][it - inc.begin()];
}

int ColoredGraph::odd_valence_count() const {
    int c = 0;
    for (int v = 0; v < n_; ++v) c += valence(v) % 2;
    return c;
}

int ColoredGraph::num_components() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = n_;
    for (const auto& e : edges_) {
        int a = find(e.i), b = find(e.j);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps;
}

Cycle cycle_from_edges(const ColoredGraph& g, int start, std::vector<int> edges) {
    if (edges.empty()) fail(ErrorCode::InvalidArgument, "empty cycle");
    Cycle c;
    int v = start;
    for (int e : edges) {
        if (e < 0 || e >= g.num_edges()) fail(ErrorCode::InvalidArgument, fmt::format("cycle edge {} out of range", e));
        c.vertices.push_back(v);
        v = g.other_end(e, v);
    }
    if (v != start) fail(ErrorCode::InvalidArgument, "edge sequence does not close");
    c.edges = std::move(edges);
    return c;
}

Cycle cycle_from_vertices(const ColoredGraph& g, const std::vector<int>& vertices) {
    const int m = static_cast<int>(vertices.size());
    if (m < 2) fail(ErrorCode::InvalidArgument, "cycle needs at least two vertices");
    Cycle c;
    c.vertices = vertices;
    for (int k = 0; k < m; ++k) {
        int a = vertices[k], b = vertices[(k + 1) % m];
        if (a < 0 || a >= g.num_vertices()) fail(ErrorCode::InvalidArgument, fmt::format("vertex {} out of range", a));
        int found = -1, count = 0;
        for (int e : g.incident(a)) {
            if (g.other_end(e, a) == b) {
                found = e;
                ++count;
            }
        }
        if (count == 0) fail(ErrorCode::InvalidArgument, fmt::format("no edge joins {} and {}", a, b));
        if (count > 1)
            fail(ErrorCode::InvalidArgument,
                 fmt::format("{} edges join {} and {}; name the edges explicitly", count, a, b));
        c.edges.push_back(found);
    }
    return c;
}

Cycle reversed(const Cycle& c) {
    Cycle r;
    const std::size_t m = c.length();
    r.vertices.push_back(c.vertices[0]);
    for (std::size_t k = m - 1; k >= 1; --k) r.vertices.push_back(c.vertices[k]);
    for (std::size_t k = m; k-- > 0;) r.edges.push_back(c.edges[k]);
    return r;
}

// ---------------------------------------------------------------------------
// Edge coloring

namespace {

class MisraGries {
public:
    MisraGries(int n, const std::vector<std::pair<int, int>>& pairs, std::vector<int>& color, int palette)
        : pairs_(pairs), color_(color), palette_(palette), at_(n) {
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            auto [a, b] = pairs[e];
            if (!at_[a].emplace(b, static_cast<int>(e)).second)
                fail(ErrorCode::InvalidArgument, "Misra-Gries coloring needs a simple graph");
            at_[b].emplace(a, static_cast<int>(e));
        }
    }

    void color_edge(int e) {
        auto [u, v] = pairs_[e];
        std::vector<int> fan{v};
        std::set<int> in_fan{v};
        for (bool grew = true; grew;) {
            grew = false;
            for (auto [w, f] : at_[u]) {
                if (in_fan.count(w) || color_[f] == 0) continue;
                if (is_free(fan.back(), color_[f])) {
                    fan.push_back(w);
                    in_fan.insert(w);
                    grew = true;
                    break;
                }
            }
        }
        const int c = free_color(u);
        const int d = free_color(fan.back());
        invert_path(u, c, d);

        std::size_t w = 0;
        for (std::size_t k = 0; k < fan.size(); ++k) {
            if (k > 0 && !is_free(fan[k - 1], color_[at_[u][fan[k]]])) break;
            if (is_free(fan[k], d)) {
                w = k;
                break;
            }
        }
        for (std::size_t k = 0; k < w; ++k) color_[at_[u][fan[k]]] = color_[at_[u][fan[k + 1]]];
        color_[at_[u][fan[w]]] = d;
    }

private:
    bool is_free(int v, int c) const {
        for (auto [w, f] : at_[v])
            if (color_[f] == c) return false;
        return true;
    }
    int free_color(int v) const {
        for (int c = 1; c <= palette_; ++c)
            if (is_free(v, c)) return c;
        fail(ErrorCode::Internal, "no free color at vertex");
    }
    // Swap colors c and d along the maximal c/d-alternating path leaving u.
    void invert_path(int u, int c, int d) {
        std::vector<int> path;
        int cur = u, want = d, prev = -1;
        for (;;) {
            int next = -1;
            for (auto [w, f] : at_[cur])
                if (f != prev && color_[f] == want) next = f;
            if (next < 0) break;
            path.push_back(next);
            prev = next;
            cur = pairs_[next].first == cur ? pairs_[next].second : pairs_[next].first;
            want = want == d ? c : d;
        }
        for (int f : path) color_[f] = color_[f] == c ? d : c;
    }

    const std::vector<std::pair<int, int>>& pairs_;
    std::vector<int>& color_;
    int palette_;
    std::vector<std::map<int, int>> at_;
};

bool proper(int n, const std::vector<std::pair<int, int>>& pairs, const std::vector<int>& color) {
    std::vector<std::set<int>> used(n);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (color[e] <= 0) return false;
        if (!used[pairs[e].first].insert(color[e]).second) return false;
        if (!used[pairs[e].second].insert(color[e]).second) return false;
    }
    return true;
}

}  // namespace

std::vector<int> color_edges(int num_vertices, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> deg(num_vertices, 0);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices || a == b)
            fail(ErrorCode::InvalidArgument, "invalid edge in coloring request");
        ++deg[a];
        ++deg[b];
    }
    const int palette = (deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end())) + 1;

    std::vector<int> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int e) { return std::minmax(pairs[e].first, pairs[e].second); };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });

    std::vector<int> color(pairs.size(), 0);
    std::vector<std::set<int>> used(num_vertices);
    bool overshoot = false;
    for (int e : order) {
        auto [a, b] = pairs[e];
        int c = 1;
        while (used[a].count(c) || used[b].count(c)) ++c;
        if (c > palette) overshoot = true;
        color[e] = c;
        used[a].insert(c);
        used[b].insert(c);
    }
    if (!overshoot) return color;

    std::fill(color.begin(), color.end(), 0);
    MisraGries mg(num_vertices, pairs, color, palette);
    for (int e : order) mg.color_edge(e);
    if (!proper(num_vertices, pairs, color)) fail(ErrorCode::Internal, "Misra-Gries produced an improper coloring");
    return color;
}

// ---------------------------------------------------------------------------
// Lattices

LatticeKind parse_lattice_kind(const std::string& name) {
    if (name == "honeycomb") return LatticeKind::Honeycomb;
    if (name == "square") return LatticeKind::Square;
    if (name == "triangular") return LatticeKind::Triangular;
    fail(ErrorCode::InvalidArgument, fmt::format("unknown lattice '{}'", name));
}

std::string to_string(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::Honeycomb: return "honeycomb";
        case LatticeKind::Square: return "square";
        case LatticeKind::Triangular: return "triangular";
    }
    return "?";
}

namespace {

struct Vec2 {
    double x = 0, y = 0;
};

class LatticeBuilder {
public:
    LatticeBuilder(int nx, int ny, bool periodic) : nx_(nx), ny_(ny), periodic_(periodic) {}

    // Cell coordinates folded onto the torus, or nullopt-like false when open.
    bool fold(int& x, int& y) const {
        if (periodic_) {
            x = ((x % nx_) + nx_) % nx_;
            y = ((y % ny_) + ny_) % ny_;
            return true;
        }
        return x >= 0 && y >= 0 && x < nx_ && y < ny_;
    }

    int add(int a, int b, int color, Vec2 d) {
        edges_.push_back({a, b, color, 1.0});
        disp_.push_back(d);
        return static_cast<int>(edges_.size()) - 1;
    }

    // Orient counterclockwise using the real-space displacement of every step.
    Cycle ccw(int start, const std::vector<int>& es) const {
        Cycle c;
        int v = start;
        double px = 0, py = 0, area = 0;
        for (int e : es) {
            c.vertices.push_back(v);
            const Edge& ed = edges_[e];
            double s = ed.i == v ? 1.0 : -1.0;
            double qx = px + s * disp_[e].x, qy = py + s * disp_[e].y;
            area += px * qy - qx * py;
            px = qx;
            py = qy;
            v = ed.i == v ? ed.j : ed.i;
        }
        c.edges = es;
        return area < 0 ? reversed(c) : c;
    }

    Cycle walk(int start, const std::vector<int>& es) const {
        Cycle c;
        int v = start;
        for (int e : es) {
            c.vertices.push_back(v);
            v = edges_[e].i == v ? edges_[e].j : edges_[e].i;
        }
        c.edges = es;
        return c;
    }

    std::vector<Edge>& edges() { return edges_; }

private:
    int nx_, ny_;
    bool periodic_;
    std::vector<Edge> edges_;
    std::vector<Vec2> disp_;
};

Surface surface_for(bool periodic) { return periodic ? Surface{1, 0} : Surface{0, 1}; }

ColoredGraph honeycomb(int nx, int ny, bool periodic) {
    const int cells = nx * ny;
    LatticeBuilder b(nx, ny, periodic);
    const double s3 = std::sqrt(3.0);
    const Vec2 a1{s3, 0}, a2{s3 / 2, 1.5}, dz{s3 / 2, 0.5};
    // Sublattice A occupies [0, cells) and B [cells, 2 cells), so i < j always
    // points from A to B and u = +1 realizes the uniform 0-flux sector.
    auto A = [&](int x, int y) { return y * nx + x; };
    auto B = [&](int x, int y) { return cells + y * nx + x; };
    std::vector<int> zid(cells, -1), xid(cells, -1), yid(cells, -1);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            zid[A(x, y)] = b.add(A(x, y), B(x, y), 1, dz);
            int bx = x - 1, by = y;
            if (b.fold(bx, by)) xid[A(x, y)] = b.add(A(x, y), B(bx, by), 2, {dz.x - a1.x, dz.y - a1.y});
            bx = x, by = y - 1;
            if (b.fold(bx, by)) yid[A(x, y)] = b.add(A(x, y), B(bx, by), 3, {dz.x - a2.x, dz.y - a2.y});
        }
    auto cell = [&](int x, int y) {
        return b.fold(x, y) ? A(x, y) : -1;
    };
    Embedding emb;
    emb.surface = surface_for(periodic);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int r = cell(x, y), up = cell(x, y + 1), upleft = cell(x - 1, y + 1);
            if (r < 0 || up < 0 || upleft < 0) continue;
            std::vector<int> es{zid[r], yid[up], xid[up], zid[upleft], yid[upleft], xid[r]};
            if (std::find(es.begin(), es.end(), -1) != es.end()) continue;
            emb.plaquettes.push_back(b.ccw(r, es));
        }
    if (periodic) {
        std::vector<int> l1, l2, d1, d2;
        for (int t = 0; t < nx; ++t) {
            l1.push_back(xid[cell(-t, 0)]);
            l1.push_back(zid[cell(-t - 1, 0)]);
        }
        for (int t = 0; t < ny; ++t) {
            l2.push_back(yid[cell(0, -t)]);
            l2.push_back(zid[cell(0, -t - 1)]);
        }
        for (int y = 0; y < ny; ++y) d1.push_back(xid[cell(0, y)]);
        for (int x = 0; x < nx; ++x) d2.push_back(yid[cell(x, 1)]);
        emb.loops = {b.walk(A(0, 0), l1), b.walk(A(0, 0), l2)};
        emb.dual_loops = {d1, d2};
    }
    return ColoredGraph(2 * cells, std::move(b.edges()), std::move(emb));
}

ColoredGraph square(int nx, int ny, bool periodic) {
    LatticeBuilder b(nx, ny, periodic);
    auto site = [&](int x, int y) { return b.fold(x, y) ? y * nx + x : -1; };
    std::vector<int> h(nx * ny, -1), v(nx * ny, -1);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int s = site(x, y);
            if (int r = site(x + 1, y); r >= 0) h[s] = b.add(s, r, 1 + x % 2, {1, 0});
            if (int u = site(x, y + 1); u >= 0) v[s] = b.add(s, u, 3 + y % 2, {0, 1});
        }
    Embedding emb;
    emb.surface = surface_for(periodic);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int s = site(x, y), r = site(x + 1, y), u = site(x, y + 1);
            if (r < 0 || u < 0) continue;
            std::vector<int> es{h[s], v[r], h[u], v[s]};
            if (std::find(es.begin(), es.end(), -1) != es.end()) continue;
            emb.plaquettes.push_back(b.ccw(s, es));
        }
    if (periodic) {
        std::vector<int> l1, l2, d1, d2;
        for (int x = 0; x < nx; ++x) l1.push_back(h[site(x, 0)]);
        for (int y = 0; y < ny; ++y) l2.push_back(v[site(0, y)]);
        for (int y = 0; y < ny; ++y) d1.push_back(h[site(0, y)]);
        for (int x = 0; x < nx; ++x) d2.push_back(v[site(x, 0)]);
        emb.loops = {b.walk(0, l1), b.walk(0, l2)};
        emb.dual_loops = {d1, d2};
    }
    return ColoredGraph(nx * ny, std::move(b.edges()), std::move(emb));
}

ColoredGraph triangular(int nx, int ny, bool periodic) {
    LatticeBuilder b(nx, ny, periodic);
    const double s3 = std::sqrt(3.0);
    auto site = [&](int x, int y) { return b.fold(x, y) ? y * nx + x : -1; };
    std::vector<int> h(nx * ny, -1), v(nx * ny, -1), d(nx * ny, -1);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int s = site(x, y);
            if (int r = site(x + 1, y); r >= 0) h[s] = b.add(s, r, 1 + x % 2, {1, 0});
            if (int u = site(x, y + 1); u >= 0) v[s] = b.add(s, u, 3 + y % 2, {0.5, s3 / 2});
            if (int q = site(x + 1, y - 1); q >= 0) d[s] = b.add(s, q, 5 + x % 2, {0.5, -s3 / 2});
        }
    auto at = [&](const std::vector<int>& tab, int x, int y) {
        int s = site(x, y);
        return s < 0 ? -1 : tab[s];
    };
    Embedding emb;
    emb.surface = surface_for(periodic);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int s = site(x, y), r = site(x + 1, y);
            std::vector<int> up{at(h, x, y), at(d, x, y + 1), at(v, x, y)};
            if (s >= 0 && std::find(up.begin(), up.end(), -1) == up.end()) emb.plaquettes.push_back(b.ccw(s, up));
            std::vector<int> down{at(v, x + 1, y), at(h, x, y + 1), at(d, x, y + 1)};
            if (r >= 0 && std::find(down.begin(), down.end(), -1) == down.end())
                emb.plaquettes.push_back(b.ccw(r, down));
        }
    if (periodic) {
        // Both loops have odd length, so their fluxes take the values +-i like the plaquettes.
        std::vector<int> l1{v[site(0, 0)], d[site(0, 1)]}, l2{h[site(0, 0)], d[site(0, 1)]}, d1, d2;
        for (int x = 1; x < nx; ++x) l1.push_back(h[site(x, 0)]);
        for (int y = 1; y < ny; ++y) l2.push_back(v[site(0, y)]);
        for (int y = 0; y < ny; ++y) {
            d1.push_back(h[site(0, y)]);
            d1.push_back(d[site(0, y + 1)]);
        }
        for (int x = 0; x < nx; ++x) {
            d2.push_back(v[site(x, 0)]);
            d2.push_back(d[site(x, 1)]);
        }
        emb.loops = {b.walk(0, l1), b.walk(0, l2)};
        emb.dual_loops = {d1, d2};
    }
    return ColoredGraph(nx * ny, std::move(b.edges()), std::move(emb));
}

}  // namespace

ColoredGraph build_lattice(LatticeKind kind, int nx, int ny, bool periodic) {
    if (nx < 1 || ny < 1) fail(ErrorCode::InvalidArgument, "lattice extents must be positive");
    if (periodic && (nx < 2 || ny < 2)) fail(ErrorCode::InvalidArgument, "periodic lattices need at least 2 cells per direction");
    if (periodic && kind != LatticeKind::Honeycomb && (nx % 2 || ny % 2))
        fail(ErrorCode::InvalidArgument,
             fmt::format("periodic {} lattice needs even extents, got {}x{}", to_string(kind), nx, ny));
    switch (kind) {
        case LatticeKind::Honeycomb: return honeycomb(nx, ny, periodic);
        case LatticeKind::Square: return square(nx, ny, periodic);
        case LatticeKind::Triangular: return triangular(nx, ny, periodic);
    }
    fail(ErrorCode::InvalidArgument, "unknown lattice kind");
}

ColoredGraph cycle_graph(int n) {
    if (n < 3) fail(ErrorCode::InvalidArgument, "a ring needs at least three sites");
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < n; ++k) pairs.emplace_back(k, (k + 1) % n);
    auto colors = color_edges(n, pairs);
    std::vector<Edge> edges;
    for (int k = 0; k < n; ++k) edges.push_back({pairs[k].first, pairs[k].second, colors[k], 1.0});
    ColoredGraph g(n, std::move(edges));
    std::vector<int> es(n);
    std::iota(es.begin(), es.end(), 0);
    Embedding emb;
    emb.plaquettes.push_back(cycle_from_edges(g, 0, es));
    g.set_embedding(std::move(emb));
    return g;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string strip(const std::string& s) {
    auto hash = s.find('#');
    std::string t = s;
    // Section headers start with '#'; anything else after '#' is a comment.
    if (hash != std::string::npos && hash != s.find_first_not_of(" \t")) t = s.substr(0, hash);
    auto b = t.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = t.find_last_not_of(" \t\r");
    return t.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(int line, const std::string& msg) {
    fail(ErrorCode::Parse, fmt::format("line {}: {}", line, msg));
}

std::vector<long long> ints(const std::string& s, int line) {
    std::istringstream is(s);
    std::vector<long long> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            parse_error(line, fmt::format("expected an integer, got '{}'", tok));
        }
    }
    return out;
}

}  // namespace

ColoredGraph parse_graph(std::istream& in) {
    std::string raw;
    int lineno = 0;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    std::vector<int> edge_lines;
    enum class Section { Edges, Plaquettes, Loops, DualLoops, Surface } section = Section::Edges;
    struct Pending {
        int line;
        std::vector<long long> vertices, edges;
    };
    std::vector<Pending> plaq, loops;
    std::vector<std::pair<int, std::vector<long long>>> duals;
    Surface surface;
    bool surface_given = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string name = line.substr(1);
            if (name == "plaquettes") section = Section::Plaquettes;
            else if (name == "loops") section = Section::Loops;
            else if (name == "dualloops") section = Section::DualLoops;
            else if (name == "surface") section = Section::Surface;
            else if (name.empty() || name[0] == ' ') continue;
            else parse_error(lineno, fmt::format("unknown section '#{}'", name));
            if (n < 0) parse_error(lineno, "section before the 'N E' header");
            if (static_cast<int>(edges.size()) != m)
                parse_error(lineno, fmt::format("header promises {} edges, found {}", m, edges.size()));
            continue;
        }
        if (n < 0) {
            auto v = ints(line, lineno);
            if (v.size() != 2 || v[0] <= 0 || v[1] < 0) parse_error(lineno, "header must be 'N E' with N > 0");
            n = static_cast<int>(v[0]);
            m = static_cast<int>(v[1]);
            continue;
        }
        switch (section) {
            case Section::Edges: {
                std::istringstream is(line);
                long long i, j, c;
                double J;
                if (!(is >> i >> j >> c >> J)) parse_error(lineno, "edge line must be 'i j color J'");
                std::string extra;
                if (is >> extra) parse_error(lineno, fmt::format("trailing token '{}'", extra));
                if (i < 0 || j < 0 || i >= n || j >= n)
                    parse_error(lineno, fmt::format("vertex index out of range [0, {})", n));
                if (i == j) parse_error(lineno, "self-loop");
                if (c < 0) parse_error(lineno, "color must be >= 1 (or 0 for automatic coloring)");
                if (static_cast<int>(edges.size()) >= m) parse_error(lineno, fmt::format("more than {} edges", m));
                Edge e{static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j)), static_cast<int>(c), J};
                for (std::size_t k = 0; k < edges.size(); ++k)
                    if (edges[k].i == e.i && edges[k].j == e.j && edges[k].color == e.color)
                        parse_error(lineno, fmt::format("duplicate edge {}-{} (first on line {})", e.i, e.j, edge_lines[k]));
                edges.push_back(e);
                edge_lines.push_back(lineno);
                break;
            }
            case Section::Plaquettes:
            case Section::Loops: {
                Pending p{lineno, {}, {}};
                auto bar = line.find('|');
                p.vertices = ints(line.substr(0, bar), lineno);
                if (bar != std::string::npos) p.edges = ints(line.substr(bar + 1), lineno);
                (section == Section::Plaquettes ? plaq : loops).push_back(std::move(p));
                break;
            }
            case Section::DualLoops: duals.emplace_back(lineno, ints(line, lineno)); break;
            case Section::Surface: {
                auto v = ints(line, lineno);
                if (v.size() != 2 || v[0] < 0 || v[1] < 0) parse_error(lineno, "surface line must be 'genus boundaries'");
                surface = {static_cast<int>(v[0]), static_cast<int>(v[1])};
                surface_given = true;
                break;
            }
        }
    }
    if (n < 0) fail(ErrorCode::Parse, "missing 'N E' header");
    if (static_cast<int>(edges.size()) != m)
        fail(ErrorCode::Parse, fmt::format("header promises {} edges, found {}", m, edges.size()));

    bool autocolor = std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.color == 0; });
    if (!autocolor && std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.color == 0; }))
        fail(ErrorCode::Parse, "either color every edge or none");
    if (autocolor && !edges.empty()) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& e : edges) pairs.emplace_back(e.i, e.j);
        auto colors = color_edges(n, pairs);
        for (std::size_t k = 0; k < edges.size(); ++k) edges[k].color = colors[k];
    }

    ColoredGraph g(n, std::move(edges));
    Embedding emb;
    auto resolve = [&](const Pending& p) {
        try {
            if (p.edges.empty()) {
                std::vector<int> vs(p.vertices.begin(), p.vertices.end());
                return cycle_from_vertices(g, vs);
            }
            if (p.vertices.size() != p.edges.size())
                parse_error(p.line, "vertex and edge lists differ in length");
            std::vector<int> es(p.edges.begin(), p.edges.end());
            Cycle c = cycle_from_edges(g, static_cast<int>(p.vertices.at(0)), es);
            for (std::size_t k = 0; k < c.vertices.size(); ++k)
                if (c.vertices[k] != p.vertices[k]) parse_error(p.line, "edges do not follow the listed vertices");
            return c;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Parse) throw;
            parse_error(p.line, e.what());
        }
    };
    for (const auto& p : plaq) emb.plaquettes.push_back(resolve(p));
    for (const auto& p : loops) emb.loops.push_back(resolve(p));
    for (const auto& [line, es] : duals) {
        std::vector<int> d;
        for (long long e : es) {
            if (e < 0 || e >= g.num_edges()) parse_error(line, fmt::format("edge id {} out of range", e));
            d.push_back(static_cast<int>(e));
        }
        emb.dual_loops.push_back(std::move(d));
    }
    if (surface_given) emb.surface = surface;
    else if (!emb.loops.empty()) emb.surface = Surface{static_cast<int>(emb.loops.size()) / 2, 0};
    g.set_embedding(std::move(emb));
    return g;
}

ColoredGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, fmt::format("cannot open graph file '{}'", path));
    try {
        return parse_graph(in);
    } catch (const Error& e) {
        throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
    }
}

std::string format_graph(const ColoredGraph& g) {
    std::string out = fmt::format("{} {}\n", g.num_vertices(), g.num_edges());
    for (const auto& e : g.edges()) out += fmt::format("{} {} {} {}\n", e.i, e.j, e.color, e.coupling);
    auto cycles = [&](const char* name, const std::vector<Cycle>& cs) {
        if (cs.empty()) return;
        out += fmt::format("#{}\n", name);
        for (const auto& c : cs) out += fmt::format("{} | {}\n", fmt::join(c.vertices, " "), fmt::join(c.edges, " "));
    };
    cycles("plaquettes", g.plaquettes());
    cycles("loops", g.loops());
    if (!g.dual_loops().empty()) {
        out += "#dualloops\n";
        for (const auto& d : g.dual_loops()) out += fmt::format("{}\n", fmt::join(d, " "));
    }
    out += fmt::format("#surface\n{} {}\n", g.surface().genus, g.surface().boundaries);
    return out;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& c : checks)
        out += fmt::format("{:<22} {}{}\n", c.name, c.passed ? "ok" : "FAIL", c.detail.empty() ? "" : "  " + c.detail);
    return out;
}

int crossing_count(const Cycle& loop, const std::vector<int>& dual) {
    int count = 0;
    for (int e : dual) count += static_cast<int>(std::count(loop.edges.begin(), loop.edges.end(), e));
    return count;
}

namespace {

std::string check_cycle(const ColoredGraph& g, const Cycle& c, bool self_avoiding) {
    const std::size_t m = c.length();
    if (m == 0 || c.vertices.size() != m) return "malformed cycle";
    for (std::size_t k = 0; k < m; ++k) {
        int e = c.edges[k];
        if (e < 0 || e >= g.num_edges()) return fmt::format("edge {} out of range", e);
        const Edge& ed = g.edge(e);
        int a = c.vertices[k], b = c.vertices[(k + 1) % m];
        if (!((ed.i == a && ed.j == b) || (ed.i == b && ed.j == a)))
            return fmt::format("edge {} does not join {} and {}", e, a, b);
    }
    if (self_avoiding) {
        std::set<int> seen(c.vertices.begin(), c.vertices.end());
        if (seen.size() != m) return "revisits a vertex";
    }
    return {};
}

}  // namespace

ValidationReport validate(const ColoredGraph& g) {
    ValidationReport rep;
    const auto& edges = g.edges();

    {
        ValidationCheck c{"coloring", true, {}};
        const int limit = g.max_valence() + 1;
        for (int v = 0; v < g.num_vertices() && c.passed; ++v) {
            std::set<int> seen;
            for (int e : g.incident(v)) {
                int col = edges[e].color;
                if (col < 1 || col > limit) {
                    c.passed = false;
                    c.detail = fmt::format("edge {} has color {} outside 1..{}", e, col, limit);
                    break;
                }
                if (!seen.insert(col).second) {
                    c.passed = false;
                    c.detail = fmt::format("color {} repeats at vertex {}", col, v);
                    break;
                }
            }
        }
        rep.checks.push_back(c);
    }

    const auto& plaq = g.plaquettes();
    {
        ValidationCheck c{"plaquettes", true, {}};
        std::vector<int> forward(edges.size(), 0), backward(edges.size(), 0);
        for (std::size_t p = 0; p < plaq.size() && c.passed; ++p) {
            if (auto why = check_cycle(g, plaq[p], true); !why.empty()) {
                c.passed = false;
                c.detail = fmt::format("plaquette {}: {}", p, why);
                break;
            }
            for (std::size_t k = 0; k < plaq[p].length(); ++k)
                ++(plaq[p].step_sign(static_cast<int>(k), edges) > 0 ? forward : backward)[plaq[p].edges[k]];
        }
        for (std::size_t e = 0; e < edges.size() && c.passed; ++e) {
            if (forward[e] + backward[e] > 2) {
                c.passed = false;
                c.detail = fmt::format("edge {} borders {} plaquettes", e, forward[e] + backward[e]);
            } else if (forward[e] > 1 || backward[e] > 1) {
                c.passed = false;
                c.detail = fmt::format("edge {} is traversed twice in the same direction", e);
            }
        }
        rep.checks.push_back(c);
    }

    const Surface& s = g.surface();
    {
        ValidationCheck c{"euler", true, {}};
        if (plaq.empty()) {
            c.detail = "no plaquettes declared; skipped";
        } else {
            int chi = g.num_vertices() - g.num_edges() + static_cast<int>(plaq.size());
            if (chi != s.euler()) {
                c.passed = false;
                c.detail = fmt::format("N - E + F = {} but genus {} with {} boundaries needs {}", chi, s.genus,
                                       s.boundaries, s.euler());
            }
        }
        rep.checks.push_back(c);
    }

    const auto& loops = g.loops();
    const auto& duals = g.dual_loops();
    {
        ValidationCheck c{"loops", true, {}};
        if (!plaq.empty() && static_cast<int>(loops.size()) != s.betti1()) {
            c.passed = false;
            c.detail = fmt::format("{} loops declared, surface has b1 = {}", loops.size(), s.betti1());
        } else if (duals.size() != loops.size()) {
            c.passed = false;
            c.detail = fmt::format("{} loops but {} dual loops", loops.size(), duals.size());
        }
        for (std::size_t l = 0; l < loops.size() && c.passed; ++l) {
            if (auto why = check_cycle(g, loops[l], false); !why.empty()) {
                c.passed = false;
                c.detail = fmt::format("loop {}: {}", l, why);
            }
        }
        rep.checks.push_back(c);
    }

    {
        ValidationCheck c{"dual_loops_closed", true, {}};
        for (std::size_t d = 0; d < duals.size() && c.passed; ++d)
            for (std::size_t p = 0; p < plaq.size(); ++p) {
                int hits = 0;
                for (int e : plaq[p].edges) hits += static_cast<int>(std::count(duals[d].begin(), duals[d].end(), e));
                if (hits % 2) {
                    c.passed = false;
                    c.detail = fmt::format("dual loop {} enters plaquette {} without leaving", d, p);
                    break;
                }
            }
        rep.checks.push_back(c);
    }

    {
        ValidationCheck c{"intersection_parity", true, {}};
        for (std::size_t a = 0; a < loops.size() && c.passed; ++a)
            for (std::size_t b = 0; b < duals.size(); ++b) {
                int n = crossing_count(loops[a], duals[b]);
                if ((n % 2 == 1) != (a == b)) {
                    c.passed = false;
                    c.detail = fmt::format("loop {} crosses dual loop {} {} times", a, b, n);
                    break;
                }
            }
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace gammalind
