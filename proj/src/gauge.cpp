#include "gammalind/gauge.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gammalind/errors.hpp"

namespace gammalind {

Phase4 Phase4::parse(const std::string& text) {
    if (text == "+1" || text == "1") return one();
    if (text == "-1") return minus_one();
    if (text == "+i" || text == "i") return i();
    if (text == "-i") return minus_i();
    fail(ErrorCode::Parse, fmt::format("'{}' is not one of +1, -1, +i, -i", text));
}

std::complex<double> Phase4::value() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k_];
}

std::string Phase4::str() const {
    static const char* table[4] = {"+1", "+i", "-1", "-i"};
    return table[k_];
}

std::vector<int> GaugeConfig::flipped_edges() const {
    std::vector<int> out;
    for (std::size_t e = 0; e < u.size(); ++e)
        if (u[e] != u_tilde[e]) out.push_back(static_cast<int>(e));
    return out;
}

std::vector<int> GaugeConfig::flipped_vertices() const {
    std::vector<int> out;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] > 0) out.push_back(static_cast<int>(j));
    return out;
}

namespace {

Phase4 signed_product(const ColoredGraph& g, const std::vector<int>& field, const Cycle& c) {
    Phase4 w;
    for (std::size_t k = 0; k < c.length(); ++k)
        if (c.step_sign(static_cast<int>(k), g.edges()) * field.at(c.edges[k]) < 0) w *= Phase4::minus_one();
    return w;
}

}  // namespace

Phase4 flux(const ColoredGraph& g, const std::vector<int>& u, const Cycle& c) {
    return Phase4(-static_cast<int>(c.length() % 4)) * signed_product(g, u, c);
}

Phase4 right_flux(const ColoredGraph& g, const std::vector<int>& u_tilde, const Cycle& c) {
    return Phase4(static_cast<int>(c.length() % 4)) * signed_product(g, u_tilde, c);
}

int weak_flux(const ColoredGraph& g, const GaugeConfig& gauge, int e) {
    const Edge& ed = g.edge(e);
    return gauge.u.at(e) * gauge.u_tilde.at(e) * gauge.v.at(ed.i) * gauge.v.at(ed.j);
}

FluxCounts count_independent_fluxes(const ColoredGraph& g) {
    return {g.num_edges() - g.num_vertices() + g.num_components(), g.num_edges()};
}

bool flux_allowed(std::size_t length, Phase4 w) { return w.is_real() == (length % 2 == 0); }

namespace {

void check_flips(const ColoredGraph& g, const SectorSpec& s) {
    std::set<int> seen;
    for (int e : s.flipped_edges) {
        if (e < 0 || e >= g.num_edges()) fail(ErrorCode::InvalidArgument, fmt::format("flipped edge {} out of range", e));
        if (!seen.insert(e).second) fail(ErrorCode::InvalidArgument, fmt::format("edge {} flipped twice", e));
    }
    seen.clear();
    for (int j : s.flipped_vertices) {
        if (j < 0 || j >= g.num_vertices())
            fail(ErrorCode::InvalidArgument, fmt::format("flipped vertex {} out of range", j));
        if (!seen.insert(j).second) fail(ErrorCode::InvalidArgument, fmt::format("vertex {} flipped twice", j));
    }
}

// Dense GF(2) row reduction on 64-bit words; the last column is the right-hand side.
class Gf2System {
public:
    explicit Gf2System(int unknowns) : n_(unknowns), words_((unknowns + 1 + 63) / 64) {}

    void add_row(const std::vector<int>& vars, bool rhs) {
        std::vector<std::uint64_t> row(words_, 0);
        for (int x : vars) row[x / 64] ^= std::uint64_t{1} << (x % 64);
        if (rhs) row[n_ / 64] ^= std::uint64_t{1} << (n_ % 64);
        rows_.push_back(std::move(row));
    }

    // Returns false on inconsistency; free unknowns are set to zero.
    bool solve(std::vector<int>& x) {
        auto bit = [](const std::vector<std::uint64_t>& r, int c) { return (r[c / 64] >> (c % 64)) & 1u; };
        std::vector<int> pivot_col;
        std::size_t rank = 0;
        for (int col = 0; col < n_ && rank < rows_.size(); ++col) {
            std::size_t p = rank;
            while (p < rows_.size() && !bit(rows_[p], col)) ++p;
            if (p == rows_.size()) continue;
            std::swap(rows_[p], rows_[rank]);
            for (std::size_t r = 0; r < rows_.size(); ++r)
                if (r != rank && bit(rows_[r], col))
                    for (int w = 0; w < words_; ++w) rows_[r][w] ^= rows_[rank][w];
            pivot_col.push_back(col);
            ++rank;
        }
        for (std::size_t r = rank; r < rows_.size(); ++r)
            if (bit(rows_[r], n_)) return false;
        x.assign(n_, 0);
        for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = static_cast<int>(bit(rows_[r], n_));
        return true;
    }

private:
    int n_;
    int words_;
    std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace

GaugeConfig realize_fluxes(const ColoredGraph& g, const SectorSpec& sector) {
    const auto& plaq = g.plaquettes();
    const auto& loops = g.loops();
    if (sector.plaquette_flux.size() != plaq.size())
        fail(ErrorCode::InvalidArgument,
             fmt::format("sector lists {} plaquette fluxes, graph has {}", sector.plaquette_flux.size(), plaq.size()));
    if (sector.loop_flux.size() != loops.size())
        fail(ErrorCode::InvalidArgument,
             fmt::format("sector lists {} loop fluxes, graph has {}", sector.loop_flux.size(), loops.size()));
    check_flips(g, sector);

    const int n = g.num_vertices(), m = g.num_edges();
    std::vector<char> tree(m, 0), seen(n, 0);
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int e : g.incident(a)) {
                int b = g.other_end(e, a);
                if (seen[b]) continue;
                seen[b] = 1;
                tree[e] = 1;
                q.push(b);
            }
        }
    }
    std::vector<int> var(m, -1);
    int unknowns = 0;
    for (int e = 0; e < m; ++e)
        if (!tree[e]) var[e] = unknowns++;

    const std::vector<int> ones(m, 1);
    Gf2System sys(unknowns);
    auto constrain = [&](const Cycle& c, Phase4 target, const std::string& what) {
        if (!flux_allowed(c.length(), target))
            fail(ErrorCode::InconsistentFlux,
                 fmt::format("{} has length {} and cannot carry flux {}", what, c.length(), target.str()));
        Phase4 ratio = target * flux(g, ones, c).conj();
        std::vector<int> vars;
        for (int e : c.edges)
            if (var[e] >= 0) vars.push_back(var[e]);
        sys.add_row(vars, ratio == Phase4::minus_one());
    };
    for (std::size_t p = 0; p < plaq.size(); ++p)
        constrain(plaq[p], sector.plaquette_flux[p], fmt::format("plaquette {}", p));
    for (std::size_t l = 0; l < loops.size(); ++l) constrain(loops[l], sector.loop_flux[l], fmt::format("loop {}", l));

    std::vector<int> x;
    if (!sys.solve(x))
        fail(ErrorCode::InconsistentFlux, "requested fluxes violate a product constraint of the surface");

    GaugeConfig gauge;
    gauge.u.assign(m, 1);
    for (int e = 0; e < m; ++e)
        if (var[e] >= 0 && x[var[e]]) gauge.u[e] = -1;
    for (std::size_t p = 0; p < plaq.size(); ++p)
        if (flux(g, gauge.u, plaq[p]) != sector.plaquette_flux[p])
            fail(ErrorCode::Internal, fmt::format("gauge misses plaquette {}", p));
    for (std::size_t l = 0; l < loops.size(); ++l)
        if (flux(g, gauge.u, loops[l]) != sector.loop_flux[l])
            fail(ErrorCode::Internal, fmt::format("gauge misses loop {}", l));

    gauge.u_tilde = gauge.u;
    for (int e : sector.flipped_edges) gauge.u_tilde[e] = -gauge.u_tilde[e];
    gauge.v.assign(n, -1);
    for (int j : sector.flipped_vertices) gauge.v[j] = 1;
    return gauge;
}

SectorSpec observed_sector(const ColoredGraph& g, const GaugeConfig& gauge) {
    SectorSpec s;
    for (const auto& p : g.plaquettes()) s.plaquette_flux.push_back(flux(g, gauge.u, p));
    for (const auto& l : g.loops()) s.loop_flux.push_back(flux(g, gauge.u, l));
    s.flipped_edges = gauge.flipped_edges();
    s.flipped_vertices = gauge.flipped_vertices();
    return s;
}

SectorSpec uniform_sector(const ColoredGraph& g, Phase4 w) {
    SectorSpec s;
    for (const auto& p : g.plaquettes()) {
        if (!flux_allowed(p.length(), w))
            fail(ErrorCode::InconsistentFlux, fmt::format("a plaquette of length {} cannot carry {}", p.length(), w.str()));
        s.plaquette_flux.push_back(w);
    }
    for (const auto& l : g.loops()) {
        if (!flux_allowed(l.length(), w))
            fail(ErrorCode::InconsistentFlux, fmt::format("a loop of length {} cannot carry {}", l.length(), w.str()));
        s.loop_flux.push_back(w);
    }
    return s;
}

SectorSpec random_sector(const ColoredGraph& g, std::uint64_t seed, std::vector<int> flipped_edges,
                         std::vector<int> flipped_vertices) {
    std::mt19937_64 rng(seed);
    auto draw = [&](std::size_t length) {
        Phase4 base = length % 2 ? Phase4::i() : Phase4::one();
        return (rng() >> 63) ? base * Phase4::minus_one() : base;
    };
    SectorSpec s;
    s.seed = seed;
    const auto& plaq = g.plaquettes();
    Phase4 product;
    for (std::size_t p = 0; p < plaq.size(); ++p) {
        Phase4 w = draw(plaq[p].length());
        if (g.surface().closed() && p + 1 == plaq.size()) w = product.conj();
        product *= w;
        s.plaquette_flux.push_back(w);
    }
    for (const auto& l : g.loops()) s.loop_flux.push_back(draw(l.length()));
    s.flipped_edges = std::move(flipped_edges);
    s.flipped_vertices = std::move(flipped_vertices);
    check_flips(g, s);
    return s;
}

void gauge_transform(const ColoredGraph& g, GaugeConfig& gauge, int vertex, Layer layer) {
    auto& field = layer == Layer::Left ? gauge.u : gauge.u_tilde;
    for (int e : g.incident(vertex)) field[e] = -field[e];
    gauge.v.at(vertex) = -gauge.v.at(vertex);
    if (g.valence(vertex) % 2) gauge.inert_sign = -gauge.inert_sign;
}

// ---------------------------------------------------------------------------
// Sector files

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<int> int_list(std::string text, int line) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        fail(ErrorCode::Parse, fmt::format("line {}: expected a bracketed list", line));
    std::string body = text.substr(1, text.size() - 2);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream is(body);
    std::vector<int> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(ErrorCode::Parse, fmt::format("line {}: '{}' is not an integer", line, tok));
        }
    }
    return out;
}

struct FluxLine {
    enum class Kind { Default, Explicit, Uniform, Random } kind = Kind::Default;
    std::vector<Phase4> values;
    int line = 0;
};

FluxLine flux_line(const std::string& text, int line) {
    FluxLine f;
    f.line = line;
    std::istringstream is(text);
    std::string tok;
    is >> tok;
    if (tok == "random") {
        f.kind = FluxLine::Kind::Random;
    } else if (tok == "uniform") {
        f.kind = FluxLine::Kind::Uniform;
        std::string v;
        if (!(is >> v)) fail(ErrorCode::Parse, fmt::format("line {}: 'uniform' needs a value", line));
        f.values.push_back(Phase4::parse(v));
    } else {
        f.kind = FluxLine::Kind::Explicit;
        std::istringstream again(text);
        while (again >> tok) {
            try {
                f.values.push_back(Phase4::parse(tok));
            } catch (const Error& e) {
                fail(ErrorCode::Parse, fmt::format("line {}: {}", line, e.what()));
            }
        }
    }
    return f;
}

std::vector<Phase4> resolve(const FluxLine& f, const std::vector<Cycle>& cycles, const std::vector<Phase4>& random,
                            const char* what) {
    std::vector<Phase4> out;
    switch (f.kind) {
        case FluxLine::Kind::Default:
            for (const auto& c : cycles) out.push_back(c.length() % 2 ? Phase4::i() : Phase4::one());
            return out;
        case FluxLine::Kind::Random: return random;
        case FluxLine::Kind::Uniform: out.assign(cycles.size(), f.values[0]); break;
        case FluxLine::Kind::Explicit:
            if (f.values.size() != cycles.size())
                fail(ErrorCode::Parse,
                     fmt::format("line {}: {} {} fluxes given, graph has {}", f.line, f.values.size(), what, cycles.size()));
            out = f.values;
            break;
    }
    for (std::size_t k = 0; k < out.size(); ++k)
        if (!flux_allowed(cycles[k].length(), out[k]))
            fail(ErrorCode::Parse, fmt::format("line {}: {} {} has length {} and cannot carry {}", f.line, what, k,
                                               cycles[k].length(), out[k].str()));
    return out;
}

}  // namespace

SectorSpec parse_sector(std::istream& in, const ColoredGraph& g) {
    FluxLine plaq, loops;
    SectorSpec s;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorCode::Parse, fmt::format("line {}: expected 'key = value'", lineno));
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "plaquettes") plaq = flux_line(value, lineno);
        else if (key == "loops") loops = flux_line(value, lineno);
        else if (key == "U") s.flipped_edges = int_list(value, lineno);
        else if (key == "V") s.flipped_vertices = int_list(value, lineno);
        else if (key == "seed") {
            try {
                s.seed = std::stoull(value);
            } catch (const std::exception&) {
                fail(ErrorCode::Parse, fmt::format("line {}: bad seed '{}'", lineno, value));
            }
        } else fail(ErrorCode::Parse, fmt::format("line {}: unknown key '{}'", lineno, key));
    }
    SectorSpec rnd = random_sector(g, s.seed.value_or(0));
    s.plaquette_flux = resolve(plaq, g.plaquettes(), rnd.plaquette_flux, "plaquette");
    s.loop_flux = resolve(loops, g.loops(), rnd.loop_flux, "loop");
    check_flips(g, s);
    return s;
}

SectorSpec load_sector(const std::string& path, const ColoredGraph& g) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, fmt::format("cannot open sector file '{}'", path));
    try {
        return parse_sector(in, g);
    } catch (const Error& e) {
        throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
    }
}

std::string format_sector(const SectorSpec& s) {
    auto strs = [](const std::vector<Phase4>& v) {
        std::vector<std::string> out;
        for (auto w : v) out.push_back(w.str());
        return out;
    };
    std::string out;
    if (!s.plaquette_flux.empty()) out += fmt::format("plaquettes = {}\n", fmt::join(strs(s.plaquette_flux), " "));
    if (!s.loop_flux.empty()) out += fmt::format("loops = {}\n", fmt::join(strs(s.loop_flux), " "));
    out += fmt::format("U = [{}]\nV = [{}]\n", fmt::join(s.flipped_edges, ", "), fmt::join(s.flipped_vertices, ", "));
    if (s.seed) out += fmt::format("seed = {}\n", *s.seed);
    return out;
}

}  // namespace gammalind
