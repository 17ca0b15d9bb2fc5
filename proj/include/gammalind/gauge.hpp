#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gammalind/graph.hpp"

namespace gammalind {

// Fourth root of unity i^k; the value set of every flux.
class Phase4 {
public:
    constexpr Phase4() = default;
    constexpr explicit Phase4(int k) : k_(((k % 4) + 4) % 4) {}

    static constexpr Phase4 one() { return Phase4(0); }
    static constexpr Phase4 i() { return Phase4(1); }
    static constexpr Phase4 minus_one() { return Phase4(2); }
    static constexpr Phase4 minus_i() { return Phase4(3); }
    // Accepts +1, 1, -1, +i, i, -i.
    static Phase4 parse(const std::string& text);

    constexpr int exponent() const { return k_; }
    constexpr bool is_real() const { return k_ % 2 == 0; }
    constexpr int sign() const { return k_ == 0 ? 1 : -1; }  // meaningful for real values
    constexpr Phase4 conj() const { return Phase4(-k_); }
    constexpr Phase4 operator*(Phase4 o) const { return Phase4(k_ + o.k_); }
    constexpr Phase4& operator*=(Phase4 o) { return *this = *this * o; }
    constexpr bool operator==(const Phase4&) const = default;
    std::complex<double> value() const;
    std::string str() const;

private:
    int k_ = 0;
};

// Z2 gauge fields of both layers. u and u_tilde refer to the canonical
// direction of each edge; u_ji = -u_ij is implied.
struct GaugeConfig {
    std::vector<int> u;
    std::vector<int> u_tilde;
    std::vector<int> v;      // interlayer field per site, -1 by default
    int inert_sign = 1;      // parity factor carried by inert generators on odd-valence sites

    std::vector<int> flipped_edges() const;     // edges with u_tilde != u
    std::vector<int> flipped_vertices() const;  // sites with v = +1
};

struct SectorSpec {
    std::vector<Phase4> plaquette_flux;
    std::vector<Phase4> loop_flux;
    std::vector<int> flipped_edges;     // edges where u_tilde = -u
    std::vector<int> flipped_vertices;  // sites where v = +1
    std::optional<std::uint64_t> seed;
};

struct FluxCounts {
    int strong = 0;  // E - N + C
    int weak = 0;    // E
    int total() const { return strong + weak; }
};

// Left-layer flux (-i)^|C| prod u along the walk.
Phase4 flux(const ColoredGraph& g, const std::vector<int>& u, const Cycle& c);
// Right-layer flux i^|C| prod u_tilde along the walk.
Phase4 right_flux(const ColoredGraph& g, const std::vector<int>& u_tilde, const Cycle& c);
// Interlayer flux u ut v_i v_j on edge e.
int weak_flux(const ColoredGraph& g, const GaugeConfig& gauge, int e);

FluxCounts count_independent_fluxes(const ColoredGraph& g);

// Allowed flux values for a walk of the given length: {+1,-1} or {+i,-i}.
bool flux_allowed(std::size_t length, Phase4 w);

// Spanning tree from vertex 0 with u = +1 on tree edges; the remaining edges
// are solved over GF(2) so every plaquette and loop flux matches. Throws
// InconsistentFlux when no gauge realizes the request.
GaugeConfig realize_fluxes(const ColoredGraph& g, const SectorSpec& sector);

// Reads the strong fluxes and flips back out of a gauge.
SectorSpec observed_sector(const ColoredGraph& g, const GaugeConfig& gauge);

// Every plaquette and loop set to w. Throws if a cycle length forbids w.
SectorSpec uniform_sector(const ColoredGraph& g, Phase4 w);

// Uniform draw over allowed values; on closed surfaces the last plaquette
// absorbs the product constraint. Loops are drawn as well.
SectorSpec random_sector(const ColoredGraph& g, std::uint64_t seed, std::vector<int> flipped_edges = {},
                         std::vector<int> flipped_vertices = {});

enum class Layer { Left, Right };
// Flips the layer's u on every edge at `vertex` together with v_vertex.
void gauge_transform(const ColoredGraph& g, GaugeConfig& gauge, int vertex, Layer layer);

// Sector file: "plaquettes = <values>|uniform <v>|random", "loops = ...",
// "U = [edges]", "V = [sites]", "seed = <n>". Missing flux lines mean +1
// (or +i on odd-length cycles).
SectorSpec parse_sector(std::istream& in, const ColoredGraph& g);
SectorSpec load_sector(const std::string& path, const ColoredGraph& g);
std::string format_sector(const SectorSpec& s);

}  // namespace gammalind
