#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"
#include "gammalind/number_solver.hpp"
#include "gammalind/parity_solver.hpp"

namespace gammalind {

enum class Spacing { Log, Linear };
enum class ModeChoice { Auto, Parity, Number };

Spacing parse_spacing(const std::string& s);
ModeChoice parse_mode(const std::string& s);
const char* to_string(Spacing s);
const char* to_string(ModeChoice m);

struct GammaGrid {
    double min = 1e-2;
    double max = 1e2;
    int points = 50;
    Spacing spacing = Spacing::Log;

    // Throws InvalidArgument on an empty grid, min > max or min <= 0 for log spacing.
    std::vector<double> values() const;
};

struct SweepConfig {
    GammaGrid grid;
    ModeChoice mode = ModeChoice::Auto;
    int n_max = -1;          // number mode; -1 picks min(N, |V| + 4)
    std::vector<int> n_list;  // number mode; overrides n_max when non-empty
    // Per-site disorder gamma_j = gamma X_j with X_j uniform in [1 - s, 1 + s].
    double gamma_spread = 0.0;
    std::uint64_t gamma_seed = 0;
    bool allow_zero_modes = false;
    Conditioning conditioning = Conditioning::Auto;
    int threads = 0;  // 0: hardware concurrency, capped by GAMMALIND_THREADS
};

// One CSV row. Fields that do not apply to the mode hold their "blank" value.
struct GapRow {
    double gamma = 0;
    int n = -1;  // number mode only
    double gap = 0;
    double bound_lower = 0;  // number mode only
    double bound_upper = 0;
    int vacuum_physical = -1;  // parity mode only
    int pf_sign = 0;           // parity mode only
    bool exceptional = false;
    double wall_time_ms = 0;
    Mode mode = Mode::Parity;
    double sector_gap = 0;  // number mode: min over every admissible n
    int zero_modes = 0;
};

// Per-site multipliers X_j for the disorder model above.
Eigen::VectorXd disorder_profile(int n, double spread, std::uint64_t seed);

Mode resolve_mode(ModeChoice choice, const GaugeConfig& gauge);

// Rows ordered by (gamma, n) whatever order the workers finish in.
std::vector<GapRow> run_sweep(const ColoredGraph& g, const GaugeConfig& gauge, const SweepConfig& cfg);

int worker_count(int requested);

// Columns gamma,n,gap,bound_lower,bound_upper,vacuum_physical,pf_sign,
// exceptional_flag,wall_time_ms. Timing stays blank unless requested so that
// identical inputs give identical bytes.
void write_csv(std::ostream& out, const std::vector<GapRow>& rows, bool with_timing = false);

}  // namespace gammalind
