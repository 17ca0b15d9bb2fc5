#include "gammalind/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "gammalind/errors.hpp"

namespace gammalind {

Spacing parse_spacing(const std::string& s) {
    if (s == "log") return Spacing::Log;
    if (s == "linear") return Spacing::Linear;
    fail(ErrorCode::InvalidArgument, fmt::format("unknown spacing '{}' (log|linear)", s));
}

ModeChoice parse_mode(const std::string& s) {
    if (s == "auto") return ModeChoice::Auto;
    if (s == "parity") return ModeChoice::Parity;
    if (s == "number") return ModeChoice::Number;
    fail(ErrorCode::InvalidArgument, fmt::format("unknown mode '{}' (auto|parity|number)", s));
}

const char* to_string(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }

const char* to_string(ModeChoice m) {
    switch (m) {
        case ModeChoice::Parity: return "parity";
        case ModeChoice::Number: return "number";
        default: return "auto";
    }
}

std::vector<double> GammaGrid::values() const {
    if (points < 1) fail(ErrorCode::InvalidArgument, "gamma grid is empty");
    if (!(min <= max)) fail(ErrorCode::InvalidArgument, "gamma_min exceeds gamma_max");
    if (min < 0) fail(ErrorCode::InvalidArgument, "dissipation rates must be non-negative");
    if (spacing == Spacing::Log && min <= 0) fail(ErrorCode::InvalidArgument, "log spacing needs gamma_min > 0");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    for (int k = 0; k < points; ++k) {
        const double t = double(k) / (points - 1);
        out[k] = spacing == Spacing::Log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                                         : min + t * (max - min);
    }
    out.back() = max;
    return out;
}

Eigen::VectorXd disorder_profile(int n, double spread, std::uint64_t seed) {
    if (spread < 0 || spread > 1) fail(ErrorCode::InvalidArgument, "gamma_spread must lie in [0, 1]");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    if (spread == 0) return x;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(1 - spread, 1 + spread);
    for (int j = 0; j < n; ++j) x(j) = u(rng);
    return x;
}

Mode resolve_mode(ModeChoice choice, const GaugeConfig& gauge) {
    switch (choice) {
        case ModeChoice::Parity: return Mode::Parity;
        case ModeChoice::Number:
            if (!gauge.flipped_edges().empty())
                fail(ErrorCode::ModeMismatch, "number mode needs every edge unflipped; use parity or auto");
            return Mode::Number;
        default: return auto_mode(gauge);
    }
}

int worker_count(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GAMMALIND_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min<long>(n, cap);
    }
    return std::max(1, n);
}

std::vector<GapRow> run_sweep(const ColoredGraph& g, const GaugeConfig& gauge, const SweepConfig& cfg) {
    const std::vector<double> gammas = cfg.grid.values();
    const Mode mode = resolve_mode(cfg.mode, gauge);
    const Eigen::VectorXd profile = disorder_profile(g.num_vertices(), cfg.gamma_spread, cfg.gamma_seed);
    for (int n : cfg.n_list)
        if (n < 0 || n > g.num_vertices()) fail(ErrorCode::InvalidArgument, fmt::format("fermion number {} out of range", n));

    std::vector<std::vector<GapRow>> per_point(gammas.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= gammas.size()) return;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const QuadraticProblem p = build_problem(g, gauge, Eigen::VectorXd(gammas[k] * profile), mode);
                std::vector<GapRow> rows;
                if (mode == Mode::Parity) {
                    ParityOptions po;
                    po.conditioning = cfg.conditioning;
                    po.allow_zero_modes = cfg.allow_zero_modes;
                    const ParityResult r = solve_parity(p, po);
                    GapRow row;
                    row.mode = mode;
                    row.gamma = gammas[k];
                    row.gap = r.gap;
                    row.vacuum_physical = r.vacuum_physical ? 1 : 0;
                    row.pf_sign = r.zero_modes > 0 ? 0 : r.pf_sign;
                    row.exceptional = r.exceptional;
                    row.zero_modes = r.zero_modes;
                    rows.push_back(row);
                } else {
                    NumberOptions no;
                    no.conditioning = cfg.conditioning;
                    no.n_max = cfg.n_max;
                    const NumberResult r = solve_number(p, no);
                    std::vector<int> ns = cfg.n_list;
                    if (ns.empty())
                        for (const NumberGap& ng : r.gaps) ns.push_back(ng.n);
                    std::sort(ns.begin(), ns.end());
                    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
                    for (int n : ns) {
                        if (!admissible(r, n)) continue;
                        GapRow row;
                        row.mode = mode;
                        row.gamma = gammas[k];
                        row.n = n;
                        row.gap = number_gap(r, n);
                        const Bounds b = bendixson_bounds(p, n);
                        row.bound_lower = b.lower;
                        row.bound_upper = b.upper;
                        row.exceptional = r.exceptional;
                        row.sector_gap = r.sector_gap;
                        rows.push_back(row);
                    }
                }
                const double ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                for (GapRow& row : rows) row.wall_time_ms = ms;
                per_point[k] = std::move(rows);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = gammas.size();
            }
        }
    };

    const int workers = std::min<int>(worker_count(cfg.threads), static_cast<int>(gammas.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<GapRow> out;
    for (auto& rows : per_point) out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

void write_csv(std::ostream& out, const std::vector<GapRow>& rows, bool with_timing) {
    out << "gamma,n,gap,bound_lower,bound_upper,vacuum_physical,pf_sign,exceptional_flag,wall_time_ms\n";
    for (const GapRow& r : rows) {
        const bool number = r.mode == Mode::Number;
        out << fmt::format("{:.15g},{},{:.15g},{},{},{},{},{},{}\n", r.gamma, number ? std::to_string(r.n) : "",
                           r.gap, number ? fmt::format("{:.15g}", r.bound_lower) : "",
                           number ? fmt::format("{:.15g}", r.bound_upper) : "",
                           number ? "" : std::to_string(r.vacuum_physical),
                           number || r.pf_sign == 0 ? "" : std::to_string(r.pf_sign), r.exceptional ? 1 : 0,
                           with_timing ? fmt::format("{:.3f}", r.wall_time_ms) : "");
    }
}

}  // namespace gammalind
