// gammalind command-line driver. Everything numerical goes through the C API.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config.hpp"
#include "gammalind/gammalind.h"
#include "plot.hpp"

namespace {

// Library failure carrying the C status, reported with exit code 3.
struct ApiError : std::runtime_error {
    gl_status status;
    ApiError(gl_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(gl_status s, const char* what) {
    if (s != GL_OK) throw ApiError(s, fmt::format("{}: {}", what, gl_last_error()));
}

using GraphPtr = std::unique_ptr<gl_graph, decltype(&gl_graph_free)>;
using SectorPtr = std::unique_ptr<gl_sector, decltype(&gl_sector_free)>;

GraphPtr make_graph(const gltool::RunConfig& c) {
    gl_graph* g = nullptr;
    if (!c.graph_file.empty())
        check(gl_graph_from_file(c.graph_file.c_str(), &g), "reading graph");
    else
        check(gl_graph_from_lattice(c.kind.c_str(), c.nx, c.ny, c.periodic ? 1 : 0, &g), "building lattice");
    GraphPtr out(g, gl_graph_free);
    if (c.coupling) {
        gl_graph_info info;
        check(gl_graph_info_get(g, &info), "graph info");
        for (int e = 0; e < info.edges; ++e) check(gl_graph_set_coupling(g, e, *c.coupling), "setting coupling");
    }
    if (c.coupling_min)
        check(gl_graph_randomize_couplings(g, *c.coupling_min, *c.coupling_max, c.coupling_seed), "random couplings");
    return out;
}

SectorPtr make_sector(const gltool::RunConfig& c, const gl_graph* g) {
    gl_sector* s = nullptr;
    if (!c.sector_file.empty())
        check(gl_sector_from_file(g, c.sector_file.c_str(), &s), "reading sector");
    else if (c.flux == "random")
        check(gl_sector_random(g, c.seed, &s), "random sector");
    else
        check(gl_sector_uniform(g, c.flux.c_str(), &s), "uniform sector");
    SectorPtr out(s, gl_sector_free);
    // Flip sets from the config replace any given in a sector file.
    if (!c.flipped_edges.empty() || !c.flipped_vertices.empty())
        check(gl_sector_set_flips(s, c.flipped_edges.data(), c.flipped_edges.size(), c.flipped_vertices.data(),
                                  c.flipped_vertices.size()),
              "setting flips");
    return out;
}

// Flags mirror the config keys; a flag given on the command line wins over
// the file. Each registered option remembers how to copy itself across.
class Overrides {
public:
    explicit Overrides(CLI::App* app) : app_(app) {}

    template <class T>
    void add(const std::string& flag, T gltool::RunConfig::*field, const std::string& help) {
        CLI::Option* opt = app_->add_option(flag, flags_.*field, help);
        apply_.push_back([opt, field](gltool::RunConfig& c, const gltool::RunConfig& f) {
            if (opt->count()) c.*field = f.*field;
        });
    }
    void add_optional(const std::string& flag, std::optional<double> gltool::RunConfig::*field, const std::string& help) {
        auto value = std::make_shared<double>();
        CLI::Option* opt = app_->add_option(flag, *value, help);
        apply_.push_back([opt, field, value](gltool::RunConfig& c, const gltool::RunConfig&) {
            if (opt->count()) c.*field = *value;
        });
    }
    void add_flag(const std::string& flag, bool gltool::RunConfig::*field, bool value, const std::string& help) {
        CLI::Option* opt = app_->add_flag(flag, help);
        apply_.push_back([opt, field, value](gltool::RunConfig& c, const gltool::RunConfig&) {
            if (opt->count()) c.*field = value;
        });
    }
    void add_list(const std::string& flag, std::vector<int> gltool::RunConfig::*field, const std::string& help) {
        auto text = std::make_shared<std::string>();
        CLI::Option* opt = app_->add_option(flag, *text, help);
        apply_.push_back([opt, field, text](gltool::RunConfig& c, const gltool::RunConfig&) {
            if (opt->count()) c.*field = gltool::parse_int_list(*text);
        });
    }

    gltool::RunConfig resolve(const std::string& config_path) const {
        gltool::RunConfig c = config_path.empty() ? gltool::RunConfig{} : gltool::load_config(config_path);
        for (const auto& f : apply_) f(c, flags_);
        gltool::check_config(c);
        return c;
    }

private:
    CLI::App* app_;
    gltool::RunConfig flags_;
    std::vector<std::function<void(gltool::RunConfig&, const gltool::RunConfig&)>> apply_;
};

void add_graph_and_sector(Overrides& o) {
    using R = gltool::RunConfig;
    o.add("--kind", &R::kind, "Built-in lattice: honeycomb, square or triangular");
    o.add("--nx", &R::nx, "Unit cells along x");
    o.add("--ny", &R::ny, "Unit cells along y");
    o.add_flag("--open", &R::periodic, false, "Open boundaries instead of a torus");
    o.add("--graph", &R::graph_file, "Graph file instead of a built-in lattice");
    o.add_optional("--coupling", &R::coupling, "Set every coupling J to this value");
    o.add("--sector", &R::sector_file, "Sector file");
    o.add("--flux", &R::flux, "Uniform flux 0, pi, +pi/2, -pi/2, or random");
    o.add("--seed", &R::seed, "Seed for --flux random");
    o.add_list("--U", &R::flipped_edges, "Edges with flipped right-layer field, e.g. \"0,5\"");
    o.add_list("--V", &R::flipped_vertices, "Sites with flipped interlayer field, e.g. \"0\"");
}

std::string write_plot(const std::vector<std::string>& csvs, const std::vector<std::string>& labels,
                       const std::string& out, const std::string& title, bool log_y) {
    std::vector<gltool::Series> series;
    for (std::size_t k = 0; k < csvs.size(); ++k) {
        const std::string label = k < labels.size() ? labels[k] : csvs[k];
        auto more = gltool::series_from_csv(gltool::load_csv(csvs[k]), label);
        series.insert(series.end(), more.begin(), more.end());
    }
    gltool::PlotStyle style;
    style.title = title;
    style.log_y = log_y;
    const std::string svg = gltool::render_svg(series, style);
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << svg)) throw gltool::PlotError("cannot write '" + out + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative gamma-matrix Lindbladians: sector spectra, gaps and bounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gl_version());

    using R = gltool::RunConfig;

    CLI::App* sweep = app.add_subcommand("sweep", "Gap versus gamma for one sector, written as CSV");
    std::string sweep_config;
    sweep->add_option("-c,--config", sweep_config, "INI file with [graph], [sector], [sweep], [output]")
        ->check(CLI::ExistingFile);
    Overrides sweep_flags(sweep);
    add_graph_and_sector(sweep_flags);
    sweep_flags.add("--gamma-min", &R::gamma_min, "Smallest gamma");
    sweep_flags.add("--gamma-max", &R::gamma_max, "Largest gamma");
    sweep_flags.add("--points", &R::points, "Grid points");
    sweep_flags.add("--spacing", &R::spacing, "log or linear");
    sweep_flags.add("--mode", &R::mode, "auto, parity or number");
    sweep_flags.add("--n-max", &R::n_max, "Largest fermion number reported in number mode");
    sweep_flags.add("--gamma-spread", &R::gamma_spread, "Per-site disorder: gamma_j = gamma X_j, X_j in [1-s, 1+s]");
    sweep_flags.add("--gamma-seed", &R::gamma_seed, "Seed of the disorder draw");
    sweep_flags.add("--threads", &R::threads, "Worker threads (0: all cores)");
    sweep_flags.add_flag("--allow-zero-modes", &R::allow_zero_modes, true, "Accept vanishing normal-mode rapidities");
    sweep_flags.add("-o,--csv", &R::csv, "Output CSV");
    sweep_flags.add("--plot", &R::plot, "Also write an SVG plot here");
    sweep_flags.add_flag("--timing", &R::timing, true, "Fill the wall_time_ms column");

    CLI::App* verify = app.add_subcommand("verify", "Run the acceptance suite");
    std::string level = "fast";
    verify->add_option("level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

    CLI::App* plot = app.add_subcommand("plot", "SVG gap curves from sweep CSV files");
    std::vector<std::string> plot_csv, plot_labels;
    std::string plot_out = "gaps.svg", plot_title;
    bool plot_log_y = false;
    plot->add_option("csv", plot_csv, "CSV files from sweep")->required()->check(CLI::ExistingFile);
    plot->add_option("-l,--label", plot_labels, "Curve label per CSV, in order");
    plot->add_option("-o,--out", plot_out, "Output SVG");
    plot->add_option("-t,--title", plot_title, "Plot title");
    plot->add_flag("--log-y", plot_log_y, "Logarithmic gap axis");

    CLI::App* info = app.add_subcommand("sector-info", "Graph checks, independent flux counts and the sector");
    std::string info_config;
    info->add_option("-c,--config", info_config, "INI file")->check(CLI::ExistingFile);
    Overrides info_flags(info);
    add_graph_and_sector(info_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; usage errors share the config exit code.
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*sweep) {
            const R c = sweep_flags.resolve(sweep_config);
            GraphPtr g = make_graph(c);
            SectorPtr s = make_sector(c, g.get());
            gl_sweep_params p;
            gl_sweep_params_default(&p);
            p.gamma_min = c.gamma_min;
            p.gamma_max = c.gamma_max;
            p.points = c.points;
            p.log_spacing = c.spacing == "log";
            p.mode = c.mode == "parity" ? GL_MODE_PARITY : c.mode == "number" ? GL_MODE_NUMBER : GL_MODE_AUTO;
            p.n_max = c.n_max;
            p.gamma_spread = c.gamma_spread;
            p.gamma_seed = c.gamma_seed;
            p.threads = c.threads;
            p.allow_zero_modes = c.allow_zero_modes;
            gl_gap_row* rows = nullptr;
            std::size_t count = 0;
            check(gl_sweep_run(g.get(), s.get(), &p, &rows, &count), "sweep");
            std::unique_ptr<gl_gap_row, decltype(&gl_rows_free)> hold(rows, gl_rows_free);
            check(gl_rows_write_csv(rows, count, c.csv.c_str(), c.timing), "writing CSV");
            int exceptional = 0;
            for (std::size_t k = 0; k < count; ++k) exceptional += rows[k].exceptional;
            fmt::print("wrote {} rows to {}\n", count, c.csv);
            if (exceptional) fmt::print("warning: {} rows near an exceptional point\n", exceptional);
            if (!c.plot.empty()) fmt::print("wrote {}\n", write_plot({c.csv}, {}, c.plot, "", false));
            return 0;
        }
        if (*verify) {
            int failures = 0;
            auto report = [](int id, const char* name, int passed, const char* detail, double seconds, void*) {
                fmt::print("{} criterion {:2d} {} ({:.1f} s){}{}\n", passed ? "PASS" : "FAIL", id, name, seconds,
                           *detail ? ": " : "", detail);
                std::fflush(stdout);
            };
            check(gl_verify(level == "full" ? GL_VERIFY_FULL : GL_VERIFY_FAST, report, nullptr, &failures), "verify");
            fmt::print("{} failure(s)\n", failures);
            return failures ? 1 : 0;
        }
        if (*plot) {
            fmt::print("wrote {}\n", write_plot(plot_csv, plot_labels, plot_out, plot_title, plot_log_y));
            return 0;
        }
        if (*info) {
            const R c = info_flags.resolve(info_config);
            GraphPtr g = make_graph(c);
            gl_graph_info gi;
            check(gl_graph_info_get(g.get(), &gi), "graph info");
            fmt::print("sites {}  edges {}  plaquettes {}  loops {}  colors {}  max valence {}\n", gi.vertices, gi.edges,
                       gi.plaquettes, gi.loops, gi.colors, gi.max_valence);
            fmt::print("independent fluxes: strong {}  weak {}  total {}\n", gi.strong_fluxes, gi.weak_fluxes,
                       gi.strong_fluxes + gi.weak_fluxes);
            int ok = 0;
            char* report = nullptr;
            check(gl_graph_validate(g.get(), &ok, &report), "validate");
            fmt::print("{}\n", report);
            gl_string_free(report);
            SectorPtr s = make_sector(c, g.get());
            char* json = nullptr;
            check(gl_sector_describe(s.get(), &json), "describe sector");
            fmt::print("sector {}\n", json);
            gl_string_free(json);
            return ok ? 0 : 1;
        }
    } catch (const gltool::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return 2;
    } catch (const gltool::PlotError& e) {
        fmt::print(stderr, "plot error: {}\n", e.what());
        return 2;
    } catch (const ApiError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    }
    return 0;
}
