#include "gammalind/gammalind.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <random>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "gammalind/errors.hpp"
#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"
#include "gammalind/sweep.hpp"
#include "gammalind/verify.hpp"

using namespace gammalind;

struct gl_graph {
    ColoredGraph g;
};

struct gl_sector {
    std::shared_ptr<const ColoredGraph> graph;  // snapshot the sector was built for
    SectorSpec spec;
};

namespace {

thread_local std::string last_error;

gl_status to_status(ErrorCode c) { return static_cast<gl_status>(static_cast<int>(c)); }

// Runs `body`, translating exceptions into a status and the thread's last error.
template <class F>
gl_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return GL_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return GL_TOO_LARGE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return GL_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) fail(ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Fluxes attained by u = +1 on every canonical edge.
SectorSpec reference_sector(const ColoredGraph& g) {
    GaugeConfig ref;
    ref.u.assign(g.num_edges(), 1);
    ref.u_tilde = ref.u;
    ref.v.assign(g.num_vertices(), -1);
    return observed_sector(g, ref);
}

SectorSpec named_sector(const ColoredGraph& g, const std::string& name) {
    if (name == "0") return reference_sector(g);
    if (name == "pi") {
        SectorSpec s = reference_sector(g);
        for (Phase4& w : s.plaquette_flux) w *= Phase4::minus_one();
        return s;
    }
    if (name == "+pi/2" || name == "pi/2") return uniform_sector(g, Phase4::i());
    if (name == "-pi/2") return uniform_sector(g, Phase4::minus_i());
    fail(ErrorCode::InvalidArgument, fmt::format("unknown uniform flux '{}' (0|pi|+pi/2|-pi/2)", name));
}

std::vector<std::string> phases(const std::vector<Phase4>& ws) {
    std::vector<std::string> out;
    for (Phase4 w : ws) out.push_back(w.str());
    return out;
}

}  // namespace

extern "C" {

const char* gl_version(void) { return "0.1.0"; }

const char* gl_last_error(void) { return last_error.c_str(); }

void gl_string_free(char* s) { std::free(s); }

gl_status gl_graph_from_lattice(const char* kind, int nx, int ny, int periodic, gl_graph** out) {
    return guarded([&] {
        require(kind && out, "null argument");
        *out = new gl_graph{build_lattice(parse_lattice_kind(kind), nx, ny, periodic != 0)};
    });
}

gl_status gl_graph_from_file(const char* path, gl_graph** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new gl_graph{load_graph(path)};
    });
}

void gl_graph_free(gl_graph* g) { delete g; }

gl_status gl_graph_info_get(const gl_graph* g, gl_graph_info* out) {
    return guarded([&] {
        require(g && out, "null argument");
        const FluxCounts fc = count_independent_fluxes(g->g);
        out->vertices = g->g.num_vertices();
        out->edges = g->g.num_edges();
        out->plaquettes = static_cast<int>(g->g.plaquettes().size());
        out->loops = static_cast<int>(g->g.loops().size());
        out->colors = g->g.max_color();
        out->max_valence = g->g.max_valence();
        out->strong_fluxes = fc.strong;
        out->weak_fluxes = fc.weak;
    });
}

gl_status gl_graph_validate(const gl_graph* g, int* ok, char** report) {
    return guarded([&] {
        require(g && ok, "null argument");
        const ValidationReport r = validate(g->g);
        *ok = r.ok() ? 1 : 0;
        if (report) *report = copy_string(r.summary());
    });
}

gl_status gl_graph_set_coupling(gl_graph* g, int edge, double j) {
    return guarded([&] {
        require(g, "null argument");
        require(edge >= 0 && edge < g->g.num_edges(), "edge index out of range");
        g->g.set_coupling(edge, j);
    });
}

gl_status gl_graph_randomize_couplings(gl_graph* g, double lo, double hi, uint64_t seed) {
    return guarded([&] {
        require(g, "null argument");
        require(lo <= hi, "empty coupling range");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(lo, hi);
        for (int e = 0; e < g->g.num_edges(); ++e) g->g.set_coupling(e, u(rng));
    });
}

gl_status gl_sector_uniform(const gl_graph* g, const char* flux, gl_sector** out) {
    return guarded([&] {
        require(g && flux && out, "null argument");
        auto snap = std::make_shared<const ColoredGraph>(g->g);
        *out = new gl_sector{snap, named_sector(*snap, flux)};
    });
}

gl_status gl_sector_random(const gl_graph* g, uint64_t seed, gl_sector** out) {
    return guarded([&] {
        require(g && out, "null argument");
        auto snap = std::make_shared<const ColoredGraph>(g->g);
        *out = new gl_sector{snap, random_sector(*snap, seed)};
    });
}

gl_status gl_sector_from_file(const gl_graph* g, const char* path, gl_sector** out) {
    return guarded([&] {
        require(g && path && out, "null argument");
        auto snap = std::make_shared<const ColoredGraph>(g->g);
        *out = new gl_sector{snap, load_sector(path, *snap)};
    });
}

void gl_sector_free(gl_sector* s) { delete s; }

gl_status gl_sector_set_flips(gl_sector* s, const int* edges, size_t n_edges, const int* sites, size_t n_sites) {
    return guarded([&] {
        require(s, "null argument");
        require(n_edges == 0 || edges, "null edge list");
        require(n_sites == 0 || sites, "null site list");
        SectorSpec next = s->spec;
        next.flipped_edges.assign(edges, edges + n_edges);
        next.flipped_vertices.assign(sites, sites + n_sites);
        realize_fluxes(*s->graph, next);  // validates indices and duplicates
        s->spec = std::move(next);
    });
}

gl_status gl_sector_describe(const gl_sector* s, char** json) {
    return guarded([&] {
        require(s && json, "null argument");
        const GaugeConfig gauge = realize_fluxes(*s->graph, s->spec);
        nlohmann::json j;
        j["plaquette_flux"] = phases(s->spec.plaquette_flux);
        j["loop_flux"] = phases(s->spec.loop_flux);
        j["U"] = s->spec.flipped_edges;
        j["V"] = s->spec.flipped_vertices;
        j["inert_sign"] = gauge.inert_sign;
        j["auto_mode"] = to_string(auto_mode(gauge));
        if (s->spec.seed) j["seed"] = *s->spec.seed;
        *json = copy_string(j.dump());
    });
}

void gl_sweep_params_default(gl_sweep_params* p) {
    if (!p) return;
    *p = gl_sweep_params{};
    const SweepConfig d;
    p->gamma_min = d.grid.min;
    p->gamma_max = d.grid.max;
    p->points = d.grid.points;
    p->log_spacing = 1;
    p->mode = GL_MODE_AUTO;
    p->n_max = -1;
    p->gamma_spread = 0;
    p->gamma_seed = 0;
    p->threads = 0;
    p->allow_zero_modes = 0;
}

gl_status gl_sweep_run(const gl_graph* g, const gl_sector* s, const gl_sweep_params* p, gl_gap_row** rows,
                       size_t* count) {
    return guarded([&] {
        require(g && s && p && rows && count, "null argument");
        *rows = nullptr;
        *count = 0;
        const GaugeConfig gauge = realize_fluxes(g->g, s->spec);
        SweepConfig cfg;
        cfg.grid = {p->gamma_min, p->gamma_max, p->points, p->log_spacing ? Spacing::Log : Spacing::Linear};
        cfg.mode = p->mode == GL_MODE_PARITY   ? ModeChoice::Parity
                   : p->mode == GL_MODE_NUMBER ? ModeChoice::Number
                                               : ModeChoice::Auto;
        cfg.n_max = p->n_max;
        cfg.gamma_spread = p->gamma_spread;
        cfg.gamma_seed = p->gamma_seed;
        cfg.threads = p->threads;
        cfg.allow_zero_modes = p->allow_zero_modes != 0;
        const std::vector<GapRow> result = run_sweep(g->g, gauge, cfg);
        auto* out = static_cast<gl_gap_row*>(std::calloc(result.size() ? result.size() : 1, sizeof(gl_gap_row)));
        if (!out) throw std::bad_alloc();
        for (std::size_t k = 0; k < result.size(); ++k) {
            const GapRow& r = result[k];
            out[k] = {r.gamma,           r.n,       r.gap,           r.bound_lower,  r.bound_upper,
                      r.vacuum_physical, r.pf_sign, r.exceptional,   r.wall_time_ms, r.mode == Mode::Number};
        }
        *rows = out;
        *count = result.size();
    });
}

gl_status gl_rows_write_csv(const gl_gap_row* rows, size_t count, const char* path, int with_timing) {
    return guarded([&] {
        require(path && (rows || count == 0), "null argument");
        std::vector<GapRow> v(count);
        for (std::size_t k = 0; k < count; ++k) {
            const gl_gap_row& r = rows[k];
            GapRow& o = v[k];
            o.gamma = r.gamma;
            o.n = r.n;
            o.gap = r.gap;
            o.bound_lower = r.bound_lower;
            o.bound_upper = r.bound_upper;
            o.vacuum_physical = r.vacuum_physical;
            o.pf_sign = r.pf_sign;
            o.exceptional = r.exceptional != 0;
            o.wall_time_ms = r.wall_time_ms;
            o.mode = r.number_mode ? Mode::Number : Mode::Parity;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) fail(ErrorCode::Io, fmt::format("cannot open '{}' for writing", path));
        write_csv(out, v, with_timing != 0);
        if (!out) fail(ErrorCode::Io, fmt::format("write to '{}' failed", path));
    });
}

void gl_rows_free(gl_gap_row* rows) { std::free(rows); }

gl_status gl_verify(gl_verify_level level, gl_criterion_callback callback, void* user, int* failures) {
    return guarded([&] {
        const auto results =
            run_verification(level == GL_VERIFY_FULL ? VerifyLevel::Full : VerifyLevel::Fast,
                             [&](const CriterionResult& r) {
                                 if (callback)
                                     callback(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
                             });
        int failed = 0;
        for (const auto& r : results) failed += r.passed ? 0 : 1;
        if (failures) *failures = failed;
    });
}

}  // extern "C"
