#include "gammalind/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <fmt/format.h>

#include "gammalind/errors.hpp"
#include "gammalind/number_solver.hpp"
#include "gammalind/oracle.hpp"
#include "gammalind/parity_solver.hpp"
#include "gammalind/pfaffian.hpp"
#include "gammalind/quadratic.hpp"

namespace gammalind {

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

// Accumulates sub-checks; the first failure message is kept in front.
class Checks {
public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (failures_++ < 3) failed_ += (failed_.empty() ? "" : "; ") + what;
    }
    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
    Outcome done() const {
        if (failures_ == 0) return {true, notes_};
        return {false, fmt::format("{} failure(s): {}{}", failures_, failed_, notes_.empty() ? "" : " | " + notes_)};
    }

private:
    int failures_ = 0;
    std::string failed_;
    std::string notes_;
};

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> out(points);
    for (int k = 0; k < points; ++k)
        out[k] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (points - 1));
    return out;
}

ColoredGraph honeycomb(int nx, int ny) { return build_lattice(LatticeKind::Honeycomb, nx, ny, true); }

GaugeConfig uniform_gauge(const ColoredGraph& g, Phase4 w) { return realize_fluxes(g, uniform_sector(g, w)); }

NumberOptions quick_number(int n_max) {
    NumberOptions o;
    o.n_max = n_max;
    o.conditioning = Conditioning::Never;
    return o;
}

ParityOptions quick_parity(bool zero_modes = false) {
    ParityOptions o;
    o.conditioning = Conditioning::Never;
    o.allow_zero_modes = zero_modes;
    return o;
}

// Every per-site assignment of rates from {0.3, 1, 3}. Blocks the solver
// flags as exceptional points (the 4-cycle at gamma = J is defective) cannot
// be resolved to 1e-8 by any dense eigensolver; they are compared at the
// accuracy an order-4 defect allows and counted separately.
Outcome oracle_equivalence() {
    Checks c;
    const double values[] = {0.3, 1.0, 3.0};
    const double tol = 1e-8, ep_tol = 1e-3;
    const double eps = std::numeric_limits<double>::epsilon();
    double worst = 0, worst_ep = 0;
    int sectors = 0, ep_sectors = 0, assignments = 0;
    for (int n : {3, 4}) {
        const ColoredGraph g = cycle_graph(n);
        const char* name = n == 3 ? "triangle" : "4-cycle";
        const std::vector<GaugeConfig> reps = sector_representatives(g);
        // Sector subspaces do not depend on the rates.
        std::vector<Eigen::MatrixXcd> bases;
        {
            const ManyBodyModel unit(g, Eigen::VectorXd::Ones(n));
            for (const GaugeConfig& gauge : reps) bases.push_back(sector_basis(unit, sector_labels(g, gauge)));
        }
        int combos = 1;
        for (int k = 0; k < n; ++k) combos *= 3;
        for (int code = 0; code < combos; ++code) {
            Eigen::VectorXd gamma(n);
            for (int k = 0, x = code; k < n; ++k, x /= 3) gamma(k) = values[x % 3];
            const ManyBodyModel m(g, gamma);
            const Super l = m.liouvillian();
            std::vector<cplx> joined;
            bool any_ep = false;
            for (std::size_t s = 0; s < reps.size(); ++s) {
                ParityResult solved;
                const std::vector<cplx> predicted = predicted_sector_spectrum(g, reps[s], gamma, &solved);
                const double d = spectrum_distance(restricted_spectrum(l, bases[s]), predicted);
                // Near an exceptional point neither side can resolve 1e-8.
                const bool ep = solved.exceptional || 100 * eps * solved.max_condition * solved.norm > tol;
                if (ep) {
                    any_ep = true;
                    ++ep_sectors;
                    worst_ep = std::max(worst_ep, d);
                    c.require(d <= ep_tol, fmt::format("{} exceptional block off by {:.2e}", name, d));
                } else {
                    worst = std::max(worst, d);
                    c.require(d <= tol, fmt::format("{} sector mismatch {:.2e} (condition {:.1e})", name, d,
                                                    solved.max_condition));
                }
                joined.insert(joined.end(), predicted.begin(), predicted.end());
                ++sectors;
            }
            const double d = spectrum_distance(eigenvalues(l), joined);
            if (any_ep) {
                worst_ep = std::max(worst_ep, d);
                c.require(d <= ep_tol, fmt::format("{} full spectrum at an exceptional point off by {:.2e}", name, d));
            } else {
                worst = std::max(worst, d);
                c.require(d <= tol, fmt::format("{} full spectrum mismatch {:.2e}", name, d));
            }
            ++assignments;
        }
    }
    c.note(fmt::format("{} rate assignments, {} sector blocks, worst distance {:.1e}", assignments, sectors, worst));
    if (ep_sectors)
        c.note(fmt::format("{} blocks near exceptional points agree to {:.1e}", ep_sectors, worst_ep));
    return c.done();
}

Outcome sum_rule() {
    Checks c;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rate(0.1, 3.0);
    double worst_rel = 0, worst_gap = 0;
    int graphs = 0;
    for (int s = 0; s < 24; ++s) {
        const int n = 4 + s % 17;
        const ColoredGraph g = random_colored_graph(n, std::min(0.9, 3.5 / n), 100 + s);
        GaugeConfig gauge;
        gauge.u.resize(g.num_edges());
        for (int& x : gauge.u) x = rng() % 2 ? 1 : -1;
        gauge.u_tilde = gauge.u;
        gauge.v.assign(n, -1);
        Eigen::VectorXd gamma(n);
        for (int j = 0; j < n; ++j) gamma(j) = rate(rng);
        const ParityResult r = solve_parity(build_problem(g, gauge, gamma, Mode::Parity));
        cplx half{};
        for (cplx b : r.beta) half += b / 2.0;
        const double total = gamma.sum();
        const double rel = std::abs(half - total) / total;
        worst_rel = std::max(worst_rel, rel);
        worst_gap = std::max(worst_gap, std::abs(r.gap));
        c.require(rel <= 1e-8, fmt::format("N={} sum rule off by {:.2e}", n, rel));
        c.require(std::abs(r.gap) <= 1e-8 * total, fmt::format("N={} steady gap {:.2e}", n, r.gap));
        c.require(r.vacuum_physical, fmt::format("N={} vacuum unphysical in the steady sector", n));
        ++graphs;
    }
    c.note(fmt::format("{} graphs, worst relative deviation {:.1e}, worst |gap| {:.1e}", graphs, worst_rel, worst_gap));
    return c.done();
}

Outcome tight_number_gap() {
    Checks c;
    double worst = 0;
    const std::vector<std::pair<const char*, ColoredGraph>> lattices = {
        {"honeycomb", honeycomb(16, 16)}, {"triangular", build_lattice(LatticeKind::Triangular, 20, 20, true)}};
    for (const auto& [name, g] : lattices) {
        const std::vector<GaugeConfig> gauges = {uniform_gauge(g, name[0] == 'h' ? Phase4::one() : Phase4::i()),
                                                 realize_fluxes(g, random_sector(g, 7))};
        for (const GaugeConfig& gauge : gauges)
            for (double gamma : {0.05, 1.0, 20.0}) {
                const NumberResult r = solve_number(build_problem(g, gauge, gamma, Mode::Number), quick_number(4));
                for (int n : {2, 4}) {
                    const double err = std::abs(number_gap(r, n) - 2 * n * gamma);
                    worst = std::max(worst, err);
                    c.require(err <= 1e-10,
                              fmt::format("{} N={} gamma={} n={} off by {:.2e}", name, g.num_vertices(), gamma, n, err));
                }
            }
    }
    c.note(fmt::format("worst |Delta_n - 2 n gamma| {:.1e}", worst));
    return c.done();
}

Outcome bendixson_containment() {
    Checks c;
    int samples = 0, quoted_violations = 0;
    double tightest = 1e300;
    const std::vector<std::pair<const char*, ColoredGraph>> lattices = {
        {"honeycomb", honeycomb(16, 16)}, {"triangular", build_lattice(LatticeKind::Triangular, 20, 20, true)}};
    for (const auto& [name, base] : lattices) {
        std::mt19937_64 rng(name[0] == 'h' ? 11 : 13);
        std::uniform_real_distribution<double> coupling(-2.0, 2.0), logg(std::log(0.01), std::log(100.0));
        for (int s = 0; s < 100; ++s) {
            ColoredGraph g = base;
            for (int e = 0; e < g.num_edges(); ++e) g.set_coupling(e, coupling(rng));
            const int nv = g.num_vertices();
            const int flips = s % 2 ? 3 : 1;
            std::vector<int> sites;
            while (static_cast<int>(sites.size()) < flips) {
                const int v = static_cast<int>(rng() % nv);
                if (std::find(sites.begin(), sites.end(), v) == sites.end()) sites.push_back(v);
            }
            const GaugeConfig gauge = realize_fluxes(g, random_sector(g, rng(), {}, sites));
            const double gamma = std::exp(logg(rng));
            std::uniform_real_distribution<double> x(0.0, 2.0);
            Eigen::VectorXd rates(nv);
            for (int j = 0; j < nv; ++j) rates(j) = gamma * x(rng);
            const QuadraticProblem p = build_problem(g, gauge, rates, Mode::Number);
            const NumberResult r = solve_number(p, quick_number(3));
            const double slack = 1e-10 * std::max(1.0, gamma);
            for (int n : {1, 3}) {
                const double d = number_gap(r, n);
                const Bounds b = bendixson_bounds(p, n);
                tightest = std::min(tightest, std::min(d - b.lower, b.upper - d));
                c.require(d >= b.lower - slack && d <= b.upper + slack,
                          fmt::format("{} sample {} n={}: {} outside [{}, {}]", name, s, n, d, b.lower, b.upper));
                const Bounds q = quoted_bounds(p, n);
                if (d < q.lower - slack || d > q.upper + slack) ++quoted_violations;
            }
            ++samples;
        }
    }
    c.note(fmt::format("{} samples, smallest margin {:.1e}, {} checks outside the max-over-V form", samples, tightest,
                       quoted_violations));
    return c.done();
}

Outcome limit_behavior() {
    Checks c;
    const ColoredGraph g = honeycomb(16, 16);
    double mid[2] = {0, 0};
    int k = 0;
    for (Phase4 w : {Phase4::one(), Phase4::minus_one()}) {
        GaugeConfig gauge = uniform_gauge(g, w);
        gauge.v[0] = 1;
        auto delta1 = [&](double gamma) {
            return number_gap(solve_number(build_problem(g, gauge, gamma, Mode::Number), quick_number(1)), 1);
        };
        const double lo = delta1(1e-3), one = delta1(1.0), hi = delta1(1e3);
        const char* label = k == 0 ? "0-flux" : "pi-flux";
        c.require(lo < 1e-2, fmt::format("{} Delta_1(1e-3) = {}", label, lo));
        c.require(hi < one, fmt::format("{} Delta_1(1e3) = {} not below Delta_1(1) = {}", label, hi, one));
        c.note(fmt::format("{}: {:.4g}, {:.4g}, {:.4g}", label, lo, one, hi));
        mid[k++] = one;
    }
    c.require(std::abs(mid[0] - mid[1]) > 1e-3, "0-flux and pi-flux curves coincide at gamma = 1");
    return c.done();
}

Outcome anomalous_relaxation() {
    Checks c;
    auto single_flip = [](const ColoredGraph& g) {
        GaugeConfig gauge = uniform_gauge(g, Phase4::one());
        gauge.u_tilde[0] = -gauge.u[0];
        return gauge;
    };
    std::vector<double> gaps;
    for (auto [nx, ny] : {std::pair{8, 8}, std::pair{8, 16}, std::pair{16, 16}}) {
        const ColoredGraph g = honeycomb(nx, ny);
        gaps.push_back(solve_parity(build_problem(g, single_flip(g), 0.05, Mode::Parity), quick_parity()).gap);
    }
    c.require(gaps[2] > gaps[1] && gaps[1] > gaps[0],
              fmt::format("gap(0.05) not increasing in N: {}, {}, {}", gaps[0], gaps[1], gaps[2]));
    c.note(fmt::format("gap(0.05) at N=128/256/512: {:.4f}, {:.4f}, {:.4f}", gaps[0], gaps[1], gaps[2]));

    const ColoredGraph g = honeycomb(16, 16);
    GaugeConfig color = uniform_gauge(g, Phase4::one());
    for (int e = 0; e < g.num_edges(); ++e)
        if (g.edge(e).color == 1) color.u_tilde[e] = -color.u[e];
    const GaugeConfig single = single_flip(g);
    auto gap = [&](const GaugeConfig& gauge, double gamma) {
        return solve_parity(build_problem(g, gauge, gamma, Mode::Parity), quick_parity(true)).gap;
    };
    const double s1 = gap(single, 1.0), s100 = gap(single, 100.0);
    const double c1 = gap(color, 1.0), c100 = gap(color, 100.0);
    c.require(s100 > 10 * s1, fmt::format("single flip: gap(100) = {} not above 10 gap(1) = {}", s100, 10 * s1));
    c.require(c100 < c1, fmt::format("color class: gap(100) = {} not below gap(1) = {}", c100, c1));
    c.note(fmt::format("N=512 single flip gap(1) {:.4g}, gap(100) {:.4g}; color class gap(1) {:.4g}, gap(100) {:.4g}",
                       s1, s100, c1, c100));
    return c.done();
}

Outcome cross_solver() {
    Checks c;
    const ColoredGraph g = honeycomb(16, 16);
    const int site = 0;
    GaugeConfig vertex_flip = uniform_gauge(g, Phase4::one());
    vertex_flip.v[site] = 1;
    // A right-layer gauge transformation at the flipped site moves the flip
    // onto the surrounding edges: U becomes the star of the site, V empties
    // and the inert parity changes sign because the valence is odd.
    GaugeConfig star = vertex_flip;
    gauge_transform(g, star, site, Layer::Right);
    c.require(star.flipped_vertices().empty() && static_cast<int>(star.flipped_edges().size()) == g.valence(site),
              "gauge transformation did not produce a star of edge flips");
    // Eigenvectors make B0 exact to a few ulps of A0; without them the
    // cancellation costs about 1e-9 at gamma = 50.
    ParityOptions refined;
    refined.conditioning = Conditioning::Always;
    double worst = 0;
    int points = 0;
    for (double gamma : log_grid(1e-2, 1e2, 50)) {
        const ParityResult pr = solve_parity(build_problem(g, star, gamma, Mode::Parity), refined);
        const double d1 =
            number_gap(solve_number(build_problem(g, vertex_flip, gamma, Mode::Number), quick_number(1)), 1);
        const double diff = std::abs(pr.gap - d1);
        worst = std::max(worst, diff);
        c.require(diff <= 1e-10, fmt::format("gamma={}: parity {} vs number {}", gamma, pr.gap, d1));
        ++points;
    }
    c.note(fmt::format("{} points, worst difference {:.1e}", points, worst));
    return c.done();
}

Outcome swssb_correlators() {
    Checks c;
    const ColoredGraph torus = build_lattice(LatticeKind::Square, 2, 2, true);
    ManyBodyModel m(torus, Eigen::VectorXd::Ones(torus.num_vertices()));
    const int np = static_cast<int>(torus.plaquettes().size()), nl = static_cast<int>(torus.loops().size());
    const int expected_rank = 1 << (torus.num_vertices() - 1);

    // Alternative dual-path representatives: the other endpoint of every
    // crossed edge, and the default path deformed by two chiral elements.
    std::vector<std::pair<DualPath, DualPath>> pairs;
    for (int a = 0; a < nl; ++a) {
        DualPath upper;
        for (int e : torus.dual_loops()[a]) upper.endpoints.push_back(torus.edge(e).j);
        pairs.push_back({DualPath{}, upper});
    }
    DualPath deformed;
    deformed.chiral_sites = {0, 3};

    int states = 0;
    double worst1 = 0, worst2 = 0;
    for (int mask = 0; mask < (1 << (np + nl)); ++mask) {
        std::vector<Phase4> wp(np), wl(nl);
        for (int k = 0; k < np; ++k) wp[k] = mask >> k & 1 ? Phase4::minus_one() : Phase4::one();
        for (int k = 0; k < nl; ++k) wl[k] = mask >> (np + k) & 1 ? Phase4::minus_one() : Phase4::one();
        const Op p = m.strong_projector(wp, wl);
        const double tr = p.trace().real();
        if (tr < 0.5) continue;
        ++states;
        c.require(std::abs(tr - expected_rank) < 1e-9, fmt::format("projector rank {} instead of {}", tr, expected_rank));
        const Op rho = p / tr;
        for (int a = 0; a < nl; ++a) {
            for (const DualPath& y : {pairs[a].second, deformed}) {
                const RenyiCorrelators r = renyi_correlators(m, rho, a, pairs[a].first, y);
                worst1 = std::max(worst1, std::abs(r.r1));
                worst2 = std::max(worst2, std::abs(r.r2 - 1.0));
                c.require(std::abs(r.r1) <= 1e-12, fmt::format("state {} direction {}: r1 = {}", mask, a, std::abs(r.r1)));
                c.require(std::abs(r.r2 - 1.0) <= 1e-12,
                          fmt::format("state {} direction {}: r2 = {}", mask, a, std::abs(r.r2)));
            }
        }
    }
    c.require(states == 32, fmt::format("{} steady states instead of 32", states));

    for (int n : {3, 4}) {
        const ColoredGraph g = cycle_graph(n);
        const int dim = steady_space(ManyBodyModel(g, Eigen::VectorXd::Constant(n, 0.7))).dimension;
        const int expected = 1 << (g.num_edges() - g.num_vertices() + 1);
        c.require(dim == expected, fmt::format("{}-cycle null space {} instead of {}", n, dim, expected));
    }
    c.note(fmt::format("{} steady states, worst |r1| {:.1e}, worst |r2 - 1| {:.1e}", states, worst1, worst2));
    return c.done();
}

Outcome pfaffian_properties() {
    Checks c;
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    double worst = 0;
    for (int s = 0; s < 100; ++s) {
        const int dim = 4 + 2 * (s % 7);
        if (s % 2 == 0) {
            Eigen::MatrixXd a(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
            a = (a - a.transpose()).eval();
            const double pf = pfaffian(a), det = a.determinant();
            const double rel = std::abs(pf * pf - det) / std::max(std::abs(det), 1e-300);
            worst = std::max(worst, rel);
            c.require(rel <= 1e-8, fmt::format("real dim {}: relative error {:.2e}", dim, rel));
        } else {
            Eigen::MatrixXcd a(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a(i, j) = cplx(normal(rng), normal(rng));
            a = (a - a.transpose()).eval();
            const cplx pf = pfaffian(a), det = a.determinant();
            const double rel = std::abs(pf * pf - det) / std::max(std::abs(det), 1e-300);
            worst = std::max(worst, rel);
            c.require(rel <= 1e-8, fmt::format("complex dim {}: relative error {:.2e}", dim, rel));
        }
    }
    for (int dim : {3, 5}) {
        Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(dim, dim);
        bool rejected = false;
        try {
            pfaffian(odd);
        } catch (const Error& e) {
            rejected = e.code() == ErrorCode::InvalidArgument;
        }
        c.require(rejected, fmt::format("odd dimension {} accepted", dim));
    }
    c.note(fmt::format("100 matrices, worst relative error {:.1e}", worst));
    return c.done();
}

Outcome antiunitary_degeneracy() {
    Checks c;
    const ColoredGraph g = build_lattice(LatticeKind::Triangular, 20, 20, true);
    GaugeConfig plus = uniform_gauge(g, Phase4::i()), minus = uniform_gauge(g, Phase4::minus_i());
    plus.v[0] = minus.v[0] = 1;
    double worst = 0;
    for (double gamma : log_grid(1e-2, 1e2, 40)) {
        const double a = number_gap(solve_number(build_problem(g, plus, gamma, Mode::Number), quick_number(1)), 1);
        const double b = number_gap(solve_number(build_problem(g, minus, gamma, Mode::Number), quick_number(1)), 1);
        worst = std::max(worst, std::abs(a - b));
        c.require(std::abs(a - b) <= 1e-10, fmt::format("gamma={}: {} vs {}", gamma, a, b));
    }
    c.note(fmt::format("40 points, worst difference {:.1e}", worst));
    return c.done();
}

struct Entry {
    const char* name;
    Outcome (*run)();
};

const Entry kCriteria[] = {
    {"oracle spectral equivalence", oracle_equivalence},
    {"steady-sector sum rule", sum_rule},
    {"tight number-mode gap", tight_number_gap},
    {"Bendixson containment", bendixson_containment},
    {"number-mode limit behavior", limit_behavior},
    {"anomalous relaxation trend", anomalous_relaxation},
    {"cross-solver consistency", cross_solver},
    {"SW-SSB correlators", swssb_correlators},
    {"Pfaffian properties", pfaffian_properties},
    {"antiunitary degeneracy", antiunitary_degeneracy},
};

}  // namespace

VerifyLevel parse_verify_level(const std::string& s) {
    if (s == "fast") return VerifyLevel::Fast;
    if (s == "full") return VerifyLevel::Full;
    fail(ErrorCode::InvalidArgument, fmt::format("unknown verify level '{}' (fast|full)", s));
}

int criterion_count() { return static_cast<int>(std::size(kCriteria)); }

std::vector<int> criteria_for(VerifyLevel level) {
    if (level == VerifyLevel::Fast) return {1, 2, 9};
    std::vector<int> all(criterion_count());
    for (int k = 0; k < criterion_count(); ++k) all[k] = k + 1;
    return all;
}

std::string criterion_name(int id) {
    if (id < 1 || id > criterion_count()) fail(ErrorCode::InvalidArgument, fmt::format("no criterion {}", id));
    return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = kCriteria[id - 1].run();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = fmt::format("exception: {}", e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const CriterionCallback& on_result) {
    std::vector<CriterionResult> out;
    for (int id : ids) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::vector<CriterionResult> run_verification(VerifyLevel level, const CriterionCallback& on_result) {
    return run_criteria(criteria_for(level), on_result);
}

std::vector<cplx> predicted_sector_spectrum(const ColoredGraph& g, const GaugeConfig& gauge,
                                            const Eigen::VectorXd& gamma, ParityResult* solved) {
    ParityOptions opt;
    opt.allow_zero_modes = true;
    opt.conditioning = Conditioning::Always;
    const ParityResult r = solve_parity(build_problem(g, gauge, gamma, Mode::Parity), opt);
    if (solved) *solved = r;
    const int odd = g.odd_valence_count();
    if (odd == 0) return physical_eigenvalues(r);
    const std::vector<cplx> once = all_eigenvalues(r);
    std::vector<cplx> out;
    for (int k = 0; k < (1 << (odd - 1)); ++k) out.insert(out.end(), once.begin(), once.end());
    return out;
}

ColoredGraph random_colored_graph(int n, double edge_probability, std::uint64_t seed) {
    if (n < 2) fail(ErrorCode::InvalidArgument, "random graphs need at least two sites");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(edge_probability);
    std::uniform_real_distribution<double> coupling(0.5, 1.5);
    std::vector<std::pair<int, int>> pairs;
    // A random spanning path keeps every site coupled to the rest.
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<int, int>> seen;
    for (int k = 0; k + 1 < n; ++k) seen.insert(std::minmax(order[k], order[k + 1]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (keep(rng)) seen.insert({i, j});
    pairs.assign(seen.begin(), seen.end());
    const std::vector<int> colors = color_edges(n, pairs);
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        edges.push_back({pairs[k].first, pairs[k].second, colors[k], coupling(rng)});
    return ColoredGraph(n, std::move(edges));
}

}  // namespace gammalind
