#include <doctest.h>

#include <algorithm>
#include <random>

#include "gammalind/errors.hpp"
#include "gammalind/number_solver.hpp"

using namespace gammalind;

namespace {

QuadraticProblem problem(const ColoredGraph& g, std::vector<int> V, const Eigen::VectorXd& gamma) {
    return build_problem(g, realize_fluxes(g, random_sector(g, 2, {}, V)), gamma, Mode::Number);
}

QuadraticProblem problem(const ColoredGraph& g, std::vector<int> V, double gamma) {
    return problem(g, V, Eigen::VectorXd::Constant(g.num_vertices(), gamma));
}

}  // namespace

TEST_CASE("uniform rates: Delta_n = 2 n gamma with nothing flipped, 2 (N - n) gamma with everything flipped") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 4, 4, true);
    const int N = g.num_vertices();
    std::vector<int> all(N);
    for (int k = 0; k < N; ++k) all[k] = k;
    NumberOptions opt;
    opt.n_max = 4;
    const NumberResult none = solve_number(problem(g, {}, 0.7), opt);
    const NumberResult every = solve_number(problem(g, all, 0.7), opt);
    for (int n : {0, 2, 4}) {
        CHECK(number_gap(none, n) == doctest::Approx(2 * n * 0.7).epsilon(1e-10));
        CHECK(number_gap(every, n) == doctest::Approx(2 * (N - n) * 0.7).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalues sorted by Re descending and parity fixed by |V|") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 4, 4, true);
    const NumberResult r = solve_number(problem(g, {0, 5, 9}, 0.4));
    CHECK(std::is_sorted(r.lambda.begin(), r.lambda.end(), [](cplx a, cplx b) { return a.real() > b.real(); }));
    CHECK(r.parity == -1);
    CHECK(admissible(r, 1));
    CHECK_FALSE(admissible(r, 2));
    for (const NumberGap& ng : r.gaps) CHECK(ng.n % 2 == 1);
}

TEST_CASE("default n_max is min(N, |V| + 4)") {
    const ColoredGraph g = cycle_graph(6);
    const NumberResult r = solve_number(problem(g, {0, 1}, 1.0));
    CHECK(r.gaps.back().n <= 6);
    CHECK(r.gaps.back().n >= 5);
    CHECK(r.sector_gap <= r.gaps.front().delta + 1e-12);
}

TEST_CASE("Bendixson bounds contain every gap, with disorder") {
    const ColoredGraph g = build_lattice(LatticeKind::Triangular, 4, 4, true);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd gamma(g.num_vertices());
        for (int k = 0; k < gamma.size(); ++k) gamma(k) = u(rng);
        const QuadraticProblem p = problem(g, {trial % 16, (trial + 5) % 16, (trial + 11) % 16}, gamma);
        NumberOptions opt;
        opt.n_max = g.num_vertices();
        const NumberResult r = solve_number(p, opt);
        for (const NumberGap& ng : r.gaps) {
            const Bounds b = bendixson_bounds(p, ng.n);
            CHECK(ng.delta >= b.lower - 1e-10);
            CHECK(ng.delta <= b.upper + 1e-10);
        }
    }
}

TEST_CASE("homogeneous rates reduce the bounds to the textbook form") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 4, 4, true);
    const QuadraticProblem p = problem(g, {1, 2, 3, 4}, 0.5);
    const Bounds b = bendixson_bounds(p, 1);
    CHECK(b.lower == doctest::Approx(2 * (4 - 1) * 0.5));
    CHECK(b.upper == doctest::Approx(2 * (4 + 1) * 0.5));
    const Bounds q = quoted_bounds(p, 1);
    CHECK(q.lower == doctest::Approx(b.lower));
    CHECK(q.upper == doctest::Approx(b.upper));
}

TEST_CASE("Bendixson theorem holds on random matrices") {
    const BendixsonReport r = bendixson_theorem_check(50, 24, 17);
    CHECK(r.matrices == 50);
    CHECK(r.eigenvalues == 50 * 24);
    CHECK(r.violations == 0);
}

TEST_CASE("many-body number spectrum matches the parity solver") {
    const ColoredGraph g = cycle_graph(6);
    const GaugeConfig c = realize_fluxes(g, random_sector(g, 2, {}, {1, 4}));
    const NumberResult nr = solve_number(build_problem(g, c, 0.9, Mode::Number));
    const ParityResult pr = solve_parity(build_problem(g, c, 0.9, Mode::Parity));
    CHECK(spectrum_distance(physical_eigenvalues(nr), physical_eigenvalues(pr)) < 1e-9);
}

TEST_CASE("number mode rejects flipped edges") {
    const ColoredGraph g = cycle_graph(4);
    const GaugeConfig c = realize_fluxes(g, random_sector(g, 2, {0}, {}));
    CHECK_THROWS_AS(solve_number(build_problem(g, c, 1.0, Mode::Number)), Error);
}
