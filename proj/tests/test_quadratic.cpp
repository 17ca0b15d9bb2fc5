#include <doctest.h>

#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"
#include "gammalind/linalg.hpp"
#include "gammalind/quadratic.hpp"

using namespace gammalind;

namespace {

GaugeConfig flipped(const ColoredGraph& g, std::vector<int> U, std::vector<int> V) {
    return realize_fluxes(g, random_sector(g, 9, U, V));
}

}  // namespace

TEST_CASE("hopping carries twice the coupling times the link variable") {
    ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    g.set_coupling(0, 0.7);
    GaugeConfig c = realize_fluxes(g, uniform_sector(g, Phase4::one()));
    const QuadraticProblem p = build_problem(g, c, 0.5, Mode::Parity);
    const Edge& e = g.edge(0);
    CHECK(p.hop(e.i, e.j) == doctest::Approx(2 * 0.7 * c.u[0]));
    CHECK((p.hop + p.hop.transpose()).norm() == 0.0);
    CHECK((p.hop_tilde + p.hop_tilde.transpose()).norm() == 0.0);
    CHECK(p.a0 == doctest::Approx(0.5 * g.num_vertices()));
    CHECK(p.l0 == 0.0);
}

TEST_CASE("damping and L0 follow the flipped sites") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 4, 4, true);
    const GaugeConfig c = flipped(g, {}, {2, 5});
    Eigen::VectorXd gamma = Eigen::VectorXd::Constant(g.num_vertices(), 0.3);
    gamma(5) = 1.1;
    const QuadraticProblem p = build_problem(g, c, gamma, Mode::Number);
    CHECK(p.damping(2) == doctest::Approx(2 * 0.3 * c.v[2]));
    CHECK(p.damping(5) == doctest::Approx(2 * 1.1 * c.v[5]));
    CHECK(p.l0 == doctest::Approx(2 * (0.3 + 1.1)));
    CHECK(p.flipped_vertices == 2);
}

TEST_CASE("real block form is similar to the interleaved matrix") {
    const ColoredGraph g = build_lattice(LatticeKind::Triangular, 2, 2, true);
    const GaugeConfig c = flipped(g, {1}, {0});
    const QuadraticProblem p = build_problem(g, c, 0.8, Mode::Parity);
    const Eigen::MatrixXcd m = p.parity_matrix();
    CHECK((m + m.transpose()).norm() < 1e-14);
    const double d = spectrum_distance(eigenvalues(m), eigenvalues(p.parity_matrix_real()).values);
    CHECK(d < 1e-10);
}

TEST_CASE("parity factor combines flips and the inert sign") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 2, 2, true);
    GaugeConfig c = flipped(g, {0}, {1, 2});
    QuadraticProblem p = build_problem(g, c, 1.0, Mode::Parity);
    CHECK(p.parity_factor() == -1 * p.inert_sign);
    c.inert_sign = -c.inert_sign;
    CHECK(build_problem(g, c, 1.0, Mode::Parity).parity_factor() == -p.parity_factor());
}

TEST_CASE("auto mode prefers number mode without flipped edges") {
    const ColoredGraph g = cycle_graph(4);
    CHECK(auto_mode(flipped(g, {}, {1})) == Mode::Number);
    CHECK(auto_mode(flipped(g, {0}, {})) == Mode::Parity);
}

TEST_CASE("number matrix is hop plus damping") {
    const ColoredGraph g = cycle_graph(4);
    const QuadraticProblem p = build_problem(g, flipped(g, {}, {3}), 0.25, Mode::Number);
    const Eigen::MatrixXd m = p.number_matrix();
    CHECK((m - p.hop - Eigen::MatrixXd(p.damping.asDiagonal())).norm() == 0.0);
}
