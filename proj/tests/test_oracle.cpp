#include <doctest.h>

#include "gammalind/errors.hpp"
#include "gammalind/oracle.hpp"
#include "gammalind/parity_solver.hpp"
#include "gammalind/verify.hpp"

using namespace gammalind;

namespace {

Eigen::VectorXd rates(int n, double g) { return Eigen::VectorXd::Constant(n, g); }

bool commute(const Op& a, const Op& b) { return (a * b - b * a).norm() < 1e-10; }

std::vector<Phase4> reference_plaquettes(const ColoredGraph& g) {
    std::vector<int> ones(g.num_edges(), 1);
    std::vector<Phase4> w;
    for (const Cycle& c : g.plaquettes()) w.push_back(flux(g, ones, c));
    return w;
}

std::vector<Phase4> reference_loops(const ColoredGraph& g) {
    std::vector<int> ones(g.num_edges(), 1);
    std::vector<Phase4> w;
    for (const Cycle& c : g.loops()) w.push_back(flux(g, ones, c));
    return w;
}

}  // namespace

TEST_CASE("generators are Hermitian involutions, anticommuting on a site and commuting across sites") {
    const ManyBodyModel m(cycle_graph(3), rates(3, 1.0));
    std::vector<std::pair<int, Op>> all;
    for (int v = 0; v < 3; ++v)
        for (int s = 0; s < m.graph().site_generators(v); ++s) all.emplace_back(v, m.generator(v, s));
    for (std::size_t a = 0; a < all.size(); ++a) {
        const Op& x = all[a].second;
        CHECK((x - x.adjoint()).norm() < 1e-14);
        CHECK((x * x - Op::Identity(m.dim(), m.dim())).norm() < 1e-14);
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            const Op& y = all[b].second;
            if (all[a].first == all[b].first) CHECK((x * y + y * x).norm() < 1e-14);
            else CHECK(commute(x, y));
        }
    }
}

TEST_CASE("chiral elements are Hermitian involutions commuting with edge operators elsewhere") {
    const ManyBodyModel m(cycle_graph(4), rates(4, 1.0));
    for (int v = 0; v < 4; ++v) {
        const Op c = m.chiral(v);
        CHECK((c - c.adjoint()).norm() < 1e-14);
        CHECK((c * c - Op::Identity(m.dim(), m.dim())).norm() < 1e-14);
        for (int e = 0; e < m.graph().num_edges(); ++e) {
            const Edge& ed = m.graph().edge(e);
            const bool touches = ed.i == v || ed.j == v;
            CHECK(commute(c, m.edge_operator(e)) != touches);
        }
    }
}

TEST_CASE("plaquette operators commute with the Hamiltonian and every jump") {
    const ColoredGraph g = cycle_graph(4);
    const ManyBodyModel m(g, rates(4, 0.5));
    const Op h = m.hamiltonian();
    for (const Cycle& c : g.plaquettes()) {
        const Op w = m.closed_string(c);
        CHECK(commute(w, h));
        for (int v = 0; v < g.num_vertices(); ++v) CHECK(commute(w, m.jump(v)));
    }
}

TEST_CASE("the reference steady state has the fluxes of u = +1") {
    const ColoredGraph g = cycle_graph(4);
    const ManyBodyModel m(g, rates(4, 0.5));
    const Op rho = m.steady_state(reference_plaquettes(g), reference_loops(g));
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    for (std::size_t k = 0; k < g.plaquettes().size(); ++k) {
        const Op w = m.closed_string(g.plaquettes()[k]);
        CHECK((w * rho - reference_plaquettes(g)[k].value() * rho).norm() < 1e-12);
    }
    CHECK(m.apply(m.liouvillian(), rho).norm() < 1e-10);
}

TEST_CASE("the Liouvillian preserves the trace and has no growing modes") {
    const ColoredGraph g = cycle_graph(4);
    const ManyBodyModel m(g, Eigen::Vector4d(0.3, 1.0, 3.0, 0.7));
    const Super l = m.liouvillian();
    Eigen::VectorXcd id_vec(m.dim() * m.dim());
    id_vec.setZero();
    for (int k = 0; k < m.dim(); ++k) id_vec(k * m.dim() + k) = 1.0;
    CHECK((id_vec.transpose() * l).norm() < 1e-10);
    for (cplx z : full_spectrum(m)) CHECK(z.real() <= 1e-10);
}

TEST_CASE("sector spectra partition the full spectrum") {
    const ColoredGraph g = cycle_graph(3);
    const ManyBodyModel m(g, Eigen::Vector3d(0.3, 1.0, 3.0));
    std::vector<cplx> joined;
    for (const GaugeConfig& c : sector_representatives(g)) {
        const std::vector<cplx> s = sector_spectrum(m, sector_labels(g, c));
        joined.insert(joined.end(), s.begin(), s.end());
    }
    CHECK(spectrum_distance(joined, full_spectrum(m)) < 1e-9);
}

TEST_CASE("free-fermion prediction matches each triangle sector") {
    const ColoredGraph g = cycle_graph(3);
    const Eigen::VectorXd gamma = Eigen::Vector3d(0.3, 1.0, 3.0);
    const ManyBodyModel m(g, gamma);
    for (const GaugeConfig& c : sector_representatives(g))
        CHECK(spectrum_distance(sector_spectrum(m, sector_labels(g, c)), predicted_sector_spectrum(g, c, gamma)) < 1e-8);
}

TEST_CASE("string action checks pass on small graphs") {
    for (const ColoredGraph& g : {cycle_graph(3), cycle_graph(4), cycle_graph(5)}) {
        const ManyBodyModel m(g, rates(g.num_vertices(), 0.8));
        const ValidationReport r = string_action_tests(m);
        CAPTURE(r.summary());
        CHECK(r.ok());
    }
}

TEST_CASE("logical operators anticommute and identical paths give r1 = 1") {
    const ColoredGraph g = build_lattice(LatticeKind::Square, 2, 2, true);
    const ManyBodyModel m(g, rates(4, 1.0));
    for (int a = 0; a < 2; ++a) {
        const Op x = logical_x(m, a), z = logical_z(m, a);
        CHECK((x * z + z * x).norm() < 1e-10);
        CHECK((z - z.adjoint()).norm() < 1e-12);
        const Op rho = m.steady_state(reference_plaquettes(g), reference_loops(g));
        const RenyiCorrelators r = renyi_correlators(m, rho, a, {}, {});
        CHECK(std::abs(r.r1 - 1.0) < 1e-12);
        CHECK(std::abs(r.r2 - 1.0) < 1e-12);
    }
}

TEST_CASE("oracle refuses graphs that are too large") {
    const ColoredGraph g = build_lattice(LatticeKind::Honeycomb, 4, 4, true);
    CHECK_THROWS_AS(ManyBodyModel(g, rates(g.num_vertices(), 1.0)), Error);
    CHECK_THROWS_AS(ManyBodyModel(cycle_graph(3), rates(2, 1.0)), Error);
}
