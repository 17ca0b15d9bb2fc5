#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"
#include "gammalind/linalg.hpp"

namespace gammalind {

// Brute-force reference on tiny graphs. Operators act on the full
// gamma-matrix Hilbert space; density matrices are vectorized row-major,
// |rho> = sum rho_mn |m>|n>, so vec(A rho B) = (A kron B^T) vec(rho).
using Op = Eigen::MatrixXcd;
using Super = Eigen::MatrixXcd;

// What sits at the end of an open string: nothing, a generator slot, or the
// chiral element.
struct StringEnd {
    enum Kind { Identity, Generator, Chiral } kind = Identity;
    int slot = 0;

    static StringEnd identity() { return {Identity, 0}; }
    static StringEnd generator(int s) { return {Generator, s}; }
    static StringEnd chiral() { return {Chiral, 0}; }
};

// Open walk from `start` along `edges`.
struct OpenPath {
    int start = 0;
    std::vector<int> edges;
};

class ManyBodyModel {
public:
    static constexpr int max_qubits = 8;        // operators up to 256 x 256
    static constexpr int max_super_qubits = 6;  // superoperators up to 4096 x 4096

    ManyBodyModel(const ColoredGraph& g, Eigen::VectorXd gamma);

    const ColoredGraph& graph() const { return g_; }
    const Eigen::VectorXd& gamma() const { return gamma_; }
    int qubits() const { return qubits_; }
    int dim() const { return 1 << qubits_; }

    // Generator slot s of site v; slots [0, valence) are used by edges, an
    // odd-valence site also owns one inert slot.
    const Op& generator(int v, int s) const;
    Op chiral(int v) const;
    Op edge_operator(int e) const;  // K_e, product of the two endpoint generators
    Op hamiltonian() const;         // -sum J K
    Op jump(int v) const;           // sqrt(gamma) times the chiral element

    // Ordered product of K along the walk.
    Op closed_string(const Cycle& c) const;
    // Endpoint operator, K along the path, endpoint operator.
    Op open_string(const OpenPath& p, StringEnd first, StringEnd last) const;
    // Chiral string on a single edge; its adjoint action is the weak flux of e.
    Op weak_flux_operator(int e) const;

    Super liouvillian() const;

    // Product over plaquettes and loops of (1 + conj(w) W) / 2.
    Op strong_projector(const std::vector<Phase4>& plaquette_flux, const std::vector<Phase4>& loop_flux) const;
    // Projector divided by its trace.
    Op steady_state(const std::vector<Phase4>& plaquette_flux, const std::vector<Phase4>& loop_flux) const;

    Eigen::VectorXcd apply(const Super& s, const Op& rho) const;
    Op unvec(const Eigen::VectorXcd& v) const;

private:
    ColoredGraph g_;
    Eigen::VectorXd gamma_;
    int qubits_ = 0;
    std::vector<int> offset_;  // first qubit of each site
    std::vector<std::vector<Op>> gen_;
};

Super left_action(const Op& a);
Super right_action(const Op& b);  // rho -> rho b
Super adjoint_action(const Op& a);  // rho -> a rho a^dagger

// Quantum numbers of a sector of the vectorized problem: left fluxes and the
// eigenvalues of rho -> rho W^dagger over plaquettes then loops, and the
// adjoint weak flux per edge.
struct SectorLabels {
    std::vector<Phase4> left;
    std::vector<Phase4> right;
    std::vector<int> weak;

    bool operator==(const SectorLabels&) const = default;
    bool operator<(const SectorLabels& o) const;
};

SectorLabels sector_labels(const ColoredGraph& g, const GaugeConfig& gauge);

// One gauge configuration per distinct label set, found by exhaustive
// search over u, u_tilde and v. Needs 2E + N <= 24.
std::vector<GaugeConfig> sector_representatives(const ColoredGraph& g);

// Orthonormal basis of the sector's subspace. It depends on the graph only,
// not on the rates, so it can be reused across Liouvillians.
Eigen::MatrixXcd sector_basis(const ManyBodyModel& m, const SectorLabels& labels);
// Eigenvalues of l restricted to the invariant subspace spanned by `basis`.
std::vector<cplx> restricted_spectrum(const Super& l, const Eigen::MatrixXcd& basis);

Super sector_projector(const ManyBodyModel& m, const SectorLabels& labels);
// Eigenvalues of the Liouvillian restricted to the sector. Throws
// InconsistentFlux when the labels select an empty subspace.
std::vector<cplx> sector_spectrum(const ManyBodyModel& m, const SectorLabels& labels);
std::vector<cplx> full_spectrum(const ManyBodyModel& m);

struct SteadySpace {
    int dimension = 0;
    std::vector<Op> basis;
};
SteadySpace steady_space(const ManyBodyModel& m, double tol = 1e-9);

// Logical operators on a surface with loops. A dual path representative
// names, for every crossed edge, the endpoint carrying the generator, plus
// chiral elements multiplied in to deform the path.
struct DualPath {
    std::vector<int> endpoints;  // empty: lower endpoint of every edge
    std::vector<int> chiral_sites;
};

Op logical_x(const ManyBodyModel& m, int a);
// Phase fixed so the result is Hermitian.
Op logical_z(const ManyBodyModel& m, int a, const DualPath& path = {});

struct RenyiCorrelators {
    cplx r1;
    cplx r2;
};
RenyiCorrelators renyi_correlators(const ManyBodyModel& m, const Op& rho, int a, const DualPath& x,
                                   const DualPath& y);

// Operator-level checks of how strings act on the reference steady state.
ValidationReport string_action_tests(const ManyBodyModel& m);

}  // namespace gammalind
