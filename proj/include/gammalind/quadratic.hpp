#pragma once

#include <Eigen/Dense>

#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"

namespace gammalind {

enum class Mode { Parity, Number };
const char* to_string(Mode m);

// Single-particle data of one flux sector. The hopping blocks carry 2 J u so
// that the Majorana form reproduces H = -sum J K exactly.
struct QuadraticProblem {
    Mode mode = Mode::Parity;
    int n = 0;
    Eigen::MatrixXd hop;        // antisymmetric, 2 J_ij u_ij
    Eigen::MatrixXd hop_tilde;  // antisymmetric, 2 J_ij ut_ij
    Eigen::VectorXd damping;    // 2 gamma_j v_j
    Eigen::VectorXd gamma;
    double a0 = 0;  // sum of gamma
    double l0 = 0;  // 2 sum of gamma over flipped sites
    int flipped_edges = 0;
    int flipped_vertices = 0;
    int inert_sign = 1;

    // (-1)^(|U|+|V|) times the inert factor; a parity-mode state with nu
    // excitations is physical iff (-1)^nu = det(O) * parity_factor().
    int parity_factor() const;

    // 2N x 2N matrix in interleaved order (c_1, ct_1, ..., c_N, ct_N).
    Eigen::MatrixXcd parity_matrix() const;
    // Real matrix [[hop, -D], [-D, hop_tilde]] in block order, similar to parity_matrix().
    Eigen::MatrixXd parity_matrix_real() const;
    // hop + diag(damping); only defined when no edge is flipped.
    Eigen::MatrixXd number_matrix() const;
};

QuadraticProblem build_problem(const ColoredGraph& g, const GaugeConfig& gauge, const Eigen::VectorXd& gamma, Mode mode);
QuadraticProblem build_problem(const ColoredGraph& g, const GaugeConfig& gauge, double gamma, Mode mode);

// Number mode whenever no edge is flipped.
Mode auto_mode(const GaugeConfig& gauge);

}  // namespace gammalind
