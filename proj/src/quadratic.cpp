#include "gammalind/quadratic.hpp"

#include <fmt/format.h>

#include "gammalind/errors.hpp"
#include "gammalind/linalg.hpp"

namespace gammalind {

const char* to_string(Mode m) { return m == Mode::Parity ? "parity" : "number"; }

int QuadraticProblem::parity_factor() const {
    return ((flipped_edges + flipped_vertices) % 2 ? -1 : 1) * inert_sign;
}

Eigen::MatrixXcd QuadraticProblem::parity_matrix() const {
    const cplx I(0, 1);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(2 * i, 2 * j) = hop(i, j);
            a(2 * i + 1, 2 * j + 1) = hop_tilde(i, j);
        }
        a(2 * i, 2 * i + 1) = I * damping(i);
        a(2 * i + 1, 2 * i) = -I * damping(i);
    }
    return a;
}

Eigen::MatrixXd QuadraticProblem::parity_matrix_real() const {
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    r.topLeftCorner(n, n) = hop;
    r.bottomRightCorner(n, n) = hop_tilde;
    r.topRightCorner(n, n).diagonal() = -damping;
    r.bottomLeftCorner(n, n).diagonal() = -damping;
    return r;
}

Eigen::MatrixXd QuadraticProblem::number_matrix() const {
    if (flipped_edges != 0)
        fail(ErrorCode::ModeMismatch, "number mode needs every edge unflipped; use parity mode");
    Eigen::MatrixXd l = hop;
    l.diagonal() += damping;
    return l;
}

QuadraticProblem build_problem(const ColoredGraph& g, const GaugeConfig& gauge, const Eigen::VectorXd& gamma,
                               Mode mode) {
    const int n = g.num_vertices();
    if (gamma.size() != n)
        fail(ErrorCode::InvalidArgument, fmt::format("{} dissipation rates for {} sites", gamma.size(), n));
    if ((gamma.array() < 0).any()) fail(ErrorCode::InvalidArgument, "dissipation rates must be non-negative");
    if (static_cast<int>(gauge.u.size()) != g.num_edges() || static_cast<int>(gauge.u_tilde.size()) != g.num_edges() ||
        static_cast<int>(gauge.v.size()) != n)
        fail(ErrorCode::InvalidArgument, "gauge configuration does not match the graph");

    QuadraticProblem p;
    p.mode = mode;
    p.n = n;
    p.hop = Eigen::MatrixXd::Zero(n, n);
    p.hop_tilde = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        double t = 2 * ed.coupling * gauge.u[e], tt = 2 * ed.coupling * gauge.u_tilde[e];
        p.hop(ed.i, ed.j) += t;
        p.hop(ed.j, ed.i) -= t;
        p.hop_tilde(ed.i, ed.j) += tt;
        p.hop_tilde(ed.j, ed.i) -= tt;
    }
    p.gamma = gamma;
    p.damping.resize(n);
    for (int j = 0; j < n; ++j) p.damping(j) = 2 * gamma(j) * gauge.v[j];
    // Extended accumulation: A0 is later cancelled against eigenvalue sums.
    long double a0 = 0, l0 = 0;
    for (int j = 0; j < n; ++j) {
        a0 += gamma(j);
        if (gauge.v[j] > 0) l0 += 2.0L * gamma(j);
    }
    p.a0 = static_cast<double>(a0);
    p.l0 = static_cast<double>(l0);
    p.flipped_edges = static_cast<int>(gauge.flipped_edges().size());
    p.flipped_vertices = static_cast<int>(gauge.flipped_vertices().size());
    p.inert_sign = gauge.inert_sign;
    if (mode == Mode::Number && p.flipped_edges != 0)
        fail(ErrorCode::ModeMismatch,
             fmt::format("number mode needs every edge unflipped, {} are flipped", p.flipped_edges));
    return p;
}

QuadraticProblem build_problem(const ColoredGraph& g, const GaugeConfig& gauge, double gamma, Mode mode) {
    return build_problem(g, gauge, Eigen::VectorXd::Constant(g.num_vertices(), gamma), mode);
}

Mode auto_mode(const GaugeConfig& gauge) { return gauge.flipped_edges().empty() ? Mode::Number : Mode::Parity; }

}  // namespace gammalind
