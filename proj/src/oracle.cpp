#include "gammalind/oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "gammalind/errors.hpp"

namespace gammalind {

namespace {

const cplx I1(0, 1);

Op kron(const Op& a, const Op& b) {
    Op out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// 0 = I, 1 = X, 2 = Y, 3 = Z on each qubit, qubit 0 most significant.
Op pauli_string(const std::vector<int>& ops) {
    static const Op paulis[4] = {
        (Op(2, 2) << 1, 0, 0, 1).finished(),
        (Op(2, 2) << 0, 1, 1, 0).finished(),
        (Op(2, 2) << 0, -I1, I1, 0).finished(),
        (Op(2, 2) << 1, 0, 0, -1).finished(),
    };
    Op out = Op::Identity(1, 1);
    for (int o : ops) out = kron(out, paulis[o]);
    return out;
}

cplx inner(const Op& a, const Op& b) { return (a.conjugate().cwiseProduct(b)).sum(); }

// x with image = x sigma, if sigma is an eigenoperator.
std::optional<cplx> eigen_ratio(const Op& image, const Op& sigma) {
    const double ns = sigma.norm();
    if (ns == 0) return std::nullopt;
    cplx x = inner(sigma, image) / (ns * ns);
    if ((image - x * sigma).norm() > 1e-9 * std::max(1.0, ns)) return std::nullopt;
    return x;
}

std::vector<Cycle> strong_cycles(const ColoredGraph& g) {
    std::vector<Cycle> cs = g.plaquettes();
    cs.insert(cs.end(), g.loops().begin(), g.loops().end());
    return cs;
}

// Orthonormal basis of the range of a (nearly) Hermitian projector.
Eigen::MatrixXcd projector_range(const Eigen::MatrixXcd& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (p + p.adjoint()));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < p.rows(); ++k)
        if (es.eigenvalues()(k) > 0.5) keep.push_back(k);
    Eigen::MatrixXcd q(p.rows(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) q.col(c) = es.eigenvectors().col(keep[c]);
    return q;
}

}  // namespace

// Left and right fluxes factorize; the weak fluxes are projected inside
// that product space.
Eigen::MatrixXcd sector_basis(const ManyBodyModel& m, const SectorLabels& labels) {
    const ColoredGraph& g = m.graph();
    const auto cycles = strong_cycles(g);
    if (labels.left.size() != cycles.size() || labels.right.size() != cycles.size() ||
        static_cast<int>(labels.weak.size()) != g.num_edges())
        fail(ErrorCode::InvalidArgument, "sector labels do not match the graph");
    const int d = m.dim();
    Op pl = Op::Identity(d, d), pr = Op::Identity(d, d);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const Op w = m.closed_string(cycles[c]);
        pl = pl * (Op::Identity(d, d) + std::conj(labels.left[c].value()) * w) * 0.5;
        pr = pr * (Op::Identity(d, d) + std::conj(labels.right[c].value()) * w.adjoint()) * 0.5;
    }
    const Eigen::MatrixXcd ql = projector_range(pl);
    const Eigen::MatrixXcd qr = projector_range(pr.transpose());
    if (ql.cols() == 0 || qr.cols() == 0) fail(ErrorCode::InconsistentFlux, "strong flux labels select nothing");
    Eigen::MatrixXcd basis = kron(ql, qr);
    const Eigen::Index r = basis.cols();
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(r, r);
    for (int e = 0; e < g.num_edges(); ++e) {
        Eigen::MatrixXcd a = basis.adjoint() * adjoint_action(m.weak_flux_operator(e)) * basis;
        proj = proj * (Eigen::MatrixXcd::Identity(r, r) + double(labels.weak[e]) * a) * 0.5;
    }
    Eigen::MatrixXcd inner_q = projector_range(proj);
    if (inner_q.cols() == 0) fail(ErrorCode::InconsistentFlux, "sector labels select an empty subspace");
    return basis * inner_q;
}

ManyBodyModel::ManyBodyModel(const ColoredGraph& g, Eigen::VectorXd gamma) : g_(g), gamma_(std::move(gamma)) {
    const int n = g.num_vertices();
    if (gamma_.size() != n) fail(ErrorCode::InvalidArgument, "one dissipation rate per site is required");
    offset_.resize(n);
    for (int v = 0; v < n; ++v) {
        offset_[v] = qubits_;
        qubits_ += g.site_generators(v) / 2;
    }
    if (qubits_ > max_qubits)
        fail(ErrorCode::TooLarge,
             fmt::format("oracle needs {} qubits, the limit is {}", qubits_, static_cast<int>(max_qubits)));
    gen_.resize(n);
    for (int v = 0; v < n; ++v) {
        const int k = g.site_generators(v) / 2;
        for (int s = 0; s < 2 * k; ++s) {
            std::vector<int> ops(qubits_, 0);
            const int q = s / 2;
            for (int p = 0; p < q; ++p) ops[offset_[v] + p] = 3;
            ops[offset_[v] + q] = s % 2 ? 2 : 1;
            gen_[v].push_back(pauli_string(ops));
        }
    }
}

const Op& ManyBodyModel::generator(int v, int s) const {
    if (v < 0 || v >= g_.num_vertices() || s < 0 || s >= static_cast<int>(gen_[v].size()))
        fail(ErrorCode::InvalidArgument, fmt::format("no generator {} at site {}", s, v));
    return gen_[v][s];
}

Op ManyBodyModel::chiral(int v) const {
    Op c = Op::Identity(dim(), dim());
    for (const Op& gm : gen_.at(v)) c = c * gm;
    const int k = static_cast<int>(gen_[v].size()) / 2;
    return std::pow(I1, k) * c;
}

Op ManyBodyModel::edge_operator(int e) const {
    const Edge& ed = g_.edge(e);
    return generator(ed.i, g_.slot(ed.i, e)) * generator(ed.j, g_.slot(ed.j, e));
}

Op ManyBodyModel::hamiltonian() const {
    Op h = Op::Zero(dim(), dim());
    for (int e = 0; e < g_.num_edges(); ++e) h -= g_.edge(e).coupling * edge_operator(e);
    return h;
}

Op ManyBodyModel::jump(int v) const { return std::sqrt(gamma_(v)) * chiral(v); }

Op ManyBodyModel::closed_string(const Cycle& c) const {
    Op w = Op::Identity(dim(), dim());
    for (int e : c.edges) w = w * edge_operator(e);
    return w;
}

Op ManyBodyModel::open_string(const OpenPath& p, StringEnd first, StringEnd last) const {
    auto end_op = [&](int v, StringEnd s) -> Op {
        switch (s.kind) {
            case StringEnd::Generator: return generator(v, s.slot);
            case StringEnd::Chiral: return chiral(v);
            default: return Op::Identity(dim(), dim());
        }
    };
    int v = p.start;
    Op w = end_op(v, first);
    for (int e : p.edges) {
        w = w * edge_operator(e);
        v = g_.other_end(e, v);
    }
    return w * end_op(v, last);
}

Op ManyBodyModel::weak_flux_operator(int e) const {
    const Edge& ed = g_.edge(e);
    return chiral(ed.i) * edge_operator(e) * chiral(ed.j);
}

Super ManyBodyModel::liouvillian() const {
    if (qubits_ > max_super_qubits)
        fail(ErrorCode::TooLarge, fmt::format("superoperator for {} qubits is too large", qubits_));
    const int d = dim();
    const Op id = Op::Identity(d, d);
    const Op h = hamiltonian();
    Super l = -I1 * (kron(h, id) - kron(id, h.transpose()));
    const Super id2 = Super::Identity(d * d, d * d);
    for (int v = 0; v < g_.num_vertices(); ++v) {
        if (gamma_(v) == 0) continue;
        const Op c = chiral(v);  // Hermitian and squares to one
        l += gamma_(v) * (kron(c, c.conjugate()) - id2);
    }
    return l;
}

Op ManyBodyModel::strong_projector(const std::vector<Phase4>& plaquette_flux,
                                   const std::vector<Phase4>& loop_flux) const {
    if (plaquette_flux.size() != g_.plaquettes().size() || loop_flux.size() != g_.loops().size())
        fail(ErrorCode::InvalidArgument, "flux list does not match the embedding");
    const Op id = Op::Identity(dim(), dim());
    Op p = id;
    for (std::size_t k = 0; k < loop_flux.size(); ++k)
        p = p * (id + std::conj(loop_flux[k].value()) * closed_string(g_.loops()[k])) * 0.5;
    for (std::size_t k = 0; k < plaquette_flux.size(); ++k)
        p = p * (id + std::conj(plaquette_flux[k].value()) * closed_string(g_.plaquettes()[k])) * 0.5;
    return p;
}

Op ManyBodyModel::steady_state(const std::vector<Phase4>& plaquette_flux, const std::vector<Phase4>& loop_flux) const {
    Op p = strong_projector(plaquette_flux, loop_flux);
    const cplx tr = p.trace();
    if (std::abs(tr) < 0.5) fail(ErrorCode::InconsistentFlux, "flux configuration has an empty projector");
    return p / tr;
}

Eigen::VectorXcd ManyBodyModel::apply(const Super& s, const Op& rho) const {
    Op rt = rho.transpose();  // column-major storage of rho^T is row-major rho
    return s * Eigen::Map<const Eigen::VectorXcd>(rt.data(), rt.size());
}

Op ManyBodyModel::unvec(const Eigen::VectorXcd& v) const {
    Op rt = Eigen::Map<const Op>(v.data(), dim(), dim());
    return rt.transpose();
}

Super left_action(const Op& a) { return kron(a, Op::Identity(a.rows(), a.cols())); }
Super right_action(const Op& b) { return kron(Op::Identity(b.rows(), b.cols()), b.transpose()); }
Super adjoint_action(const Op& a) { return kron(a, a.conjugate()); }

bool SectorLabels::operator<(const SectorLabels& o) const {
    auto key = [](const SectorLabels& s) {
        std::vector<int> k;
        for (Phase4 p : s.left) k.push_back(p.exponent());
        for (Phase4 p : s.right) k.push_back(p.exponent());
        k.insert(k.end(), s.weak.begin(), s.weak.end());
        return k;
    };
    return key(*this) < key(o);
}

SectorLabels sector_labels(const ColoredGraph& g, const GaugeConfig& gauge) {
    SectorLabels s;
    for (const Cycle& c : strong_cycles(g)) {
        s.left.push_back(flux(g, gauge.u, c));
        s.right.push_back(right_flux(g, gauge.u_tilde, c));
    }
    for (int e = 0; e < g.num_edges(); ++e) s.weak.push_back(weak_flux(g, gauge, e));
    return s;
}

std::vector<GaugeConfig> sector_representatives(const ColoredGraph& g) {
    const int ne = g.num_edges(), nv = g.num_vertices();
    const int bits = 2 * ne + nv;
    if (bits > 24) fail(ErrorCode::TooLarge, "exhaustive sector search is limited to 2E + N <= 24");
    std::map<SectorLabels, GaugeConfig> seen;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        GaugeConfig gc;
        gc.u.resize(ne);
        gc.u_tilde.resize(ne);
        gc.v.resize(nv);
        for (int e = 0; e < ne; ++e) {
            gc.u[e] = (mask >> e & 1u) ? -1 : 1;
            gc.u_tilde[e] = (mask >> (ne + e) & 1u) ? -1 : 1;
        }
        for (int j = 0; j < nv; ++j) gc.v[j] = (mask >> (2 * ne + j) & 1u) ? 1 : -1;
        seen.emplace(sector_labels(g, gc), std::move(gc));
    }
    std::vector<GaugeConfig> out;
    for (auto& [labels, gc] : seen) out.push_back(std::move(gc));
    return out;
}

Super sector_projector(const ManyBodyModel& m, const SectorLabels& labels) {
    Eigen::MatrixXcd q = sector_basis(m, labels);
    return q * q.adjoint();
}

std::vector<cplx> restricted_spectrum(const Super& l, const Eigen::MatrixXcd& basis) {
    const Eigen::MatrixXcd lq = l * basis;
    const Eigen::MatrixXcd block = basis.adjoint() * lq;
    if ((lq - basis * block).norm() > 1e-8 * std::max(1.0, l.norm()))
        fail(ErrorCode::Internal, "sector subspace is not invariant under the Liouvillian");
    return eigenvalues(block);
}

std::vector<cplx> sector_spectrum(const ManyBodyModel& m, const SectorLabels& labels) {
    return restricted_spectrum(m.liouvillian(), sector_basis(m, labels));
}

std::vector<cplx> full_spectrum(const ManyBodyModel& m) { return eigenvalues(m.liouvillian()); }

SteadySpace steady_space(const ManyBodyModel& m, double tol) {
    const Super l = m.liouvillian();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(l, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = tol * std::max(1.0, sv(0));
    SteadySpace out;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cut) continue;
        ++out.dimension;
        out.basis.push_back(m.unvec(svd.matrixV().col(k)));
    }
    return out;
}

Op logical_x(const ManyBodyModel& m, int a) {
    const auto& loops = m.graph().loops();
    if (a < 0 || a >= static_cast<int>(loops.size())) fail(ErrorCode::InvalidArgument, "no such noncontractible loop");
    return m.closed_string(loops[a]);
}

Op logical_z(const ManyBodyModel& m, int a, const DualPath& path) {
    const ColoredGraph& g = m.graph();
    const auto& duals = g.dual_loops();
    if (a < 0 || a >= static_cast<int>(duals.size())) fail(ErrorCode::InvalidArgument, "no such dual loop");
    const auto& crossed = duals[a];
    if (!path.endpoints.empty() && path.endpoints.size() != crossed.size())
        fail(ErrorCode::InvalidArgument, "one endpoint per crossed edge is required");
    Op z = Op::Identity(m.dim(), m.dim());
    for (std::size_t k = 0; k < crossed.size(); ++k) {
        const Edge& ed = g.edge(crossed[k]);
        const int v = path.endpoints.empty() ? ed.i : path.endpoints[k];
        if (v != ed.i && v != ed.j) fail(ErrorCode::InvalidArgument, "endpoint is not on the crossed edge");
        z = z * m.generator(v, g.slot(v, crossed[k]));
    }
    for (int s : path.chiral_sites) z = z * m.chiral(s);
    if ((z - z.adjoint()).norm() > 1e-12) z *= I1;
    if ((z - z.adjoint()).norm() > 1e-12) fail(ErrorCode::Internal, "logical operator is not Hermitian up to a phase");
    return z;
}

RenyiCorrelators renyi_correlators(const ManyBodyModel& m, const Op& rho, int a, const DualPath& x,
                                   const DualPath& y) {
    const Op o = logical_z(m, a, x) * logical_z(m, a, y);
    RenyiCorrelators r;
    r.r1 = (rho * o).trace();
    r.r2 = (rho * o * rho * o.adjoint()).trace() / (rho * rho).trace();
    return r;
}

ValidationReport string_action_tests(const ManyBodyModel& m) {
    const ColoredGraph& g = m.graph();
    ValidationReport rep;
    if (g.num_edges() == 0) return rep;
    const auto cycles = strong_cycles(g);
    const Super l = m.liouvillian();

    std::vector<int> ones(g.num_edges(), 1);
    std::vector<Phase4> wp, wl;
    for (const Cycle& c : g.plaquettes()) wp.push_back(flux(g, ones, c));
    for (const Cycle& c : g.loops()) wl.push_back(flux(g, ones, c));
    const Op rho0 = m.steady_state(wp, wl);
    const double scale = rho0.norm();

    auto lnorm = [&](const Op& s) { return m.apply(l, s).norm(); };
    // Left, right and weak quantum numbers of sigma; nullopt entries mean sigma is not an eigenoperator.
    struct Measured {
        std::vector<std::optional<cplx>> left, right, weak;
    };
    auto measure = [&](const Op& s) {
        Measured out;
        for (const Cycle& c : cycles) {
            const Op w = m.closed_string(c);
            out.left.push_back(eigen_ratio(w * s, s));
            out.right.push_back(eigen_ratio(s * w.adjoint(), s));
        }
        for (int e = 0; e < g.num_edges(); ++e) {
            const Op w = m.weak_flux_operator(e);
            out.weak.push_back(eigen_ratio(w * s * w.adjoint(), s));
        }
        return out;
    };
    const Measured ref = measure(rho0);
    auto flipped = [](const std::vector<std::optional<cplx>>& a, const std::vector<std::optional<cplx>>& b,
                      std::set<int>& out) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (!a[k] || !b[k]) return false;
            if (std::abs(*a[k] + *b[k]) < 1e-9) out.insert(static_cast<int>(k));
            else if (std::abs(*a[k] - *b[k]) > 1e-9) return false;
        }
        return true;
    };
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    // Closed strings reproduce the reference state under every action.
    {
        bool ok = true;
        for (const Cycle& c : cycles) {
            const Op w = m.closed_string(c);
            auto lft = eigen_ratio(w * rho0, rho0), rgt = eigen_ratio(rho0 * w.adjoint(), rho0);
            ok = ok && lft && rgt && std::abs(std::abs(*lft) - 1) < 1e-9 &&
                 (w * rho0 * w.adjoint() - rho0).norm() < 1e-9 * scale;
        }
        add("closed_string_any_action", ok, fmt::format("{} closed strings", cycles.size()));
    }

    const int e0 = 0;
    const Edge& ed0 = g.edge(e0);
    const int i = ed0.i, j = ed0.j;
    auto other_slot = [&](int v, int e) { return g.slot(v, e) == 0 ? 1 : 0; };
    const int mu = other_slot(i, e0), nu = other_slot(j, e0);
    const OpenPath single{i, {e0}};
    const Op wmn = m.open_string(single, StringEnd::generator(mu), StringEnd::generator(nu));
    // The generator at an endpoint flips u on the edge owning that slot.
    std::set<int> expected_flux_flips;
    for (auto [v, s] : {std::pair{i, mu}, std::pair{j, nu}}) {
        for (int e : g.incident(v)) {
            if (g.slot(v, e) != s) continue;
            for (std::size_t c = 0; c < cycles.size(); ++c)
                if (std::count(cycles[c].edges.begin(), cycles[c].edges.end(), e) % 2) {
                    if (!expected_flux_flips.insert(static_cast<int>(c)).second)
                        expected_flux_flips.erase(static_cast<int>(c));
                }
        }
    }

    {
        const Op sigma = wmn * rho0 * wmn.adjoint();
        const Measured ms = measure(sigma);
        std::set<int> fl, fr, fw;
        bool ok = flipped(ref.left, ms.left, fl) && flipped(ref.right, ms.right, fr) && flipped(ref.weak, ms.weak, fw);
        ok = ok && fl == expected_flux_flips && fw.empty() && lnorm(sigma) < 1e-9 * scale &&
             std::abs(sigma.trace() - 1.0) < 1e-9;
        add("adjoint_generator_string", ok,
            fmt::format("{} strong fluxes flipped, steady residual {:.2e}", fl.size(), lnorm(sigma)));
    }
    {
        const Op sigma = rho0 * wmn;
        const Measured ms = measure(sigma);
        std::set<int> fl, fr, fw;
        bool ok = flipped(ref.left, ms.left, fl) && flipped(ref.right, ms.right, fr) && flipped(ref.weak, ms.weak, fw);
        const bool transient = lnorm(sigma) > 1e-6 * sigma.norm();
        ok = ok && fl.empty() && fr == expected_flux_flips && (expected_flux_flips.empty() || transient);
        add("right_generator_string", ok,
            fmt::format("{} right fluxes flipped, left untouched", fr.size()));
    }
    {
        OpenPath path = single;
        int end = j;
        for (int e : g.incident(j))
            if (e != e0 && g.other_end(e, j) != i) {
                path.edges.push_back(e);
                end = g.other_end(e, j);
                break;
            }
        const Op wch = m.open_string(path, StringEnd::chiral(), StringEnd::chiral());
        std::set<int> expected;
        for (int e = 0; e < g.num_edges(); ++e) {
            const Edge& ed = g.edge(e);
            int hits = (ed.i == i) + (ed.j == i) + (ed.i == end) + (ed.j == end);
            if (hits % 2) expected.insert(e);
        }
        bool ok = true;
        std::string detail;
        for (bool left : {true, false}) {
            const Op sigma = left ? Op(wch * rho0) : Op(rho0 * wch);
            const Measured ms = measure(sigma);
            std::set<int> fl, fr, fw;
            ok = ok && flipped(ref.left, ms.left, fl) && flipped(ref.right, ms.right, fr) &&
                 flipped(ref.weak, ms.weak, fw) && fl.empty() && fr.empty() && fw == expected &&
                 lnorm(sigma) > 1e-6 * sigma.norm();
            if (left) detail = fmt::format("{} weak fluxes flipped", fw.size());
        }
        add("chiral_string", ok, detail);
    }
    {
        const Op wp_ = m.open_string(single, StringEnd::identity(), StringEnd::identity());
        const Op sigma = wp_ * rho0;
        const Measured ms = measure(sigma);
        std::set<int> fl, fr, fw;
        bool ok = flipped(ref.left, ms.left, fl) && flipped(ref.right, ms.right, fr) &&
                  flipped(ref.weak, ms.weak, fw) && fl.empty() && fr.empty() && fw.empty();
        const cplx rq = inner(sigma, m.unvec(m.apply(l, sigma))) / inner(sigma, sigma);
        const bool any_gamma = m.gamma().maxCoeff() > 0;
        ok = ok && (sigma - rho0 * wp_).norm() < 1e-9 * scale && (!any_gamma || rq.real() < -1e-9);
        add("open_string_decays", ok, fmt::format("Rayleigh quotient {:.4g}{:+.4g}i", rq.real(), rq.imag()));
    }
    {
        double worst = 0;
        for (int v = 0; v < g.num_vertices(); ++v) {
            const Op c = m.chiral(v);
            const Op sigma = c * rho0;
            worst = std::max(worst, (c * sigma * c - sigma).norm());
        }
        add("chiral_dissipator_zero", worst < 1e-9 * scale, fmt::format("largest residual {:.2e}", worst));
    }
    return rep;
}

}  // namespace gammalind
