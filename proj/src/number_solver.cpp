#include "gammalind/number_solver.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include <Eigen/Eigenvalues>

#include "gammalind/errors.hpp"

namespace gammalind {

NumberResult solve_number(const QuadraticProblem& p, const NumberOptions& opt) {
    const Eigen::MatrixXd l = p.number_matrix();
    NumberResult r;
    r.l0 = p.l0;
    r.parity = (p.flipped_vertices % 2 ? -1 : 1) * p.inert_sign;
    r.condition_checked = opt.conditioning == Conditioning::Always ||
                          (opt.conditioning == Conditioning::Auto && p.n <= opt.auto_condition_limit);
    Eigenvalues ev = eigenvalues(l, r.condition_checked);
    r.max_condition = ev.max_condition;
    r.exceptional = r.condition_checked && ev.max_condition > opt.exceptional_threshold;
    r.lambda = std::move(ev.values);
    std::sort(r.lambda.begin(), r.lambda.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });

    const int n_max = opt.n_max < 0 ? std::min(p.n, p.flipped_vertices + 4) : std::min(opt.n_max, p.n);
    double prefix = 0;
    bool have = false;
    for (int n = 0; n <= p.n; ++n) {
        if (n > 0) prefix += r.lambda[n - 1].real();
        if (!admissible(r, n)) continue;
        const double delta = r.l0 - prefix;
        if (!have || delta < r.sector_gap) {
            r.sector_gap = delta;
            r.sector_gap_n = n;
            have = true;
        }
        if (n <= n_max) r.gaps.push_back({n, delta, bendixson_bounds(p, n)});
    }
    return r;
}

bool admissible(const NumberResult& r, int n) { return (n % 2 ? -1 : 1) == r.parity; }

double number_gap(const NumberResult& r, int n) {
    if (n < 0 || n > static_cast<int>(r.lambda.size()))
        fail(ErrorCode::InvalidArgument, "fermion number out of range");
    double s = 0;
    for (int k = 0; k < n; ++k) s += r.lambda[k].real();
    return r.l0 - s;
}

Bounds bendixson_bounds(const QuadraticProblem& p, int n) {
    if (p.n == 0) return {};
    const double xm = p.damping.minCoeff(), xM = p.damping.maxCoeff();
    return {std::max(0.0, p.l0 - n * xM), p.l0 - n * xm};
}

Bounds quoted_bounds(const QuadraticProblem& p, int n) {
    double gmax = 0, gmin = 0, sum = 0;
    bool first = true;
    for (int j = 0; j < p.n; ++j) {
        if (p.flipped_vertices > 0 && p.damping(j) <= 0) continue;
        const double g = p.gamma(j);
        gmax = first ? g : std::max(gmax, g);
        gmin = first ? g : std::min(gmin, g);
        sum += g;
        first = false;
    }
    if (p.flipped_vertices == 0) return {2 * n * gmin, 2 * n * gmax};
    return {std::max(0.0, 2 * (sum - n * gmax)), 2 * (sum + n * gmax)};
}

BendixsonReport bendixson_theorem_check(const Eigen::MatrixXd& m, double slack) {
    BendixsonReport rep;
    rep.matrices = 1;
    const Eigen::MatrixXd s = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    const double tol = slack * std::max(1.0, norm2_bound(m));
    for (cplx z : eigenvalues(m).values) {
        ++rep.eigenvalues;
        const double excess = std::max(lo - z.real(), z.real() - hi);
        if (excess > tol) ++rep.violations;
        rep.worst_excess = std::max(rep.worst_excess, excess);
    }
    return rep;
}

BendixsonReport bendixson_theorem_check(int samples, int dim, std::uint64_t seed, double slack) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    BendixsonReport total;
    for (int s = 0; s < samples; ++s) {
        Eigen::MatrixXd m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = normal(rng);
        BendixsonReport r = bendixson_theorem_check(m, slack);
        total.matrices += r.matrices;
        total.eigenvalues += r.eigenvalues;
        total.violations += r.violations;
        total.worst_excess = std::max(total.worst_excess, r.worst_excess);
    }
    return total;
}

std::vector<cplx> physical_eigenvalues(const NumberResult& r) {
    const std::size_t n = r.lambda.size();
    if (n > 20) fail(ErrorCode::TooLarge, "many-body enumeration is limited to N <= 20");
    std::vector<cplx> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!admissible(r, std::popcount(mask))) continue;
        cplx lam = -r.l0;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1u) lam += r.lambda[k];
        out.push_back(lam);
    }
    return out;
}

}  // namespace gammalind
