#include "gammalind/parity_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gammalind/errors.hpp"
#include "gammalind/pfaffian.hpp"

namespace gammalind {

PairedSpectrum pair_spectrum(const std::vector<cplx>& eigs, double norm, const ParityOptions& opt) {
    if (eigs.size() % 2) fail(ErrorCode::InvalidArgument, "odd number of eigenvalues cannot pair up");
    const double tau_pair = opt.pair_tol * std::max(norm, 1e-300);
    const double tau_zero = opt.allow_zero_modes ? opt.zero_tol * norm : 0.0;
    const double tau_im = opt.imag_tol * norm;

    std::vector<cplx> z = eigs;
    // Largest |Re| first, so that the nearly imaginary pairs are matched last
    // among the remaining candidates.
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        if (std::abs(a.real()) != std::abs(b.real())) return std::abs(a.real()) > std::abs(b.real());
        return a.imag() > b.imag();
    });
    std::vector<char> used(z.size(), 0);
    PairedSpectrum out;
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (used[k]) continue;
        used[k] = 1;
        std::size_t best = z.size();
        double bd = 0;
        for (std::size_t l = k + 1; l < z.size(); ++l) {
            if (used[l]) continue;
            double d = std::abs(z[k] + z[l]);
            if (best == z.size() || d < bd) {
                bd = d;
                best = l;
            }
        }
        used[best] = 1;
        out.residual = std::max(out.residual, bd);
        if (bd > tau_pair && std::abs(z[k]) > tau_zero)
            fail(ErrorCode::Numerical,
                 fmt::format("eigenvalue {}{:+}i has no partner of opposite sign (closest miss {:.3g})", z[k].real(),
                             z[k].imag(), bd));
        cplx b = 0.5 * (z[k] - z[best]);
        if (opt.allow_zero_modes && std::abs(b) <= opt.zero_tol * norm) {
            ++out.zero_modes;
            out.beta.push_back(0);
            continue;
        }
        if (std::abs(b) <= tau_pair)
            fail(ErrorCode::Numerical, "a single-particle eigenvalue vanishes; the sector has a zero mode");
        const bool imaginary = std::abs(b.real()) < tau_im;
        if (imaginary) {
            ++out.imaginary_count;
            if (b.imag() < 0) b = -b;
        } else if (b.real() < 0) {
            b = -b;
        }
        out.beta.push_back(b);
    }
    // Zero modes first, then Re ascending.
    std::sort(out.beta.begin(), out.beta.end(), [](cplx a, cplx b) {
        const bool za = a == cplx(0), zb = b == cplx(0);
        if (za != zb) return za;
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

ParityResult solve_parity(const QuadraticProblem& p, const ParityOptions& opt) {
    ParityResult r;
    r.a0 = p.a0;
    r.parity_factor = p.parity_factor();

    const Eigen::MatrixXcd a = p.parity_matrix();
    r.norm = norm2_bound(a);
    const int dim = 2 * p.n;
    r.condition_checked = opt.conditioning == Conditioning::Always ||
                          (opt.conditioning == Conditioning::Auto && dim <= opt.auto_condition_limit);
    // The real block matrix is similar to A through the unitary diag(1, i),
    // so eigenvalues and their condition numbers carry over unchanged.
    const Eigen::MatrixXd real_form = p.parity_matrix_real();
    Eigenvalues ev = eigenvalues(real_form, r.condition_checked);
    r.max_condition = ev.max_condition;
    r.exceptional = r.condition_checked && ev.max_condition > opt.exceptional_threshold;

    ParityOptions pairing = opt;
    if (r.exceptional) {
        pairing.pair_tol = std::max(opt.pair_tol, opt.exceptional_pair_tol);
    } else if (r.condition_checked) {
        // First-order perturbation error of a backward stable solver.
        const double attainable = 100 * std::numeric_limits<double>::epsilon() * ev.max_condition;
        pairing.pair_tol = std::max(opt.pair_tol, std::min(attainable, opt.exceptional_pair_tol));
    }
    PairedSpectrum ps = pair_spectrum(ev.values, r.norm, pairing);
    r.beta = std::move(ps.beta);
    r.imaginary_count = ps.imaginary_count;
    r.zero_modes = ps.zero_modes;
    r.pair_residual = ps.residual;

    cplx half_sum = 0;
    for (cplx b : r.beta) half_sum += b;
    r.b0 = r.a0 - 0.5 * half_sum;
    if (r.condition_checked && !r.exceptional) {
        // B0 cancels A0 against a sum of N eigenvalues of size gamma; the
        // projector trace recovers the digits the plain sum loses.
        std::vector<char> right_half(ev.values.size());
        for (std::size_t k = 0; k < ev.values.size(); ++k) right_half[k] = ev.values[k].real() > 0;
        r.b0 = cplx(r.a0 - 0.5 * invariant_trace(real_form, ev, right_half), r.b0.imag());
        r.sum_refined = true;
    }

    if (r.zero_modes > 0) {
        // Occupying a zero mode flips the parity at no cost: the vacuum
        // decay rate is always attained by a physical state.
        r.vacuum_physical = true;
        r.gap = r.b0.real();
        r.parity_ambiguous = true;
        return r;
    }

    const PfaffianLog pf = pfaffian_log(Eigen::MatrixXcd(cplx(0, 1) * a));
    r.pf_log_abs = pf.log_abs;
    if (pf.is_zero()) fail(ErrorCode::Numerical, "Pf(iA) vanishes although no eigenvalue does");
    // (-i)^|I| Pf(iA) is real; keep its sign.
    cplx s = pf.phase * std::pow(cplx(0, -1), r.imaginary_count);
    r.pf_sign = s.real() >= 0 ? 1 : -1;
    // Independent reading: Pf(iA) = det(O) prod(beta).
    cplx beta_phase = 1;
    for (cplx b : r.beta) beta_phase *= b / std::abs(b);
    cplx ratio = pf.phase / beta_phase;
    r.pf_consistent = std::abs(s.imag()) < 1e-6 && std::abs(ratio - cplx(r.pf_sign, 0)) < 1e-6;

    r.vacuum_physical = r.pf_sign * r.parity_factor == 1;
    r.gap = r.b0.real();
    if (!r.vacuum_physical) r.gap += r.beta.front().real();
    r.parity_ambiguous = std::abs(r.beta.front().real()) < opt.imag_tol * r.norm || !r.pf_consistent;
    return r;
}

namespace {

std::vector<cplx> enumerate(const ParityResult& r, bool parity_filter) {
    const std::size_t n = r.beta.size();
    if (n > 20) fail(ErrorCode::TooLarge, "many-body enumeration is limited to N <= 20");
    // With a zero mode the parity is fixed by that mode's occupation, so any
    // target works; keep the even patterns.
    const int target = r.zero_modes > 0 ? 1 : r.pf_sign * r.parity_factor;
    std::vector<cplx> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int parity = (std::popcount(mask) % 2) ? -1 : 1;
        if (parity_filter && parity != target) continue;
        cplx lam = -r.b0;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1u) lam -= r.beta[k];
        out.push_back(lam);
    }
    return out;
}

}  // namespace

std::vector<cplx> physical_eigenvalues(const ParityResult& r) { return enumerate(r, true); }

std::vector<cplx> all_eigenvalues(const ParityResult& r) { return enumerate(r, false); }

}  // namespace gammalind
