#pragma once

#include <vector>

#include "gammalind/linalg.hpp"
#include "gammalind/quadratic.hpp"

namespace gammalind {

// When to pay for left and right eigenvectors. They give the condition
// numbers and a refined B0 that keeps its absolute precision at large gamma.
enum class Conditioning { Auto, Always, Never };

struct ParityOptions {
    // Relative to the norm bound of A. With condition numbers at hand it widens
    // to the attainable accuracy 100 eps kappa.
    double pair_tol = 1e-8;
    double imag_tol = 1e-8;   // |Re beta| below this counts as purely imaginary
    double exceptional_threshold = 1e8;
    // Pairing tolerance once the matrix is flagged exceptional: eigenvalues of
    // an order-k defective block carry errors near eps^(1/k), so 1e-4 covers k <= 4.
    double exceptional_pair_tol = 1e-4;
    Conditioning conditioning = Conditioning::Auto;
    int auto_condition_limit = 512;  // matrix dimension up to which Auto computes them
    // A vanishing beta is a hard error unless this is set. Zero modes make
    // both parities degenerate, so spectra stay well defined without det O.
    bool allow_zero_modes = false;
    double zero_tol = 1e-7;  // relative to the norm bound, used when zero modes are allowed
};

struct PairedSpectrum {
    std::vector<cplx> beta;  // one per pair, Re ascending
    int imaginary_count = 0;
    int zero_modes = 0;   // only nonzero when allowed; listed first in beta
    double residual = 0;  // largest |z + z'| over the matched pairs
};

// Matches eigenvalues of an antisymmetric matrix into +-beta pairs. The kept
// member has Re > 0, or Im > 0 when purely imaginary. Throws Numerical when a
// pair cannot be matched within tolerance or beta vanishes.
PairedSpectrum pair_spectrum(const std::vector<cplx>& eigs, double norm, const ParityOptions& opt = {});

struct ParityResult {
    std::vector<cplx> beta;
    cplx b0;  // A0 - sum(beta)/2
    double a0 = 0;
    int pf_sign = 1;  // det O
    int imaginary_count = 0;
    int zero_modes = 0;  // when nonzero pf_sign is meaningless and the vacuum counts as physical
    int parity_factor = 1;
    bool vacuum_physical = true;
    double gap = 0;

    double norm = 0;
    double pair_residual = 0;
    double pf_log_abs = 0;
    double max_condition = 0;  // zero when not computed
    bool condition_checked = false;
    bool exceptional = false;
    bool sum_refined = false;  // B0 from the invariant-subspace trace
    bool parity_ambiguous = false;  // Re beta_1 indistinguishable from zero; the gap is still safe
    bool pf_consistent = true;      // sign rule agrees with Pf(iA) / prod(beta)
};

ParityResult solve_parity(const QuadraticProblem& p, const ParityOptions& opt = {});

// All physical many-body eigenvalues -sum beta nu - B0. Exponential in N; N <= 20.
std::vector<cplx> physical_eigenvalues(const ParityResult& r);
// The same without the parity rule: all 2^N occupation patterns.
std::vector<cplx> all_eigenvalues(const ParityResult& r);

}  // namespace gammalind
