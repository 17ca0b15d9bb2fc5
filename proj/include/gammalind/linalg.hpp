#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gammalind {

using cplx = std::complex<double>;

struct Eigenvalues {
    std::vector<cplx> values;
    // Largest eigenvalue condition number 1/|y^H x|; zero without vectors.
    double max_condition = 0.0;
    // Right and left eigenvectors in LAPACK's real layout: a conjugate pair
    // k, k + 1 is stored as its real and imaginary parts. Empty without vectors.
    Eigen::MatrixXd right;
    Eigen::MatrixXd left;
};

// Dense nonsymmetric eigenvalues through LAPACK dgeev, optionally with both
// eigenvector sets and the condition numbers they imply.
Eigenvalues eigenvalues(const Eigen::MatrixXd& m, bool with_vectors = false);

// tr(m P) for the spectral projector P onto the selected eigenvalues, that is
// their sum, evaluated as tr((Y^T X)^-1 Y^T m X). The result is stationary in
// the eigenvector errors, so a sum of many large eigenvalues keeps far more
// absolute precision than adding them up. Needs vectors; conjugate pairs
// must be selected together.
double invariant_trace(const Eigen::MatrixXd& m, const Eigenvalues& ev, const std::vector<char>& selected);

// Complex nonsymmetric eigenvalues through LAPACK zgeev.
std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& m);

// Upper bound on the spectral norm, sqrt(||A||_1 ||A||_inf).
template <class Derived>
double norm2_bound(const Eigen::MatrixBase<Derived>& m) {
    double n1 = m.cwiseAbs().colwise().sum().maxCoeff();
    double ninf = m.cwiseAbs().rowwise().sum().maxCoeff();
    return std::sqrt(n1 * ninf);
}

// Greedy multiset matching of two spectra; returns the largest pair distance
// or +inf when the sizes differ.
double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace gammalind
