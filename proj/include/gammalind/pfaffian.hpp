#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace gammalind {

// Pfaffian kept as phase times exp(log_abs) so that products of a thousand
// eigenvalue-sized pivots neither overflow nor underflow.
struct PfaffianLog {
    std::complex<double> phase{1.0, 0.0};  // zero when the Pfaffian vanishes
    double log_abs = 0.0;

    bool is_zero() const { return phase == std::complex<double>(0.0, 0.0); }
    std::complex<double> value() const { return is_zero() ? 0.0 : phase * std::exp(log_abs); }
};

// Parlett-Reid skew tridiagonalization with partial pivoting, O(n^3).
// Throws InvalidArgument for odd or non-square input and for matrices that
// are not antisymmetric to within 1e-10 of their largest entry.
PfaffianLog pfaffian_log(const Eigen::MatrixXcd& a);
PfaffianLog pfaffian_log(const Eigen::MatrixXd& a);

std::complex<double> pfaffian(const Eigen::MatrixXcd& a);
double pfaffian(const Eigen::MatrixXd& a);

}  // namespace gammalind
