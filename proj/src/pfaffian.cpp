#include "gammalind/pfaffian.hpp"

#include <fmt/format.h>

#include "gammalind/errors.hpp"

namespace gammalind {

namespace {

template <class Scalar>
PfaffianLog parlett_reid(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) fail(ErrorCode::InvalidArgument, "Pfaffian of a non-square matrix");
    if (n % 2) fail(ErrorCode::InvalidArgument, fmt::format("Pfaffian of odd dimension {}", n));
    PfaffianLog pf;
    if (n == 0) return pf;
    const double scale = a.cwiseAbs().maxCoeff();
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        fail(ErrorCode::InvalidArgument, "Pfaffian of a matrix that is not antisymmetric");
    if (scale == 0) {
        pf.phase = 0;
        return pf;
    }

    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index kp;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf.phase = -pf.phase;
        }
        const Scalar pivot = a(k, k + 1);
        if (pivot == Scalar(0)) {
            pf.phase = 0;
            return pf;
        }
        pf.log_abs += std::log(std::abs(pivot));
        pf.phase *= pivot / std::abs(pivot);
        const Eigen::Index m = n - k - 2;
        if (m > 0) {
            // Gauss transformation eliminating row/column k beyond k+1.
            Vec tau = a.row(k).tail(m).transpose() / pivot;
            Vec col = a.col(k + 1).tail(m);
            auto trailing = a.bottomRightCorner(m, m);
            trailing.noalias() += tau * col.transpose();
            trailing.noalias() -= col * tau.transpose();
        }
    }
    return pf;
}

}  // namespace

PfaffianLog pfaffian_log(const Eigen::MatrixXcd& a) { return parlett_reid<std::complex<double>>(a); }

PfaffianLog pfaffian_log(const Eigen::MatrixXd& a) { return parlett_reid<double>(a); }

std::complex<double> pfaffian(const Eigen::MatrixXcd& a) { return pfaffian_log(a).value(); }

double pfaffian(const Eigen::MatrixXd& a) { return pfaffian_log(a).value().real(); }

}  // namespace gammalind
