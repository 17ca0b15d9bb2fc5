#include "gammalind/linalg.hpp"

#include <algorithm>
#include <limits>

#include <lapacke.h>

#include <fmt/format.h>

#include "gammalind/errors.hpp"

namespace gammalind {

Eigenvalues eigenvalues(const Eigen::MatrixXd& m, bool with_vectors) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "eigenvalues of a non-square matrix");
    const lapack_int n = static_cast<lapack_int>(m.rows());
    Eigenvalues out;
    if (n == 0) return out;
    Eigen::MatrixXd a = m;
    std::vector<double> wr(n), wi(n);
    lapack_int info;
    if (!with_vectors) {
        info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(), wi.data(), nullptr, 1, nullptr, 1);
    } else {
        out.left.resize(n, n);
        out.right.resize(n, n);
        info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'V', 'V', n, a.data(), n, wr.data(), wi.data(), out.left.data(), n,
                             out.right.data(), n);
    }
    if (info != 0) fail(ErrorCode::Numerical, fmt::format("dgeev failed with info = {}", info));
    out.values.reserve(n);
    for (lapack_int k = 0; k < n; ++k) out.values.emplace_back(wr[k], wi[k]);
    if (with_vectors) {
        // dgeev normalizes every vector to unit length, so 1/|y^H x| is the condition number.
        for (lapack_int k = 0; k < n; ++k) {
            double overlap;
            if (wi[k] == 0) {
                overlap = std::abs(out.left.col(k).dot(out.right.col(k)));
            } else {
                const auto yr = out.left.col(k), yi = out.left.col(k + 1);
                const auto xr = out.right.col(k), xi = out.right.col(k + 1);
                overlap = std::abs(cplx(yr.dot(xr) + yi.dot(xi), yr.dot(xi) - yi.dot(xr)));
            }
            const double cond = overlap > 0 ? 1.0 / overlap : std::numeric_limits<double>::infinity();
            out.max_condition = std::max(out.max_condition, cond);
            if (wi[k] != 0) ++k;
        }
    }
    return out;
}

double invariant_trace(const Eigen::MatrixXd& m, const Eigenvalues& ev, const std::vector<char>& selected) {
    const Eigen::Index n = m.rows();
    if (ev.right.rows() != n || ev.left.rows() != n || selected.size() != static_cast<std::size_t>(n))
        fail(ErrorCode::InvalidArgument, "invariant_trace needs eigenvectors and one flag per eigenvalue");
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < n; ++k) {
        const bool pair = ev.values[k].imag() != 0 && k + 1 < n;
        if (pair && selected[k] != selected[k + 1])
            fail(ErrorCode::InvalidArgument, "a conjugate pair must be selected together");
        if (selected[k]) cols.push_back(k);
        if (pair) {
            if (selected[k]) cols.push_back(k + 1);
            ++k;
        }
    }
    if (cols.empty()) return 0.0;

    // tr((Y^T X)^-1 Y^T m X) = sum(lambda) + tr((Y^T X)^-1 Y^T R) exactly, with
    // R = m X - X Lambda. R is tiny, so only it needs extended precision; it
    // is formed over the nonzeros of m, which keeps sparse matrices cheap.
    const Eigen::Index k = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXd x(n, k), y(n, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        x.col(c) = ev.right.col(cols[c]);
        y.col(c) = ev.left.col(cols[c]);
    }
    std::vector<std::pair<Eigen::Index, Eigen::Index>> nonzeros;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (m(i, j) != 0) nonzeros.push_back({i, j});

    long double eigen_sum = 0;
    Eigen::MatrixXd r(n, k);
    std::vector<long double> mx(n), col(n);
    for (Eigen::Index c = 0; c < k; ++c) {
        const cplx lambda = ev.values[cols[c]];
        std::fill(mx.begin(), mx.end(), 0.0L);
        for (auto [i, j] : nonzeros) mx[i] += static_cast<long double>(m(i, j)) * x(j, c);
        // Real layout, with dgeev's positive imaginary part first:
        // m xr = a xr - b xi and m xi = b xr + a xi.
        const bool real = lambda.imag() == 0, first = lambda.imag() > 0;
        const long double a = lambda.real(), b = lambda.imag();
        for (Eigen::Index i = 0; i < n; ++i) {
            long double expected;
            if (real) expected = a * x(i, c);
            else if (first) expected = a * x(i, c) - b * x(i, c + 1);
            else expected = -b * x(i, c - 1) + a * x(i, c);
            col[i] = mx[i] - expected;
            r(i, c) = static_cast<double>(col[i]);
        }
        eigen_sum += a;
    }
    const Eigen::MatrixXd yx = y.transpose() * x;
    const double correction = Eigen::PartialPivLU<Eigen::MatrixXd>(yx).solve(y.transpose() * r).trace();
    return static_cast<double>(eigen_sum + correction);
}

std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "eigenvalues of a non-square matrix");
    const lapack_int n = static_cast<lapack_int>(m.rows());
    if (n == 0) return {};
    Eigen::MatrixXcd a = m;
    std::vector<cplx> w(n);
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(a.data()),
                                    n, reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
    if (info != 0) fail(ErrorCode::Numerical, fmt::format("zgeev failed with info = {}", info));
    return w;
}

double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    auto lex = [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
    std::sort(a.begin(), a.end(), lex);
    std::vector<char> used(b.size(), 0);
    double worst = 0;
    for (cplx x : a) {
        std::size_t best = b.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (used[k]) continue;
            double d = std::abs(x - b[k]);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
        used[best] = 1;
        worst = std::max(worst, bd);
    }
    return worst;
}

}  // namespace gammalind
