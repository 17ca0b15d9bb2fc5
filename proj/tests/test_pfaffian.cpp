#include <doctest.h>

#include <random>

#include "gammalind/errors.hpp"
#include "gammalind/pfaffian.hpp"

using namespace gammalind;

namespace {

Eigen::MatrixXcd random_skew(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = {d(rng), d(rng)};
            a(j, i) = -a(i, j);
        }
    return a;
}

// Sum over perfect matchings, exponential but exact for n <= 8.
std::complex<double> pfaffian_by_matchings(const Eigen::MatrixXcd& a, std::vector<int> rest) {
    if (rest.empty()) return 1.0;
    const int i = rest.front();
    std::complex<double> total = 0;
    double sign = 1;
    for (std::size_t k = 1; k < rest.size(); ++k) {
        std::vector<int> sub;
        for (std::size_t m = 1; m < rest.size(); ++m)
            if (m != k) sub.push_back(rest[m]);
        total += sign * a(i, rest[k]) * pfaffian_by_matchings(a, sub);
        sign = -sign;
    }
    return total;
}

}  // namespace

TEST_CASE("2x2 and block-diagonal Pfaffians") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 3.5, -3.5, 0;
    CHECK(pfaffian(a) == doctest::Approx(3.5));
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(6, 6);
    for (int k = 0; k < 3; ++k) {
        b(2 * k, 2 * k + 1) = k + 2.0;
        b(2 * k + 1, 2 * k) = -(k + 2.0);
    }
    CHECK(pfaffian(b) == doctest::Approx(24.0));
}

TEST_CASE("agrees with the matching expansion") {
    std::mt19937_64 rng(3);
    for (int n : {2, 4, 6, 8}) {
        const Eigen::MatrixXcd a = random_skew(n, rng);
        std::vector<int> idx(n);
        for (int k = 0; k < n; ++k) idx[k] = k;
        CHECK(std::abs(pfaffian(a) - pfaffian_by_matchings(a, idx)) < 1e-10 * std::max(1.0, std::abs(pfaffian(a))));
    }
}

TEST_CASE("Pf^2 = det, Pf(B A B^T) = det B Pf A, Pf(A^T) = (-1)^(n/2) Pf A") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> d;
    for (int n : {4, 6, 10, 16}) {
        CAPTURE(n);
        const Eigen::MatrixXcd a = random_skew(n, rng);
        const std::complex<double> pf = pfaffian(a);
        CHECK(std::abs(pf * pf - a.determinant()) < 1e-9 * std::abs(a.determinant()));
        Eigen::MatrixXcd b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = {d(rng), d(rng)};
        const std::complex<double> lhs = pfaffian(Eigen::MatrixXcd(b * a * b.transpose()));
        CHECK(std::abs(lhs - b.determinant() * pf) < 1e-8 * std::abs(lhs));
        const double s = (n / 2) % 2 ? -1.0 : 1.0;
        CHECK(std::abs(pfaffian(Eigen::MatrixXcd(a.transpose())) - s * pf) < 1e-10 * std::abs(pf));
    }
}

TEST_CASE("log form survives products that overflow doubles") {
    const int n = 400;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n / 2; ++k) {
        a(2 * k, 2 * k + 1) = 1e10;
        a(2 * k + 1, 2 * k) = -1e10;
    }
    const PfaffianLog pl = pfaffian_log(a);
    CHECK_FALSE(pl.is_zero());
    CHECK(pl.log_abs == doctest::Approx(200 * 10 * std::log(10.0)));
    CHECK(std::abs(pl.phase - 1.0) < 1e-12);
}

TEST_CASE("singular matrices give a zero Pfaffian") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    a(0, 1) = 1;
    a(1, 0) = -1;
    CHECK(pfaffian_log(a).is_zero());
    CHECK(pfaffian(a) == 0.0);
}

TEST_CASE("invalid input is rejected") {
    CHECK_THROWS_AS(pfaffian(Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 3))), Error);
    CHECK_THROWS_AS(pfaffian(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 4))), Error);
    Eigen::MatrixXd sym(2, 2);
    sym << 0, 1, 1, 0;
    CHECK_THROWS_AS(pfaffian(sym), Error);
}
