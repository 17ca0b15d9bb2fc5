#pragma once

#include <cstdint>
#include <vector>

#include "gammalind/linalg.hpp"
#include "gammalind/parity_solver.hpp"
#include "gammalind/quadratic.hpp"

namespace gammalind {

struct NumberOptions {
    int n_max = -1;  // -1: min(N, |V| + 4)
    double exceptional_threshold = 1e8;
    Conditioning conditioning = Conditioning::Auto;
    int auto_condition_limit = 512;
};

struct Bounds {
    double lower = 0;
    double upper = 0;
};

struct NumberGap {
    int n = 0;
    double delta = 0;
    Bounds bounds;
};

struct NumberResult {
    std::vector<cplx> lambda;  // Re descending, ties by Im descending
    double l0 = 0;
    int parity = 1;  // admissible n satisfy (-1)^n = parity
    std::vector<NumberGap> gaps;  // admissible n <= n_max
    double sector_gap = 0;        // min over every admissible n <= N
    int sector_gap_n = 0;

    double max_condition = 0;
    bool condition_checked = false;
    bool exceptional = false;
};

NumberResult solve_number(const QuadraticProblem& p, const NumberOptions& opt = {});

// Delta_n = L0 - sum of the n largest Re lambda.
double number_gap(const NumberResult& r, int n);
bool admissible(const NumberResult& r, int n);

// Bendixson bounds from the extreme damping entries x_m <= x_M of the
// symmetric part: max(0, L0 - n x_M) <= Delta_n <= L0 - n x_m. These hold for
// arbitrary per-site rates; for homogeneous rates they equal the textbook
// 2(|V| -+ n) gamma and 2 n gamma forms.
Bounds bendixson_bounds(const QuadraticProblem& p, int n);

// The bounds as usually quoted for flipped sites: max and sum over V only
// (over all sites when V is empty). Not guaranteed for disordered rates.
Bounds quoted_bounds(const QuadraticProblem& p, int n);

struct BendixsonReport {
    int matrices = 0;
    int eigenvalues = 0;
    int violations = 0;
    double worst_excess = 0;  // largest distance outside the interval
};

// Checks min eig(S) <= Re z <= max eig(S) with S = (M + M^T)/2.
BendixsonReport bendixson_theorem_check(const Eigen::MatrixXd& m, double slack = 1e-10);
// The same over `samples` random dim x dim Gaussian matrices.
BendixsonReport bendixson_theorem_check(int samples, int dim, std::uint64_t seed, double slack = 1e-10);

// Many-body eigenvalues sum(lambda over occupied) - L0 with admissible parity. N <= 20.
std::vector<cplx> physical_eigenvalues(const NumberResult& r);

}  // namespace gammalind
