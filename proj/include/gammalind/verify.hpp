#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gammalind/gauge.hpp"
#include "gammalind/graph.hpp"
#include "gammalind/linalg.hpp"
#include "gammalind/parity_solver.hpp"

namespace gammalind {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

enum class VerifyLevel { Fast, Full };
VerifyLevel parse_verify_level(const std::string& s);

// Criterion ids run at each level: fast is the oracle, sum-rule and Pfaffian
// subset; full is everything.
std::vector<int> criteria_for(VerifyLevel level);
int criterion_count();
std::string criterion_name(int id);

// Runs one criterion. Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);

using CriterionCallback = std::function<void(const CriterionResult&)>;
std::vector<CriterionResult> run_verification(VerifyLevel level, const CriterionCallback& on_result = {});
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const CriterionCallback& on_result = {});

// Free-fermion prediction for the oracle block labeled by `gauge`: the
// physical many-body eigenvalues, repeated 2^(odd - 1) times over all
// occupation patterns when some site has odd valence (the inert generators
// then double the Hilbert space without entering the Liouvillian).
// `solved` receives the underlying parity solution when given.
std::vector<cplx> predicted_sector_spectrum(const ColoredGraph& g, const GaugeConfig& gauge,
                                            const Eigen::VectorXd& gamma, ParityResult* solved = nullptr);

// Random simple graph on n sites with a proper coloring, couplings in
// [0.5, 1.5] and no embedding.
ColoredGraph random_colored_graph(int n, double edge_probability, std::uint64_t seed);

}  // namespace gammalind
