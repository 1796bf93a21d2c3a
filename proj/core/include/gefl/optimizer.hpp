#ifndef GEFL_OPTIMIZER_HPP
#define GEFL_OPTIMIZER_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gefl {

struct OptimizerConfig {
  int memory = 10;                    // stored curvature pairs
  int max_iterations = 300;
  double gradient_tolerance = 1e-5;   // sup-norm stopping test
  double sufficient_decrease = 1e-4;  // Wolfe c1
  double curvature = 0.9;             // Wolfe c2, c1 < c2 < 1
  std::vector<double> initial_point;

  void validate() const;
};

enum class TerminationReason { converged, max_iterations, line_search_failure };

std::string termination_name(TerminationReason r);

struct OptimizationTrace {
  int iterations = 0;
  double final_objective = 0.0;
  double final_gradient_norm = 0.0;
  TerminationReason reason = TerminationReason::converged;
  std::vector<double> objective_history;  // accepted iterates, non-increasing
};

// (value, gradient-out) oracle; gradient is resized by the callee if needed.
using ObjectiveFn =
    std::function<double(const std::vector<double>&, std::vector<double>&)>;

// Two-loop-recursion L-BFGS with a strong-Wolfe line search. Deterministic;
// stops on gradient sup-norm, iteration budget, or line-search failure (the
// best iterate so far is returned in every case).
std::pair<std::vector<double>, OptimizationTrace> minimize(
    const ObjectiveFn& f, const OptimizerConfig& config);

}  // namespace gefl

#endif  // GEFL_OPTIMIZER_HPP
