#include <cmath>
#include <vector>

#include "doctest.h"
#include "gefl/errors.hpp"
#include "gefl/optimizer.hpp"

using namespace gefl;

namespace {

// Records every oracle evaluation so tests can reconstruct accepted iterates.
struct RecordingOracle {
  ObjectiveFn fn;
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  std::vector<std::vector<double>> gradients;

  explicit RecordingOracle(ObjectiveFn inner) : inner_(std::move(inner)) {
    fn = [this](const std::vector<double>& x, std::vector<double>& g) {
      double v = inner_(x, g);
      points.push_back(x);
      values.push_back(v);
      gradients.push_back(g);
      return v;
    };
  }

 private:
  ObjectiveFn inner_;
};

double quadratic(const std::vector<double>& x, std::vector<double>& g,
                 const std::vector<double>& target) {
  double f = 0.0;
  g.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - target[i];
    f += 0.5 * r * r;
    g[i] = r;
  }
  return f;
}

double rosenbrock(const std::vector<double>& x, std::vector<double>& g) {
  const double a = x[0], b = x[1];
  g.resize(2);
  g[0] = -2.0 * (1.0 - a) - 400.0 * a * (b - a * a);
  g[1] = 200.0 * (b - a * a);
  return (1.0 - a) * (1.0 - a) + 100.0 * (b - a * a) * (b - a * a);
}

}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("quadratic converges to the target within 5 iterations") {
  std::vector<double> target = {3.0, -1.5, 0.25, 8.0};
  OptimizerConfig config;
  config.initial_point = {-2.0, 5.0, 1.0, 0.0};
  config.gradient_tolerance = 1e-9;
  auto [x, trace] = minimize(
      [&](const std::vector<double>& p, std::vector<double>& g) {
        return quadratic(p, g, target);
      },
      config);
  CHECK(trace.reason == TerminationReason::converged);
  CHECK(trace.iterations <= 5);
  CHECK(trace.final_gradient_norm < 1e-8);
  for (std::size_t i = 0; i < target.size(); ++i) {
    CHECK(x[i] == doctest::Approx(target[i]).epsilon(1e-10));
  }
}

TEST_CASE("Rosenbrock from (-1.2, 1) reaches (1, 1)") {
  OptimizerConfig config;
  config.initial_point = {-1.2, 1.0};
  config.gradient_tolerance = 1e-8;
  config.max_iterations = 500;
  auto [x, trace] = minimize(rosenbrock, config);
  CHECK(trace.reason == TerminationReason::converged);
  CHECK(std::abs(x[0] - 1.0) < 1e-6);
  CHECK(std::abs(x[1] - 1.0) < 1e-6);
}

TEST_CASE("zero-gradient start returns immediately") {
  OptimizerConfig config;
  config.initial_point = {2.0, 2.0};
  auto [x, trace] = minimize(
      [&](const std::vector<double>& p, std::vector<double>& g) {
        return quadratic(p, g, {2.0, 2.0});
      },
      config);
  CHECK(trace.iterations == 0);
  CHECK(trace.reason == TerminationReason::converged);
  CHECK(x[0] == 2.0);
}

TEST_CASE("objective history is non-increasing") {
  OptimizerConfig config;
  config.initial_point = {-1.2, 1.0};
  config.max_iterations = 200;
  auto [x, trace] = minimize(rosenbrock, config);
  REQUIRE(trace.objective_history.size() >= 2);
  for (std::size_t i = 1; i < trace.objective_history.size(); ++i) {
    CHECK(trace.objective_history[i] <= trace.objective_history[i - 1]);
  }
}

TEST_CASE("stored curvature pairs satisfy s.y > 0 (strong Wolfe)") {
  RecordingOracle oracle(rosenbrock);
  OptimizerConfig config;
  config.initial_point = {-1.2, 1.0};
  config.max_iterations = 120;
  auto [x, trace] = minimize(oracle.fn, config);

  // Reconstruct the accepted iterates: the evaluations whose value appears in
  // the objective history, in order.
  std::vector<std::size_t> accepted;
  std::size_t cursor = 0;
  for (double v : trace.objective_history) {
    for (std::size_t i = cursor; i < oracle.values.size(); ++i) {
      if (oracle.values[i] == v) {
        accepted.push_back(i);
        cursor = i + 1;
        break;
      }
    }
  }
  REQUIRE(accepted.size() == trace.objective_history.size());
  for (std::size_t k = 1; k < accepted.size(); ++k) {
    const auto& x0 = oracle.points[accepted[k - 1]];
    const auto& x1 = oracle.points[accepted[k]];
    const auto& g0 = oracle.gradients[accepted[k - 1]];
    const auto& g1 = oracle.gradients[accepted[k]];
    double sy = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      sy += (x1[i] - x0[i]) * (g1[i] - g0[i]);
    }
    CHECK(sy > 0.0);
  }
}

TEST_CASE("bit-identical reruns") {
  OptimizerConfig config;
  config.initial_point = {-1.2, 1.0};
  auto first = minimize(rosenbrock, config);
  auto second = minimize(rosenbrock, config);
  CHECK(first.first == second.first);
  CHECK(first.second.iterations == second.second.iterations);
  CHECK(first.second.objective_history == second.second.objective_history);
}

TEST_CASE("non-finite start throws, bad config rejected") {
  OptimizerConfig config;
  config.initial_point = {1.0};
  CHECK_THROWS_AS(
      minimize(
          [](const std::vector<double>& p, std::vector<double>& g) {
            g.assign(1, 0.0);
            return std::numeric_limits<double>::quiet_NaN();
          },
          config),
      NumericError);

  OptimizerConfig bad;
  bad.initial_point = {1.0};
  bad.curvature = 1e-5;  // violates c1 < c2
  CHECK_THROWS_AS(minimize(rosenbrock, bad), ConfigError);
}

TEST_CASE("max_iterations budget is honored and reported") {
  OptimizerConfig config;
  config.initial_point = {-1.2, 1.0};
  config.max_iterations = 3;
  auto [x, trace] = minimize(rosenbrock, config);
  CHECK(trace.iterations <= 3);
  CHECK(trace.reason == TerminationReason::max_iterations);
}

}  // TEST_SUITE
