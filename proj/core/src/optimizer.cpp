#include "gefl/optimizer.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "gefl/errors.hpp"

namespace gefl {

void OptimizerConfig::validate() const {
  if (memory < 1) throw ConfigError("optimizer memory must be >= 1");
  if (max_iterations < 0) throw ConfigError("max_iterations must be >= 0");
  if (gradient_tolerance <= 0.0) {
    throw ConfigError("gradient tolerance must be > 0");
  }
  if (!(0.0 < sufficient_decrease && sufficient_decrease < curvature &&
        curvature < 1.0)) {
    throw ConfigError("line search requires 0 < c1 < c2 < 1");
  }
  if (initial_point.empty()) throw ConfigError("initial point is empty");
}

std::string termination_name(TerminationReason r) {
  switch (r) {
    case TerminationReason::converged: return "converged";
    case TerminationReason::max_iterations: return "max_iterations";
    case TerminationReason::line_search_failure: return "line_search_failure";
  }
  return "?";
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Pair {
  std::vector<double> s, y;
  double rho;  // 1 / (s.y)
};

struct LineSearchResult {
  bool ok = false;
  double alpha = 0.0;
  double value = 0.0;
  std::vector<double> gradient;
};

// Strong Wolfe line search (bracket then zoom). phi(a) = f(x + a d).
class LineSearch {
 public:
  LineSearch(const ObjectiveFn& f, const std::vector<double>& x,
             const std::vector<double>& d, double f0, double dphi0, double c1,
             double c2)
      : f_(f), x_(x), d_(d), f0_(f0), dphi0_(dphi0), c1_(c1), c2_(c2),
        trial_(x.size()), gradient_(x.size()) {}

  LineSearchResult run() {
    double alpha_prev = 0.0, phi_prev = f0_, dphi_prev = dphi0_;
    double alpha = 1.0;
    for (int i = 0; i < kMaxBracket; ++i) {
      auto [phi, dphi] = eval(alpha);
      if (!std::isfinite(phi) || phi > f0_ + c1_ * alpha * dphi0_ ||
          (i > 0 && phi >= phi_prev)) {
        return zoom(alpha_prev, phi_prev, dphi_prev, alpha, phi);
      }
      if (std::abs(dphi) <= -c2_ * dphi0_) return accept(alpha, phi);
      if (dphi >= 0.0) return zoom(alpha, phi, dphi, alpha_prev, phi_prev);
      alpha_prev = alpha;
      phi_prev = phi;
      dphi_prev = dphi;
      alpha *= 2.0;
    }
    return {};
  }

 private:
  static constexpr int kMaxBracket = 60;
  static constexpr int kMaxZoom = 64;

  std::pair<double, double> eval(double alpha) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      trial_[i] = x_[i] + alpha * d_[i];
    }
    double phi = f_(trial_, gradient_);
    double dphi = dot(gradient_, d_);
    return {phi, dphi};
  }

  LineSearchResult accept(double alpha, double phi) {
    LineSearchResult r;
    r.ok = true;
    r.alpha = alpha;
    r.value = phi;
    r.gradient = gradient_;
    return r;
  }

  // lo satisfies sufficient decrease with the lowest phi seen; hi brackets it.
  LineSearchResult zoom(double lo, double phi_lo, double dphi_lo, double hi,
                        double phi_hi) {
    for (int j = 0; j < kMaxZoom; ++j) {
      const double width = hi - lo;
      if (std::abs(width) <= 1e-16 * std::max(1.0, std::abs(lo))) break;

      // Quadratic interpolation with bisection safeguard.
      double alpha;
      const double denom = 2.0 * (phi_hi - phi_lo - dphi_lo * width);
      if (std::isfinite(phi_hi) && std::abs(denom) > 1e-300) {
        alpha = lo - dphi_lo * width * width / denom;
      } else {
        alpha = lo + 0.5 * width;
      }
      const double lower = std::min(lo, hi) + 0.1 * std::abs(width);
      const double upper = std::max(lo, hi) - 0.1 * std::abs(width);
      if (!(alpha >= lower && alpha <= upper)) alpha = lo + 0.5 * width;

      auto [phi, dphi] = eval(alpha);
      if (!std::isfinite(phi) || phi > f0_ + c1_ * alpha * dphi0_ ||
          phi >= phi_lo) {
        hi = alpha;
        phi_hi = phi;
      } else {
        if (std::abs(dphi) <= -c2_ * dphi0_) return accept(alpha, phi);
        if (dphi * (hi - lo) >= 0.0) {
          hi = lo;
          phi_hi = phi_lo;
        }
        lo = alpha;
        phi_lo = phi;
        dphi_lo = dphi;
      }
    }
    return {};
  }

  const ObjectiveFn& f_;
  const std::vector<double>& x_;
  const std::vector<double>& d_;
  double f0_, dphi0_, c1_, c2_;
  std::vector<double> trial_;
  std::vector<double> gradient_;
};

}  // namespace

std::pair<std::vector<double>, OptimizationTrace> minimize(
    const ObjectiveFn& f, const OptimizerConfig& config) {
  config.validate();
  const std::size_t n = config.initial_point.size();

  std::vector<double> x = config.initial_point;
  std::vector<double> g(n);
  double fx = f(x, g);
  if (!std::isfinite(fx)) {
    throw NumericError("objective is non-finite at the initial point");
  }
  for (double v : g) {
    if (!std::isfinite(v)) {
      throw NumericError("gradient is non-finite at the initial point");
    }
  }

  OptimizationTrace trace;
  trace.objective_history.push_back(fx);
  trace.final_objective = fx;
  trace.final_gradient_norm = sup_norm(g);
  if (trace.final_gradient_norm <= config.gradient_tolerance) {
    return {std::move(x), std::move(trace)};
  }

  std::deque<Pair> pairs;
  std::vector<double> d(n), alpha_buf;
  trace.reason = TerminationReason::max_iterations;

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    // Two-loop recursion: d = -H g.
    d.assign(g.begin(), g.end());
    alpha_buf.assign(pairs.size(), 0.0);
    for (std::size_t i = pairs.size(); i-- > 0;) {
      const Pair& p = pairs[i];
      alpha_buf[i] = p.rho * dot(p.s, d);
      for (std::size_t k = 0; k < n; ++k) d[k] -= alpha_buf[i] * p.y[k];
    }
    if (!pairs.empty()) {
      const Pair& last = pairs.back();
      const double gamma = 1.0 / (last.rho * dot(last.y, last.y));
      for (double& v : d) v *= gamma;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Pair& p = pairs[i];
      const double beta = p.rho * dot(p.y, d);
      for (std::size_t k = 0; k < n; ++k) {
        d[k] += (alpha_buf[i] - beta) * p.s[k];
      }
    }
    for (double& v : d) v = -v;

    double dg = dot(d, g);
    if (!(dg < 0.0)) {
      // Stale curvature produced a non-descent direction; restart from -g.
      pairs.clear();
      for (std::size_t k = 0; k < n; ++k) d[k] = -g[k];
      dg = -dot(g, g);
    }

    LineSearch search(f, x, d, fx, dg, config.sufficient_decrease,
                      config.curvature);
    LineSearchResult ls = search.run();
    if (!ls.ok) {
      trace.reason = TerminationReason::line_search_failure;
      break;
    }

    Pair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      pair.s[k] = ls.alpha * d[k];
      x[k] += pair.s[k];
      pair.y[k] = ls.gradient[k] - g[k];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 0.0) {  // guaranteed by the Wolfe curvature condition
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > config.memory) pairs.pop_front();
    }

    fx = ls.value;
    g = std::move(ls.gradient);
    trace.iterations = iter + 1;
    trace.objective_history.push_back(fx);
    trace.final_objective = fx;
    trace.final_gradient_norm = sup_norm(g);
    if (trace.final_gradient_norm <= config.gradient_tolerance) {
      trace.reason = TerminationReason::converged;
      break;
    }
  }

  trace.final_objective = fx;
  trace.final_gradient_norm = sup_norm(g);
  return {std::move(x), std::move(trace)};
}

}  // namespace gefl
