#include "gefl/train.hpp"

#include <cmath>

#include "gefl/errors.hpp"

namespace gefl {

TrainResult train_model(const Corpus& corpus, const LabeledFeatureSet& labeled,
                        const RegularizationConfig& config, double sigma,
                        OptimizerConfig opt) {
  TrainingObjective objective(corpus, labeled, config, sigma);
  opt.initial_point.assign(objective.dimension(), 0.0);

  auto oracle = [&](const std::vector<double>& theta,
                    std::vector<double>& grad) {
    return objective.evaluate(theta, grad);
  };
  auto [point, trace] = minimize(oracle, opt);

  if (!std::isfinite(trace.final_objective)) {
    throw NumericError("training produced a non-finite objective");
  }
  for (double v : point) {
    if (!std::isfinite(v)) {
      throw NumericError("training produced non-finite parameters");
    }
  }

  TrainResult result;
  result.params.n_classes = corpus.n_classes();
  result.params.n_features = corpus.n_features();
  result.params.sigma = sigma;
  result.params.theta = std::move(point);
  result.trace = std::move(trace);
  return result;
}

}  // namespace gefl
