#ifndef GEFL_TRAIN_HPP
#define GEFL_TRAIN_HPP

#include "gefl/corpus.hpp"
#include "gefl/knowledge.hpp"
#include "gefl/model.hpp"
#include "gefl/objective.hpp"
#include "gefl/optimizer.hpp"

namespace gefl {

struct TrainResult {
  ModelParameters params;
  OptimizationTrace trace;
};

// Minimizes the configured objective with L-BFGS from theta = 0 (uniform
// predictions). Throws NumericError if the optimum is non-finite.
TrainResult train_model(const Corpus& corpus, const LabeledFeatureSet& labeled,
                        const RegularizationConfig& config, double sigma = 1.0,
                        OptimizerConfig opt = {});

}  // namespace gefl

#endif  // GEFL_TRAIN_HPP
