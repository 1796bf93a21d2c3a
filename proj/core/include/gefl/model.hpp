#ifndef GEFL_MODEL_HPP
#define GEFL_MODEL_HPP

#include <string>
#include <vector>

#include "gefl/corpus.hpp"

namespace gefl {

// Conditional softmax classifier p(y|x) = exp(sum_i theta[y][i] x_i) / Z(x)
// over raw token counts x_i, no bias term. theta is row-major |C| x |V|.
struct ModelParameters {
  int n_classes = 0;
  int n_features = 0;
  double sigma = 1.0;  // L2 prior scale
  std::vector<double> theta;

  static ModelParameters zeros(int n_classes, int n_features,
                               double sigma = 1.0);

  double at(int y, int i) const {
    return theta[static_cast<std::size_t>(y) * n_features + i];
  }
  double& at(int y, int i) {
    return theta[static_cast<std::size_t>(y) * n_features + i];
  }
};

// Log-domain softmax with max-subtraction; output sums to 1.
std::vector<double> predict(const ModelParameters& params,
                            const SparseDocument& doc);

// Average of predict over the documents containing feature k, with the
// occurrence count C_k. C_k = 0 is reported through the second member; the
// distribution is empty in that case and the caller decides skip-or-fail.
struct FeatureConditional {
  std::vector<double> distribution;
  int occurrences = 0;
};

FeatureConditional feature_conditional(const ModelParameters& params,
                                       const Corpus& corpus, int k);

// Predicted class distribution p(y): average of predict over all documents.
std::vector<double> class_marginal(const ModelParameters& params,
                                   const Corpus& corpus);

// Argmax class, ties broken by lowest class id.
int classify(const ModelParameters& params, const SparseDocument& doc);

// Per-document distributions plus feature aggregates for a chosen feature
// subset; the shared evaluation state behind the objective terms.
struct PredictionCache {
  std::vector<double> per_document;      // row-major |X| x |C|
  std::vector<double> feature_averages;  // row-major |slots| x |C|
  std::vector<int> occurrence_counts;    // C_k per slot
  std::vector<double> marginal;          // p(y)
  int n_classes = 0;

  const double* document(int d) const {
    return per_document.data() + static_cast<std::size_t>(d) * n_classes;
  }
  const double* feature(int slot) const {
    return feature_averages.data() + static_cast<std::size_t>(slot) * n_classes;
  }
};

// `feature_docs[slot]` lists the documents containing that slot's feature.
PredictionCache compute_predictions(
    const ModelParameters& params, const Corpus& corpus,
    const std::vector<std::vector<int>>& feature_docs);

void save_model(const ModelParameters& params, const Corpus& corpus,
                const std::string& path,
                const std::vector<std::string>& provenance = {});

struct LoadedModel {
  ModelParameters params;
  std::vector<std::string> classes;
};

LoadedModel load_model(const std::string& path);

}  // namespace gefl

#endif  // GEFL_MODEL_HPP
