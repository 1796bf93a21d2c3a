#ifndef GEFL_OBJECTIVE_HPP
#define GEFL_OBJECTIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gefl/corpus.hpp"
#include "gefl/knowledge.hpp"
#include "gefl/model.hpp"

namespace gefl {

// KL(p || q) = sum_i p_i ln(p_i / q_i) with 0 ln 0 = 0. Throws NumericError
// when q_i = 0 while p_i > 0.
double kl(const std::vector<double>& p, const std::vector<double>& q);

enum class Method { ge_fl, neutral, max_entropy, kl_divergence };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

// Policy for labeled features that occur in no training document.
enum class MissingFeaturePolicy { skip, fail };

struct RegularizationConfig {
  Method method = Method::ge_fl;
  double beta = 0.0;  // term weight is lambda = beta * |K|
  std::optional<std::vector<double>> reference_class_distribution;
  LabeledFeatureSet neutral_set;
  MissingFeaturePolicy missing = MissingFeaturePolicy::skip;

  void validate(int n_classes) const;
};

struct ObjectiveReport {
  double total = 0.0;
  double ge_fl_kl = 0.0;    // sum of labeled-feature KL terms
  double l2 = 0.0;          // sum theta^2 / (2 sigma^2)
  double regularizer = 0.0; // neutral / max-entropy / KL term, weighted
  std::vector<double> gradient;
  std::vector<int> skipped_features;  // labeled features with C_k = 0
};

// Assembles value and analytic gradient of the training objective for a fixed
// (corpus, labeled set, config); evaluation is a pure function of theta.
class TrainingObjective {
 public:
  TrainingObjective(const Corpus& corpus, const LabeledFeatureSet& labeled,
                    const RegularizationConfig& config, double sigma);

  int n_classes() const { return n_classes_; }
  int n_features() const { return n_features_; }
  int dimension() const { return n_classes_ * n_features_; }
  double lambda() const { return lambda_; }
  const std::vector<int>& skipped_features() const { return skipped_; }

  // Optimizer surface: value plus gradient written into `gradient`
  // (resized to dimension()).
  double evaluate(const std::vector<double>& theta,
                  std::vector<double>& gradient) const;

  ObjectiveReport report(const std::vector<double>& theta) const;

 private:
  ObjectiveReport evaluate_detailed(const std::vector<double>& theta,
                                    bool want_gradient) const;

  const Corpus& corpus_;
  RegularizationConfig config_;
  LabeledFeatureSet labeled_;
  double sigma_;
  double lambda_ = 0.0;
  int n_classes_;
  int n_features_;

  // Constrained features: labeled entries first, then neutral entries.
  std::vector<LabeledFeature> slots_;
  int n_labeled_slots_ = 0;
  std::vector<std::vector<int>> slot_docs_;
  std::vector<int> skipped_;
};

// Value and gradient of the plain labeled-feature objective
//   sum_k KL(ref_k || model feature conditional) + sum theta^2/(2 sigma^2).
ObjectiveReport ge_fl_objective(const ModelParameters& params,
                                const Corpus& corpus,
                                const LabeledFeatureSet& labeled);

// The objective extended per `config`: neutral adds unweighted uniform-KL
// terms over the neutral set; max_entropy adds lambda * sum_y p(y) ln p(y);
// kl_divergence adds lambda * KL(reference || p(y)).
ObjectiveReport regularized_objective(const ModelParameters& params,
                                      const Corpus& corpus,
                                      const LabeledFeatureSet& labeled,
                                      const RegularizationConfig& config);

}  // namespace gefl

#endif  // GEFL_OBJECTIVE_HPP
