#include "gefl/objective.hpp"

#include <cfloat>
#include <cmath>
#include <iostream>

#include "gefl/errors.hpp"

namespace gefl {

double kl(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw ConfigError("kl: distribution lengths differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      throw NumericError("kl: absolute-continuity violation (q=0, p>0)");
    }
    total += p[i] * std::log(p[i] / q[i]);
  }
  return total;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::ge_fl: return "ge_fl";
    case Method::neutral: return "neutral";
    case Method::max_entropy: return "max_entropy";
    case Method::kl_divergence: return "kl_divergence";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "ge_fl" || name == "ge-fl" || name == "gefl" || name == "none") {
    return Method::ge_fl;
  }
  if (name == "neutral" || name == "ne") return Method::neutral;
  if (name == "max_entropy" || name == "max-ent" || name == "max-entropy" ||
      name == "me") {
    return Method::max_entropy;
  }
  if (name == "kl_divergence" || name == "kl-divergence" || name == "kl") {
    return Method::kl_divergence;
  }
  return std::nullopt;
}

void RegularizationConfig::validate(int n_classes) const {
  if (beta < 0.0 || !std::isfinite(beta)) {
    throw ConfigError("beta must be finite and >= 0");
  }
  if (method == Method::kl_divergence) {
    if (!reference_class_distribution) {
      throw ConfigError("kl_divergence requires a reference class distribution");
    }
    if (static_cast<int>(reference_class_distribution->size()) != n_classes ||
        !is_distribution(*reference_class_distribution)) {
      throw ConfigError("reference class distribution must have one entry per "
                        "class and sum to 1");
    }
  }
  if (method == Method::neutral) {
    if (neutral_set.empty()) {
      throw ConfigError("neutral method requires a non-empty neutral set");
    }
    for (const auto& f : neutral_set.entries) {
      for (double v : f.ref.probs) {
        if (std::abs(v - 1.0 / n_classes) > 1e-9) {
          throw ConfigError("neutral features must carry the uniform "
                            "reference distribution");
        }
      }
    }
  }
}

namespace {

// q below DBL_MIN (softmax underflow at extreme line-search trials) is floored
// so the penalty stays huge but finite and the line search can back off.
inline double floored(double q) { return std::max(q, DBL_MIN); }

}  // namespace

TrainingObjective::TrainingObjective(const Corpus& corpus,
                                     const LabeledFeatureSet& labeled,
                                     const RegularizationConfig& config,
                                     double sigma)
    : corpus_(corpus),
      config_(config),
      labeled_(labeled),
      sigma_(sigma),
      n_classes_(corpus.n_classes()),
      n_features_(corpus.n_features()) {
  if (sigma_ <= 0.0) throw ConfigError("sigma must be > 0");
  if (labeled_.empty()) {
    throw ConfigError("training requires a non-empty labeled feature set");
  }
  config_.validate(n_classes_);
  for (const auto& f : labeled_.entries) {
    if (static_cast<int>(f.ref.probs.size()) != n_classes_ ||
        !is_distribution(f.ref.probs)) {
      throw ConfigError("labeled feature reference must be a distribution "
                        "over the classes");
    }
  }

  // lambda = beta * |K| counts labeled (non-neutral) features only.
  lambda_ = config_.beta * labeled_.size();

  slots_ = labeled_.entries;
  n_labeled_slots_ = static_cast<int>(slots_.size());
  if (config_.method == Method::neutral) {
    slots_.insert(slots_.end(), config_.neutral_set.entries.begin(),
                  config_.neutral_set.entries.end());
  }

  // Inverted doc lists per constrained feature.
  std::vector<int> slot_of(n_features_, -1);
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const int feature = slots_[s].feature;
    if (feature < 0 || feature >= n_features_) {
      throw ConfigError("labeled feature id out of range");
    }
    if (slot_of[feature] != -1) {
      throw ConfigError("feature constrained twice: " +
                        corpus.vocabulary->terms[feature]);
    }
    slot_of[feature] = static_cast<int>(s);
  }
  slot_docs_.resize(slots_.size());
  for (int d = 0; d < corpus.n_documents(); ++d) {
    for (const auto& [id, count] : corpus.documents[d].entries) {
      if (slot_of[id] >= 0) slot_docs_[slot_of[id]].push_back(d);
    }
  }
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (slot_docs_[s].empty()) {
      if (config_.missing == MissingFeaturePolicy::fail) {
        throw ConfigError("labeled feature absent from corpus: " +
                          corpus.vocabulary->terms[slots_[s].feature]);
      }
      skipped_.push_back(slots_[s].feature);
      std::cerr << "warning: feature '"
                << corpus.vocabulary->terms[slots_[s].feature]
                << "' occurs in no document, constraint skipped\n";
    }
  }
}

double TrainingObjective::evaluate(const std::vector<double>& theta,
                                   std::vector<double>& gradient) const {
  auto rep = evaluate_detailed(theta, true);
  gradient = std::move(rep.gradient);
  return rep.total;
}

ObjectiveReport TrainingObjective::report(
    const std::vector<double>& theta) const {
  return evaluate_detailed(theta, true);
}

ObjectiveReport TrainingObjective::evaluate_detailed(
    const std::vector<double>& theta, bool want_gradient) const {
  const int C = n_classes_;
  const int N = corpus_.n_documents();
  if (static_cast<int>(theta.size()) != dimension()) {
    throw ConfigError("theta has wrong dimension");
  }

  ModelParameters params;
  params.n_classes = C;
  params.n_features = n_features_;
  params.sigma = sigma_;
  params.theta = theta;

  const PredictionCache cache = compute_predictions(params, corpus_, slot_docs_);

  ObjectiveReport rep;
  rep.skipped_features = skipped_;

  // KL terms over feature conditionals. For a term F(q) with
  // q(y) = (1/C_k) sum_{x in S} p(y|x) the chain rule through the softmax gives
  //   dF/dtheta[y'][j] = (1/C_k) sum_{x in S} x_j p(y'|x) (c(y') - sum_y c(y) p(y|x))
  // with c(y) = dF/dq(y); for KL(ref || q), c(y) = -ref(y)/q(y).
  std::vector<double> slot_coef(slots_.size() * C, 0.0);
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const int ck = cache.occurrence_counts[s];
    if (ck == 0) continue;
    const double* q = cache.feature(s);
    const auto& ref = slots_[s].ref.probs;
    double term = 0.0;
    double* coef = slot_coef.data() + s * C;
    for (int y = 0; y < C; ++y) {
      if (ref[y] > 0.0) {
        term += ref[y] * std::log(ref[y] / floored(q[y]));
        coef[y] = -ref[y] / floored(q[y]) / ck;
      }
    }
    if (static_cast<int>(s) < n_labeled_slots_) {
      rep.ge_fl_kl += term;
    } else {
      rep.regularizer += term;  // neutral term carries no lambda
    }
  }

  double sq = 0.0;
  for (double v : theta) sq += v * v;
  rep.l2 = sq / (2.0 * sigma_ * sigma_);

  // Marginal-based term at unit weight; lambda is applied as one final scale
  // so that doubling beta doubles the contribution exactly.
  const bool marginal_term = lambda_ > 0.0 &&
                             (config_.method == Method::max_entropy ||
                              config_.method == Method::kl_divergence);
  double unit_value = 0.0;
  std::vector<double> marginal_coef;
  if (marginal_term) {
    marginal_coef.assign(C, 0.0);
    if (config_.method == Method::max_entropy) {
      for (int y = 0; y < C; ++y) {
        const double py = floored(cache.marginal[y]);
        unit_value += cache.marginal[y] * std::log(py);
        marginal_coef[y] = (std::log(py) + 1.0) / N;
      }
    } else {
      const auto& ref = *config_.reference_class_distribution;
      for (int y = 0; y < C; ++y) {
        if (ref[y] > 0.0) {
          unit_value += ref[y] * std::log(ref[y] / floored(cache.marginal[y]));
          marginal_coef[y] = -ref[y] / floored(cache.marginal[y]) / N;
        }
      }
    }
    rep.regularizer += lambda_ * unit_value;
  }

  rep.total = rep.ge_fl_kl + rep.l2 + rep.regularizer;
  if (!want_gradient) return rep;

  std::vector<double> base_grad(dimension(), 0.0);
  std::vector<double> unit_grad;
  if (marginal_term) unit_grad.assign(dimension(), 0.0);

  // Sum the per-slot coefficients into per-document coefficient rows, then
  // scatter once per document.
  std::vector<double> doc_coef(static_cast<std::size_t>(N) * C, 0.0);
  std::vector<char> touched(N, 0);
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const double* coef = slot_coef.data() + s * C;
    for (int doc : slot_docs_[s]) {
      touched[doc] = 1;
      double* row = doc_coef.data() + static_cast<std::size_t>(doc) * C;
      for (int y = 0; y < C; ++y) row[y] += coef[y];
    }
  }

  for (int x = 0; x < N; ++x) {
    const double* p = cache.document(x);
    const auto& entries = corpus_.documents[x].entries;

    if (touched[x]) {
      const double* dx = doc_coef.data() + static_cast<std::size_t>(x) * C;
      double dot = 0.0;
      for (int y = 0; y < C; ++y) dot += dx[y] * p[y];
      for (int y = 0; y < C; ++y) {
        const double gy = p[y] * (dx[y] - dot);
        if (gy == 0.0) continue;
        double* row = base_grad.data() + static_cast<std::size_t>(y) * n_features_;
        for (const auto& [id, count] : entries) row[id] += gy * count;
      }
    }
    if (marginal_term) {
      double dot = 0.0;
      for (int y = 0; y < C; ++y) dot += marginal_coef[y] * p[y];
      for (int y = 0; y < C; ++y) {
        const double gy = p[y] * (marginal_coef[y] - dot);
        if (gy == 0.0) continue;
        double* row = unit_grad.data() + static_cast<std::size_t>(y) * n_features_;
        for (const auto& [id, count] : entries) row[id] += gy * count;
      }
    }
  }

  rep.gradient.resize(dimension());
  const double inv_sq_sigma = 1.0 / (sigma_ * sigma_);
  for (int i = 0; i < dimension(); ++i) {
    double g = base_grad[i] + theta[i] * inv_sq_sigma;
    if (marginal_term) g += lambda_ * unit_grad[i];
    rep.gradient[i] = g;
  }
  return rep;
}

ObjectiveReport ge_fl_objective(const ModelParameters& params,
                                const Corpus& corpus,
                                const LabeledFeatureSet& labeled) {
  RegularizationConfig config;
  config.method = Method::ge_fl;
  return regularized_objective(params, corpus, labeled, config);
}

ObjectiveReport regularized_objective(const ModelParameters& params,
                                      const Corpus& corpus,
                                      const LabeledFeatureSet& labeled,
                                      const RegularizationConfig& config) {
  TrainingObjective objective(corpus, labeled, config, params.sigma);
  return objective.report(params.theta);
}

}  // namespace gefl
