#ifndef GEFL_KNOWLEDGE_HPP
#define GEFL_KNOWLEDGE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gefl/corpus.hpp"

namespace gefl {

// A class distribution attached to a feature; sums to 1 within 1e-9.
struct ReferenceDistribution {
  std::vector<double> probs;
};

ReferenceDistribution uniform_distribution(int n_classes);
bool is_distribution(const std::vector<double>& p, double tol = 1e-9);

enum class FeatureRole { labeled, neutral };

struct LabeledFeature {
  int feature = -1;
  ReferenceDistribution ref;
};

// K (role labeled) or K' (role neutral, all-uniform references).
struct LabeledFeatureSet {
  std::vector<LabeledFeature> entries;
  FeatureRole role = FeatureRole::labeled;

  int size() const { return static_cast<int>(entries.size()); }
  bool empty() const { return entries.empty(); }
};

struct PoolEntry {
  int feature = -1;
  double score = 0.0;
};

// Per-class ranked candidate labeled features, scores non-increasing.
struct FeaturePool {
  std::vector<std::vector<PoolEntry>> per_class;
};

// Associated classes get 0.9/n each, the rest share the remaining 0.1.
// Degenerates to uniform when every class is associated.
ReferenceDistribution reference_heuristic(const std::vector<int>& assoc_classes,
                                          int n_classes);

// Mutual information (natural log) between binary feature occurrence and the
// document label; each feature is assigned to argmax_c p(c | occurs) and the
// top `per_class` per class form the pool. A class with no candidates leaves
// its list short and a warning on stderr.
FeaturePool info_gain_pool(const Corpus& corpus, int per_class);

// The `count` features of highest document frequency, each with the uniform
// reference distribution. Features in `exclude` (typically the labeled set,
// which is by definition not neutral) are passed over.
LabeledFeatureSet neutral_features(const Corpus& corpus, int count,
                                   const std::vector<int>& exclude = {});

// Uniform draw without replacement of per_class_counts[c] features from each
// class pool; every drawn feature gets the single-class heuristic reference.
LabeledFeatureSet draw_labeled(const FeaturePool& pool,
                               const std::vector<int>& per_class_counts,
                               std::uint64_t seed, int n_classes);

// Knowledge file: one entry per line,
//   feature-token<TAB>class-name[,class-name...]<TAB>p1,p2,...
// with the distribution column optional (the heuristic fills it). Lines whose
// class column is '*' are neutral features.
void save_features(const LabeledFeatureSet& labeled,
                   const LabeledFeatureSet& neutral, const Corpus& corpus,
                   const std::string& path,
                   const std::vector<std::string>& provenance = {},
                   const FeaturePool* pool = nullptr);

struct LoadedFeatures {
  LabeledFeatureSet labeled;
  LabeledFeatureSet neutral;
};

LoadedFeatures load_features(const std::string& path, const Corpus& corpus);

}  // namespace gefl

#endif  // GEFL_KNOWLEDGE_HPP
