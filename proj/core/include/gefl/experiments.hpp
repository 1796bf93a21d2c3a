#ifndef GEFL_EXPERIMENTS_HPP
#define GEFL_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gefl/corpus.hpp"
#include "gefl/knowledge.hpp"
#include "gefl/model.hpp"
#include "gefl/objective.hpp"
#include "gefl/optimizer.hpp"

namespace gefl {

// Class-conditional unigram generator: each token comes from the class's own
// indicator block with probability 1 - noise and from a shared uniform over
// the whole vocabulary otherwise, so indicators are boosted for their class
// and leak into the others at the background rate. noise = 0 with disjoint
// indicators is separable by construction.
struct SynthSpec {
  int docs_per_class = 1000;
  int vocab_size = 600;
  int indicators_per_class = 20;
  int doc_length = 30;
  int n_classes = 2;
  double noise = 0.3;
};

Corpus synthesize_corpus(const SynthSpec& spec, std::uint64_t seed);

// Fraction of test documents whose classify() output matches the held-out
// label.
double accuracy(const ModelParameters& params, const Corpus& test);

enum class FeatureSource { info_gain, lda, file };

std::string feature_source_name(FeatureSource s);
std::optional<FeatureSource> parse_feature_source(const std::string& name);

// One protocol run: a corpus, a settings axis (labeled-feature counts, a
// t-sweep, a beta sweep, or unbalance fractions), methods to compare, and the
// cross-validation plan. Every random stage is seeded from `seed` so reruns
// are bit-identical.
struct ExperimentSpec {
  std::string name = "experiment";

  std::string corpus_path;          // empty when synthetic
  std::optional<SynthSpec> synth;

  // settings axes; at most one of sweep_t / betas / unbalance_fractions(>1)
  std::vector<int> counts = {10, 10};       // per-class labeled-feature counts
  std::optional<std::pair<int, int>> sweep_t;
  bool sweep_balanced = false;              // (t,t,...) instead of (t,1,...)
  std::vector<double> betas;
  int unbalance_class = -1;
  std::vector<double> unbalance_fractions;  // one value = fixed unbalance

  std::vector<Method> methods = {Method::ge_fl};
  FeatureSource feature_source = FeatureSource::info_gain;
  std::string feature_file;
  int pool_per_class = 20;
  int lda_topics = 0;       // 0 -> |C|
  int lda_iterations = 500;
  double lda_alpha = 0.0;   // 0 -> 50/T
  double lda_eta = 0.01;

  double beta = 5.0;
  double sigma = 1.0;
  int neutral_count = 10;
  std::optional<std::vector<double>> reference_override;  // p_hat(y) for kl

  int folds = 10;
  int repetitions = 10;
  std::uint64_t seed = 42;
  OptimizerConfig optimizer;

  void validate() const;
};

// Keyed by (setting, method, repetition seed); mean/std over the folds.
struct ResultRow {
  std::string setting;
  Method method = Method::ge_fl;
  std::uint64_t seed = 0;
  std::vector<double> fold_accuracies;
  double mean = 0.0;
  double stddev = 0.0;
  int training_failures = 0;  // folds whose line search gave up early
};

struct ResultTable {
  std::string experiment;
  std::vector<ResultRow> rows;
};

ResultTable run_experiment(const ExperimentSpec& spec);

// experiment,setting,method,fold,seed,accuracy — one line per fold.
void write_detail_csv(const ResultTable& table, std::ostream& out,
                      const std::vector<std::string>& provenance = {});

// experiment,setting,method,mean,std,n — aggregated over folds x repetitions.
void write_summary_csv(const ResultTable& table, std::ostream& out,
                       const std::vector<std::string>& provenance = {});

// Sweep table shaped for plotting: the axis value in the first column, one
// mean-accuracy column per method. Returns false when the table has no axis.
bool write_sweep_csv(const ResultTable& table, std::ostream& out,
                     const std::vector<std::string>& provenance = {});

std::string gnuplot_script(const std::string& sweep_csv_path,
                           const std::vector<Method>& methods,
                           const std::string& axis_label);

}  // namespace gefl

#endif  // GEFL_EXPERIMENTS_HPP
