#ifndef GEFL_LDA_HPP
#define GEFL_LDA_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gefl/corpus.hpp"
#include "gefl/knowledge.hpp"

namespace gefl {

// Collapsed-Gibbs LDA state. Counts stay consistent with the per-token topic
// assignments after every sweep.
struct LdaModel {
  int n_topics = 0;
  double alpha = 0.0;  // symmetric document-topic prior
  double eta = 0.0;    // symmetric topic-word prior
  int n_words = 0;
  std::vector<int> topic_word_counts;          // row-major T x |V|
  std::vector<int> topic_totals;               // tokens per topic
  std::vector<std::vector<int>> doc_topic_counts;
  std::vector<std::vector<int>> assignments;   // per document, per token

  // phi[t][w] = (count + eta) / (topic total + |V| eta); rows sum to 1.
  std::vector<double> topic_word_distribution(int topic) const;
};

// alpha <= 0 defaults to 50/T, eta <= 0 defaults to 0.01.
LdaModel lda_fit(const Corpus& corpus, int n_topics, int iterations,
                 double alpha, double eta, std::uint64_t seed);

// Top `per_topic` words of each topic by phi; each topic is mapped to the
// class whose documents hold the largest share of the topic's tokens (a
// simulation of a human labeling topics with classes). Topics mapping to the
// same class merge, ranked by phi; classes with no topic are reported on
// stderr.
FeaturePool lda_feature_pool(const LdaModel& model, const Corpus& corpus,
                             int per_topic);

// TSV inspection dump: topic<TAB>rank<TAB>word<TAB>phi.
void dump_topics(const LdaModel& model, const Corpus& corpus, int top_k,
                 std::ostream& out);

}  // namespace gefl

#endif  // GEFL_LDA_HPP
