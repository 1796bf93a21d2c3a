#include "gefl/lda.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <ostream>

#include "gefl/errors.hpp"
#include "gefl/io_util.hpp"
#include "gefl/rng.hpp"

namespace gefl {

std::vector<double> LdaModel::topic_word_distribution(int topic) const {
  std::vector<double> phi(n_words);
  const int* row = topic_word_counts.data() +
                   static_cast<std::size_t>(topic) * n_words;
  const double denom = topic_totals[topic] + n_words * eta;
  for (int w = 0; w < n_words; ++w) phi[w] = (row[w] + eta) / denom;
  return phi;
}

LdaModel lda_fit(const Corpus& corpus, int n_topics, int iterations,
                 double alpha, double eta, std::uint64_t seed) {
  if (corpus.documents.empty()) throw ConfigError("lda_fit: empty corpus");
  if (n_topics < 1) throw ConfigError("lda_fit: n_topics must be >= 1");
  if (iterations < 1) throw ConfigError("lda_fit: iterations must be >= 1");
  const int T = n_topics;
  const int V = corpus.n_features();
  const int D = corpus.n_documents();
  if (alpha <= 0.0) alpha = 50.0 / T;
  if (eta <= 0.0) eta = 0.01;

  // Token streams per document: feature ids expanded by count in id order.
  std::vector<std::vector<int>> tokens(D);
  for (int d = 0; d < D; ++d) {
    for (const auto& [id, count] : corpus.documents[d].entries) {
      tokens[d].insert(tokens[d].end(), count, id);
    }
  }

  LdaModel model;
  model.n_topics = T;
  model.alpha = alpha;
  model.eta = eta;
  model.n_words = V;
  model.topic_word_counts.assign(static_cast<std::size_t>(T) * V, 0);
  model.topic_totals.assign(T, 0);
  model.doc_topic_counts.assign(D, std::vector<int>(T, 0));
  model.assignments.resize(D);

  Rng rng(seed);
  for (int d = 0; d < D; ++d) {
    model.assignments[d].resize(tokens[d].size());
    for (std::size_t i = 0; i < tokens[d].size(); ++i) {
      const int t = T == 1 ? 0 : static_cast<int>(rng.below(T));
      model.assignments[d][i] = t;
      model.topic_word_counts[static_cast<std::size_t>(t) * V + tokens[d][i]]++;
      model.topic_totals[t]++;
      model.doc_topic_counts[d][t]++;
    }
  }

  std::vector<double> weights(T);
  const double v_eta = V * eta;
  for (int iter = 0; iter < iterations; ++iter) {
    for (int d = 0; d < D; ++d) {
      auto& doc_counts = model.doc_topic_counts[d];
      for (std::size_t i = 0; i < tokens[d].size(); ++i) {
        const int w = tokens[d][i];
        const int old_t = model.assignments[d][i];
        model.topic_word_counts[static_cast<std::size_t>(old_t) * V + w]--;
        model.topic_totals[old_t]--;
        doc_counts[old_t]--;

        double total = 0.0;
        for (int t = 0; t < T; ++t) {
          const double score =
              (doc_counts[t] + alpha) *
              (model.topic_word_counts[static_cast<std::size_t>(t) * V + w] +
               eta) /
              (model.topic_totals[t] + v_eta);
          weights[t] = score;
          total += score;
        }
        const int new_t = T == 1 ? 0 : rng.categorical(weights, total);

        model.assignments[d][i] = new_t;
        model.topic_word_counts[static_cast<std::size_t>(new_t) * V + w]++;
        model.topic_totals[new_t]++;
        doc_counts[new_t]++;
      }
    }
  }
  return model;
}

FeaturePool lda_feature_pool(const LdaModel& model, const Corpus& corpus,
                             int per_topic) {
  if (per_topic < 1) {
    throw ConfigError("lda_feature_pool: per_topic must be >= 1");
  }
  const int T = model.n_topics;
  const int C = corpus.n_classes();
  if (static_cast<int>(model.assignments.size()) != corpus.n_documents() ||
      model.n_words != corpus.n_features()) {
    throw ConfigError("lda_feature_pool: model was not fitted on this corpus");
  }

  // Token mass of each topic inside each class's documents.
  std::vector<std::vector<long>> mass(T, std::vector<long>(C, 0));
  for (int d = 0; d < corpus.n_documents(); ++d) {
    const int label = corpus.documents[d].label;
    for (int t : model.assignments[d]) mass[t][label]++;
  }

  FeaturePool pool;
  pool.per_class.resize(C);
  for (int t = 0; t < T; ++t) {
    int mapped = 0;
    for (int c = 1; c < C; ++c) {
      if (mass[t][c] > mass[t][mapped]) mapped = c;
    }
    auto phi = model.topic_word_distribution(t);
    std::vector<int> order(model.n_words);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (phi[a] != phi[b]) return phi[a] > phi[b];
      return a < b;
    });
    const int take = std::min(per_topic, model.n_words);
    for (int i = 0; i < take; ++i) {
      pool.per_class[mapped].push_back({order[i], phi[order[i]]});
    }
  }
  for (int c = 0; c < C; ++c) {
    auto& list = pool.per_class[c];
    std::sort(list.begin(), list.end(), [](const PoolEntry& a,
                                           const PoolEntry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.feature < b.feature;
    });
    // Merged topics can repeat a word; keep the highest-ranked copy.
    std::vector<PoolEntry> dedup;
    for (const auto& e : list) {
      bool seen = false;
      for (const auto& kept : dedup) seen = seen || kept.feature == e.feature;
      if (!seen) dedup.push_back(e);
    }
    list = std::move(dedup);
    if (list.empty()) {
      std::cerr << "warning: no topic mapped to class " << corpus.class_name(c)
                << "\n";
    }
  }
  return pool;
}

void dump_topics(const LdaModel& model, const Corpus& corpus, int top_k,
                 std::ostream& out) {
  for (int t = 0; t < model.n_topics; ++t) {
    auto phi = model.topic_word_distribution(t);
    std::vector<int> order(model.n_words);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (phi[a] != phi[b]) return phi[a] > phi[b];
      return a < b;
    });
    const int take = std::min(top_k, model.n_words);
    for (int i = 0; i < take; ++i) {
      out << t << "\t" << i << "\t" << corpus.vocabulary->terms[order[i]]
          << "\t" << format_double(phi[order[i]]) << "\n";
    }
  }
}

}  // namespace gefl
