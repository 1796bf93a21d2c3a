#ifndef GEFL_TEST_HELPERS_HPP
#define GEFL_TEST_HELPERS_HPP

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gefl/corpus.hpp"
#include "gefl/knowledge.hpp"
#include "gefl/objective.hpp"
#include "gefl/rng.hpp"

namespace gefl_test {

// Builds a corpus directly from (label, token-count map) pairs with an
// explicit vocabulary, bypassing ingestion.
inline gefl::Corpus make_corpus(
    const std::vector<std::string>& vocab,
    const std::vector<std::string>& classes,
    const std::vector<std::pair<int, std::map<int, int>>>& docs) {
  auto v = std::make_shared<gefl::Vocabulary>();
  for (const auto& term : vocab) v->add(term);
  gefl::Corpus corpus;
  corpus.vocabulary = v;
  corpus.classes = std::make_shared<std::vector<std::string>>(classes);
  int serial = 0;
  for (const auto& [label, counts] : docs) {
    gefl::SparseDocument doc;
    doc.entries.assign(counts.begin(), counts.end());
    doc.label = label;
    doc.source = "t" + std::to_string(serial++);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

// Random small instance for gradient checks: <= max_docs documents over
// <= max_features features with 2..4 classes.
struct RandomInstance {
  gefl::Corpus corpus;
  gefl::LabeledFeatureSet labeled;
  gefl::LabeledFeatureSet neutral;
  std::vector<double> theta;
};

inline std::vector<double> random_distribution(gefl::Rng& rng, int n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p) {
    v = 0.05 + rng.uniform();
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

inline RandomInstance random_instance(std::uint64_t seed, int max_docs = 5,
                                      int max_features = 10) {
  gefl::Rng rng(seed);
  const int C = rng.uniform_int(2, 4);
  const int V = rng.uniform_int(4, max_features);
  const int N = rng.uniform_int(2, max_docs);

  std::vector<std::string> vocab;
  for (int i = 0; i < V; ++i) vocab.push_back("w" + std::to_string(i));
  std::vector<std::string> classes;
  for (int c = 0; c < C; ++c) classes.push_back("k" + std::to_string(c));

  std::vector<std::pair<int, std::map<int, int>>> docs;
  for (int d = 0; d < N; ++d) {
    std::map<int, int> counts;
    const int len = rng.uniform_int(1, 6);
    for (int t = 0; t < len; ++t) {
      counts[rng.uniform_int(0, V - 1)]++;
    }
    docs.emplace_back(rng.uniform_int(0, C - 1), counts);
  }
  RandomInstance inst;
  inst.corpus = make_corpus(vocab, classes, docs);

  // Labeled features drawn from ones that occur, when possible.
  auto df = gefl::document_frequencies(inst.corpus);
  const int n_labeled = rng.uniform_int(1, 3);
  inst.labeled.role = gefl::FeatureRole::labeled;
  for (int i = 0; i < n_labeled; ++i) {
    int feature = rng.uniform_int(0, V - 1);
    for (int probe = 0; probe < V && df[feature] == 0; ++probe) {
      feature = (feature + 1) % V;
    }
    bool duplicate = false;
    for (const auto& f : inst.labeled.entries) {
      duplicate = duplicate || f.feature == feature;
    }
    if (duplicate) continue;
    gefl::LabeledFeature lf;
    lf.feature = feature;
    lf.ref.probs = random_distribution(rng, C);
    inst.labeled.entries.push_back(std::move(lf));
  }

  inst.neutral.role = gefl::FeatureRole::neutral;
  const auto uniform = gefl::uniform_distribution(C);
  for (int i = 0; i < V && inst.neutral.size() < 2; ++i) {
    if (df[i] == 0) continue;
    bool taken = false;
    for (const auto& f : inst.labeled.entries) taken = taken || f.feature == i;
    if (!taken) inst.neutral.entries.push_back({i, uniform});
  }

  inst.theta.resize(static_cast<std::size_t>(C) * V);
  for (double& v : inst.theta) v = 2.0 * rng.uniform() - 1.0;
  return inst;
}

// Central finite differences of a value-only oracle.
template <typename F>
std::vector<double> finite_difference_gradient(const F& value_at,
                                               std::vector<double> theta,
                                               double h = 1e-5) {
  std::vector<double> grad(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double saved = theta[j];
    theta[j] = saved + h;
    const double up = value_at(theta);
    theta[j] = saved - h;
    const double down = value_at(theta);
    theta[j] = saved;
    grad[j] = (up - down) / (2.0 * h);
  }
  return grad;
}

// max_j |a_j - b_j| / max(1, |a_j|, |b_j|)
inline double max_relative_error(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double denom =
        std::max({1.0, std::abs(a[j]), std::abs(b[j])});
    worst = std::max(worst, std::abs(a[j] - b[j]) / denom);
  }
  return worst;
}

// Scratch directory unique per test binary run.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    base_ = std::filesystem::temp_directory_path() /
            ("gefl_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(base_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(base_, ec);
  }
  std::string path(const std::string& name) const {
    return (base_ / name).string();
  }

 private:
  std::filesystem::path base_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gefl_test

#endif  // GEFL_TEST_HELPERS_HPP
