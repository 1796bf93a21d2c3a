#include "gefl/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "gefl/errors.hpp"
#include "gefl/io_util.hpp"
#include "gefl/rng.hpp"

namespace gefl {

ReferenceDistribution uniform_distribution(int n_classes) {
  ReferenceDistribution d;
  d.probs.assign(n_classes, 1.0 / n_classes);
  return d;
}

bool is_distribution(const std::vector<double>& p, double tol) {
  double total = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) return false;
    total += v;
  }
  return std::abs(total - 1.0) <= tol;
}

ReferenceDistribution reference_heuristic(const std::vector<int>& assoc_classes,
                                          int n_classes) {
  if (assoc_classes.empty()) {
    throw ConfigError("reference_heuristic: empty association set");
  }
  std::vector<bool> assoc(n_classes, false);
  int n = 0;
  for (int c : assoc_classes) {
    if (c < 0 || c >= n_classes) {
      throw ConfigError("reference_heuristic: class id out of range");
    }
    if (!assoc[c]) {
      assoc[c] = true;
      ++n;
    }
  }
  if (n == n_classes) return uniform_distribution(n_classes);

  ReferenceDistribution d;
  d.probs.resize(n_classes);
  const double hit = 0.9 / n;
  const double miss = 0.1 / (n_classes - n);
  for (int c = 0; c < n_classes; ++c) d.probs[c] = assoc[c] ? hit : miss;
  return d;
}

FeaturePool info_gain_pool(const Corpus& corpus, int per_class) {
  if (per_class < 1) throw ConfigError("info_gain_pool: per_class must be >= 1");
  const int C = corpus.n_classes();
  const int V = corpus.n_features();
  const int N = corpus.n_documents();

  // Occurrence counts per (feature, class) and per class.
  std::vector<std::vector<int>> occ(V, std::vector<int>(C, 0));
  std::vector<int> class_docs(C, 0);
  for (const auto& doc : corpus.documents) {
    class_docs[doc.label]++;
    for (const auto& [id, count] : doc.entries) occ[id][doc.label]++;
  }

  auto xlogx = [](double p, double q) {
    return p > 0.0 ? p * std::log(p / q) : 0.0;
  };

  std::vector<std::vector<PoolEntry>> candidates(C);
  for (int i = 0; i < V; ++i) {
    int df = std::accumulate(occ[i].begin(), occ[i].end(), 0);
    if (df == 0) continue;  // pruned at ingestion; degenerate otherwise
    double p1 = static_cast<double>(df) / N;
    double mi = 0.0;
    for (int c = 0; c < C; ++c) {
      double py = static_cast<double>(class_docs[c]) / N;
      double p1y = static_cast<double>(occ[i][c]) / N;
      double p0y = static_cast<double>(class_docs[c] - occ[i][c]) / N;
      mi += xlogx(p1y, p1 * py) + xlogx(p0y, (1.0 - p1) * py);
    }
    // Assignment: the class most probable given occurrence; ties -> lower id.
    int best = 0;
    for (int c = 1; c < C; ++c) {
      if (occ[i][c] > occ[i][best]) best = c;
    }
    candidates[best].push_back({i, mi});
  }

  FeaturePool pool;
  pool.per_class.resize(C);
  for (int c = 0; c < C; ++c) {
    auto& list = candidates[c];
    std::sort(list.begin(), list.end(), [](const PoolEntry& a,
                                           const PoolEntry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.feature < b.feature;
    });
    if (static_cast<int>(list.size()) > per_class) list.resize(per_class);
    if (static_cast<int>(list.size()) < per_class) {
      std::cerr << "warning: feature pool for class " << corpus.class_name(c)
                << " has only " << list.size() << " of " << per_class
                << " candidates\n";
    }
    pool.per_class[c] = std::move(list);
  }
  return pool;
}

LabeledFeatureSet neutral_features(const Corpus& corpus, int count,
                                   const std::vector<int>& exclude) {
  if (count < 0 || count > corpus.n_features()) {
    throw ConfigError("neutral_features: count must be in [0, |vocabulary|]");
  }
  std::vector<bool> excluded(corpus.n_features(), false);
  for (int id : exclude) {
    if (id >= 0 && id < corpus.n_features()) excluded[id] = true;
  }
  auto df = document_frequencies(corpus);
  std::vector<int> ids(corpus.n_features());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (df[a] != df[b]) return df[a] > df[b];
    return corpus.vocabulary->terms[a] < corpus.vocabulary->terms[b];
  });

  LabeledFeatureSet set;
  set.role = FeatureRole::neutral;
  const auto uniform = uniform_distribution(corpus.n_classes());
  for (int id : ids) {
    if (set.size() == count) break;
    if (!excluded[id]) set.entries.push_back({id, uniform});
  }
  if (set.size() < count) {
    throw ConfigError("neutral_features: not enough unexcluded features");
  }
  return set;
}

LabeledFeatureSet draw_labeled(const FeaturePool& pool,
                               const std::vector<int>& per_class_counts,
                               std::uint64_t seed, int n_classes) {
  if (per_class_counts.size() != pool.per_class.size()) {
    throw ConfigError("draw_labeled: one count per class required");
  }
  LabeledFeatureSet set;
  set.role = FeatureRole::labeled;
  Rng rng(seed);
  for (std::size_t c = 0; c < pool.per_class.size(); ++c) {
    const auto& list = pool.per_class[c];
    const int want = per_class_counts[c];
    if (want > static_cast<int>(list.size())) {
      throw PoolUnderflowError(
          "draw_labeled: class " + std::to_string(c) + " pool holds " +
          std::to_string(list.size()) + " features, requested " +
          std::to_string(want));
    }
    std::vector<int> order(list.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<int> picked(order.begin(), order.begin() + want);
    std::sort(picked.begin(), picked.end());  // keep pool rank order
    for (int idx : picked) {
      set.entries.push_back(
          {list[idx].feature,
           reference_heuristic({static_cast<int>(c)}, n_classes)});
    }
  }
  return set;
}

namespace {

std::string classes_column(const ReferenceDistribution& ref,
                           const Corpus& corpus) {
  // Recover the association set: classes carrying the top probability.
  double top = *std::max_element(ref.probs.begin(), ref.probs.end());
  std::string out;
  for (std::size_t c = 0; c < ref.probs.size(); ++c) {
    if (ref.probs[c] >= top - 1e-12) {
      if (!out.empty()) out += ',';
      out += corpus.class_name(static_cast<int>(c));
    }
  }
  return out;
}

std::string dist_column(const ReferenceDistribution& ref) {
  std::string out;
  for (std::size_t c = 0; c < ref.probs.size(); ++c) {
    if (c) out += ',';
    out += format_double(ref.probs[c]);
  }
  return out;
}

}  // namespace

void save_features(const LabeledFeatureSet& labeled,
                   const LabeledFeatureSet& neutral, const Corpus& corpus,
                   const std::string& path,
                   const std::vector<std::string>& provenance,
                   const FeaturePool* pool) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write features file: " + path);
  out << "gefl-features v1\n";
  for (const auto& line : provenance) out << "# " << line << "\n";
  if (pool) {
    for (std::size_t c = 0; c < pool->per_class.size(); ++c) {
      int rank = 0;
      for (const auto& entry : pool->per_class[c]) {
        out << "#pool\t" << corpus.class_name(static_cast<int>(c)) << "\t"
            << rank++ << "\t" << corpus.vocabulary->terms[entry.feature]
            << "\t" << format_double(entry.score) << "\n";
      }
    }
  }
  for (const auto& f : labeled.entries) {
    out << corpus.vocabulary->terms[f.feature] << "\t"
        << classes_column(f.ref, corpus) << "\t" << dist_column(f.ref) << "\n";
  }
  for (const auto& f : neutral.entries) {
    out << corpus.vocabulary->terms[f.feature] << "\t*\t"
        << dist_column(f.ref) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

LoadedFeatures load_features(const std::string& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read features file: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "gefl-features v1") {
    throw IoError(path + ": not a gefl features file");
  }
  LoadedFeatures out;
  out.labeled.role = FeatureRole::labeled;
  out.neutral.role = FeatureRole::neutral;
  const int C = corpus.n_classes();
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected token<TAB>classes[<TAB>distribution]");
    }
    int id = corpus.vocabulary->id_of(std::string(trim(cols[0])));
    if (id < 0) {
      std::cerr << "warning: " << path << ":" << lineno << ": token '"
                << trim(cols[0]) << "' not in vocabulary, skipped\n";
      continue;
    }
    const bool is_neutral = trim(cols[1]) == "*";
    ReferenceDistribution ref;
    if (cols.size() == 3 && !trim(cols[2]).empty()) {
      ref.probs = parse_distribution(cols[2]);
      if (static_cast<int>(ref.probs.size()) != C) {
        throw IoError(path + ":" + std::to_string(lineno) +
                      ": distribution length != class count");
      }
    } else if (is_neutral) {
      ref = uniform_distribution(C);
    } else {
      std::vector<int> assoc;
      for (const auto& name : split(cols[1], ',')) {
        int c = corpus.class_id(std::string(trim(name)));
        if (c < 0) {
          throw IoError(path + ":" + std::to_string(lineno) +
                        ": unknown class '" + std::string(trim(name)) + "'");
        }
        assoc.push_back(c);
      }
      ref = reference_heuristic(assoc, C);
    }
    auto& set = is_neutral ? out.neutral : out.labeled;
    for (const auto& existing : set.entries) {
      if (existing.feature == id) {
        throw IoError(path + ":" + std::to_string(lineno) +
                      ": duplicate feature '" + std::string(trim(cols[0])) +
                      "'");
      }
    }
    set.entries.push_back({id, std::move(ref)});
  }
  return out;
}

}  // namespace gefl
