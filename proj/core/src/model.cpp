#include "gefl/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "gefl/errors.hpp"
#include "gefl/io_util.hpp"

namespace gefl {

ModelParameters ModelParameters::zeros(int n_classes, int n_features,
                                       double sigma) {
  ModelParameters p;
  p.n_classes = n_classes;
  p.n_features = n_features;
  p.sigma = sigma;
  p.theta.assign(static_cast<std::size_t>(n_classes) * n_features, 0.0);
  return p;
}

namespace {

void softmax_into(const ModelParameters& params, const SparseDocument& doc,
                  double* out) {
  const int C = params.n_classes;
  for (int y = 0; y < C; ++y) {
    double score = 0.0;
    const double* row = params.theta.data() +
                        static_cast<std::size_t>(y) * params.n_features;
    for (const auto& [id, count] : doc.entries) {
      score += row[id] * count;
    }
    out[y] = score;
  }
  double max_score = *std::max_element(out, out + C);
  if (!std::isfinite(max_score)) {
    throw NumericError("predict: non-finite class score");
  }
  double z = 0.0;
  for (int y = 0; y < C; ++y) {
    out[y] = std::exp(out[y] - max_score);
    z += out[y];
  }
  for (int y = 0; y < C; ++y) out[y] /= z;
}

}  // namespace

std::vector<double> predict(const ModelParameters& params,
                            const SparseDocument& doc) {
  std::vector<double> p(params.n_classes);
  softmax_into(params, doc, p.data());
  return p;
}

FeatureConditional feature_conditional(const ModelParameters& params,
                                       const Corpus& corpus, int k) {
  FeatureConditional out;
  std::vector<double> sum(params.n_classes, 0.0);
  for (const auto& doc : corpus.documents) {
    if (!doc.contains(k)) continue;
    auto p = predict(params, doc);
    for (int y = 0; y < params.n_classes; ++y) sum[y] += p[y];
    out.occurrences++;
  }
  if (out.occurrences > 0) {
    for (double& v : sum) v /= out.occurrences;
    out.distribution = std::move(sum);
  }
  return out;
}

std::vector<double> class_marginal(const ModelParameters& params,
                                   const Corpus& corpus) {
  if (corpus.documents.empty()) {
    throw ConfigError("class_marginal: empty corpus");
  }
  std::vector<double> sum(params.n_classes, 0.0);
  for (const auto& doc : corpus.documents) {
    auto p = predict(params, doc);
    for (int y = 0; y < params.n_classes; ++y) sum[y] += p[y];
  }
  for (double& v : sum) v /= corpus.n_documents();
  return sum;
}

int classify(const ModelParameters& params, const SparseDocument& doc) {
  auto p = predict(params, doc);
  int best = 0;
  for (int y = 1; y < params.n_classes; ++y) {
    if (p[y] > p[best]) best = y;
  }
  return best;
}

PredictionCache compute_predictions(
    const ModelParameters& params, const Corpus& corpus,
    const std::vector<std::vector<int>>& feature_docs) {
  const int C = params.n_classes;
  const int N = corpus.n_documents();
  PredictionCache cache;
  cache.n_classes = C;
  cache.per_document.resize(static_cast<std::size_t>(N) * C);
  cache.marginal.assign(C, 0.0);
  for (int d = 0; d < N; ++d) {
    double* row = cache.per_document.data() + static_cast<std::size_t>(d) * C;
    softmax_into(params, corpus.documents[d], row);
    for (int y = 0; y < C; ++y) cache.marginal[y] += row[y];
  }
  for (int y = 0; y < C; ++y) cache.marginal[y] /= N;

  cache.feature_averages.assign(feature_docs.size() * C, 0.0);
  cache.occurrence_counts.resize(feature_docs.size());
  for (std::size_t s = 0; s < feature_docs.size(); ++s) {
    double* avg = cache.feature_averages.data() + s * C;
    for (int d : feature_docs[s]) {
      const double* row = cache.document(d);
      for (int y = 0; y < C; ++y) avg[y] += row[y];
    }
    const int ck = static_cast<int>(feature_docs[s].size());
    cache.occurrence_counts[s] = ck;
    if (ck > 0) {
      for (int y = 0; y < C; ++y) avg[y] /= ck;
    }
  }
  return cache;
}

void save_model(const ModelParameters& params, const Corpus& corpus,
                const std::string& path,
                const std::vector<std::string>& provenance) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file: " + path);
  out << "gefl-model v1\n";
  for (const auto& line : provenance) out << "# " << line << "\n";
  out << "sigma " << format_double(params.sigma) << "\n";
  out << "classes " << params.n_classes << "\n";
  for (int c = 0; c < params.n_classes; ++c) {
    out << corpus.class_name(c) << "\n";
  }
  out << "theta " << params.n_classes << " " << params.n_features << "\n";
  for (int y = 0; y < params.n_classes; ++y) {
    for (int i = 0; i < params.n_features; ++i) {
      if (i) out << ' ';
      out << format_double(params.at(y, i));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string next_content_line(std::ifstream& in, const std::string& path) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    return line;
  }
  throw IoError(path + ": truncated model file");
}

}  // namespace

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read model file: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "gefl-model v1") {
    throw IoError(path + ": not a gefl model file");
  }
  LoadedModel out;

  auto sigma_line = split(next_content_line(in, path), ' ');
  if (sigma_line.size() != 2 || sigma_line[0] != "sigma") {
    throw IoError(path + ": expected 'sigma <value>'");
  }
  out.params.sigma = parse_double(sigma_line[1]);

  auto classes_line = split(next_content_line(in, path), ' ');
  if (classes_line.size() != 2 || classes_line[0] != "classes") {
    throw IoError(path + ": expected 'classes <n>'");
  }
  int n_classes = static_cast<int>(parse_long(classes_line[1]));
  for (int c = 0; c < n_classes; ++c) {
    out.classes.push_back(std::string(trim(next_content_line(in, path))));
  }

  auto theta_line = split(next_content_line(in, path), ' ');
  if (theta_line.size() != 3 || theta_line[0] != "theta") {
    throw IoError(path + ": expected 'theta <classes> <features>'");
  }
  out.params.n_classes = static_cast<int>(parse_long(theta_line[1]));
  out.params.n_features = static_cast<int>(parse_long(theta_line[2]));
  if (out.params.n_classes != n_classes) {
    throw IoError(path + ": class count mismatch");
  }
  out.params.theta.reserve(static_cast<std::size_t>(n_classes) *
                           out.params.n_features);
  for (int y = 0; y < n_classes; ++y) {
    auto cells = split(next_content_line(in, path), ' ');
    if (static_cast<int>(cells.size()) != out.params.n_features) {
      throw IoError(path + ": theta row " + std::to_string(y) +
                    " has wrong length");
    }
    for (const auto& cell : cells) {
      out.params.theta.push_back(parse_double(cell));
    }
  }
  return out;
}

}  // namespace gefl
