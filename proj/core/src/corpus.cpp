#include "gefl/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gefl/errors.hpp"
#include "gefl/io_util.hpp"
#include "gefl/rng.hpp"

namespace fs = std::filesystem;

namespace gefl {

bool SparseDocument::contains(int feature) const {
  return count_of(feature) > 0;
}

int SparseDocument::count_of(int feature) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), feature,
      [](const std::pair<int, int>& e, int f) { return e.first < f; });
  return (it != entries.end() && it->first == feature) ? it->second : 0;
}

int SparseDocument::total_tokens() const {
  int total = 0;
  for (const auto& [id, count] : entries) total += count;
  return total;
}

int Corpus::class_id(const std::string& name) const {
  if (!classes) return -1;
  for (std::size_t c = 0; c < classes->size(); ++c) {
    if ((*classes)[c] == name) return static_cast<int>(c);
  }
  return -1;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!current.empty()) {
      if (current.size() >= 2) tokens.push_back(current);
      current.clear();
    }
  }
  if (current.size() >= 2) tokens.push_back(current);
  return tokens;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read stopword file: " + path);
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = trim(line);
    if (!word.empty()) words.insert(to_lower(word));
  }
  return words;
}

namespace {

using RawDocs = std::vector<std::pair<std::string, std::vector<std::string>>>;

RawDocs read_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file: " + path);
  RawDocs docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected 'label<TAB>text'");
    }
    std::string label(trim(std::string_view(line).substr(0, tab)));
    if (label.empty()) {
      throw IoError(path + ":" + std::to_string(lineno) + ": empty label");
    }
    docs.emplace_back(std::move(label), tokenize(line.substr(tab + 1)));
  }
  return docs;
}

RawDocs read_directory(const std::string& path) {
  RawDocs docs;
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  for (const auto& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file);
      if (!in) throw IoError("cannot read document: " + file.string());
      std::stringstream buffer;
      buffer << in.rdbuf();
      docs.emplace_back(dir.filename().string(), tokenize(buffer.str()));
    }
  }
  return docs;
}

}  // namespace

Corpus build_corpus(const RawDocs& raw, const StopwordSet& stopwords,
                    int min_count) {
  if (raw.empty()) throw ConfigError("corpus has no documents");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");

  // Document frequency over kept tokens.
  std::map<std::string, int> df;
  std::vector<std::vector<std::string>> kept(raw.size());
  for (std::size_t d = 0; d < raw.size(); ++d) {
    std::unordered_set<std::string> seen;
    for (const auto& tok : raw[d].second) {
      if (stopwords.count(tok)) continue;
      kept[d].push_back(tok);
      if (seen.insert(tok).second) df[tok]++;
    }
  }

  // Vocabulary ordered by (descending document frequency, lexicographic).
  std::vector<std::pair<std::string, int>> by_df;
  for (const auto& [term, n] : df) {
    if (n >= min_count) by_df.emplace_back(term, n);
  }
  std::sort(by_df.begin(), by_df.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (by_df.empty()) {
    throw ConfigError("empty vocabulary after stopword/min_count filtering");
  }
  auto vocab = std::make_shared<Vocabulary>();
  for (const auto& [term, n] : by_df) vocab->add(term);

  // Class alphabet, lexicographic; fixes the meaning of class 0.
  std::vector<std::string> class_names;
  for (const auto& [label, tokens] : raw) class_names.push_back(label);
  std::sort(class_names.begin(), class_names.end());
  class_names.erase(std::unique(class_names.begin(), class_names.end()),
                    class_names.end());
  if (class_names.size() < 2) {
    throw ConfigError("corpus needs at least 2 classes, got " +
                      std::to_string(class_names.size()));
  }
  auto classes = std::make_shared<std::vector<std::string>>(class_names);

  Corpus corpus;
  corpus.vocabulary = vocab;
  corpus.classes = classes;
  for (std::size_t d = 0; d < raw.size(); ++d) {
    SparseDocument doc;
    std::map<int, int> counts;
    for (const auto& tok : kept[d]) {
      int id = vocab->id_of(tok);
      if (id >= 0) counts[id]++;
    }
    doc.entries.assign(counts.begin(), counts.end());
    doc.label = static_cast<int>(
        std::lower_bound(class_names.begin(), class_names.end(),
                         raw[d].first) -
        class_names.begin());
    doc.source = "doc" + std::to_string(d);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus ingest_tsv(const std::string& path, const StopwordSet& stopwords,
                  int min_count) {
  return build_corpus(read_tsv(path), stopwords, min_count);
}

Corpus ingest_directory(const std::string& path, const StopwordSet& stopwords,
                        int min_count) {
  return build_corpus(read_directory(path), stopwords, min_count);
}

Corpus ingest(const std::string& path, const StopwordSet& stopwords,
              int min_count) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    return ingest_directory(path, stopwords, min_count);
  }
  if (fs::is_regular_file(path, ec)) {
    return ingest_tsv(path, stopwords, min_count);
  }
  throw IoError("no such file or directory: " + path);
}

void save_corpus(const Corpus& corpus, const std::string& path,
                 const std::vector<std::string>& provenance) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write corpus file: " + path);
  out << "gefl-corpus v1\n";
  for (const auto& line : provenance) out << "# " << line << "\n";
  out << "classes " << corpus.n_classes() << "\n";
  for (int c = 0; c < corpus.n_classes(); ++c) {
    out << corpus.class_name(c) << "\n";
  }
  out << "vocab " << corpus.n_features() << "\n";
  for (const auto& term : corpus.vocabulary->terms) out << term << "\n";
  out << "docs " << corpus.n_documents() << "\n";
  for (const auto& doc : corpus.documents) {
    out << corpus.class_name(doc.label);
    char sep = '\t';
    for (const auto& [id, count] : doc.entries) {
      out << sep << id << ':' << count;
      sep = ' ';
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string expect_line(std::ifstream& in, const std::string& path) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    return line;
  }
  throw IoError(path + ": truncated corpus file");
}

int section_count(const std::string& line, const std::string& keyword,
                  const std::string& path) {
  auto parts = split(line, ' ');
  if (parts.size() != 2 || parts[0] != keyword) {
    throw IoError(path + ": expected '" + keyword + " <n>', got '" + line +
                  "'");
  }
  return static_cast<int>(parse_long(parts[1]));
}

}  // namespace

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "gefl-corpus v1") {
    throw IoError(path + ": not a gefl corpus file");
  }

  int n_classes = section_count(expect_line(in, path), "classes", path);
  auto classes = std::make_shared<std::vector<std::string>>();
  for (int c = 0; c < n_classes; ++c) {
    classes->push_back(std::string(trim(expect_line(in, path))));
  }

  int n_vocab = section_count(expect_line(in, path), "vocab", path);
  auto vocab = std::make_shared<Vocabulary>();
  for (int i = 0; i < n_vocab; ++i) {
    vocab->add(std::string(trim(expect_line(in, path))));
  }
  if (vocab->size() != n_vocab) {
    throw IoError(path + ": duplicate vocabulary terms");
  }

  int n_docs = section_count(expect_line(in, path), "docs", path);
  Corpus corpus;
  corpus.vocabulary = vocab;
  corpus.classes = classes;
  for (int d = 0; d < n_docs; ++d) {
    std::string doc_line = expect_line(in, path);
    std::size_t tab = doc_line.find('\t');
    std::string label =
        tab == std::string::npos ? doc_line : doc_line.substr(0, tab);
    SparseDocument doc;
    doc.label = corpus.class_id(std::string(trim(label)));
    if (doc.label < 0) {
      throw IoError(path + ": unknown class '" + label + "'");
    }
    if (tab != std::string::npos) {
      int prev = -1;
      for (const auto& cell : split(doc_line.substr(tab + 1), ' ')) {
        if (trim(cell).empty()) continue;
        auto kv = split(cell, ':');
        if (kv.size() != 2) throw IoError(path + ": bad entry '" + cell + "'");
        int id = static_cast<int>(parse_long(kv[0]));
        int count = static_cast<int>(parse_long(kv[1]));
        if (id <= prev || id >= n_vocab || count < 1) {
          throw IoError(path + ": invalid document entry '" + cell + "'");
        }
        doc.entries.emplace_back(id, count);
        prev = id;
      }
    }
    doc.source = "doc" + std::to_string(d);
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw ConfigError(path + ": corpus is empty");
  return corpus;
}

Corpus unbalance(const Corpus& corpus, int target_class,
                 double remove_fraction, std::uint64_t seed) {
  if (target_class < 0 || target_class >= corpus.n_classes()) {
    throw ConfigError("unbalance: invalid class id " +
                      std::to_string(target_class));
  }
  if (remove_fraction < 0.0 || remove_fraction >= 1.0) {
    throw ConfigError("unbalance: remove_fraction must be in [0, 1)");
  }
  std::vector<int> targets;
  for (int d = 0; d < corpus.n_documents(); ++d) {
    if (corpus.documents[d].label == target_class) targets.push_back(d);
  }
  if (targets.empty()) {
    throw ConfigError("unbalance: no documents of class " +
                      std::to_string(target_class));
  }
  auto n_remove = static_cast<std::size_t>(
      std::floor(remove_fraction * static_cast<double>(targets.size())));
  Rng rng(seed);
  rng.shuffle(targets);
  std::vector<bool> removed(corpus.n_documents(), false);
  for (std::size_t i = 0; i < n_remove; ++i) removed[targets[i]] = true;

  Corpus out;
  out.vocabulary = corpus.vocabulary;
  out.classes = corpus.classes;
  for (int d = 0; d < corpus.n_documents(); ++d) {
    if (!removed[d]) out.documents.push_back(corpus.documents[d]);
  }
  return out;
}

std::vector<std::pair<Corpus, Corpus>> cv_folds(const Corpus& corpus, int k,
                                                std::uint64_t seed) {
  const int n = corpus.n_documents();
  if (k < 2) throw ConfigError("cv_folds: k must be >= 2");
  if (k > n) {
    throw ConfigError("cv_folds: k=" + std::to_string(k) + " exceeds corpus size " +
                      std::to_string(n));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::pair<Corpus, Corpus>> folds;
  const int base = n / k;
  const int rem = n % k;
  int offset = 0;
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < rem ? 1 : 0);
    std::vector<bool> in_test(n, false);
    for (int i = offset; i < offset + size; ++i) in_test[order[i]] = true;
    offset += size;

    Corpus train, test;
    train.vocabulary = test.vocabulary = corpus.vocabulary;
    train.classes = test.classes = corpus.classes;
    for (int d = 0; d < n; ++d) {
      (in_test[d] ? test : train).documents.push_back(corpus.documents[d]);
    }
    folds.emplace_back(std::move(train), std::move(test));
  }
  return folds;
}

std::vector<int> document_frequencies(const Corpus& corpus) {
  std::vector<int> df(corpus.n_features(), 0);
  for (const auto& doc : corpus.documents) {
    for (const auto& [id, count] : doc.entries) df[id]++;
  }
  return df;
}

}  // namespace gefl
