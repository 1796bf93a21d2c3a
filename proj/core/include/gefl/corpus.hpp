#ifndef GEFL_CORPUS_HPP
#define GEFL_CORPUS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gefl {

using StopwordSet = std::unordered_set<std::string>;

// Token id alphabet. Ids are contiguous from 0 and the term<->id mapping is a
// bijection; at ingestion time terms are ordered by (descending document
// frequency, lexicographic).
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(terms.size()); }

  int id_of(const std::string& term) const {
    auto it = index.find(term);
    return it == index.end() ? -1 : it->second;
  }

  int add(const std::string& term) {
    auto it = index.find(term);
    if (it != index.end()) return it->second;
    int id = size();
    terms.push_back(term);
    index.emplace(term, id);
    return id;
  }
};

// Sparse bag-of-words vector. Entries are (feature id, count) with ids
// strictly increasing and counts >= 1. The label is used only for simulating
// prior knowledge and for evaluation, never inside the training objective.
struct SparseDocument {
  std::vector<std::pair<int, int>> entries;
  int label = -1;
  std::string source;

  bool contains(int feature) const;
  int count_of(int feature) const;
  int total_tokens() const;
};

struct Corpus {
  std::vector<SparseDocument> documents;
  std::shared_ptr<const Vocabulary> vocabulary;
  std::shared_ptr<const std::vector<std::string>> classes;

  int n_documents() const { return static_cast<int>(documents.size()); }
  int n_features() const { return vocabulary ? vocabulary->size() : 0; }
  int n_classes() const {
    return classes ? static_cast<int>(classes->size()) : 0;
  }
  const std::string& class_name(int c) const { return (*classes)[c]; }
  int class_id(const std::string& name) const;
};

// Lowercased alphabetic runs of length >= 2.
std::vector<std::string> tokenize(std::string_view text);

StopwordSet load_stopwords(const std::string& path);

// `path` is either a TSV file (label TAB text per line) or a directory with
// one subdirectory per class. Tokens occurring in fewer than `min_count`
// documents are dropped along with stopwords.
Corpus ingest(const std::string& path, const StopwordSet& stopwords,
              int min_count);
Corpus ingest_tsv(const std::string& path, const StopwordSet& stopwords,
                  int min_count);
Corpus ingest_directory(const std::string& path, const StopwordSet& stopwords,
                        int min_count);

// Builds a corpus from already tokenized (label, tokens) pairs; the shared
// tail of all ingest routes, exposed for tests and synthetic data.
Corpus build_corpus(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& docs,
    const StopwordSet& stopwords, int min_count);

void save_corpus(const Corpus& corpus, const std::string& path,
                 const std::vector<std::string>& provenance = {});
Corpus load_corpus(const std::string& path);

// Removes floor(remove_fraction * n_target) documents of target_class chosen
// uniformly at random; survivors keep their original order.
Corpus unbalance(const Corpus& corpus, int target_class,
                 double remove_fraction, std::uint64_t seed);

// k disjoint test partitions covering the corpus, sizes differing by at most
// one; vocabulary and class alphabet are shared by every fold.
std::vector<std::pair<Corpus, Corpus>> cv_folds(const Corpus& corpus, int k,
                                                std::uint64_t seed);

// Number of documents containing each feature.
std::vector<int> document_frequencies(const Corpus& corpus);

}  // namespace gefl

#endif  // GEFL_CORPUS_HPP
