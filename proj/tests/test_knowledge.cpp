#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "gefl/errors.hpp"
#include "gefl/knowledge.hpp"
#include "test_helpers.hpp"

using namespace gefl;
using gefl_test::make_corpus;

TEST_SUITE("knowledge") {

TEST_CASE("reference_heuristic 0.9/n splits") {
  auto d2 = reference_heuristic({0}, 2);
  CHECK(d2.probs[0] == doctest::Approx(0.9));
  CHECK(d2.probs[1] == doctest::Approx(0.1));

  auto d3 = reference_heuristic({1}, 3);
  CHECK(d3.probs[0] == doctest::Approx(0.05));
  CHECK(d3.probs[1] == doctest::Approx(0.9));
  CHECK(d3.probs[2] == doctest::Approx(0.05));

  auto d4 = reference_heuristic({0, 1}, 4);
  CHECK(d4.probs[0] == doctest::Approx(0.45));
  CHECK(d4.probs[1] == doctest::Approx(0.45));
  CHECK(d4.probs[2] == doctest::Approx(0.05));
  CHECK(d4.probs[3] == doctest::Approx(0.05));

  // All classes associated degenerates to uniform.
  auto all = reference_heuristic({0, 1, 2}, 3);
  for (double p : all.probs) CHECK(p == doctest::Approx(1.0 / 3));

  CHECK_THROWS_AS(reference_heuristic({}, 2), ConfigError);
  CHECK_THROWS_AS(reference_heuristic({5}, 2), ConfigError);
}

TEST_CASE("reference_heuristic mass split property") {
  gefl::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int C = rng.uniform_int(2, 6);
    int n = rng.uniform_int(1, C - 1);
    std::vector<int> assoc;
    while (static_cast<int>(assoc.size()) < n) {
      int c = rng.uniform_int(0, C - 1);
      bool dup = false;
      for (int a : assoc) dup = dup || a == c;
      if (!dup) assoc.push_back(c);
    }
    auto ref = reference_heuristic(assoc, C);
    CHECK(is_distribution(ref.probs));
    double assoc_mass = 0.0;
    for (int a : assoc) assoc_mass += ref.probs[a];
    CHECK(assoc_mass == doctest::Approx(0.9));
  }
}

TEST_CASE("info_gain_pool: perfect indicator scores ln 2") {
  // 10 balanced docs; w0 occurs in exactly the class-0 docs, w1 everywhere.
  std::vector<std::pair<int, std::map<int, int>>> docs;
  for (int i = 0; i < 5; ++i) docs.push_back({0, {{0, 1}, {1, 1}}});
  for (int i = 0; i < 5; ++i) docs.push_back({1, {{1, 1}, {2, 2}}});
  auto corpus = make_corpus({"w0", "w1", "w2"}, {"a", "b"}, docs);

  auto pool = info_gain_pool(corpus, 3);
  REQUIRE(pool.per_class.size() == 2);
  // Oracle: brute-force MI from the 2x2 contingency table = ln 2.
  CHECK(pool.per_class[0][0].feature == 0);
  CHECK(pool.per_class[0][0].score == doctest::Approx(0.6931471805599453));
  CHECK(pool.per_class[1][0].feature == 2);

  // w1 occurs in every document: MI = 0, ranked last in its class list.
  for (const auto& list : pool.per_class) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      CHECK(list[i - 1].score >= list[i].score);
    }
    if (!list.empty() && list.back().feature == 1) {
      CHECK(list.back().score == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("info_gain_pool invariant to document order, MI bounded") {
  gefl::Rng rng(4);
  std::vector<std::pair<int, std::map<int, int>>> docs;
  for (int i = 0; i < 30; ++i) {
    std::map<int, int> counts;
    for (int t = 0; t < 4; ++t) counts[rng.uniform_int(0, 5)]++;
    docs.push_back({rng.uniform_int(0, 1), counts});
  }
  auto corpus = make_corpus({"a", "b", "c", "d", "e", "f"}, {"x", "y"}, docs);
  auto pool = info_gain_pool(corpus, 6);

  std::reverse(docs.begin(), docs.end());
  auto reversed = make_corpus({"a", "b", "c", "d", "e", "f"}, {"x", "y"}, docs);
  auto pool2 = info_gain_pool(reversed, 6);
  for (int c = 0; c < 2; ++c) {
    REQUIRE(pool.per_class[c].size() == pool2.per_class[c].size());
    for (std::size_t i = 0; i < pool.per_class[c].size(); ++i) {
      CHECK(pool.per_class[c][i].feature == pool2.per_class[c][i].feature);
      CHECK(pool.per_class[c][i].score ==
            doctest::Approx(pool2.per_class[c][i].score));
    }
  }
  // 0 <= MI <= min(H(F), H(Y)) <= ln 2 for binary variables.
  for (const auto& list : pool.per_class) {
    for (const auto& e : list) {
      CHECK(e.score >= -1e-12);
      CHECK(e.score <= std::log(2.0) + 1e-12);
    }
  }
}

TEST_CASE("neutral_features takes the most frequent words with uniform refs") {
  std::vector<std::pair<int, std::map<int, int>>> docs;
  // w0 in 4 docs, w1 in 3, w2 in 1
  docs.push_back({0, {{0, 1}, {1, 1}}});
  docs.push_back({0, {{0, 1}, {1, 1}}});
  docs.push_back({1, {{0, 1}, {1, 1}}});
  docs.push_back({1, {{0, 1}, {2, 1}}});
  auto corpus = make_corpus({"w0", "w1", "w2"}, {"a", "b"}, docs);

  auto nf = neutral_features(corpus, 2);
  REQUIRE(nf.size() == 2);
  CHECK(nf.role == FeatureRole::neutral);
  CHECK(nf.entries[0].feature == 0);
  CHECK(nf.entries[1].feature == 1);
  for (const auto& f : nf.entries) {
    for (double p : f.ref.probs) CHECK(p == doctest::Approx(0.5));
  }

  CHECK(neutral_features(corpus, 0).empty());
  CHECK_THROWS_AS(neutral_features(corpus, 4), ConfigError);

  // Labeled features are not neutral candidates; the next-frequent word
  // takes the slot.
  auto skipped = neutral_features(corpus, 2, {0});
  REQUIRE(skipped.size() == 2);
  CHECK(skipped.entries[0].feature == 1);
  CHECK(skipped.entries[1].feature == 2);
  CHECK_THROWS_AS(neutral_features(corpus, 3, {0}), ConfigError);
}

TEST_CASE("draw_labeled draws without replacement under the heuristic") {
  FeaturePool pool;
  pool.per_class.resize(2);
  for (int i = 0; i < 20; ++i) pool.per_class[0].push_back({i, 20.0 - i});
  for (int i = 20; i < 40; ++i) pool.per_class[1].push_back({i, 40.0 - i});

  auto set = draw_labeled(pool, {10, 1}, 17, 2);
  REQUIRE(set.size() == 11);
  std::set<int> seen;
  for (const auto& f : set.entries) {
    CHECK(seen.insert(f.feature).second);  // distinct
  }
  int first_class = 0;
  for (const auto& f : set.entries) first_class += f.feature < 20;
  CHECK(first_class == 10);
  for (const auto& f : set.entries) {
    const bool is_first = f.feature < 20;
    CHECK(f.ref.probs[0] == doctest::Approx(is_first ? 0.9 : 0.1));
    CHECK(f.ref.probs[1] == doctest::Approx(is_first ? 0.1 : 0.9));
  }

  auto balanced = draw_labeled(pool, {10, 10}, 17, 2);
  CHECK(balanced.size() == 20);
  auto empty = draw_labeled(pool, {0, 0}, 17, 2);
  CHECK(empty.empty());

  CHECK_THROWS_AS(draw_labeled(pool, {21, 1}, 17, 2), PoolUnderflowError);

  // Same seed, same draw.
  auto redraw = draw_labeled(pool, {10, 1}, 17, 2);
  REQUIRE(redraw.size() == set.size());
  for (int i = 0; i < set.size(); ++i) {
    CHECK(redraw.entries[i].feature == set.entries[i].feature);
  }
}

TEST_CASE("features file round-trip, heuristic fill, neutral marker") {
  auto corpus = make_corpus(
      {"alpha", "beta", "gamma", "delta"}, {"neg", "pos"},
      {{0, {{0, 1}, {2, 1}}}, {1, {{1, 1}, {3, 1}}}});
  LabeledFeatureSet labeled;
  labeled.entries.push_back({0, reference_heuristic({0}, 2)});
  labeled.entries.push_back({1, reference_heuristic({1}, 2)});
  auto neutral = neutral_features(corpus, 1);

  gefl_test::TempDir tmp("features");
  save_features(labeled, neutral, corpus, tmp.path("k.tsv"), {"seed = 17"});
  auto loaded = load_features(tmp.path("k.tsv"), corpus);
  REQUIRE(loaded.labeled.size() == 2);
  REQUIRE(loaded.neutral.size() == 1);
  CHECK(loaded.labeled.entries[0].feature == 0);
  CHECK(loaded.labeled.entries[0].ref.probs[0] == doctest::Approx(0.9));
  CHECK(loaded.neutral.entries[0].ref.probs[0] == doctest::Approx(0.5));

  // Heuristic fill when the distribution column is missing.
  gefl_test::write_file(tmp.path("h.tsv"),
                        "gefl-features v1\nbeta\tpos\nalpha\tneg\t0.8,0.2\n");
  auto filled = load_features(tmp.path("h.tsv"), corpus);
  REQUIRE(filled.labeled.size() == 2);
  CHECK(filled.labeled.entries[0].ref.probs[1] == doctest::Approx(0.9));
  CHECK(filled.labeled.entries[1].ref.probs[0] == doctest::Approx(0.8));

  // Unknown token is skipped with a warning, unknown class is an error.
  gefl_test::write_file(tmp.path("u.tsv"),
                        "gefl-features v1\nmissing\tpos\nbeta\tpos\n");
  CHECK(load_features(tmp.path("u.tsv"), corpus).labeled.size() == 1);
  gefl_test::write_file(tmp.path("bad.tsv"),
                        "gefl-features v1\nbeta\tnope\n");
  CHECK_THROWS_AS(load_features(tmp.path("bad.tsv"), corpus), IoError);
}

}  // TEST_SUITE
