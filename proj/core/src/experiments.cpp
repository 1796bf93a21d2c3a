#include "gefl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "gefl/errors.hpp"
#include "gefl/io_util.hpp"
#include "gefl/lda.hpp"
#include "gefl/rng.hpp"
#include "gefl/train.hpp"

namespace gefl {

Corpus synthesize_corpus(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.docs_per_class < 1 || spec.doc_length < 1 ||
      spec.indicators_per_class < 1 || spec.n_classes < 2) {
    throw ConfigError("synthesize_corpus: sizes must be positive, classes >= 2");
  }
  if (spec.noise < 0.0 || spec.noise > 1.0) {
    throw ConfigError("synthesize_corpus: noise must be in [0, 1]");
  }
  const int background = spec.vocab_size -
                         spec.n_classes * spec.indicators_per_class;
  if (background < 1 && spec.noise > 0.0) {
    throw ConfigError("synthesize_corpus: vocabulary leaves no background block");
  }

  auto vocab = std::make_shared<Vocabulary>();
  auto classes = std::make_shared<std::vector<std::string>>();
  std::vector<std::vector<int>> indicator_ids(spec.n_classes);
  for (int c = 0; c < spec.n_classes; ++c) {
    char name[16];
    std::snprintf(name, sizeof(name), "c%02d", c);
    classes->push_back(name);
    for (int j = 0; j < spec.indicators_per_class; ++j) {
      char term[32];
      std::snprintf(term, sizeof(term), "c%02dw%03d", c, j);
      indicator_ids[c].push_back(vocab->add(term));
    }
  }
  std::vector<int> background_ids;
  for (int j = 0; j < std::max(background, 0); ++j) {
    char term[32];
    std::snprintf(term, sizeof(term), "bg%04d", j);
    background_ids.push_back(vocab->add(term));
  }

  Corpus corpus;
  corpus.vocabulary = vocab;
  corpus.classes = classes;
  Rng rng(seed);
  int serial = 0;
  const int V = vocab->size();
  for (int c = 0; c < spec.n_classes; ++c) {
    for (int d = 0; d < spec.docs_per_class; ++d) {
      std::map<int, int> counts;
      for (int t = 0; t < spec.doc_length; ++t) {
        // Mixture: boosted own-indicator component plus a shared uniform over
        // the whole vocabulary, so indicators leak into other classes at the
        // background rate.
        int id;
        if (rng.uniform() >= spec.noise) {
          id = indicator_ids[c][rng.below(indicator_ids[c].size())];
        } else {
          id = static_cast<int>(rng.below(V));
        }
        counts[id]++;
      }
      SparseDocument doc;
      doc.entries.assign(counts.begin(), counts.end());
      doc.label = c;
      doc.source = "synth" + std::to_string(serial++);
      corpus.documents.push_back(std::move(doc));
    }
  }
  return corpus;
}

double accuracy(const ModelParameters& params, const Corpus& test) {
  if (test.documents.empty()) throw ConfigError("accuracy: empty test corpus");
  int correct = 0;
  for (const auto& doc : test.documents) {
    if (classify(params, doc) == doc.label) ++correct;
  }
  return static_cast<double>(correct) / test.n_documents();
}

std::string feature_source_name(FeatureSource s) {
  switch (s) {
    case FeatureSource::info_gain: return "info_gain";
    case FeatureSource::lda: return "lda";
    case FeatureSource::file: return "file";
  }
  return "?";
}

std::optional<FeatureSource> parse_feature_source(const std::string& name) {
  if (name == "info_gain" || name == "info-gain" || name == "ig") {
    return FeatureSource::info_gain;
  }
  if (name == "lda") return FeatureSource::lda;
  if (name == "file") return FeatureSource::file;
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (methods.empty()) throw ConfigError("experiment: no methods listed");
  if (folds < 2) throw ConfigError("experiment: folds must be >= 2");
  if (repetitions < 1) throw ConfigError("experiment: repetitions must be >= 1");
  if (corpus_path.empty() == !synth.has_value()) {
    throw ConfigError("experiment: exactly one of corpus path or synthetic "
                      "generator must be set");
  }
  int axes = 0;
  if (sweep_t) {
    ++axes;
    if (sweep_t->first < 1 || sweep_t->second < sweep_t->first) {
      throw ConfigError("experiment: bad t sweep range");
    }
    if (sweep_t->second > pool_per_class) {
      throw ConfigError("experiment: t sweep exceeds the feature pool size");
    }
  }
  if (!betas.empty()) ++axes;
  if (unbalance_fractions.size() > 1) ++axes;
  if (axes > 1) {
    throw ConfigError("experiment: at most one sweep axis (t, beta, fraction)");
  }
  if (!unbalance_fractions.empty() && unbalance_class < 0) {
    throw ConfigError("experiment: unbalance fractions need an unbalance class");
  }
  for (double f : unbalance_fractions) {
    if (f < 0.0 || f >= 1.0) {
      throw ConfigError("experiment: unbalance fractions must lie in [0, 1)");
    }
  }
  if (feature_source == FeatureSource::file && feature_file.empty()) {
    throw ConfigError("experiment: feature source 'file' needs a feature file");
  }
  if (reference_override && !is_distribution(*reference_override, 1e-6)) {
    throw ConfigError("experiment: reference override must be a distribution");
  }
}

namespace {

struct Setting {
  std::string label;
  std::vector<int> counts;
  double fraction = 0.0;
  double beta = 0.0;
};

std::vector<int> counts_for_t(int t, bool balanced, int n_classes) {
  std::vector<int> counts(n_classes, balanced ? t : 1);
  counts[0] = t;
  return counts;
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<Setting> enumerate_settings(const ExperimentSpec& spec,
                                        int n_classes) {
  const double base_fraction =
      spec.unbalance_fractions.size() == 1 ? spec.unbalance_fractions[0] : 0.0;
  std::vector<Setting> settings;
  if (spec.sweep_t) {
    for (int t = spec.sweep_t->first; t <= spec.sweep_t->second; ++t) {
      settings.push_back({"t=" + std::to_string(t),
                          counts_for_t(t, spec.sweep_balanced, n_classes),
                          base_fraction, spec.beta});
    }
  } else if (!spec.betas.empty()) {
    for (double b : spec.betas) {
      settings.push_back(
          {"beta=" + format_double(b), spec.counts, base_fraction, b});
    }
  } else if (spec.unbalance_fractions.size() > 1) {
    for (double f : spec.unbalance_fractions) {
      settings.push_back(
          {"frac=" + format_double(f), spec.counts, f, spec.beta});
    }
  } else {
    settings.push_back({"counts=" + join_ints(spec.counts, ':'), spec.counts,
                        base_fraction, spec.beta});
  }
  return settings;
}

std::vector<double> label_distribution(const Corpus& corpus) {
  std::vector<double> dist(corpus.n_classes(), 0.0);
  for (const auto& doc : corpus.documents) dist[doc.label] += 1.0;
  for (double& v : dist) v /= corpus.n_documents();
  return dist;
}

double sample_stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / (v.size() - 1));
}

}  // namespace

ResultTable run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Corpus base = spec.synth ? synthesize_corpus(*spec.synth, spec.seed)
                                 : load_corpus(spec.corpus_path);
  const int C = base.n_classes();

  LoadedFeatures from_file;
  if (spec.feature_source == FeatureSource::file) {
    from_file = load_features(spec.feature_file, base);
    if (from_file.labeled.empty()) {
      throw ConfigError("experiment: feature file holds no labeled features");
    }
  }

  auto settings = enumerate_settings(spec, C);
  for (const auto& s : settings) {
    if (static_cast<int>(s.counts.size()) != C) {
      throw ConfigError("experiment: counts list needs one entry per class");
    }
  }

  ResultTable table;
  table.experiment = spec.name;
  for (std::size_t si = 0; si < settings.size(); ++si) {
    const Setting& setting = settings[si];
    const Corpus corpus =
        setting.fraction > 0.0
            ? unbalance(base, spec.unbalance_class, setting.fraction,
                        mix_seed(spec.seed, 0xA1, si))
            : base;

    // rows keyed (setting, method, repetition); method-major for readability
    std::vector<ResultRow> rows(spec.methods.size() * spec.repetitions);
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      for (int r = 0; r < spec.repetitions; ++r) {
        auto& row = rows[mi * spec.repetitions + r];
        row.setting = setting.label;
        row.method = spec.methods[mi];
        row.seed = mix_seed(spec.seed, 0xB2, r);
      }
    }

    for (int r = 0; r < spec.repetitions; ++r) {
      const std::uint64_t rep_seed = mix_seed(spec.seed, 0xB2, r);
      auto folds = cv_folds(corpus, spec.folds, rep_seed);
      for (std::size_t f = 0; f < folds.size(); ++f) {
        const Corpus& train = folds[f].first;
        const Corpus& test = folds[f].second;

        // Knowledge comes from the training fold only.
        LabeledFeatureSet labeled;
        LabeledFeatureSet neutral;
        if (spec.feature_source == FeatureSource::file) {
          labeled = from_file.labeled;
          neutral = from_file.neutral;
        } else {
          FeaturePool pool;
          if (spec.feature_source == FeatureSource::info_gain) {
            pool = info_gain_pool(train, spec.pool_per_class);
          } else {
            const int topics = spec.lda_topics > 0 ? spec.lda_topics : C;
            LdaModel lda = lda_fit(train, topics, spec.lda_iterations,
                                   spec.lda_alpha, spec.lda_eta,
                                   mix_seed(rep_seed, 0xC3, f));
            pool = lda_feature_pool(lda, train, spec.pool_per_class);
          }
          labeled = draw_labeled(pool, setting.counts,
                                 mix_seed(rep_seed, 0xD4, f), C);
        }

        bool need_neutral = false;
        for (Method m : spec.methods) need_neutral |= m == Method::neutral;
        if (need_neutral && neutral.empty()) {
          std::vector<int> taken;
          for (const auto& lf : labeled.entries) taken.push_back(lf.feature);
          neutral = neutral_features(train, spec.neutral_count, taken);
        }
        const std::vector<double> reference =
            spec.reference_override ? *spec.reference_override
                                    : label_distribution(train);

        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
          RegularizationConfig config;
          config.method = spec.methods[mi];
          config.beta = setting.beta;
          if (config.method == Method::kl_divergence) {
            config.reference_class_distribution = reference;
          }
          if (config.method == Method::neutral) config.neutral_set = neutral;

          auto result = train_model(train, labeled, config, spec.sigma,
                                    spec.optimizer);
          auto& row = rows[mi * spec.repetitions + r];
          row.fold_accuracies.push_back(accuracy(result.params, test));
          if (result.trace.reason == TerminationReason::line_search_failure) {
            row.training_failures++;
          }
        }
      }
    }

    for (auto& row : rows) {
      double total = 0.0;
      for (double a : row.fold_accuracies) total += a;
      row.mean = total / row.fold_accuracies.size();
      row.stddev = sample_stddev(row.fold_accuracies, row.mean);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

void write_detail_csv(const ResultTable& table, std::ostream& out,
                      const std::vector<std::string>& provenance) {
  for (const auto& line : provenance) out << "# " << line << "\n";
  out << "experiment,setting,method,fold,seed,accuracy\n";
  for (const auto& row : table.rows) {
    for (std::size_t f = 0; f < row.fold_accuracies.size(); ++f) {
      out << table.experiment << ',' << row.setting << ','
          << method_name(row.method) << ',' << f << ',' << row.seed << ','
          << format_double(row.fold_accuracies[f]) << "\n";
    }
  }
}

void write_summary_csv(const ResultTable& table, std::ostream& out,
                       const std::vector<std::string>& provenance) {
  for (const auto& line : provenance) out << "# " << line << "\n";
  out << "experiment,setting,method,mean,std,n\n";
  // Aggregate repetitions; preserve first-appearance order of (setting, method).
  std::vector<std::pair<std::string, Method>> keys;
  std::map<std::pair<std::string, int>, std::vector<double>> cells;
  for (const auto& row : table.rows) {
    auto key = std::make_pair(row.setting, static_cast<int>(row.method));
    if (!cells.count(key)) keys.emplace_back(row.setting, row.method);
    auto& cell = cells[key];
    cell.insert(cell.end(), row.fold_accuracies.begin(),
                row.fold_accuracies.end());
  }
  for (const auto& [setting, method] : keys) {
    const auto& cell = cells[{setting, static_cast<int>(method)}];
    double total = 0.0;
    for (double a : cell) total += a;
    const double mean = total / cell.size();
    out << table.experiment << ',' << setting << ',' << method_name(method)
        << ',' << format_double(mean) << ','
        << format_double(sample_stddev(cell, mean)) << ',' << cell.size()
        << "\n";
  }
}

bool write_sweep_csv(const ResultTable& table, std::ostream& out,
                     const std::vector<std::string>& provenance) {
  // Axis settings look like "t=5", "beta=1", "frac=0.5".
  std::string axis;
  std::vector<std::string> values;
  std::vector<Method> methods;
  for (const auto& row : table.rows) {
    auto eq = row.setting.find('=');
    if (eq == std::string::npos) return false;
    std::string prefix = row.setting.substr(0, eq);
    if (axis.empty()) axis = prefix;
    if (prefix != axis || axis == "counts") return false;
    std::string value = row.setting.substr(eq + 1);
    if (values.empty() || values.back() != value) {
      if (std::find(values.begin(), values.end(), value) == values.end()) {
        values.push_back(value);
      }
    }
    if (std::find(methods.begin(), methods.end(), row.method) ==
        methods.end()) {
      methods.push_back(row.method);
    }
  }
  if (values.size() < 2) return false;

  std::map<std::pair<std::string, int>, std::pair<double, int>> sums;
  for (const auto& row : table.rows) {
    std::string value = row.setting.substr(axis.size() + 1);
    auto& cell = sums[{value, static_cast<int>(row.method)}];
    for (double a : row.fold_accuracies) {
      cell.first += a;
      cell.second++;
    }
  }

  for (const auto& line : provenance) out << "# " << line << "\n";
  out << axis;
  for (Method m : methods) out << ',' << method_name(m);
  out << "\n";
  for (const auto& value : values) {
    out << value;
    for (Method m : methods) {
      const auto& cell = sums[{value, static_cast<int>(m)}];
      out << ',' << format_double(cell.first / cell.second);
    }
    out << "\n";
  }
  return true;
}

std::string gnuplot_script(const std::string& sweep_csv_path,
                           const std::vector<Method>& methods,
                           const std::string& axis_label) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key bottom right\n";
  s += "set xlabel '" + axis_label + "'\n";
  s += "set ylabel 'accuracy'\n";
  s += "plot ";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) s += ", ";
    s += "'" + sweep_csv_path + "' using 1:" + std::to_string(i + 2) +
         " with linespoints title '" + method_name(methods[i]) + "'";
  }
  s += "\n";
  return s;
}

}  // namespace gefl
