// gefl: train text classifiers from labeled features instead of labeled
// instances. Subcommands cover the whole batch pipeline: ingest a corpus,
// select features, train, evaluate, and run cross-validated sweeps.
//
// Exit codes: 0 success, 2 input/config error, 3 feature-pool underflow,
// 4 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gefl/corpus.hpp"
#include "gefl/errors.hpp"
#include "gefl/experiments.hpp"
#include "gefl/io_util.hpp"
#include "gefl/knowledge.hpp"
#include "gefl/lda.hpp"
#include "gefl/model.hpp"
#include "gefl/objective.hpp"
#include "gefl/rng.hpp"
#include "gefl/train.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPoolUnderflow = 3;
constexpr int kExitNumeric = 4;

// Resolved key = value lines embedded in every output file, so any artifact
// can be regenerated from its own header.
class Provenance {
 public:
  explicit Provenance(const std::string& command) {
    add("command", command);
  }
  void add(const std::string& key, const std::string& value) {
    lines_.push_back(key + " = " + value);
  }
  void add(const std::string& key, double value) {
    add(key, gefl::format_double(value));
  }
  void add(const std::string& key, long value) {
    add(key, std::to_string(value));
  }
  void add(const std::string& key, bool value) {
    add(key, std::string(value ? "true" : "false"));
  }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
};

gefl::Method require_method(const std::string& name) {
  auto method = gefl::parse_method(name);
  if (!method) throw gefl::ConfigError("unknown method: " + name);
  return *method;
}

std::vector<int> per_class_counts(const std::string& text, int n_classes) {
  auto counts = gefl::parse_int_list(text);
  if (counts.size() == 1) counts.assign(n_classes, counts[0]);
  if (static_cast<int>(counts.size()) != n_classes) {
    throw gefl::ConfigError("per-class counts need 1 or " +
                            std::to_string(n_classes) + " entries");
  }
  return counts;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
  std::string input;
  std::string format = "auto";
  std::string stopwords;
  int min_count = 2;
  std::string out;
};

int run_ingest(const IngestArgs& args) {
  gefl::StopwordSet stopwords;
  if (!args.stopwords.empty()) {
    stopwords = gefl::load_stopwords(args.stopwords);
  }
  gefl::Corpus corpus;
  if (args.format == "tsv") {
    corpus = gefl::ingest_tsv(args.input, stopwords, args.min_count);
  } else if (args.format == "dir") {
    corpus = gefl::ingest_directory(args.input, stopwords, args.min_count);
  } else if (args.format == "auto") {
    corpus = gefl::ingest(args.input, stopwords, args.min_count);
  } else {
    throw gefl::ConfigError("format must be auto, tsv, or dir");
  }

  Provenance prov("ingest");
  prov.add("input", args.input);
  prov.add("format", args.format);
  prov.add("stopwords", args.stopwords);
  prov.add("min_count", static_cast<long>(args.min_count));
  prov.add("out", args.out);
  gefl::save_corpus(corpus, args.out, prov.lines());

  std::cout << "documents=" << corpus.n_documents() << "\n"
            << "vocabulary=" << corpus.n_features() << "\n"
            << "classes=" << corpus.n_classes() << "\n"
            << "min_count=" << args.min_count << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// select

struct SelectArgs {
  std::string corpus;
  std::string method = "info-gain";
  int pool = 20;
  std::string per_class = "10";
  int neutral = 0;
  int topics = 0;
  int lda_iterations = 500;
  double alpha = 0.0;
  double eta = 0.01;
  std::uint64_t seed = 42;
  std::string out;
};

int run_select(const SelectArgs& args) {
  auto corpus = gefl::load_corpus(args.corpus);
  const int C = corpus.n_classes();
  auto counts = per_class_counts(args.per_class, C);

  gefl::FeaturePool pool;
  if (args.method == "info-gain" || args.method == "info_gain") {
    pool = gefl::info_gain_pool(corpus, args.pool);
  } else if (args.method == "lda") {
    const int topics = args.topics > 0 ? args.topics : C;
    auto model = gefl::lda_fit(corpus, topics, args.lda_iterations, args.alpha,
                               args.eta, args.seed);
    pool = gefl::lda_feature_pool(model, corpus, args.pool);
  } else {
    throw gefl::ConfigError("selection method must be info-gain or lda");
  }

  auto labeled = gefl::draw_labeled(pool, counts,
                                    gefl::mix_seed(args.seed, 0xD4), C);
  std::vector<int> taken;
  for (const auto& f : labeled.entries) taken.push_back(f.feature);
  auto neutral = gefl::neutral_features(corpus, args.neutral, taken);

  Provenance prov("select");
  prov.add("corpus", args.corpus);
  prov.add("method", args.method);
  prov.add("pool", static_cast<long>(args.pool));
  prov.add("per_class", args.per_class);
  prov.add("neutral", static_cast<long>(args.neutral));
  prov.add("topics", static_cast<long>(args.topics));
  prov.add("lda_iterations", static_cast<long>(args.lda_iterations));
  prov.add("alpha", args.alpha);
  prov.add("eta", args.eta);
  prov.add("seed", static_cast<long>(args.seed));
  prov.add("out", args.out);
  gefl::save_features(labeled, neutral, corpus, args.out, prov.lines(), &pool);

  std::cout << "labeled=" << labeled.size() << "\n"
            << "neutral=" << neutral.size() << "\n"
            << "seed=" << args.seed << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string corpus;
  std::string features;
  std::string method = "ge-fl";
  double beta = 5.0;
  double sigma = 1.0;
  std::string ref_dist;
  bool ref_from_labels = false;
  int opt_memory = 10;
  int opt_max_iterations = 300;
  double opt_tolerance = 1e-5;
  std::string out;
};

int run_train(const TrainArgs& args) {
  auto corpus = gefl::load_corpus(args.corpus);
  auto features = gefl::load_features(args.features, corpus);

  gefl::RegularizationConfig config;
  config.method = require_method(args.method);
  config.beta = args.beta;
  if (config.method == gefl::Method::kl_divergence) {
    if (args.ref_dist.empty() == !args.ref_from_labels) {
      throw gefl::ConfigError(
          "kl method needs exactly one of --ref-dist or --ref-from-labels");
    }
    if (args.ref_from_labels) {
      // Label counts stand in for rough knowledge of the class distribution;
      // labels are never seen by the objective itself.
      std::vector<double> dist(corpus.n_classes(), 0.0);
      for (const auto& doc : corpus.documents) dist[doc.label] += 1.0;
      for (double& v : dist) v /= corpus.n_documents();
      config.reference_class_distribution = dist;
    } else {
      auto dist = gefl::parse_distribution(args.ref_dist);
      if (static_cast<int>(dist.size()) != corpus.n_classes()) {
        throw gefl::ConfigError("--ref-dist needs one entry per class");
      }
      config.reference_class_distribution = dist;
    }
  }
  if (config.method == gefl::Method::neutral) {
    config.neutral_set = features.neutral;
    if (config.neutral_set.empty()) {
      throw gefl::ConfigError(
          "neutral method requires neutral features in the features file "
          "(select --neutral N)");
    }
  }

  gefl::OptimizerConfig opt;
  opt.memory = args.opt_memory;
  opt.max_iterations = args.opt_max_iterations;
  opt.gradient_tolerance = args.opt_tolerance;

  auto result = gefl::train_model(corpus, features.labeled, config, args.sigma,
                                  opt);
  if (result.trace.reason == gefl::TerminationReason::line_search_failure) {
    std::cerr << "warning: line search gave up; returning the best iterate\n";
  }

  Provenance prov("train");
  prov.add("corpus", args.corpus);
  prov.add("features", args.features);
  prov.add("method", method_name(config.method));
  prov.add("beta", args.beta);
  prov.add("lambda", args.beta * features.labeled.size());
  prov.add("sigma", args.sigma);
  prov.add("ref_dist", args.ref_dist.empty()
                           ? std::string(args.ref_from_labels ? "labels" : "")
                           : args.ref_dist);
  prov.add("opt_memory", static_cast<long>(args.opt_memory));
  prov.add("opt_max_iterations", static_cast<long>(args.opt_max_iterations));
  prov.add("opt_tolerance", args.opt_tolerance);
  prov.add("out", args.out);
  gefl::save_model(result.params, corpus, args.out, prov.lines());

  std::cout << "iterations=" << result.trace.iterations << "\n"
            << "objective=" << gefl::format_double(result.trace.final_objective)
            << "\n"
            << "gradient_norm="
            << gefl::format_double(result.trace.final_gradient_norm) << "\n"
            << "termination=" << termination_name(result.trace.reason) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string corpus;
  std::string model;
};

int run_eval(const EvalArgs& args) {
  auto corpus = gefl::load_corpus(args.corpus);
  auto loaded = gefl::load_model(args.model);
  if (loaded.params.n_features != corpus.n_features() ||
      loaded.classes != *corpus.classes) {
    throw gefl::ConfigError(
        "model and corpus disagree on vocabulary size or classes");
  }
  std::cout << "documents=" << corpus.n_documents() << "\n"
            << "accuracy="
            << gefl::format_double(gefl::accuracy(loaded.params, corpus))
            << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string name = "experiment";
  std::string corpus;
  bool synth = false;
  int synth_docs_per_class = 1000;
  int synth_vocab = 60;
  int synth_indicators = 20;
  int synth_doc_length = 8;
  int synth_classes = 2;
  double synth_noise = 0.3;
  std::string feature_source = "info_gain";
  std::string feature_file;
  int pool = 20;
  std::string counts = "10";
  std::string sweep_t;
  bool sweep_balanced = false;
  std::string betas;
  std::string unbalance_class;
  std::string unbalance_fractions;
  std::string methods = "ge_fl";
  double beta = 5.0;
  double sigma = 1.0;
  int neutral_count = 10;
  std::string ref_dist = "auto";
  int lda_topics = 0;
  int lda_iterations = 500;
  double lda_alpha = 0.0;
  double lda_eta = 0.01;
  int folds = 10;
  int repetitions = 10;
  std::uint64_t seed = 42;
  int opt_max_iterations = 300;
  double opt_tolerance = 1e-5;
  std::string out_dir = ".";
  bool emit_gnuplot = false;
};

gefl::ExperimentSpec build_spec(const SweepArgs& args) {
  gefl::ExperimentSpec spec;
  spec.name = args.name;
  if (args.synth) {
    gefl::SynthSpec synth;
    synth.docs_per_class = args.synth_docs_per_class;
    synth.vocab_size = args.synth_vocab;
    synth.indicators_per_class = args.synth_indicators;
    synth.doc_length = args.synth_doc_length;
    synth.n_classes = args.synth_classes;
    synth.noise = args.synth_noise;
    spec.synth = synth;
  } else {
    spec.corpus_path = args.corpus;
  }

  auto source = gefl::parse_feature_source(args.feature_source);
  if (!source) {
    throw gefl::ConfigError("unknown feature source: " + args.feature_source);
  }
  spec.feature_source = *source;
  spec.feature_file = args.feature_file;
  spec.pool_per_class = args.pool;
  spec.lda_topics = args.lda_topics;
  spec.lda_iterations = args.lda_iterations;
  spec.lda_alpha = args.lda_alpha;
  spec.lda_eta = args.lda_eta;

  if (!args.sweep_t.empty()) {
    auto parts = gefl::split(args.sweep_t, ':');
    if (parts.size() != 2) {
      throw gefl::ConfigError("sweep-t must look like '1:20'");
    }
    spec.sweep_t = {{static_cast<int>(gefl::parse_long(parts[0])),
                     static_cast<int>(gefl::parse_long(parts[1]))}};
  }
  spec.sweep_balanced = args.sweep_balanced;
  if (!args.betas.empty()) {
    for (const auto& b : gefl::split(args.betas, ',')) {
      spec.betas.push_back(gefl::parse_double(b));
    }
  }
  if (!args.unbalance_fractions.empty()) {
    for (const auto& f : gefl::split(args.unbalance_fractions, ',')) {
      spec.unbalance_fractions.push_back(gefl::parse_double(f));
    }
  }

  spec.methods.clear();
  for (const auto& name : gefl::split(args.methods, ',')) {
    spec.methods.push_back(require_method(std::string(gefl::trim(name))));
  }
  spec.beta = args.beta;
  spec.sigma = args.sigma;
  spec.neutral_count = args.neutral_count;
  if (args.ref_dist != "auto" && !args.ref_dist.empty()) {
    spec.reference_override = gefl::parse_distribution(args.ref_dist);
  }
  spec.folds = args.folds;
  spec.repetitions = args.repetitions;
  spec.seed = args.seed;
  spec.optimizer.max_iterations = args.opt_max_iterations;
  spec.optimizer.gradient_tolerance = args.opt_tolerance;

  spec.counts = gefl::parse_int_list(args.counts);
  return spec;
}

int run_sweep(const SweepArgs& args) {
  auto spec = build_spec(args);

  // Resolve the unbalance class name against the corpus.
  if (!args.unbalance_class.empty()) {
    const gefl::Corpus probe =
        spec.synth ? gefl::synthesize_corpus(*spec.synth, spec.seed)
                   : gefl::load_corpus(spec.corpus_path);
    spec.unbalance_class = probe.class_id(args.unbalance_class);
    if (spec.unbalance_class < 0) {
      throw gefl::ConfigError("unknown class: " + args.unbalance_class);
    }
    // Broadcast counts once the class count is known.
    spec.counts = per_class_counts(args.counts, probe.n_classes());
  } else if (spec.counts.size() == 1) {
    const gefl::Corpus probe =
        spec.synth ? gefl::synthesize_corpus(*spec.synth, spec.seed)
                   : gefl::load_corpus(spec.corpus_path);
    spec.counts = per_class_counts(args.counts, probe.n_classes());
  }

  auto table = gefl::run_experiment(spec);

  Provenance prov("sweep");
  prov.add("name", args.name);
  prov.add("corpus", args.corpus);
  prov.add("synth", args.synth);
  if (args.synth) {
    prov.add("synth_docs_per_class",
             static_cast<long>(args.synth_docs_per_class));
    prov.add("synth_vocab", static_cast<long>(args.synth_vocab));
    prov.add("synth_indicators", static_cast<long>(args.synth_indicators));
    prov.add("synth_doc_length", static_cast<long>(args.synth_doc_length));
    prov.add("synth_classes", static_cast<long>(args.synth_classes));
    prov.add("synth_noise", args.synth_noise);
  }
  prov.add("feature_source", args.feature_source);
  prov.add("feature_file", args.feature_file);
  prov.add("pool", static_cast<long>(args.pool));
  prov.add("counts", args.counts);
  prov.add("sweep_t", args.sweep_t);
  prov.add("sweep_balanced", args.sweep_balanced);
  prov.add("betas", args.betas);
  prov.add("unbalance_class", args.unbalance_class);
  prov.add("unbalance_fractions", args.unbalance_fractions);
  prov.add("methods", args.methods);
  prov.add("beta", args.beta);
  prov.add("sigma", args.sigma);
  prov.add("neutral_count", static_cast<long>(args.neutral_count));
  prov.add("ref_dist", args.ref_dist);
  prov.add("lda_topics", static_cast<long>(args.lda_topics));
  prov.add("lda_iterations", static_cast<long>(args.lda_iterations));
  prov.add("folds", static_cast<long>(args.folds));
  prov.add("repetitions", static_cast<long>(args.repetitions));
  prov.add("seed", static_cast<long>(args.seed));
  prov.add("opt_max_iterations", static_cast<long>(args.opt_max_iterations));
  prov.add("opt_tolerance", args.opt_tolerance);

  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  const std::string base = (fs::path(args.out_dir) / args.name).string();

  {
    std::ofstream out(base + "_detail.csv");
    if (!out) throw gefl::IoError("cannot write " + base + "_detail.csv");
    gefl::write_detail_csv(table, out, prov.lines());
  }
  {
    std::ofstream out(base + "_summary.csv");
    if (!out) throw gefl::IoError("cannot write " + base + "_summary.csv");
    gefl::write_summary_csv(table, out, prov.lines());
  }
  std::cout << "rows=" << table.rows.size() << "\n"
            << "detail=" << base << "_detail.csv\n"
            << "summary=" << base << "_summary.csv\n";

  std::ostringstream sweep_buf;
  if (gefl::write_sweep_csv(table, sweep_buf, prov.lines())) {
    std::ofstream out(base + "_sweep.csv");
    out << sweep_buf.str();
    std::cout << "sweep=" << base << "_sweep.csv\n";
    if (args.emit_gnuplot) {
      std::string axis = table.rows.front().setting.substr(
          0, table.rows.front().setting.find('='));
      std::ofstream script(base + "_sweep.gnuplot");
      script << gefl::gnuplot_script(base + "_sweep.csv", spec.methods, axis);
      std::cout << "gnuplot=" << base << "_sweep.gnuplot\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"Text classification from labeled features"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "Build a corpus from raw text");
  ingest->set_config("--config");
  ingest->allow_config_extras(CLI::config_extras_mode::error);
  ingest->add_option("--input", ingest_args.input, "TSV file or class directory")
      ->required();
  ingest->add_option("--format", ingest_args.format, "auto|tsv|dir");
  ingest->add_option("--stopwords", ingest_args.stopwords, "stopword file");
  ingest->add_option("--min-count", ingest_args.min_count,
                     "document-frequency floor");
  ingest->add_option("--out", ingest_args.out, "corpus file")->required();

  SelectArgs select_args;
  auto* select = app.add_subcommand("select", "Select labeled features");
  select->set_config("--config");
  select->allow_config_extras(CLI::config_extras_mode::error);
  select->add_option("--corpus", select_args.corpus, "corpus file")->required();
  select->add_option("--method", select_args.method, "info-gain|lda");
  select->add_option("--pool", select_args.pool, "pool size per class");
  select->add_option("--per-class", select_args.per_class,
                     "features drawn per class, e.g. 10,1");
  select->add_option("--neutral", select_args.neutral,
                     "neutral feature count");
  select->add_option("--topics", select_args.topics, "LDA topics (0 = |C|)");
  select->add_option("--lda-iterations", select_args.lda_iterations,
                     "Gibbs sweeps");
  select->add_option("--alpha", select_args.alpha,
                     "LDA document-topic prior (0 = 50/T)");
  select->add_option("--eta", select_args.eta, "LDA topic-word prior");
  select->add_option("--seed", select_args.seed, "draw seed");
  select->add_option("--out", select_args.out, "features file")->required();

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a classifier");
  train->set_config("--config");
  train->allow_config_extras(CLI::config_extras_mode::error);
  train->add_option("--corpus", train_args.corpus, "corpus file")->required();
  train->add_option("--features", train_args.features, "features file")
      ->required();
  train->add_option("--method", train_args.method,
                    "ge-fl|neutral|max-ent|kl");
  train->add_option("--beta", train_args.beta, "regularizer weight factor");
  train->add_option("--sigma", train_args.sigma, "L2 prior scale");
  train->add_option("--ref-dist", train_args.ref_dist,
                    "reference class distribution, e.g. 0.5,0.5 or 1:2");
  train->add_flag("--ref-from-labels", train_args.ref_from_labels,
                  "estimate the reference distribution from corpus labels");
  train->add_option("--opt-memory", train_args.opt_memory, "L-BFGS history");
  train->add_option("--opt-max-iterations", train_args.opt_max_iterations,
                    "iteration budget");
  train->add_option("--opt-tolerance", train_args.opt_tolerance,
                    "gradient sup-norm tolerance");
  train->add_option("--out", train_args.out, "model file")->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on a corpus");
  eval->set_config("--config");
  eval->allow_config_extras(CLI::config_extras_mode::error);
  eval->add_option("--corpus", eval_args.corpus, "corpus file")->required();
  eval->add_option("--model", eval_args.model, "model file")->required();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a cross-validated experiment");
  sweep->set_config("--spec", "", "experiment spec file (key = value)");
  sweep->allow_config_extras(CLI::config_extras_mode::error);
  sweep->add_option("--name", sweep_args.name, "experiment name");
  sweep->add_option("--corpus", sweep_args.corpus, "corpus file");
  sweep->add_flag("--synth", sweep_args.synth, "use the synthetic generator");
  sweep->add_option("--synth-docs-per-class", sweep_args.synth_docs_per_class);
  sweep->add_option("--synth-vocab", sweep_args.synth_vocab);
  sweep->add_option("--synth-indicators", sweep_args.synth_indicators);
  sweep->add_option("--synth-doc-length", sweep_args.synth_doc_length);
  sweep->add_option("--synth-classes", sweep_args.synth_classes);
  sweep->add_option("--synth-noise", sweep_args.synth_noise);
  sweep->add_option("--feature-source", sweep_args.feature_source,
                    "info_gain|lda|file");
  sweep->add_option("--feature-file", sweep_args.feature_file);
  sweep->add_option("--pool", sweep_args.pool);
  sweep->add_option("--counts", sweep_args.counts,
                    "per-class labeled-feature counts");
  sweep->add_option("--sweep-t", sweep_args.sweep_t, "t range, e.g. 1:20");
  sweep->add_flag("--sweep-balanced", sweep_args.sweep_balanced,
                  "sweep draws t features for every class");
  sweep->add_option("--betas", sweep_args.betas, "beta axis, e.g. 0,1,5,10");
  sweep->add_option("--unbalance-class", sweep_args.unbalance_class);
  sweep->add_option("--unbalance-fractions", sweep_args.unbalance_fractions);
  sweep->add_option("--methods", sweep_args.methods);
  sweep->add_option("--beta", sweep_args.beta);
  sweep->add_option("--sigma", sweep_args.sigma);
  sweep->add_option("--neutral-count", sweep_args.neutral_count);
  sweep->add_option("--ref-dist", sweep_args.ref_dist,
                    "auto or an explicit distribution");
  sweep->add_option("--lda-topics", sweep_args.lda_topics);
  sweep->add_option("--lda-iterations", sweep_args.lda_iterations);
  sweep->add_option("--lda-alpha", sweep_args.lda_alpha);
  sweep->add_option("--lda-eta", sweep_args.lda_eta);
  sweep->add_option("--folds", sweep_args.folds);
  sweep->add_option("--repetitions", sweep_args.repetitions);
  sweep->add_option("--seed", sweep_args.seed);
  sweep->add_option("--opt-max-iterations", sweep_args.opt_max_iterations);
  sweep->add_option("--opt-tolerance", sweep_args.opt_tolerance);
  sweep->add_option("--out-dir", sweep_args.out_dir, "output directory");
  sweep->add_flag("--emit-gnuplot", sweep_args.emit_gnuplot,
                  "write a gnuplot script next to the sweep CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (ingest->parsed()) return run_ingest(ingest_args);
  if (select->parsed()) return run_select(select_args);
  if (train->parsed()) return run_train(train_args);
  if (eval->parsed()) return run_eval(eval_args);
  if (sweep->parsed()) return run_sweep(sweep_args);
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const gefl::PoolUnderflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPoolUnderflow;
  } catch (const gefl::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
