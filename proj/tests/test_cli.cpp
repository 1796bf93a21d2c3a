// End-to-end tests of the gefl binary: pipelines, exit codes, provenance,
// and byte-identical sweep reruns.

#include <cstdlib>
#include <string>

#include "doctest.h"
#include "gefl/io_util.hpp"
#include "test_helpers.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const std::string& log_path) {
  const std::string command =
      std::string(GEFL_CLI_PATH) + " " + args + " > " + log_path + " 2>&1";
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  result.output = gefl_test::read_file(log_path);
  return result;
}

std::string value_of(const std::string& output, const std::string& key) {
  for (const auto& line : gefl::split(output, '\n')) {
    auto eq = line.find('=');
    if (eq != std::string::npos && line.substr(0, eq) == key) {
      return line.substr(eq + 1);
    }
  }
  return "";
}

// Small but learnable two-class TSV corpus.
std::string demo_tsv() {
  std::string tsv;
  const char* pos_words[] = {"great", "wonderful", "superb", "delight"};
  const char* neg_words[] = {"awful", "boring", "dreadful", "mess"};
  for (int i = 0; i < 40; ++i) {
    tsv += "pos\tthe film was " + std::string(pos_words[i % 4]) + " and " +
           pos_words[(i + 1) % 4] + " story acting\n";
    tsv += "neg\tthe film was " + std::string(neg_words[i % 4]) + " and " +
           neg_words[(i + 1) % 4] + " story acting\n";
  }
  return tsv;
}

}  // namespace

TEST_CASE("ingest -> select -> train -> eval pipeline") {
  gefl_test::TempDir tmp("cli_pipeline");
  gefl_test::write_file(tmp.path("movie.tsv"), demo_tsv());
  gefl_test::write_file(tmp.path("stop.txt"), "the\nand\nwas\n");

  auto ingest = run_cli("ingest --input " + tmp.path("movie.tsv") +
                            " --stopwords " + tmp.path("stop.txt") +
                            " --min-count 2 --out " + tmp.path("movie.corpus"),
                        tmp.path("ingest.log"));
  REQUIRE(ingest.exit_code == 0);
  CHECK(value_of(ingest.output, "documents") == "80");
  CHECK(value_of(ingest.output, "classes") == "2");
  CHECK(value_of(ingest.output, "min_count") == "2");

  // Provenance header is embedded in the corpus file.
  auto corpus_text = gefl_test::read_file(tmp.path("movie.corpus"));
  CHECK(corpus_text.find("# command = ingest") != std::string::npos);
  CHECK(corpus_text.find("# min_count = 2") != std::string::npos);

  auto select = run_cli("select --corpus " + tmp.path("movie.corpus") +
                            " --method info-gain --pool 4 --per-class 2,2" +
                            " --neutral 2 --seed 7 --out " +
                            tmp.path("features.tsv"),
                        tmp.path("select.log"));
  REQUIRE(select.exit_code == 0);
  CHECK(value_of(select.output, "labeled") == "4");
  CHECK(value_of(select.output, "neutral") == "2");

  auto train = run_cli("train --corpus " + tmp.path("movie.corpus") +
                           " --features " + tmp.path("features.tsv") +
                           " --method kl --beta 5 --ref-from-labels --out " +
                           tmp.path("model.txt"),
                       tmp.path("train.log"));
  REQUIRE(train.exit_code == 0);
  CHECK(value_of(train.output, "termination") == "converged");

  auto eval = run_cli("eval --corpus " + tmp.path("movie.corpus") +
                          " --model " + tmp.path("model.txt"),
                      tmp.path("eval.log"));
  REQUIRE(eval.exit_code == 0);
  const std::string accuracy = value_of(eval.output, "accuracy");
  REQUIRE(!accuracy.empty());
  CHECK(gefl::parse_double(accuracy) == doctest::Approx(1.0));

  // ge-fl equals kl with beta 0.
  auto gefl_train = run_cli("train --corpus " + tmp.path("movie.corpus") +
                                " --features " + tmp.path("features.tsv") +
                                " --method ge-fl --out " + tmp.path("m1.txt"),
                            tmp.path("t1.log"));
  auto kl0_train = run_cli("train --corpus " + tmp.path("movie.corpus") +
                               " --features " + tmp.path("features.tsv") +
                               " --method kl --beta 0 --ref-from-labels" +
                               " --out " + tmp.path("m2.txt"),
                           tmp.path("t2.log"));
  REQUIRE(gefl_train.exit_code == 0);
  REQUIRE(kl0_train.exit_code == 0);
  auto strip_header = [](const std::string& text) {
    return text.substr(text.find("sigma "));
  };
  CHECK(strip_header(gefl_test::read_file(tmp.path("m1.txt"))) ==
        strip_header(gefl_test::read_file(tmp.path("m2.txt"))));

  // Neutral method uses the neutral entries written by select.
  auto neutral_train = run_cli("train --corpus " + tmp.path("movie.corpus") +
                                   " --features " + tmp.path("features.tsv") +
                                   " --method neutral --out " +
                                   tmp.path("m3.txt"),
                               tmp.path("t3.log"));
  CHECK(neutral_train.exit_code == 0);
}

TEST_CASE("exit codes: 2 input/config, 3 pool underflow, 4 numerical") {
  gefl_test::TempDir tmp("cli_errors");
  gefl_test::write_file(tmp.path("movie.tsv"), demo_tsv());

  auto missing = run_cli("ingest --input " + tmp.path("nope.tsv") +
                             " --out " + tmp.path("x.corpus"),
                         tmp.path("e1.log"));
  CHECK(missing.exit_code == 2);

  auto bad_flag = run_cli("train --not-a-flag", tmp.path("e2.log"));
  CHECK(bad_flag.exit_code == 2);

  REQUIRE(run_cli("ingest --input " + tmp.path("movie.tsv") + " --out " +
                      tmp.path("movie.corpus"),
                  tmp.path("e3.log"))
              .exit_code == 0);

  auto underflow = run_cli("select --corpus " + tmp.path("movie.corpus") +
                               " --pool 4 --per-class 9,1 --out " +
                               tmp.path("f.tsv"),
                           tmp.path("e4.log"));
  CHECK(underflow.exit_code == 3);

  // eval against a model whose vocabulary disagrees
  REQUIRE(run_cli("select --corpus " + tmp.path("movie.corpus") +
                      " --pool 4 --per-class 2,2 --out " + tmp.path("f.tsv"),
                  tmp.path("e5.log"))
              .exit_code == 0);
  REQUIRE(run_cli("train --corpus " + tmp.path("movie.corpus") +
                      " --features " + tmp.path("f.tsv") + " --method ge-fl" +
                      " --out " + tmp.path("m.txt"),
                  tmp.path("e6.log"))
              .exit_code == 0);
  gefl_test::write_file(tmp.path("small.tsv"), "pos\tgreat story\nneg\tawful mess\n");
  REQUIRE(run_cli("ingest --input " + tmp.path("small.tsv") + " --min-count 1" +
                      " --out " + tmp.path("small.corpus"),
                  tmp.path("e7.log"))
              .exit_code == 0);
  auto mismatch = run_cli("eval --corpus " + tmp.path("small.corpus") +
                              " --model " + tmp.path("m.txt"),
                          tmp.path("e8.log"));
  CHECK(mismatch.exit_code == 2);

  // kl without a reference distribution is a config error.
  auto no_ref = run_cli("train --corpus " + tmp.path("movie.corpus") +
                            " --features " + tmp.path("f.tsv") +
                            " --method kl --out " + tmp.path("m4.txt"),
                        tmp.path("e9.log"));
  CHECK(no_ref.exit_code == 2);
}

TEST_CASE("config file drives a subcommand; flags override; unknown keys rejected") {
  gefl_test::TempDir tmp("cli_config");
  gefl_test::write_file(tmp.path("movie.tsv"), demo_tsv());
  gefl_test::write_file(tmp.path("ingest.cfg"),
                        "input = " + tmp.path("movie.tsv") + "\n" +
                            "min-count = 2\n" +
                            "out = " + tmp.path("a.corpus") + "\n");

  auto from_file = run_cli("ingest --config " + tmp.path("ingest.cfg"),
                           tmp.path("c1.log"));
  REQUIRE(from_file.exit_code == 0);
  CHECK(value_of(from_file.output, "min_count") == "2");

  // Flag wins over the file value.
  auto overridden = run_cli("ingest --config " + tmp.path("ingest.cfg") +
                                " --min-count 1 --out " + tmp.path("b.corpus"),
                            tmp.path("c2.log"));
  REQUIRE(overridden.exit_code == 0);
  CHECK(value_of(overridden.output, "min_count") == "1");

  gefl_test::write_file(tmp.path("bad.cfg"),
                        "input = x\nout = y\nbogus-key = 1\n");
  auto rejected = run_cli("ingest --config " + tmp.path("bad.cfg"),
                          tmp.path("c3.log"));
  CHECK(rejected.exit_code == 2);

  gefl_test::write_file(tmp.path("badtype.cfg"),
                        "input = " + tmp.path("movie.tsv") + "\n" +
                            "min-count = lots\nout = " + tmp.path("c.corpus") +
                            "\n");
  auto bad_type = run_cli("ingest --config " + tmp.path("badtype.cfg"),
                          tmp.path("c4.log"));
  CHECK(bad_type.exit_code == 2);
}

TEST_CASE("sweep from a spec file writes CSVs and reruns byte-identically") {
  gefl_test::TempDir tmp("cli_sweep");
  gefl_test::write_file(
      tmp.path("sweep.cfg"),
      "name = demo\n"
      "synth = true\n"
      "synth-docs-per-class = 40\n"
      "synth-vocab = 40\n"
      "synth-indicators = 8\n"
      "synth-doc-length = 8\n"
      "synth-noise = 0.3\n"
      "pool = 8\n"
      "sweep-t = 1:3\n"
      "methods = ge_fl,kl_divergence\n"
      "beta = 5\n"
      "folds = 4\n"
      "repetitions = 2\n"
      "seed = 11\n"
      "opt-max-iterations = 40\n");

  auto first = run_cli("sweep --spec " + tmp.path("sweep.cfg") +
                           " --out-dir " + tmp.path("run1") + " --emit-gnuplot",
                       tmp.path("s1.log"));
  REQUIRE(first.exit_code == 0);
  CHECK(value_of(first.output, "rows") == "12");  // 3 settings x 2 methods x 2 reps

  auto second = run_cli("sweep --spec " + tmp.path("sweep.cfg") +
                            " --out-dir " + tmp.path("run2") + " --emit-gnuplot",
                        tmp.path("s2.log"));
  REQUIRE(second.exit_code == 0);

  for (const char* file :
       {"demo_detail.csv", "demo_summary.csv", "demo_sweep.csv"}) {
    auto a = gefl_test::read_file(tmp.path("run1/") + file);
    auto b = gefl_test::read_file(tmp.path("run2/") + file);
    REQUIRE(!a.empty());
    CHECK(a == b);
  }
  CHECK(gefl_test::read_file(tmp.path("run1/demo_detail.csv"))
            .find("experiment,setting,method,fold,seed,accuracy") !=
        std::string::npos);
  CHECK(!gefl_test::read_file(tmp.path("run1/demo_sweep.gnuplot")).empty());
}
