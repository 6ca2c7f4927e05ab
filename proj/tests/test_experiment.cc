// Copyright 2026 The RMBoost Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "rmboost/error.h"
#include "rmboost/experiment.h"

namespace rmboost {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("rmboost_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  fs::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  fs::path path_;
};

Dataset Synthetic(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset d;
  d.name = "synth";
  d.x.resize(n, 3);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 3; ++f) d.x(i, f) = std::round(normal(gen) * 100.0) / 100.0;
    d.y(i) = d.x(i, 0) - 0.5 * d.x(i, 1) + 0.4 * normal(gen) > 0.2 ? 1.0 : -1.0;
  }
  d.feature_names = {"a", "b", "c"};
  return d;
}

ExperimentConfig SmallConfig(const TempDir& dir) {
  WriteCsv(Synthetic(120, 1), (dir / "synth.csv").string());
  ExperimentConfig c;
  c.datasets = {{"synth", (dir / "synth.csv").string(), {}}};
  c.methods = {"rmboost", "adaboost", "logitboost"};
  c.noise = {{NoiseKind::kNone, 0.0},
             {NoiseKind::kUniform, 0.0},
             {NoiseKind::kUniform, 0.2},
             {NoiseKind::kAdversarial, 0.2}};
  c.split.n_repeats = 3;
  c.split.seed = 5;
  c.seed = 5;
  c.rounds = 40;
  c.output_dir = (dir / "out").string();
  c.bounds = BoundSettings{2, 0.05};
  c.workers = 1;
  return c;
}

ResultRecord Rec(std::string dataset, std::string method, NoiseKind kind, double p, double err) {
  ResultRecord r;
  r.dataset = std::move(dataset);
  r.method = std::move(method);
  r.noise_kind = kind;
  r.p_noise = p;
  r.test_error_deterministic = err;
  return r;
}

TEST_SUITE("experiment") {

TEST_CASE("run produces one ordered record per cell") {
  TempDir dir("exp_run");
  const ExperimentConfig config = SmallConfig(dir);
  const ExperimentResult result = RunExperiment(config);
  REQUIRE(result.records.size() == 3 * 4 * 3);
  CHECK(result.num_failed == 0);
  size_t k = 0;
  for (int rep = 0; rep < 3; ++rep) {
    for (const NoiseSetting& ns : config.noise) {
      for (const std::string& m : config.methods) {
        const ResultRecord& r = result.records[k++];
        CHECK(r.repeat_index == rep);
        CHECK(r.noise_kind == ns.kind);
        CHECK(r.p_noise == ns.p_noise);
        CHECK(r.method == m);
        CHECK(r.test_error_deterministic >= 0.0);
        CHECK(r.test_error_deterministic <= 1.0);
        CHECK(r.lambda == doctest::Approx(1.0 / std::sqrt(r.n_train)));
        CHECK(r.n_train + r.n_test == 120);
        if (m == "rmboost") {
          REQUIRE(r.test_error_randomized.has_value());
          CHECK(r.test_error_deterministic <= 2.0 * *r.test_error_randomized + 1e-15);
          CHECK(r.minimax_risk.has_value());
          CHECK(r.eps_est.has_value());
          CHECK(r.round_bound.has_value());
        } else {
          CHECK_FALSE(r.test_error_randomized.has_value());
          CHECK_FALSE(r.minimax_risk.has_value());
        }
      }
    }
  }
}

TEST_CASE("noise touches training rows only") {
  TempDir dir("exp_noise");
  const ExperimentConfig config = SmallConfig(dir);
  const ExperimentResult result = RunExperiment(config);
  const Dataset data = LoadSource(config.datasets[0], config.data_dir);
  for (const ResultRecord& r : result.records) {
    const Split split = StratifiedSplit(data, config.split, r.repeat_index);
    const std::set<int> train(split.train_indices.begin(), split.train_indices.end());
    for (int i : r.flipped) CHECK(train.count(i) == 1);
    if (r.noise_kind == NoiseKind::kAdversarial) {
      CHECK(static_cast<int>(r.flipped.size()) == AdversarialFlipCount(0.2, r.n_train));
    }
    if (r.noise_kind == NoiseKind::kNone) CHECK(r.flipped.empty());
  }
}

TEST_CASE("uniform noise at p = 0 matches the noiseless records") {
  TempDir dir("exp_p0");
  const ExperimentResult result = RunExperiment(SmallConfig(dir));
  for (const ResultRecord& a : result.records) {
    if (a.noise_kind != NoiseKind::kNone) continue;
    for (const ResultRecord& b : result.records) {
      if (b.noise_kind == NoiseKind::kUniform && b.p_noise == 0.0 && b.method == a.method &&
          b.repeat_index == a.repeat_index) {
        CHECK(b.test_error_deterministic == a.test_error_deterministic);
        CHECK(b.minimax_risk == a.minimax_risk);
        CHECK(b.n_rules == a.n_rules);
        CHECK(b.l1_mu == a.l1_mu);
      }
    }
  }
}

TEST_CASE("records are reproducible across runs and worker counts") {
  TempDir dir("exp_det");
  ExperimentConfig config = SmallConfig(dir);
  const std::string a = FormatRecordsTsv(RunExperiment(config).records);
  config.workers = 4;
  const std::string b = FormatRecordsTsv(RunExperiment(config).records);
  CHECK(a == b);
  config.seed = 6;
  config.split.seed = 6;
  CHECK(FormatRecordsTsv(RunExperiment(config).records) != a);
}

TEST_CASE("adding a method leaves the other methods unchanged") {
  TempDir dir("exp_add");
  ExperimentConfig config = SmallConfig(dir);
  config.methods = {"rmboost"};
  const ExperimentResult one = RunExperiment(config);
  config.methods = {"adaboost", "rmboost"};
  const ExperimentResult two = RunExperiment(config);
  std::vector<ResultRecord> filtered;
  for (const ResultRecord& r : two.records) {
    if (r.method == "rmboost") filtered.push_back(r);
  }
  CHECK(FormatRecordsTsv(filtered) == FormatRecordsTsv(one.records));
}

TEST_CASE("outputs and summary are recomputable from raw records") {
  TempDir dir("exp_out");
  const ExperimentConfig config = SmallConfig(dir);
  const ExperimentResult result = RunExperiment(config);
  WriteExperimentOutputs(config, result);
  CHECK(fs::exists(fs::path(config.output_dir) / "summary.tsv"));
  CHECK(fs::exists(fs::path(config.output_dir) / "records_synth_none.tsv"));
  CHECK(fs::exists(fs::path(config.output_dir) / "records_synth_uniform_0.2.jsonl"));
  CHECK(fs::exists(fs::path(config.output_dir) / "records_synth_adversarial_0.2.jsonl"));

  std::vector<ResultRecord> back = ReadRecordsDir(config.output_dir);
  CHECK(back.size() == result.records.size());
  const std::vector<SummaryRow> rows = Summarize(back);
  CHECK(rows.size() == 4 * 3);
  for (const SummaryRow& row : rows) {
    double sum = 0.0;
    int count = 0;
    for (const ResultRecord& r : result.records) {
      if (r.dataset == row.dataset && r.method == row.method && r.noise_kind == row.noise_kind &&
          r.p_noise == row.p_noise) {
        sum += r.test_error_deterministic;
        ++count;
      }
    }
    CHECK(row.n_ok == 3);
    CHECK(row.mean_error == doctest::Approx(sum / count));
  }
  // File order differs from run order; compare as sets of lines.
  auto lines = [](const std::string& text) {
    std::multiset<std::string> out;
    size_t start = 0;
    for (size_t nl; (nl = text.find('\n', start)) != std::string::npos; start = nl + 1) {
      out.insert(text.substr(start, nl - start));
    }
    return out;
  };
  CHECK(lines(FormatSummaryTsv(rows)) == lines(FormatSummaryTsv(result.summary)));
}

TEST_CASE("record json round trip") {
  ResultRecord r = Rec("d", "rmboost", NoiseKind::kUniform, 0.1, 0.25);
  r.test_error_randomized = 0.3;
  r.minimax_risk = 0.2;
  r.terminated_by_break = true;
  r.flipped = {3, 9};
  r.noise_seed = 0xffffffffffffffffULL;
  const ResultRecord back = RecordFromJson(nlohmann::json::parse(RecordToJson(r).dump()));
  CHECK(FormatRecordsTsv({back}) == FormatRecordsTsv({r}));
  CHECK(back.flipped == r.flipped);
}

TEST_CASE("split failure marks records failed") {
  TempDir dir("exp_fail");
  Dataset d = Synthetic(20, 3);
  d.y.setOnes();
  d.y(0) = -1.0;  // one negative: cannot stratify
  WriteCsv(d, (dir / "lonely.csv").string());
  ExperimentConfig config;
  config.datasets = {{"lonely", (dir / "lonely.csv").string(), {}}};
  config.methods = {"rmboost", "adaboost"};
  config.split.n_repeats = 2;
  config.output_dir = (dir / "out").string();
  const ExperimentResult result = RunExperiment(config);
  CHECK(result.records.size() == 4);
  CHECK(result.num_failed == 4);
  CHECK(result.records[0].error.find("at least 2") != std::string::npos);
  CHECK(Summarize(result.records)[0].n_failed == 2);
}

TEST_CASE("registry shapes are enforced") {
  TempDir dir("exp_shape");
  WriteCsv(Synthetic(30, 2), (dir / "blood.csv").string());
  ExperimentConfig config;
  config.datasets = {{"blood", "", {}}};
  config.data_dir = dir.str();
  config.output_dir = (dir / "out").string();
  CHECK_THROWS_WITH_AS(RunExperiment(config), doctest::Contains("expected (748, 4)"),
                       InvalidInput);
  config.datasets = {{"raisin", "", {}}};
  CHECK_THROWS_WITH_AS(RunExperiment(config), doctest::Contains("fetch_datasets"), InvalidInput);
}

TEST_CASE("config parsing") {
  const nlohmann::json doc = nlohmann::json::parse(R"({
    "datasets": ["blood", {"name": "mine", "path": "x.csv", "label_column": 0}],
    "methods": ["rmboost", "adaboost"],
    "noise": [{"kind": "none"}, {"kind": "uniform", "p": 0.1}],
    "split": {"test_fraction": 0.1, "n_repeats": 7},
    "lambda_policy": "inv-sqrt-n",
    "output_dir": "out",
    "seed": 11,
    "bounds": {"vc_dim": 3, "delta": 0.05}
  })");
  const ExperimentConfig c = ExperimentConfigFromJson(doc);
  CHECK(c.datasets.size() == 2);
  CHECK(c.datasets[1].csv.label_column == "0");
  CHECK(c.split.n_repeats == 7);
  CHECK(c.split.seed == 11);
  CHECK_FALSE(c.fixed_lambda.has_value());
  CHECK(c.noise[1].label() == "uniform_0.1");
  CHECK(c.bounds->vc_dim == 3);

  nlohmann::json fixed = doc;
  fixed["lambda_policy"] = 0.05;
  CHECK(*ExperimentConfigFromJson(fixed).fixed_lambda == 0.05);

  for (const char* bad : {R"({"datasets": []})", R"({"datasets": ["a"], "methods": ["svm"]})",
                          R"({"datasets": ["a"], "lambda_policy": "auto"})",
                          R"({"datasets": ["a"], "noise": [{"kind": "uniform", "p": 2}]})",
                          R"({"methods": ["rmboost"]})",
                          R"({"datasets": ["a"], "split": {"test_fraction": 0}})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ExperimentConfigFromJson(nlohmann::json::parse(bad)), InvalidInput);
  }
}

TEST_CASE("degradation curve") {
  std::vector<ResultRecord> records;
  for (const std::string m : {"rmboost", "adaboost"}) {
    records.push_back(Rec("credit", m, NoiseKind::kNone, 0.0, m == "rmboost" ? 0.25 : 0.5));
    records.push_back(Rec("credit", m, NoiseKind::kNone, 0.0, m == "rmboost" ? 0.5 : 0.75));
    for (double p : {0.05, 0.1, 0.15, 0.2}) {
      records.push_back(Rec("credit", m, NoiseKind::kUniform, p, 0.15 + p));
    }
  }
  const std::string tsv = EmitDegradationCurve(records, "credit", {"rmboost", "adaboost"},
                                               NoiseKind::kUniform, {0, 0.05, 0.1, 0.15, 0.2});
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 1 + 5 * 2);
  CHECK(tsv.find("0\trmboost\t0.375\t") != std::string::npos);
  CHECK(tsv.find("0\tadaboost\t0.625\t") != std::string::npos);

  CHECK_THROWS_WITH_AS(EmitDegradationCurve(records, "credit", {"rmboost"}, NoiseKind::kUniform,
                                            {0.0, 0.3, 0.4}),
                       doctest::Contains("p=0.4"), InvalidInput);
}

TEST_CASE("tradeoff summary") {
  SUBCASE("one method ranks first everywhere") {
    std::vector<ResultRecord> records = {
        Rec("a", "rmboost", NoiseKind::kNone, 0, 0.2), Rec("a", "rmboost", NoiseKind::kUniform, 0.1, 0.25),
        Rec("b", "rmboost", NoiseKind::kNone, 0, 0.1), Rec("b", "rmboost", NoiseKind::kUniform, 0.1, 0.12)};
    const auto rows = EmitTradeoffSummary(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_rank_noiseless == 1.0);
    CHECK(rows[0].mean_degradation == doctest::Approx(0.035));
  }
  SUBCASE("ties share the average rank") {
    std::vector<ResultRecord> records = {
        Rec("a", "rmboost", NoiseKind::kNone, 0, 0.2), Rec("a", "adaboost", NoiseKind::kNone, 0, 0.2),
        Rec("a", "rmboost", NoiseKind::kUniform, 0.1, 0.21),
        Rec("a", "adaboost", NoiseKind::kUniform, 0.1, 0.26)};
    const auto rows = EmitTradeoffSummary(records);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mean_rank_noiseless == 1.5);
    CHECK(rows[1].mean_rank_noiseless == 1.5);
    CHECK(rows[0].mean_degradation < rows[1].mean_degradation);
    CHECK(FormatTradeoffTsv(rows).find("rmboost\t1.5\t") != std::string::npos);
  }
  SUBCASE("gaps are listed") {
    std::vector<ResultRecord> records = {
        Rec("a", "rmboost", NoiseKind::kNone, 0, 0.2), Rec("a", "adaboost", NoiseKind::kNone, 0, 0.2),
        Rec("a", "rmboost", NoiseKind::kUniform, 0.1, 0.21)};
    CHECK_THROWS_WITH_AS(EmitTradeoffSummary(records), doctest::Contains("a adaboost uniform_0.1"),
                         InvalidInput);
  }
}

TEST_CASE("worker count resolution") {
  CHECK(ResolveWorkers(3) == 3);
  CHECK(ResolveWorkers(0) >= 1);
}

}  // TEST_SUITE
}  // namespace
}  // namespace rmboost
