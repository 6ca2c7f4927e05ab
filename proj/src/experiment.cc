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

#include "rmboost/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "rmboost/baselines.h"
#include "rmboost/bounds.h"
#include "rmboost/error.h"
#include "rmboost/learner.h"
#include "rmboost/rng.h"

namespace rmboost {
namespace {

using nlohmann::json;

const std::set<std::string> kMethods = {"rmboost", "adaboost", "logitboost"};

std::string Num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Opt(const std::optional<double>& v) { return v ? Num(*v) : "NA"; }

bool SameP(double a, double b) { return std::abs(a - b) <= 1e-12; }

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments MeanStd(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return m;
}

template <typename T>
std::optional<T> OptionalField(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

DatasetSource SourceFromJson(const json& entry) {
  DatasetSource s;
  if (entry.is_string()) {
    s.name = entry.get<std::string>();
    return s;
  }
  s.name = entry.at("name").get<std::string>();
  s.path = entry.value("path", "");
  s.csv.has_header = entry.value("has_header", true);
  if (entry.contains("label_column")) {
    const json& lc = entry.at("label_column");
    s.csv.label_column = lc.is_number() ? std::to_string(lc.get<int>()) : lc.get<std::string>();
  }
  if (entry.contains("label_mapping")) {
    for (const auto& [token, label] : entry.at("label_mapping").items()) {
      s.csv.label_mapping[token] = label.get<int>();
    }
  }
  return s;
}

// 0-1 loss of sign(score) and expected loss of the randomized rule.
struct Evaluation {
  double deterministic = 0.0;
  double randomized = 0.0;
};

Evaluation EvaluateRmb(const RmbModel& model, const Dataset& test) {
  const Eigen::VectorXd s = model.Scores(test.x);
  Evaluation e;
  for (int i = 0; i < test.num_samples(); ++i) {
    const double p_plus = RandomizedFromScore(s(i));
    const double rand_loss = test.y(i) > 0 ? 1.0 - p_plus : p_plus;
    const double det_loss = DeterministicFromScore(s(i)) != test.y(i) ? 1.0 : 0.0;
    if (det_loss > 2.0 * rand_loss) {
      throw InternalError("deterministic loss exceeds twice the randomized loss at test row " +
                          std::to_string(i));
    }
    e.deterministic += det_loss;
    e.randomized += rand_loss;
  }
  e.deterministic /= test.num_samples();
  e.randomized /= test.num_samples();
  return e;
}

double EvaluateBaseline(const StagewiseModel& model, const Dataset& test) {
  const Eigen::VectorXd s = model.Scores(test.x);
  int errors = 0;
  for (int i = 0; i < test.num_samples(); ++i) errors += (s(i) >= 0.0 ? 1.0 : -1.0) != test.y(i);
  return static_cast<double>(errors) / test.num_samples();
}

void FitAndEvaluate(const ExperimentConfig& config, const std::string& method,
                    const Dataset& train, const Dataset& test, double lambda, ResultRecord& r) {
  const auto start = std::chrono::steady_clock::now();
  if (method == "rmboost") {
    RmbConfig rc;
    rc.lambda = lambda;
    rc.max_rounds = config.rounds;
    rc.seed = config.seed;
    const RmbModel m = FitRmboost(train, rc);
    const Evaluation e = EvaluateRmb(m, test);
    r.test_error_deterministic = e.deterministic;
    r.test_error_randomized = e.randomized;
    r.minimax_risk = m.minimax_risk;
    r.terminated_by_break = m.terminated_by_break;
    r.rounds_run = m.rounds_run;
    r.n_rules = static_cast<int>(m.rules.size());
    r.l1_mu = m.l1_norm();
    r.eps_opt = EpsilonOptDiagnostic(m, train, test, lambda);
    if (config.bounds && r.p_noise < 1.0) {
      BoundInputs in;
      in.n = train.num_samples();
      in.vc_dim = config.bounds->vc_dim;
      in.delta = config.bounds->delta;
      in.p_noise = r.p_noise;
      in.lambda = lambda;
      in.l1_mu = r.l1_mu;
      in.round_risk = m.minimax_risk;
      try {
        const BoundReport b = ComputeBounds(in);
        r.eps_est = b.eps_est;
        r.eps_delta = b.eps_delta;
        r.round_bound = b.round_bound;
      } catch (const VacuousBound&) {
        // Fields stay absent.
      }
    }
  } else {
    const StagewiseModel m = FitBaseline(ParseBaselineKind(method), train, config.rounds);
    r.test_error_deterministic = EvaluateBaseline(m, test);
    r.rounds_run = m.rounds;
    r.n_rules = m.kind == BaselineKind::kAdaBoost ? static_cast<int>(m.stumps.size())
                                                   : static_cast<int>(m.regression_stumps.size());
    double l1 = 0.0;
    for (double c : m.coefficients) l1 += std::abs(c);
    r.l1_mu = l1;
  }
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<ResultRecord> RunCell(const ExperimentConfig& config, const Dataset& data,
                                  int repeat) {
  std::vector<ResultRecord> out;
  auto blank = [&](const NoiseSetting& ns, const std::string& method) {
    ResultRecord r;
    r.dataset = data.name;
    r.method = method;
    r.noise_kind = ns.kind;
    r.p_noise = ns.p_noise;
    r.repeat_index = repeat;
    r.seed = config.seed;
    return r;
  };
  auto fail_all = [&](const std::string& why) {
    out.clear();
    for (const NoiseSetting& ns : config.noise) {
      for (const std::string& method : config.methods) {
        ResultRecord r = blank(ns, method);
        r.failed = true;
        r.error = why;
        out.push_back(std::move(r));
      }
    }
    return out;
  };

  Split split;
  try {
    split = StratifiedSplit(data, config.split, repeat);
  } catch (const Error& e) {
    return fail_all(e.what());
  }
  const int n_train = split.train.num_samples();
  const double lambda =
      config.fixed_lambda.value_or(1.0 / std::sqrt(static_cast<double>(n_train)));

  std::optional<StagewiseModel> reference;
  const bool needs_reference =
      std::any_of(config.noise.begin(), config.noise.end(),
                  [](const NoiseSetting& n) { return n.kind == NoiseKind::kAdversarial; });
  if (needs_reference) {
    try {
      reference = FitLogitBoost(split.train);
    } catch (const Error& e) {
      return fail_all(std::string("adversarial reference: ") + e.what());
    }
  }

  for (const NoiseSetting& ns : config.noise) {
    NoiseSpec spec{ns.kind, ns.p_noise,
                   StreamSeed(config.seed, data.name, static_cast<std::uint64_t>(repeat),
                              NoiseKindName(ns.kind))};
    NoiseResult noise;
    std::string noise_error;
    try {
      noise = ApplyNoise(spec, split.train, reference ? &*reference : nullptr);
    } catch (const Error& e) {
      noise_error = e.what();
    }
    Dataset noisy = split.train;
    if (noise_error.empty()) noisy.y = noise.labels;
    std::vector<int> flipped;
    for (int i : noise.flipped) flipped.push_back(split.train_indices[static_cast<size_t>(i)]);

    for (const std::string& method : config.methods) {
      ResultRecord r = blank(ns, method);
      r.lambda = lambda;
      r.n_train = n_train;
      r.n_test = split.test.num_samples();
      r.noise_seed = ns.kind == NoiseKind::kUniform ? spec.seed : 0;
      r.flipped = flipped;
      if (!noise_error.empty()) {
        r.failed = true;
        r.error = noise_error;
      } else {
        try {
          FitAndEvaluate(config, method, noisy, split.test, lambda, r);
        } catch (const Error& e) {
          r.failed = true;
          r.error = e.what();
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) internal::ThrowInvalid("cannot write " + path.string());
  out << text;
}

std::string JoinGaps(const std::vector<std::string>& gaps) {
  std::string s;
  for (const std::string& g : gaps) s += "\n  " + g;
  return s;
}

}  // namespace

std::string NoiseSetting::label() const {
  if (kind == NoiseKind::kNone) return "none";
  return NoiseKindName(kind) + "_" + Num(p_noise);
}

void ExperimentConfig::Validate() const {
  if (datasets.empty()) internal::ThrowInvalid("config: no datasets");
  if (methods.empty()) internal::ThrowInvalid("config: no methods");
  for (const std::string& m : methods) {
    if (!kMethods.count(m)) internal::ThrowInvalid("config: unknown method '" + m + "'");
  }
  if (std::set<std::string>(methods.begin(), methods.end()).size() != methods.size()) {
    internal::ThrowInvalid("config: duplicate method");
  }
  if (noise.empty()) internal::ThrowInvalid("config: no noise settings");
  std::set<std::string> labels;
  for (const NoiseSetting& n : noise) {
    NoiseSpec{n.kind, n.p_noise, 0}.Validate();
    if (!labels.insert(n.label()).second) internal::ThrowInvalid("config: duplicate noise " + n.label());
  }
  split.Validate();
  if (fixed_lambda && !(*fixed_lambda > 0.0)) internal::ThrowInvalid("config: lambda must be > 0");
  if (rounds < 1) internal::ThrowInvalid("config: rounds must be >= 1");
  if (output_dir.empty()) internal::ThrowInvalid("config: empty output_dir");
  if (bounds && (bounds->vc_dim < 1 || !(bounds->delta > 0.0 && bounds->delta < 1.0))) {
    internal::ThrowInvalid("config: bounds need vc_dim >= 1 and 0 < delta < 1");
  }
  if (workers < 0) internal::ThrowInvalid("config: workers must be >= 0");
}

ExperimentConfig ExperimentConfigFromJson(const json& doc) {
  ExperimentConfig c;
  try {
    for (const json& d : doc.at("datasets")) c.datasets.push_back(SourceFromJson(d));
    c.data_dir = doc.value("data_dir", c.data_dir);
    if (doc.contains("methods")) c.methods = doc.at("methods").get<std::vector<std::string>>();
    if (doc.contains("noise")) {
      c.noise.clear();
      for (const json& n : doc.at("noise")) {
        c.noise.push_back({ParseNoiseKind(n.at("kind").get<std::string>()), n.value("p", 0.0)});
      }
    }
    if (doc.contains("split")) {
      const json& s = doc.at("split");
      c.split.test_fraction = s.value("test_fraction", c.split.test_fraction);
      c.split.n_repeats = s.value("n_repeats", c.split.n_repeats);
    }
    c.seed = doc.value("seed", c.seed);
    c.split.seed = c.seed;
    if (doc.contains("lambda_policy")) {
      const json& l = doc.at("lambda_policy");
      if (l.is_number()) {
        c.fixed_lambda = l.get<double>();
      } else if (l.get<std::string>() != "inv-sqrt-n") {
        internal::ThrowInvalid("config: lambda_policy must be a number or \"inv-sqrt-n\"");
      }
    }
    c.rounds = doc.value("rounds", c.rounds);
    c.output_dir = doc.value("output_dir", c.output_dir);
    c.workers = doc.value("workers", c.workers);
    if (doc.contains("bounds")) {
      const json& b = doc.at("bounds");
      c.bounds = BoundSettings{b.value("vc_dim", 1), b.value("delta", 0.05)};
    }
  } catch (const json::exception& e) {
    internal::ThrowInvalid(std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) internal::ThrowInvalid("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    internal::ThrowInvalid(path + ": " + e.what());
  }
  return ExperimentConfigFromJson(doc);
}

json RecordToJson(const ResultRecord& r) {
  json j = {{"dataset", r.dataset},
            {"method", r.method},
            {"noise_kind", NoiseKindName(r.noise_kind)},
            {"p_noise", r.p_noise},
            {"repeat_index", r.repeat_index},
            {"failed", r.failed},
            {"test_error_deterministic", r.test_error_deterministic},
            {"rounds_run", r.rounds_run},
            {"n_rules", r.n_rules},
            {"l1_mu", r.l1_mu},
            {"lambda", r.lambda},
            {"n_train", r.n_train},
            {"n_test", r.n_test},
            {"flipped", r.flipped},
            {"seed", r.seed},
            {"noise_seed", r.noise_seed},
            {"wall_time_ms", r.wall_time_ms}};
  if (r.failed) j["error"] = r.error;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("test_error_randomized", r.test_error_randomized);
  put("minimax_risk", r.minimax_risk);
  put("eps_opt", r.eps_opt);
  put("eps_est", r.eps_est);
  put("eps_delta", r.eps_delta);
  put("round_bound", r.round_bound);
  if (r.terminated_by_break) j["terminated_by_break"] = *r.terminated_by_break;
  return j;
}

ResultRecord RecordFromJson(const json& j) {
  try {
    ResultRecord r;
    r.dataset = j.at("dataset").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.noise_kind = ParseNoiseKind(j.at("noise_kind").get<std::string>());
    r.p_noise = j.at("p_noise").get<double>();
    r.repeat_index = j.at("repeat_index").get<int>();
    r.failed = j.at("failed").get<bool>();
    r.error = j.value("error", "");
    r.test_error_deterministic = j.at("test_error_deterministic").get<double>();
    r.rounds_run = j.value("rounds_run", 0);
    r.n_rules = j.value("n_rules", 0);
    r.l1_mu = j.value("l1_mu", 0.0);
    r.lambda = j.value("lambda", 0.0);
    r.n_train = j.value("n_train", 0);
    r.n_test = j.value("n_test", 0);
    r.flipped = j.value("flipped", std::vector<int>{});
    r.seed = j.value("seed", std::uint64_t{0});
    r.noise_seed = j.value("noise_seed", std::uint64_t{0});
    r.wall_time_ms = j.value("wall_time_ms", 0.0);
    r.test_error_randomized = OptionalField<double>(j, "test_error_randomized");
    r.minimax_risk = OptionalField<double>(j, "minimax_risk");
    r.eps_opt = OptionalField<double>(j, "eps_opt");
    r.eps_est = OptionalField<double>(j, "eps_est");
    r.eps_delta = OptionalField<double>(j, "eps_delta");
    r.round_bound = OptionalField<double>(j, "round_bound");
    r.terminated_by_break = OptionalField<bool>(j, "terminated_by_break");
    return r;
  } catch (const json::exception& e) {
    internal::ThrowInvalid(std::string("malformed record: ") + e.what());
  }
}

std::string FormatRecordsTsv(const std::vector<ResultRecord>& records) {
  std::string out =
      "dataset\tmethod\tnoise_kind\tp_noise\trepeat\tstatus\ttest_error_det\ttest_error_rand\t"
      "minimax_risk\tterminated_by_break\trounds_run\tn_rules\tl1_mu\tlambda\tn_train\tn_test\t"
      "n_flipped\tnoise_seed\teps_opt\teps_est\teps_delta\tround_bound\n";
  for (const ResultRecord& r : records) {
    out += r.dataset + "\t" + r.method + "\t" + NoiseKindName(r.noise_kind) + "\t" +
           Num(r.p_noise) + "\t" + std::to_string(r.repeat_index) + "\t" +
           (r.failed ? "failed" : "ok") + "\t" + Num(r.test_error_deterministic) + "\t" +
           Opt(r.test_error_randomized) + "\t" + Opt(r.minimax_risk) + "\t" +
           (r.terminated_by_break ? (*r.terminated_by_break ? "1" : "0") : "NA") + "\t" +
           std::to_string(r.rounds_run) + "\t" + std::to_string(r.n_rules) + "\t" +
           Num(r.l1_mu) + "\t" + Num(r.lambda) + "\t" + std::to_string(r.n_train) + "\t" +
           std::to_string(r.n_test) + "\t" + std::to_string(r.flipped.size()) + "\t" +
           std::to_string(r.noise_seed) + "\t" + Opt(r.eps_opt) + "\t" + Opt(r.eps_est) + "\t" +
           Opt(r.eps_delta) + "\t" + Opt(r.round_bound) + "\n";
  }
  return out;
}

std::string FormatRecordsJsonl(const std::vector<ResultRecord>& records) {
  std::string out;
  for (const ResultRecord& r : records) out += RecordToJson(r).dump() + "\n";
  return out;
}

std::vector<ResultRecord> ReadRecordsDir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) internal::ThrowInvalid("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ResultRecord> records;
  for (const fs::path& f : files) {
    std::ifstream in(f);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      try {
        records.push_back(RecordFromJson(json::parse(line)));
      } catch (const json::exception& e) {
        internal::ThrowInvalid(f.string() + " line " + std::to_string(number) + ": " + e.what());
      }
    }
  }
  return records;
}

std::vector<SummaryRow> Summarize(const std::vector<ResultRecord>& records) {
  struct Acc {
    SummaryRow row;
    std::vector<double> err, rand, risk, rounds, rules;
  };
  std::vector<Acc> groups;
  std::map<std::string, size_t> index;
  for (const ResultRecord& r : records) {
    const std::string key = r.dataset + "\x1f" + NoiseKindName(r.noise_kind) + "\x1f" +
                            Num(r.p_noise) + "\x1f" + r.method;
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      Acc a;
      a.row.dataset = r.dataset;
      a.row.method = r.method;
      a.row.noise_kind = r.noise_kind;
      a.row.p_noise = r.p_noise;
      groups.push_back(std::move(a));
    }
    Acc& a = groups[it->second];
    if (r.failed) {
      ++a.row.n_failed;
      continue;
    }
    ++a.row.n_ok;
    a.err.push_back(r.test_error_deterministic);
    if (r.test_error_randomized) a.rand.push_back(*r.test_error_randomized);
    if (r.minimax_risk) a.risk.push_back(*r.minimax_risk);
    a.rounds.push_back(r.rounds_run);
    a.rules.push_back(r.n_rules);
  }
  std::vector<SummaryRow> rows;
  for (Acc& a : groups) {
    const Moments e = MeanStd(a.err);
    a.row.mean_error = e.mean;
    a.row.std_error = e.std;
    if (!a.rand.empty()) {
      const Moments m = MeanStd(a.rand);
      a.row.mean_error_randomized = m.mean;
      a.row.std_error_randomized = m.std;
    }
    if (!a.risk.empty()) {
      const Moments m = MeanStd(a.risk);
      a.row.mean_minimax_risk = m.mean;
      a.row.std_minimax_risk = m.std;
    }
    a.row.mean_rounds = MeanStd(a.rounds).mean;
    a.row.mean_rules = MeanStd(a.rules).mean;
    rows.push_back(a.row);
  }
  return rows;
}

std::string FormatSummaryTsv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "dataset\tmethod\tnoise_kind\tp_noise\tn_ok\tn_failed\tmean_error\tstd_error\t"
      "mean_error_rand\tstd_error_rand\tmean_minimax_risk\tstd_minimax_risk\tmean_rounds\t"
      "mean_rules\n";
  for (const SummaryRow& r : rows) {
    out += r.dataset + "\t" + r.method + "\t" + NoiseKindName(r.noise_kind) + "\t" +
           Num(r.p_noise) + "\t" + std::to_string(r.n_ok) + "\t" + std::to_string(r.n_failed) +
           "\t" + Num(r.mean_error) + "\t" + Num(r.std_error) + "\t" +
           Opt(r.mean_error_randomized) + "\t" + Opt(r.std_error_randomized) + "\t" +
           Opt(r.mean_minimax_risk) + "\t" + Opt(r.std_minimax_risk) + "\t" +
           Num(r.mean_rounds) + "\t" + Num(r.mean_rules) + "\n";
  }
  return out;
}

Dataset LoadSource(const DatasetSource& source, const std::string& data_dir) {
  const auto entry = FindRegistryEntry(source.name);
  std::string path = source.path;
  if (path.empty()) {
    path = (std::filesystem::path(data_dir) / ((entry ? entry->name : source.name) + ".csv"))
               .string();
  }
  if (!std::filesystem::exists(path)) {
    internal::ThrowInvalid("dataset '" + source.name + "' not found at " + path +
                           " (see scripts/fetch_datasets.py)");
  }
  Dataset data = LoadCsv(path, source.csv);
  data.name = entry ? entry->name : source.name;
  data.Validate();
  if (entry) ValidateShape(data, entry->name);
  return data;
}

int ResolveWorkers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RMBOOST_WORKERS")) {
    int v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
    internal::ThrowInvalid("RMBOOST_WORKERS must be a positive integer, got '" + std::string(s) + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  std::vector<Dataset> datasets;
  for (const DatasetSource& s : config.datasets) datasets.push_back(LoadSource(s, config.data_dir));

  const int repeats = config.split.n_repeats;
  const size_t cells = datasets.size() * static_cast<size_t>(repeats);
  std::vector<std::vector<ResultRecord>> slots(cells);
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> crashes(cells);
  auto work = [&] {
    for (size_t c = next++; c < cells; c = next++) {
      try {
        slots[c] = RunCell(config, datasets[c / repeats], static_cast<int>(c % repeats));
      } catch (...) {
        crashes[c] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(ResolveWorkers(config.workers), static_cast<int>(cells));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const std::exception_ptr& e : crashes) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  for (auto& slot : slots) {
    for (ResultRecord& r : slot) {
      result.num_failed += r.failed;
      result.records.push_back(std::move(r));
    }
  }
  result.summary = Summarize(result.records);
  return result;
}

void WriteExperimentOutputs(const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) internal::ThrowInvalid("cannot create " + dir.string() + ": " + ec.message());

  std::map<std::string, std::vector<ResultRecord>> files;
  std::vector<std::string> order;
  for (const ResultRecord& r : result.records) {
    const std::string stem =
        "records_" + r.dataset + "_" + NoiseSetting{r.noise_kind, r.p_noise}.label();
    if (!files.count(stem)) order.push_back(stem);
    files[stem].push_back(r);
  }
  for (const std::string& stem : order) {
    WriteFile(dir / (stem + ".tsv"), FormatRecordsTsv(files[stem]));
    WriteFile(dir / (stem + ".jsonl"), FormatRecordsJsonl(files[stem]));
  }
  WriteFile(dir / "summary.tsv", FormatSummaryTsv(result.summary));
}

std::string EmitDegradationCurve(const std::vector<ResultRecord>& records,
                                 const std::string& dataset,
                                 const std::vector<std::string>& methods, NoiseKind noise_kind,
                                 const std::vector<double>& p_grid) {
  if (p_grid.empty()) internal::ThrowInvalid("curve: empty grid");
  std::vector<std::string> use_methods = methods;
  if (use_methods.empty()) {
    for (const ResultRecord& r : records) {
      if (r.dataset == dataset &&
          std::find(use_methods.begin(), use_methods.end(), r.method) == use_methods.end()) {
        use_methods.push_back(r.method);
      }
    }
  }
  if (use_methods.empty()) internal::ThrowInvalid("curve: no records for dataset " + dataset);

  auto collect = [&](const std::string& method, NoiseKind kind, double p) {
    std::vector<double> v;
    for (const ResultRecord& r : records) {
      if (!r.failed && r.dataset == dataset && r.method == method && r.noise_kind == kind &&
          SameP(r.p_noise, p)) {
        v.push_back(r.test_error_deterministic);
      }
    }
    return v;
  };

  std::string out = "p_noise\tmethod\tmean_error\tstd_error\tn\n";
  std::vector<std::string> gaps;
  for (double p : p_grid) {
    for (const std::string& method : use_methods) {
      std::vector<double> v = collect(method, noise_kind, p);
      if (v.empty() && p == 0.0) v = collect(method, NoiseKind::kNone, 0.0);
      if (v.empty()) {
        gaps.push_back(dataset + " " + method + " " + NoiseKindName(noise_kind) + " p=" + Num(p));
        continue;
      }
      const Moments m = MeanStd(v);
      out += Num(p) + "\t" + method + "\t" + Num(m.mean) + "\t" + Num(m.std) + "\t" +
             std::to_string(v.size()) + "\n";
    }
  }
  if (!gaps.empty()) internal::ThrowInvalid("curve: missing grid cells:" + JoinGaps(gaps));
  return out;
}

std::vector<TradeoffRow> EmitTradeoffSummary(const std::vector<ResultRecord>& records,
                                             std::optional<NoiseSetting> noisy) {
  const std::vector<SummaryRow> summary = Summarize(records);
  std::vector<std::string> datasets, methods;
  for (const SummaryRow& s : summary) {
    if (std::find(datasets.begin(), datasets.end(), s.dataset) == datasets.end()) {
      datasets.push_back(s.dataset);
    }
    if (std::find(methods.begin(), methods.end(), s.method) == methods.end()) {
      methods.push_back(s.method);
    }
  }
  if (datasets.empty()) internal::ThrowInvalid("tradeoff: no records");

  auto find = [&](const std::string& d, const std::string& m, NoiseKind k,
                  double p) -> const SummaryRow* {
    for (const SummaryRow& s : summary) {
      if (s.dataset == d && s.method == m && s.noise_kind == k && SameP(s.p_noise, p) &&
          s.n_ok > 0) {
        return &s;
      }
    }
    return nullptr;
  };

  std::map<std::string, double> rank_sum, degradation_sum;
  std::vector<std::string> gaps;
  for (const std::string& d : datasets) {
    NoiseSetting setting;
    if (noisy) {
      setting = *noisy;
    } else {
      std::set<std::string> labels;
      for (const SummaryRow& s : summary) {
        if (s.dataset == d && s.noise_kind != NoiseKind::kNone) {
          labels.insert(NoiseSetting{s.noise_kind, s.p_noise}.label());
          setting = {s.noise_kind, s.p_noise};
        }
      }
      if (labels.size() != 1) {
        gaps.push_back(d + ": expected exactly one noisy setting, found " +
                       std::to_string(labels.size()));
        continue;
      }
    }
    std::vector<std::pair<double, std::string>> clean;
    bool complete = true;
    for (const std::string& m : methods) {
      const SummaryRow* c = find(d, m, NoiseKind::kNone, 0.0);
      const SummaryRow* n = find(d, m, setting.kind, setting.p_noise);
      if (!c) gaps.push_back(d + " " + m + " none");
      if (!n) gaps.push_back(d + " " + m + " " + setting.label());
      if (!c || !n) {
        complete = false;
        continue;
      }
      clean.push_back({c->mean_error, m});
      degradation_sum[m] += n->mean_error - c->mean_error;
    }
    if (!complete) continue;
    // Average rank over ties.
    std::sort(clean.begin(), clean.end());
    for (size_t i = 0; i < clean.size();) {
      size_t j = i;
      while (j < clean.size() && clean[j].first == clean[i].first) ++j;
      const double rank = 0.5 * static_cast<double>(i + 1 + j);
      for (size_t q = i; q < j; ++q) rank_sum[clean[q].second] += rank;
      i = j;
    }
  }
  if (!gaps.empty()) internal::ThrowInvalid("tradeoff: coverage gaps:" + JoinGaps(gaps));

  std::vector<TradeoffRow> rows;
  const double nd = static_cast<double>(datasets.size());
  for (const std::string& m : methods) {
    rows.push_back({m, rank_sum[m] / nd, degradation_sum[m] / nd});
  }
  return rows;
}

std::string FormatTradeoffTsv(const std::vector<TradeoffRow>& rows) {
  std::string out = "method\tmean_rank_noiseless\tmean_degradation\n";
  for (const TradeoffRow& r : rows) {
    out += r.method + "\t" + Num(r.mean_rank_noiseless) + "\t" + Num(r.mean_degradation) + "\n";
  }
  return out;
}

}  // namespace rmboost
