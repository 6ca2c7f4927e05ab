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

// Command-line front end.
//
//   rmboost fit      --data train.csv --lambda auto --rounds 200 --out model.json
//   rmboost predict  --model model.json --data test.csv --out preds.tsv
//   rmboost bench    --config configs/benchmark.json --out-dir results/
//   rmboost curve    --records results/ --dataset credit --noise uniform --grid 0,0.1,0.2
//   rmboost tradeoff --records results/ [--noise uniform --p 0.1]
//
// Exit codes: 0 success, 1 usage or input error, 2 failed fits.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmboost/baselines.h"
#include "rmboost/data.h"
#include "rmboost/error.h"
#include "rmboost/experiment.h"
#include "rmboost/learner.h"
#include "rmboost/serialization.h"

namespace {

using namespace rmboost;

constexpr int kExitInput = 1;
constexpr int kExitFailures = 2;

std::string Num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) internal::ThrowInvalid("cannot write " + path);
  out << text;
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      internal::ThrowInvalid("bad grid value '" + item + "'");
    }
    grid.push_back(v);
  }
  return grid;
}

struct CsvFlags {
  std::string label_column = "last";
  bool no_header = false;

  void Register(CLI::App* cmd) {
    cmd->add_option("--label-column", label_column, "last, first, 0-based index or header name");
    cmd->add_flag("--no-header", no_header, "The first row is data");
  }
  CsvOptions Options(bool unlabeled = false) const {
    CsvOptions o;
    o.has_header = !no_header;
    o.label_column = label_column;
    o.unlabeled = unlabeled;
    return o;
  }
};

int RunFit(const std::string& data_path, const CsvFlags& csv, const std::string& method,
           const std::string& lambda_text, int rounds, const std::string& out,
           const std::string& history) {
  const Dataset data = LoadCsv(data_path, csv.Options());
  nlohmann::json doc;
  if (method == "rmboost") {
    RmbConfig config;
    config.max_rounds = rounds;
    if (lambda_text != "auto") {
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(lambda_text.data(), lambda_text.data() + lambda_text.size(), v);
      if (ec != std::errc() || ptr != lambda_text.data() + lambda_text.size()) {
        internal::ThrowInvalid("--lambda must be a number or 'auto'");
      }
      config.lambda = v;
    }
    const RmbModel model = FitRmboost(data, config);
    doc = ModelToJson(model);
    if (!history.empty()) WriteOutput(history, FormatHistoryTsv(model));
    std::cerr << "rmboost: n=" << data.num_samples() << " lambda=" << model.lambda
              << " rounds=" << model.rounds_run << " rules=" << model.rules.size()
              << " R=" << model.minimax_risk
              << (model.terminated_by_break ? " (break)" : " (round cap)") << "\n";
  } else {
    const StagewiseModel model = FitBaseline(ParseBaselineKind(method), data, rounds);
    doc = ModelToJson(model);
    std::cerr << method << ": n=" << data.num_samples() << " rounds=" << model.rounds << "\n";
  }
  SaveModel(doc, out);
  return 0;
}

int RunPredict(const std::string& model_path, const std::string& data_path, const CsvFlags& csv,
               bool unlabeled, const std::string& out) {
  const AnyModel model = LoadModel(model_path);
  const Dataset data = LoadCsv(data_path, csv.Options(unlabeled));
  if (model.max_feature() >= data.num_features()) {
    internal::ThrowInvalid("model reads feature " + std::to_string(model.max_feature()) +
                           " but the data has " + std::to_string(data.num_features()));
  }
  const Eigen::VectorXd scores = model.Scores(data.x);
  const bool randomized = model.rmboost.has_value();
  std::string text = randomized ? "row\tscore\tprob_plus\tlabel\n" : "row\tscore\tlabel\n";
  int errors = 0;
  for (int i = 0; i < data.num_samples(); ++i) {
    const int label = scores(i) >= 0.0 ? 1 : -1;
    errors += label != data.y(i);
    text += std::to_string(i) + "\t" + Num(scores(i)) + "\t";
    if (randomized) text += Num(RandomizedFromScore(scores(i))) + "\t";
    text += std::to_string(label) + "\n";
  }
  WriteOutput(out, text);
  if (!unlabeled) {
    std::cerr << "error: " << errors << "/" << data.num_samples() << " = "
              << static_cast<double>(errors) / data.num_samples() << "\n";
  }
  return 0;
}

int RunBench(const std::string& config_path, const std::string& out_dir, int workers) {
  ExperimentConfig config = LoadExperimentConfig(config_path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (workers > 0) config.workers = workers;
  const ExperimentResult result = RunExperiment(config);
  WriteExperimentOutputs(config, result);
  std::cout << FormatSummaryTsv(result.summary);
  if (result.num_failed > 0) {
    std::cerr << result.num_failed << " of " << result.records.size() << " fits failed\n";
    for (const ResultRecord& r : result.records) {
      if (r.failed) {
        std::cerr << "  " << r.dataset << " " << r.method << " "
                  << NoiseSetting{r.noise_kind, r.p_noise}.label() << " repeat "
                  << r.repeat_index << ": " << r.error << "\n";
      }
    }
    return kExitFailures;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust minimax boosting with decision stumps"};
  app.require_subcommand(1);

  CsvFlags fit_csv, predict_csv;
  std::string fit_data, fit_method = "rmboost", fit_lambda = "auto", fit_out, fit_history;
  int fit_rounds = 200;
  CLI::App* fit = app.add_subcommand("fit", "Fit a model on a CSV file");
  fit->add_option("--data", fit_data, "Training CSV")->required();
  fit->add_option("--method", fit_method, "rmboost, adaboost or logitboost");
  fit->add_option("--lambda", fit_lambda, "Regularization, or 'auto' for 1/sqrt(n)");
  fit->add_option("--rounds", fit_rounds, "Round cap")->check(CLI::PositiveNumber);
  fit->add_option("--out", fit_out, "Model JSON")->required();
  fit->add_option("--history", fit_history, "Per-round TSV (rmboost only)");
  fit_csv.Register(fit);

  std::string pred_model, pred_data, pred_out = "-";
  bool pred_unlabeled = false;
  CLI::App* predict = app.add_subcommand("predict", "Score a CSV file with a saved model");
  predict->add_option("--model", pred_model, "Model JSON")->required();
  predict->add_option("--data", pred_data, "CSV to score")->required();
  predict->add_option("--out", pred_out, "Predictions TSV, '-' for stdout");
  predict->add_flag("--unlabeled", pred_unlabeled, "Every column is a feature");
  predict_csv.Register(predict);

  std::string bench_config, bench_out;
  int bench_workers = 0;
  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark configuration");
  bench->add_option("--config", bench_config, "Experiment JSON")->required();
  bench->add_option("--out-dir", bench_out, "Overrides output_dir");
  bench->add_option("--workers", bench_workers, "Worker threads (default RMBOOST_WORKERS)");

  std::string curve_records, curve_dataset, curve_noise = "uniform", curve_grid, curve_out = "-";
  std::vector<std::string> curve_methods;
  CLI::App* curve = app.add_subcommand("curve", "Mean error against noise level");
  curve->add_option("--records", curve_records, "Directory of *.jsonl records")->required();
  curve->add_option("--dataset", curve_dataset, "Dataset name")->required();
  curve->add_option("--noise", curve_noise, "uniform or adversarial");
  curve->add_option("--grid", curve_grid, "Comma-separated noise levels")->required();
  curve->add_option("--methods", curve_methods, "Methods (default: all present)")->delimiter(',');
  curve->add_option("--out", curve_out, "TSV, '-' for stdout");

  std::string trade_records, trade_noise, trade_out = "-";
  double trade_p = -1.0;
  CLI::App* trade = app.add_subcommand("tradeoff", "Noiseless rank against degradation");
  trade->add_option("--records", trade_records, "Directory of *.jsonl records")->required();
  trade->add_option("--noise", trade_noise, "Noisy setting kind (default: the only one)");
  trade->add_option("--p", trade_p, "Noisy setting level");
  trade->add_option("--out", trade_out, "TSV, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*fit) return RunFit(fit_data, fit_csv, fit_method, fit_lambda, fit_rounds, fit_out, fit_history);
    if (*predict) return RunPredict(pred_model, pred_data, predict_csv, pred_unlabeled, pred_out);
    if (*bench) return RunBench(bench_config, bench_out, bench_workers);
    if (*curve) {
      const auto records = ReadRecordsDir(curve_records);
      WriteOutput(curve_out, EmitDegradationCurve(records, curve_dataset, curve_methods,
                                                  ParseNoiseKind(curve_noise), ParseGrid(curve_grid)));
      return 0;
    }
    if (*trade) {
      std::optional<NoiseSetting> noisy;
      if (!trade_noise.empty()) {
        if (trade_p < 0.0) internal::ThrowInvalid("--noise needs --p");
        noisy = NoiseSetting{ParseNoiseKind(trade_noise), trade_p};
      }
      WriteOutput(trade_out, FormatTradeoffTsv(EmitTradeoffSummary(ReadRecordsDir(trade_records), noisy)));
      return 0;
    }
  } catch (const FitAborted& e) {
    std::cerr << "fit aborted: " << e.what() << "\n";
    return kExitFailures;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
