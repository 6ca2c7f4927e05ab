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

// Batch benchmark harness: methods x datasets x noise settings x repeated
// stratified splits.
//
// Each (dataset, repeat) cell is independent. Inside a cell the split is
// drawn, lambda is computed from the training size, the adversarial
// reference (LogitBoost on clean training labels) is fitted when needed,
// each noise setting corrupts the training labels once, and every method is
// fitted on the same corrupted labels. Test labels are never corrupted.
// Random streams are keyed by (seed, dataset, repeat, purpose), so cells may
// run on any number of workers and in any order.

#ifndef RMBOOST_EXPERIMENT_H_
#define RMBOOST_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmboost/data.h"
#include "rmboost/noise.h"

namespace rmboost {

struct DatasetSource {
  std::string name;  // registry name, or any label for a path
  std::string path;  // empty: <data_dir>/<name>.csv
  CsvOptions csv;
};

struct NoiseSetting {
  NoiseKind kind = NoiseKind::kNone;
  double p_noise = 0.0;

  // "none", "uniform_0.1", "adversarial_0.2".
  std::string label() const;
};

struct BoundSettings {
  int vc_dim = 1;
  double delta = 0.05;
};

struct ExperimentConfig {
  std::vector<DatasetSource> datasets;
  std::string data_dir = "data";
  std::vector<std::string> methods = {"rmboost"};
  std::vector<NoiseSetting> noise = {NoiseSetting{}};
  SplitSpec split;
  // Unset: 1/sqrt(n_train).
  std::optional<double> fixed_lambda;
  int rounds = 200;
  std::string output_dir = "results";
  std::uint64_t seed = 0;
  std::optional<BoundSettings> bounds;
  // Worker threads; 0 reads RMBOOST_WORKERS, falling back to the core count.
  int workers = 0;

  // InvalidInput on empty datasets/methods, unknown methods or bad values.
  void Validate() const;
};

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& doc);
ExperimentConfig LoadExperimentConfig(const std::string& path);

struct ResultRecord {
  std::string dataset;
  std::string method;
  NoiseKind noise_kind = NoiseKind::kNone;
  double p_noise = 0.0;
  int repeat_index = 0;
  bool failed = false;
  std::string error;

  double test_error_deterministic = 0.0;
  std::optional<double> test_error_randomized;  // rmboost only
  std::optional<double> minimax_risk;           // rmboost only
  std::optional<bool> terminated_by_break;      // rmboost only
  std::optional<double> eps_opt;                // rmboost only, holdout estimate
  int rounds_run = 0;
  int n_rules = 0;
  double l1_mu = 0.0;
  double lambda = 0.0;
  int n_train = 0;
  int n_test = 0;
  std::vector<int> flipped;  // rows of the source dataset
  std::uint64_t seed = 0;
  std::uint64_t noise_seed = 0;
  double wall_time_ms = 0.0;  // JSON only; excluded from the TSV

  std::optional<double> eps_est;
  std::optional<double> eps_delta;
  std::optional<double> round_bound;
};

nlohmann::json RecordToJson(const ResultRecord& r);
ResultRecord RecordFromJson(const nlohmann::json& doc);

// Header plus one row per record. Deterministic given the records.
std::string FormatRecordsTsv(const std::vector<ResultRecord>& records);
// One JSON document per line.
std::string FormatRecordsJsonl(const std::vector<ResultRecord>& records);
// Reads every *.jsonl file of a directory, in file-name order.
std::vector<ResultRecord> ReadRecordsDir(const std::string& dir);

struct SummaryRow {
  std::string dataset;
  std::string method;
  NoiseKind noise_kind = NoiseKind::kNone;
  double p_noise = 0.0;
  int n_ok = 0;
  int n_failed = 0;
  // Means and sample standard deviations (n - 1 denominator) over the
  // successful records.
  double mean_error = 0.0, std_error = 0.0;
  std::optional<double> mean_error_randomized, std_error_randomized;
  std::optional<double> mean_minimax_risk, std_minimax_risk;
  double mean_rounds = 0.0;
  double mean_rules = 0.0;
};

// Rows ordered by first appearance of (dataset, noise, method).
std::vector<SummaryRow> Summarize(const std::vector<ResultRecord>& records);
std::string FormatSummaryTsv(const std::vector<SummaryRow>& rows);

struct ExperimentResult {
  // Ordered by (dataset, repeat, noise setting, method).
  std::vector<ResultRecord> records;
  std::vector<SummaryRow> summary;
  int num_failed = 0;
};

// Runs every cell. Loading errors and shape mismatches throw InvalidInput;
// per-fit failures are recorded and counted.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Writes records_<dataset>_<noise>.{tsv,jsonl} per (dataset, noise) and
// summary.tsv under config.output_dir.
void WriteExperimentOutputs(const ExperimentConfig& config, const ExperimentResult& result);

// Rows (p_noise, method, mean_error, std_error, n) for each grid point and
// method. p = 0 uses records of `noise_kind` at 0 when present, otherwise the
// noiseless records. Every missing cell is listed in one InvalidInput.
std::string EmitDegradationCurve(const std::vector<ResultRecord>& records,
                                 const std::string& dataset,
                                 const std::vector<std::string>& methods, NoiseKind noise_kind,
                                 const std::vector<double>& p_grid);

struct TradeoffRow {
  std::string method;
  double mean_rank_noiseless = 0.0;
  double mean_degradation = 0.0;  // mean over datasets of noisy - noiseless mean error
};

// Per dataset the methods are ranked by mean noiseless error (rank 1 best,
// ties share the average rank). The noisy setting is `noisy` when given;
// otherwise each dataset must have exactly one noisy setting.
std::vector<TradeoffRow> EmitTradeoffSummary(const std::vector<ResultRecord>& records,
                                             std::optional<NoiseSetting> noisy = std::nullopt);
std::string FormatTradeoffTsv(const std::vector<TradeoffRow>& rows);

// Shared by the harness and the CLI.
Dataset LoadSource(const DatasetSource& source, const std::string& data_dir);
int ResolveWorkers(int requested);

}  // namespace rmboost

#endif  // RMBOOST_EXPERIMENT_H_
