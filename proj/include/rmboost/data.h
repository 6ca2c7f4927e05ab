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

#ifndef RMBOOST_DATA_H_
#define RMBOOST_DATA_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rmboost/baserules.h"

namespace rmboost {

struct Dataset {
  FeatureMatrix x;          // n x d, finite
  Eigen::VectorXd y;        // n labels in {-1, +1}
  std::vector<std::string> feature_names;
  std::string name;

  int num_samples() const { return static_cast<int>(x.rows()); }
  int num_features() const { return static_cast<int>(x.cols()); }
  int count(double label) const;

  // Rows `indices` of this dataset, in the given order.
  Dataset Subset(const std::vector<int>& indices) const;

  // Throws InvalidInput on NaN/Inf, non +-1 labels or a size mismatch.
  void Validate() const;
};

struct CsvOptions {
  bool has_header = true;
  // "last", "first", a 0-based column index, or a header name.
  std::string label_column = "last";
  // Parse every column as a feature; y is left filled with +1.
  bool unlabeled = false;
  // Explicit token -> label map. When empty the default applies: tokens
  // that are all numeric in {-1, 0, +1} map 0/-1 to -1 and 1 to +1;
  // otherwise the lexicographically smaller token maps to -1.
  std::map<std::string, int> label_mapping;
};

Dataset LoadCsv(const std::string& path, const CsvOptions& options = {});
Dataset ParseCsv(std::string_view text, const CsvOptions& options = {},
                 std::string name = "");

// Header row (when names exist), label in the last column, shortest
// round-trip formatting so ParseCsv(FormatCsv(d)) reproduces d bit-exactly.
std::string FormatCsv(const Dataset& data);
void WriteCsv(const Dataset& data, const std::string& path);

struct SplitSpec {
  double test_fraction = 0.1;
  int n_repeats = 100;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct Split {
  Dataset train;
  Dataset test;
  std::vector<int> train_indices;  // rows of the source dataset, increasing
  std::vector<int> test_indices;
};

// Per class, round(test_fraction * class size) rows (at least one, at most
// size - 1) go to the test side. The draw depends only on (spec.seed,
// data.name, repeat_index).
Split StratifiedSplit(const Dataset& data, const SplitSpec& spec, int repeat_index);

struct RegistryEntry {
  std::string name;
  int samples = 0;
  int features = 0;
  std::string source;
};

// The desk-scale benchmark datasets and their expected shapes.
const std::vector<RegistryEntry>& DatasetRegistry();
// Case-insensitive lookup; accepts spaces, dashes and underscores
// interchangeably ("German Numer" == "german_numer").
std::optional<RegistryEntry> FindRegistryEntry(std::string_view name);
// Throws InvalidInput when `data` does not have the registered shape.
void ValidateShape(const Dataset& data, std::string_view registry_name);

}  // namespace rmboost

#endif  // RMBOOST_DATA_H_
