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

#include "rmboost/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rmboost/error.h"
#include "rmboost/rng.h"

namespace rmboost {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> ParseNumber(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string NormalizeName(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '-' || c == '_') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

int ResolveLabelColumn(const CsvOptions& options,
                       const std::vector<std::string_view>& header, int width) {
  const std::string& spec = options.label_column;
  if (spec == "last") return width - 1;
  if (spec == "first") return 0;
  if (const auto index = ParseNumber(spec)) {
    const int col = static_cast<int>(*index);
    if (col != *index || col < -width || col >= width) {
      internal::ThrowInvalid("label column index " + spec + " out of range");
    }
    return col < 0 ? width + col : col;
  }
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (header[c] == spec) return c;
  }
  internal::ThrowInvalid("label column '" + spec + "' not found in header");
}

std::map<std::string, int> DefaultLabelMapping(const std::set<std::string>& tokens) {
  std::map<std::string, int> mapping;
  bool numeric = true;
  for (const std::string& t : tokens) {
    const auto v = ParseNumber(t);
    if (!v || (*v != -1.0 && *v != 0.0 && *v != 1.0)) {
      numeric = false;
      break;
    }
  }
  if (numeric) {
    for (const std::string& t : tokens) mapping[t] = *ParseNumber(t) > 0.0 ? 1 : -1;
    return mapping;
  }
  int label = -1;
  for (const std::string& t : tokens) {  // std::set iterates in lexicographic order
    mapping[t] = label;
    label = 1;
  }
  return mapping;
}

void AppendNumber(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

int Dataset::count(double label) const {
  return static_cast<int>((y.array() == label).count());
}

Dataset Dataset::Subset(const std::vector<int>& indices) const {
  Dataset out;
  out.name = name;
  out.feature_names = feature_names;
  out.x.resize(static_cast<Eigen::Index>(indices.size()), x.cols());
  out.y.resize(static_cast<Eigen::Index>(indices.size()));
  for (size_t r = 0; r < indices.size(); ++r) {
    out.x.row(static_cast<Eigen::Index>(r)) = x.row(indices[r]);
    out.y(static_cast<Eigen::Index>(r)) = y(indices[r]);
  }
  return out;
}

void Dataset::Validate() const {
  if (x.rows() != y.size()) internal::ThrowInvalid("dataset: |y| != number of rows");
  if (!x.allFinite()) internal::ThrowInvalid("dataset: non-finite feature value");
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 1.0 && y(i) != -1.0) internal::ThrowInvalid("dataset: label not in {-1, +1}");
  }
}

Dataset ParseCsv(std::string_view text, const CsvOptions& options, std::string name) {
  std::vector<std::string_view> lines;
  std::vector<int> line_numbers;
  {
    size_t start = 0;
    int number = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(start, end - start);
      if (!Trim(line).empty()) {
        lines.push_back(line);
        line_numbers.push_back(number);
      }
      start = end + 1;
    }
  }
  // Drop a UTF-8 byte order mark.
  if (!lines.empty() && lines[0].substr(0, 3) == "\xEF\xBB\xBF") lines[0].remove_prefix(3);
  if (lines.empty()) internal::ThrowInvalid("CSV " + name + ": empty file");

  std::vector<std::string_view> header;
  size_t first = 0;
  if (options.has_header) {
    header = SplitCells(lines[0]);
    first = 1;
  }
  if (first >= lines.size()) internal::ThrowInvalid("CSV " + name + ": no data rows");
  const int width = static_cast<int>(SplitCells(lines[first]).size());
  if (options.has_header && static_cast<int>(header.size()) != width) {
    internal::ThrowInvalid("CSV " + name + ": header has " + std::to_string(header.size()) +
                           " columns, data has " + std::to_string(width));
  }
  const int label_col = options.unlabeled ? -1 : ResolveLabelColumn(options, header, width);
  const int d = options.unlabeled ? width : width - 1;
  if (d < 1) internal::ThrowInvalid("CSV " + name + ": no feature columns");

  const Eigen::Index n = static_cast<Eigen::Index>(lines.size() - first);
  Dataset data;
  data.name = std::move(name);
  data.x.resize(n, d);
  data.y = Eigen::VectorXd::Ones(n);
  std::vector<std::string> tokens(static_cast<size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    const size_t li = first + static_cast<size_t>(r);
    const auto cells = SplitCells(lines[li]);
    const std::string where = "CSV " + data.name + " row " + std::to_string(line_numbers[li]);
    if (static_cast<int>(cells.size()) != width) {
      internal::ThrowInvalid(where + ": expected " + std::to_string(width) + " cells, got " +
                             std::to_string(cells.size()));
    }
    int f = 0;
    for (int c = 0; c < width; ++c) {
      if (c == label_col) {
        tokens[static_cast<size_t>(r)] = std::string(cells[c]);
        if (cells[c].empty()) internal::ThrowInvalid(where + ": missing label");
        continue;
      }
      const auto v = ParseNumber(cells[c]);
      if (!v) {
        internal::ThrowInvalid(where + ", column " + std::to_string(c + 1) +
                               ": non-numeric value '" + std::string(cells[c]) + "'");
      }
      data.x(r, f++) = *v;
    }
  }
  if (options.has_header) {
    for (int c = 0; c < width; ++c) {
      if (c != label_col) data.feature_names.emplace_back(header[c]);
    }
  }
  if (!options.unlabeled) {
    const std::set<std::string> distinct(tokens.begin(), tokens.end());
    if (distinct.size() > 2) {
      internal::ThrowInvalid("CSV " + data.name + ": label column has " +
                             std::to_string(distinct.size()) + " classes, expected at most 2");
    }
    const std::map<std::string, int> mapping =
        options.label_mapping.empty() ? DefaultLabelMapping(distinct) : options.label_mapping;
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto it = mapping.find(tokens[static_cast<size_t>(r)]);
      if (it == mapping.end() || (it->second != 1 && it->second != -1)) {
        internal::ThrowInvalid("CSV " + data.name + ": label '" + tokens[static_cast<size_t>(r)] +
                               "' has no mapping to -1/+1");
      }
      data.y(r) = it->second;
    }
  }
  return data;
}

Dataset LoadCsv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) internal::ThrowInvalid("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string name = path;
  if (const size_t slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (const size_t dot = name.rfind('.'); dot != std::string::npos && dot > 0) {
    name = name.substr(0, dot);
  }
  return ParseCsv(buffer.str(), options, name);
}

std::string FormatCsv(const Dataset& data) {
  std::string out;
  if (!data.feature_names.empty()) {
    for (const std::string& f : data.feature_names) out += f + ",";
    out += "label\n";
  }
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index f = 0; f < data.x.cols(); ++f) {
      AppendNumber(out, data.x(i, f));
      out += ',';
    }
    out += data.y(i) > 0 ? "1\n" : "-1\n";
  }
  return out;
}

void WriteCsv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) internal::ThrowInvalid("cannot write " + path);
  out << FormatCsv(data);
}

void SplitSpec::Validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    internal::ThrowInvalid("test_fraction must lie in (0, 1)");
  }
  if (n_repeats < 1) internal::ThrowInvalid("n_repeats must be >= 1");
}

Split StratifiedSplit(const Dataset& data, const SplitSpec& spec, int repeat_index) {
  spec.Validate();
  std::vector<int> by_class[2];
  for (int i = 0; i < data.num_samples(); ++i) by_class[data.y(i) > 0 ? 1 : 0].push_back(i);
  for (const auto& members : by_class) {
    if (members.size() < 2) {
      internal::ThrowInvalid("stratified split of " + data.name +
                             ": every class needs at least 2 members");
    }
  }
  Rng rng(StreamSeed(spec.seed, data.name, static_cast<std::uint64_t>(repeat_index), "split"));
  Split split;
  for (auto& members : by_class) {
    const int size = static_cast<int>(members.size());
    const int n_test = std::clamp(static_cast<int>(std::lround(spec.test_fraction * size)), 1,
                                  size - 1);
    rng.Shuffle(std::span<int>(members));
    split.test_indices.insert(split.test_indices.end(), members.begin(), members.begin() + n_test);
    split.train_indices.insert(split.train_indices.end(), members.begin() + n_test, members.end());
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  split.train = data.Subset(split.train_indices);
  split.test = data.Subset(split.test_indices);
  return split;
}

const std::vector<RegistryEntry>& DatasetRegistry() {
  static const std::vector<RegistryEntry> registry = {
      {"diabetes", 768, 8, "Pima Indians diabetes (UCI / Kaggle)"},
      {"german_numer", 1000, 24, "Statlog German credit, numeric version (LIBSVM german.numer)"},
      {"credit", 690, 15, "Credit approval (UCI crx), categorical columns integer-coded"},
      {"blood", 748, 4, "Blood transfusion service center (UCI)"},
      {"titanic", 891, 8, "Titanic passengers (Kaggle train.csv), see scripts/prepare_titanic.py"},
      {"raisin", 900, 7, "Raisin grains (UCI)"},
      {"qsar", 1055, 41, "QSAR biodegradation (UCI)"},
      {"climate", 540, 18, "Climate model simulation crashes (UCI)"},
  };
  return registry;
}

std::optional<RegistryEntry> FindRegistryEntry(std::string_view name) {
  const std::string key = NormalizeName(name);
  for (const RegistryEntry& e : DatasetRegistry()) {
    if (e.name == key) return e;
  }
  // Common long forms.
  static const std::map<std::string, std::string> aliases = {
      {"german", "german_numer"},       {"blood_transfusion", "blood"},
      {"diabet", "diabetes"},           {"climat", "climate"},
      {"qsar_biodegradation", "qsar"},
  };
  if (const auto it = aliases.find(key); it != aliases.end()) return FindRegistryEntry(it->second);
  return std::nullopt;
}

void ValidateShape(const Dataset& data, std::string_view registry_name) {
  const auto entry = FindRegistryEntry(registry_name);
  if (!entry) internal::ThrowInvalid("unknown registry dataset '" + std::string(registry_name) + "'");
  if (data.num_samples() != entry->samples || data.num_features() != entry->features) {
    internal::ThrowInvalid("dataset " + entry->name + " has shape (" +
                           std::to_string(data.num_samples()) + ", " +
                           std::to_string(data.num_features()) + "), expected (" +
                           std::to_string(entry->samples) + ", " +
                           std::to_string(entry->features) + ")");
  }
}

}  // namespace rmboost
