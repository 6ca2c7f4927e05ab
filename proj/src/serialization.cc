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

#include "rmboost/serialization.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rmboost/error.h"

namespace rmboost {
namespace {

using nlohmann::json;

void CheckEnvelope(const json& doc, const std::string& expected_kind) {
  if (!doc.is_object()) internal::ThrowInvalid("model document is not a JSON object");
  const int version = doc.value("version", -1);
  if (version != kModelFormatVersion) {
    internal::ThrowInvalid("unsupported model version " + std::to_string(version));
  }
  const std::string kind = doc.value("model_kind", "");
  if (!expected_kind.empty() && kind != expected_kind) {
    internal::ThrowInvalid("expected model_kind '" + expected_kind + "', got '" + kind + "'");
  }
}

int ReadFeature(const json& rule) {
  const int f = rule.at("feature").get<int>();
  if (f < 0) internal::ThrowInvalid("negative feature index in model");
  return f;
}

void AppendNumber(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

// Wraps nlohmann's type and key errors as InvalidInput.
template <typename F>
auto Guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    internal::ThrowInvalid(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace

json ModelToJson(const RmbModel& model) {
  json rules = json::array();
  for (const Stump& s : model.rules) {
    rules.push_back({{"feature", s.feature}, {"threshold", s.threshold}, {"polarity", s.polarity}});
  }
  json mu = json::array();
  for (Eigen::Index j = 0; j < model.mu.size(); ++j) mu.push_back(model.mu(j));
  return {{"version", kModelFormatVersion},
          {"model_kind", "rmboost"},
          {"lambda", model.lambda},
          {"rules", rules},
          {"mu", mu},
          {"minimax_risk", model.minimax_risk},
          {"rounds_run", model.rounds_run},
          {"terminated_by_break", model.terminated_by_break}};
}

json ModelToJson(const StagewiseModel& model) {
  json rules = json::array();
  if (model.kind == BaselineKind::kAdaBoost) {
    for (size_t t = 0; t < model.stumps.size(); ++t) {
      const Stump& s = model.stumps[t];
      rules.push_back({{"feature", s.feature},
                       {"threshold", s.threshold},
                       {"polarity", s.polarity},
                       {"coefficient", model.coefficients[t]}});
    }
  } else {
    for (const RegressionStump& r : model.regression_stumps) {
      rules.push_back({{"feature", r.feature},
                       {"threshold", r.threshold},
                       {"left_value", r.left_value},
                       {"right_value", r.right_value}});
    }
  }
  return {{"version", kModelFormatVersion},
          {"model_kind", BaselineKindName(model.kind)},
          {"rounds", model.rounds},
          {"rules", rules}};
}

RmbModel RmbModelFromJson(const json& doc) {
  CheckEnvelope(doc, "rmboost");
  return Guarded([&] {
    RmbModel m;
    m.lambda = doc.at("lambda").get<double>();
    for (const json& r : doc.at("rules")) {
      const int polarity = r.at("polarity").get<int>();
      if (polarity != 1 && polarity != -1) internal::ThrowInvalid("polarity must be +-1");
      m.rules.push_back({ReadFeature(r), r.at("threshold").get<double>(), polarity});
    }
    const json& mu = doc.at("mu");
    if (mu.size() != m.rules.size()) internal::ThrowInvalid("mu does not align with rules");
    m.mu.resize(static_cast<Eigen::Index>(mu.size()));
    for (size_t j = 0; j < mu.size(); ++j) m.mu(static_cast<Eigen::Index>(j)) = mu[j].get<double>();
    m.minimax_risk = doc.at("minimax_risk").get<double>();
    m.rounds_run = doc.at("rounds_run").get<int>();
    m.terminated_by_break = doc.at("terminated_by_break").get<bool>();
    return m;
  });
}

StagewiseModel StagewiseModelFromJson(const json& doc) {
  CheckEnvelope(doc, "");
  return Guarded([&] {
    StagewiseModel m;
    m.kind = ParseBaselineKind(doc.at("model_kind").get<std::string>());
    m.rounds = doc.at("rounds").get<int>();
    for (const json& r : doc.at("rules")) {
      if (m.kind == BaselineKind::kAdaBoost) {
        const int polarity = r.at("polarity").get<int>();
        if (polarity != 1 && polarity != -1) internal::ThrowInvalid("polarity must be +-1");
        m.stumps.push_back({ReadFeature(r), r.at("threshold").get<double>(), polarity});
        m.coefficients.push_back(r.at("coefficient").get<double>());
      } else {
        m.regression_stumps.push_back({ReadFeature(r), r.at("threshold").get<double>(),
                                       r.at("left_value").get<double>(),
                                       r.at("right_value").get<double>()});
      }
    }
    return m;
  });
}

std::string AnyModel::kind() const {
  if (rmboost) return "rmboost";
  if (baseline) return BaselineKindName(baseline->kind);
  return "";
}

Eigen::VectorXd AnyModel::Scores(const FeatureMatrix& x) const {
  if (rmboost) return rmboost->Scores(x);
  if (baseline) return baseline->Scores(x);
  internal::ThrowInvalid("empty model");
}

int AnyModel::max_feature() const {
  int f = -1;
  if (rmboost) {
    for (const Stump& s : rmboost->rules) f = std::max(f, s.feature);
  }
  if (baseline) {
    for (const Stump& s : baseline->stumps) f = std::max(f, s.feature);
    for (const RegressionStump& r : baseline->regression_stumps) f = std::max(f, r.feature);
  }
  return f;
}

AnyModel AnyModelFromJson(const json& doc) {
  CheckEnvelope(doc, "");
  AnyModel m;
  if (doc.value("model_kind", "") == "rmboost") {
    m.rmboost = RmbModelFromJson(doc);
  } else {
    m.baseline = StagewiseModelFromJson(doc);
  }
  return m;
}

void SaveModel(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) internal::ThrowInvalid("cannot write " + path);
  out << doc.dump(2) << "\n";
}

AnyModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) internal::ThrowInvalid("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    internal::ThrowInvalid(path + ": " + e.what());
  }
  return AnyModelFromJson(doc);
}

std::string FormatHistoryTsv(const RmbModel& model) {
  std::string out = "round\tR_k\tl1_norm_mu\tn_rules\tpricing_score\n";
  for (const RoundRecord& r : model.history) {
    out += std::to_string(r.round) + "\t";
    AppendNumber(out, r.minimax_risk);
    out += "\t";
    AppendNumber(out, r.l1_norm);
    out += "\t" + std::to_string(r.num_rules) + "\t";
    AppendNumber(out, r.pricing_score);
    out += "\n";
  }
  return out;
}

}  // namespace rmboost
