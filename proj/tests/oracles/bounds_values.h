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

// Frozen output of tests/oracles/bounds_oracle.py.

#ifndef RMBOOST_TESTS_ORACLES_BOUNDS_VALUES_H_
#define RMBOOST_TESTS_ORACLES_BOUNDS_VALUES_H_

namespace oracle {

// n = 9, D = 3, delta = 2/e: ln(3n/D) = ln 9 and ln(2/delta) = 1.
inline constexpr double kEstErrorN9D3 = 2.6562942416189625;
// l1 = 1, n = 1000, D = 3, delta = 0.05.
inline constexpr double kEpsilonDeltaL1N1000D3 = 0.42651956326593143;
// l1 = 2, n = 500, D = 2, delta = 0.1.
inline constexpr double kEpsilonDeltaL2N500D2 = 0.992504569684456;

}  // namespace oracle

#endif  // RMBOOST_TESTS_ORACLES_BOUNDS_VALUES_H_
