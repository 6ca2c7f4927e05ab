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

#ifndef RMBOOST_ERROR_H_
#define RMBOOST_ERROR_H_

#include <stdexcept>
#include <string>

namespace rmboost {

// Base class for every error raised by the library. Callers that only care
// about "the toolkit rejected this" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad CSV cell, wrong lengths, out-of-domain parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A bound or estimate whose preconditions make it meaningless.
class VacuousBound : public Error {
 public:
  using Error::Error;
};

// A solver state that valid inputs can never reach.
class InternalError : public Error {
 public:
  using Error::Error;
};

namespace internal {

[[noreturn]] inline void ThrowInvalid(const std::string& what) {
  throw InvalidInput(what);
}

}  // namespace internal
}  // namespace rmboost

#endif  // RMBOOST_ERROR_H_
