// Copyright 2026 The tqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tqsim {

using cplx = std::complex<double>;

/// Error taxonomy shared by the library and the CLI (exit-code mapping).
enum class ErrorCode {
  invalid_argument = 2,
  resource_limit = 3,
  verification_failure = 4,
  plan_failure = 5,
  arity_overflow = 6,
  budget_exceeded = 7,
  undefined_logarithm = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

struct ResourceLimit : Error {
  explicit ResourceLimit(const std::string& what)
      : Error(ErrorCode::resource_limit, what) {}
};

struct PlanFailure : Error {
  explicit PlanFailure(const std::string& what)
      : Error(ErrorCode::plan_failure, what) {}
};

struct ArityOverflow : Error {
  explicit ArityOverflow(const std::string& what)
      : Error(ErrorCode::arity_overflow, what) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what)
      : Error(ErrorCode::budget_exceeded, what) {}
};

struct UndefinedLogarithm : Error {
  explicit UndefinedLogarithm(const std::string& what)
      : Error(ErrorCode::undefined_logarithm, what) {}
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace tqsim
