// Copyright 2026 The pcrank Authors.
//
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

#ifndef PCRANK_ERRORS_H_
#define PCRANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pcrank {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Not enough comparison data to fit (e.g. an empty win matrix).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Matchmaking asked to pair or group more items than are active.
class InsufficientPool : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Correlation of a constant vector.
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

// A judge could not produce a decision. Campaigns retry these when
// retryable() is true.
class JudgeFailure : public Error {
 public:
  explicit JudgeFailure(const std::string& what, bool retryable = true)
      : Error(what), retryable_(retryable) {}

  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// The judge answered, but the answer violates the protocol (winner not in
// the pair, ranking that is not a permutation, ...).
class InvalidJudgment : public JudgeFailure {
 public:
  explicit InvalidJudgment(const std::string& what, bool retryable = true)
      : JudgeFailure(what, retryable) {}
};

// A replay judge was asked about a pair it has no (more) records for.
class ReplayExhausted : public JudgeFailure {
 public:
  explicit ReplayExhausted(const std::string& what)
      : JudgeFailure(what, /*retryable=*/false) {}
};

}  // namespace pcrank

#endif  // PCRANK_ERRORS_H_
