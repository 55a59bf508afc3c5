// Copyright 2026 The relide Authors. All Rights Reserved.
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
// =============================================================================

#pragma once

#include <stdexcept>
#include <string>

namespace relide {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration of a model, estimator or experiment.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A point lies outside the support of an input distribution.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Factorization or other numerical breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A limit-state evaluation failed (external worker crash, timeout, bad reply).
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::string raw_reply = {})
      : Error(what), raw_reply_(std::move(raw_reply)) {}
  const std::string& raw_reply() const noexcept { return raw_reply_; }

 private:
  std::string raw_reply_;
};

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, std::size_t roi_count)
      : Error(what), roi_count_(roi_count) {}
  std::size_t roi_count() const noexcept { return roi_count_; }

 private:
  std::size_t roi_count_;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace relide
