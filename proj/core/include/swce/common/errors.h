// core/include/swce/common/errors.h

// Copyright 2026  The SWCE Workbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SWCE_COMMON_ERRORS_H_
#define SWCE_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace swce {

// Violated precondition or API misuse (non-scalar loss, missing gradient,
// invalid label, empty split, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operand shapes are incompatible.
class DimensionError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Non-finite values where finite ones are required.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is shorter than the minimum the operation needs.
class TooShortError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A file parsed but violates the accepted format (rate, channels, ...).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file ended early or has inconsistent chunk sizes.
class CorruptFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration field failed validation; field() names the offender.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace swce

#endif  // SWCE_COMMON_ERRORS_H_
