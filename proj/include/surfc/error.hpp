// Copyright 2026 The surfc Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surfc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid input (bad operands, inconsistent parameters).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested compilation cannot be carried out on the given chip.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Raised by the brute-force oracles for inputs outside their budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace surfc
