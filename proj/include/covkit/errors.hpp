// Copyright 2026 The covkit Authors
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
#include <cstdio>
#include <stdexcept>
#include <string>

namespace covkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input that violates a defining identity (cocycle, covariance, normalization...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but outside the scope of an operation.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotPositiveError : public ValidationError {
 public:
  NotPositiveError(const std::string& what, double min_eigenvalue)
      : ValidationError(what + " (min eigenvalue " + std::to_string(min_eigenvalue) + ")"),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// A computed identity missed its tolerance.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& identity, double residual, double limit)
      : Error(identity + ": residual " + format(residual) + " exceeds " + format(limit)),
        identity_(identity),
        residual_(residual) {}
  const std::string& identity() const noexcept { return identity_; }
  double residual() const noexcept { return residual_; }

 private:
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
  }
  std::string identity_;
  double residual_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " at line " + std::to_string(line) + ", column " + std::to_string(column)
                   : what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace covkit
