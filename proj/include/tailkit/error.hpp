// Copyright 2026 The Tailkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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
#include <string_view>

namespace tailkit {

/// Broad failure category, surfaced as the "kind" field of CLI error objects.
enum class ErrorKind {
  kParse,
  kValidation,
  kConfiguration,
  kArgument,
  kNumerical,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed text input. `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(ErrorKind::kParse, line == 0 ? message
                                           : "line " + std::to_string(line) +
                                                 ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a domain invariant. `subject` names the
/// offending entity (entry id, class name, row index) when there is one.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::string subject = {})
      : Error(ErrorKind::kValidation, message), subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& message, std::string subject = {})
      : Error(ErrorKind::kConfiguration, message), subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error(ErrorKind::kArgument, message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorKind::kNumerical, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::kIo, message) {}
};

}  // namespace tailkit
