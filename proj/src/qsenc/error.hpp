/*
 * Copyright 2026 The qsenc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qsenc {

enum class ErrorCode {
  InvalidArgument = 1,
  FormatMismatch,
  OutOfRange,
  MaskedSynapse,
  Parse,
  Io,
};

const char *error_code_name(ErrorCode code) noexcept;

/// Base exception for every failure raised by the simulator core.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Parse failure tied to a source location (file path and 1-based line).
class ParseError : public Error {
public:
  ParseError(const std::string &source, std::size_t line, const std::string &what)
      : Error(ErrorCode::Parse,
              source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace qsenc
