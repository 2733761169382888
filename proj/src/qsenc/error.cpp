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

#include "qsenc/error.hpp"

namespace qsenc {

const char *error_code_name(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::InvalidArgument:
    return "invalid_argument";
  case ErrorCode::FormatMismatch:
    return "format_mismatch";
  case ErrorCode::OutOfRange:
    return "out_of_range";
  case ErrorCode::MaskedSynapse:
    return "masked_synapse";
  case ErrorCode::Parse:
    return "parse";
  case ErrorCode::Io:
    return "io";
  }
  return "unknown";
}

} // namespace qsenc
