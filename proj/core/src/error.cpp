// Copyright 2026 The affectinfo Authors
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

#include "affectinfo/error.hpp"

namespace affectinfo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::duplicate: return "duplicate";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::domain: return "domain";
    case ErrorCode::mismatch: return "mismatch";
    case ErrorCode::degenerate_input: return "degenerate_input";
    case ErrorCode::undefined_ratio: return "undefined_ratio";
    case ErrorCode::undefined_correlation: return "undefined_correlation";
    case ErrorCode::singular_control: return "singular_control";
    case ErrorCode::data_integrity: return "data_integrity";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::validation: return "validation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace affectinfo
