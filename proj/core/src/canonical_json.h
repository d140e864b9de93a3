// Copyright 2026 The trigviz Authors.
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

#ifndef TRIGVIZ_SRC_CANONICAL_JSON_H_
#define TRIGVIZ_SRC_CANONICAL_JSON_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace trigviz {

// Deterministic rendering: keys sorted (nlohmann objects are ordered maps),
// two-space indent, LF newlines and a trailing newline, floats printed with
// `digits` significant digits. Non-finite floats throw kInvalidArgument.
std::string canonical_dump(const nlohmann::json& value, int digits);

// Rounds to `digits` significant digits through the same formatting, so
// round(x) parses back to exactly what canonical_dump printed.
double round_significant(double value, int digits);

// Parses JSON text, mapping parse failures to kDataError with `what` as
// context.
nlohmann::json parse_json(std::string_view text, std::string_view what);

}  // namespace trigviz

#endif  // TRIGVIZ_SRC_CANONICAL_JSON_H_
