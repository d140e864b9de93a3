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

#include "trigviz/error.h"

namespace trigviz {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kNotFound: return "not-found";
    case ErrorKind::kDataError: return "data-error";
    case ErrorKind::kDuplicateId: return "duplicate-id";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kFingerprintMismatch: return "fingerprint-mismatch";
    case ErrorKind::kStageInputMissing: return "stage-input-missing";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace trigviz
