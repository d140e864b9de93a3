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

#ifndef TRIGVIZ_ERROR_H_
#define TRIGVIZ_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace trigviz {

// Error classes. The CLI maps each one to a stable process exit status.
enum class ErrorKind {
  kInvalidArgument,      // bad parameter or precondition violation
  kNotFound,             // missing file or column
  kDataError,            // malformed input data
  kDuplicateId,          // doc_id collision inside a corpus
  kDegenerate,           // numerically degenerate input (constant series, collinear points)
  kFingerprintMismatch,  // vector and model built against different vocabularies
  kStageInputMissing,    // a pipeline stage ran before its producer
  kIo,                   // unwritable path, short write
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace trigviz

#endif  // TRIGVIZ_ERROR_H_
