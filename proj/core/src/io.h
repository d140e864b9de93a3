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

#ifndef TRIGVIZ_SRC_IO_H_
#define TRIGVIZ_SRC_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace trigviz::io {

// Throws kNotFound when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Creates parent directories. Throws kIo on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace trigviz::io

#endif  // TRIGVIZ_SRC_IO_H_
