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

#ifndef TRIGVIZ_CSV_H_
#define TRIGVIZ_CSV_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace trigviz::csv {

// Longest cell spreadsheet tools keep before silently truncating.
inline constexpr std::size_t kSpreadsheetCellLimit = 32767;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header, or -1.
  int column(std::string_view name) const;
};

// RFC 4180 reader: header row required, quoted fields with doubled-quote
// escaping, embedded newlines inside quotes, CRLF or LF line endings.
// A leading UTF-8 byte-order mark is skipped.
Table parse(std::string_view text);
Table read_file(const std::filesystem::path& path);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

class Writer {
 public:
  explicit Writer(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& row);
  const std::string& str() const { return out_; }
  void write_file(const std::filesystem::path& path) const;

 private:
  std::size_t width_;
  std::string out_;
};

}  // namespace trigviz::csv

#endif  // TRIGVIZ_CSV_H_
