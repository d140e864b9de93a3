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

#include "trigviz/date.h"

#include <cstdio>

namespace trigviz {
namespace {

bool read_digits(std::string_view text, std::size_t& pos, int count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (int i = 0; i < count; ++i) {
    const char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  pos += count;
  out = value;
  return true;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text, std::string_view format) {
  int year = -1, month = -1, day = -1;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < format.size(); ++f) {
    if (format[f] == '%' && f + 1 < format.size()) {
      const char spec = format[++f];
      bool ok = false;
      if (spec == 'Y') ok = read_digits(text, pos, 4, year);
      else if (spec == 'm') ok = read_digits(text, pos, 2, month);
      else if (spec == 'd') ok = read_digits(text, pos, 2, day);
      if (!ok) return std::nullopt;
    } else {
      if (pos >= text.size() || text[pos] != format[f]) return std::nullopt;
      ++pos;
    }
  }
  if (pos != text.size() || year < 0 || month < 0 || day < 0) return std::nullopt;
  Date date{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
            std::chrono::day{static_cast<unsigned>(day)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<Date> parse_iso_date(std::string_view text) {
  return parse_date(text, "%Y-%m-%d");
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::string format_year_month(const Date& date) {
  return format_iso_date(date).substr(0, 7);
}

double fractional_year(const Date& date) {
  using namespace std::chrono;
  const sys_days start{year_month_day{date.year(), January, day{1}}};
  const sys_days next{year_month_day{date.year() + years{1}, January, day{1}}};
  const double offset = (sys_days{date} - start).count();
  const double length = (next - start).count();
  return static_cast<int>(date.year()) + offset / length;
}

}  // namespace trigviz
