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

#ifndef TRIGVIZ_DATE_H_
#define TRIGVIZ_DATE_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace trigviz {

using Date = std::chrono::year_month_day;

// Parses strict ISO-8601 calendar dates (YYYY-MM-DD). Returns nullopt for
// malformed strings and impossible dates such as 1993-13-45.
std::optional<Date> parse_iso_date(std::string_view text);

// Parses `text` against a strftime-like pattern supporting %Y, %m, %d and
// literal characters, e.g. "%d/%m/%Y". "%Y-%m-%d" is the ISO default.
std::optional<Date> parse_date(std::string_view text, std::string_view format);

std::string format_iso_date(const Date& date);

// "YYYY-MM", the bucket key for monthly aggregates.
std::string format_year_month(const Date& date);

inline Date add_days(const Date& date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

// Days since 1970-01-01.
inline long days_since_epoch(const Date& date) {
  return std::chrono::sys_days{date}.time_since_epoch().count();
}

// Year as a real number (1994.26 for early April 1994); used as a chart axis.
double fractional_year(const Date& date);

}  // namespace trigviz

#endif  // TRIGVIZ_DATE_H_
