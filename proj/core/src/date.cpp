// Copyright 2026 The chipvuln Authors.
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

#include "chipvuln/date.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace chipvuln {
namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;
using std::chrono::year_month_day;

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

std::optional<int> to_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<unsigned> month_from_name(std::string_view s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
    if (lower == kMonthNames[i] || (lower.size() == 3 && kMonthNames[i].substr(0, 3) == lower)) {
      return static_cast<unsigned>(i + 1);
    }
  }
  return std::nullopt;
}

std::optional<Date> make(int y, unsigned m, unsigned d) {
  year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok() || y < 1 || y > 9999) return std::nullopt;
  return Date::from_serial(static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count()));
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

year_month_day to_ymd(std::int32_t serial) {
  return year_month_day{sys_days{std::chrono::days{serial}}};
}

}  // namespace

Date Date::from_ymd(int y, unsigned m, unsigned d) {
  auto out = make(y, m, d);
  if (!out) {
    throw std::invalid_argument("invalid calendar date " + std::to_string(y) + "-" +
                                std::to_string(m) + "-" + std::to_string(d));
  }
  return *out;
}

Date Date::today() {
  auto now = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  return from_serial(static_cast<std::int32_t>(now.time_since_epoch().count()));
}

std::optional<Date> Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = to_int(text.substr(0, 4));
  auto m = to_int(text.substr(5, 2));
  auto d = to_int(text.substr(8, 2));
  if (!y || !m || !d || *m < 1 || *d < 1) return std::nullopt;
  return make(*y, static_cast<unsigned>(*m), static_cast<unsigned>(*d));
}

std::optional<Date> Date::parse_loose(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto iso = parse_iso(text)) return iso;
  // "2023/04/03"; day-first slash forms are ambiguous and rejected
  if (text.size() == 10 && text[4] == '/' && text[7] == '/') {
    std::string dashed(text);
    dashed[4] = dashed[7] = '-';
    return parse_iso(dashed);
  }
  auto words = split_words(text);
  if (words.size() != 3) return std::nullopt;
  // "March 4 2024"
  if (auto m = month_from_name(words[0])) {
    auto d = to_int(words[1]);
    auto y = to_int(words[2]);
    if (d && y && *d > 0) return make(*y, *m, static_cast<unsigned>(*d));
    return std::nullopt;
  }
  auto m = month_from_name(words[1]);
  if (!m) return std::nullopt;
  // "2022, February 25" or "4 March 2024"
  const bool year_first = words[0].size() == 4;
  auto y = to_int(year_first ? words[0] : words[2]);
  auto d = to_int(year_first ? words[2] : words[0]);
  if (d && y && *d > 0) return make(*y, *m, static_cast<unsigned>(*d));
  return std::nullopt;
}

int Date::year() const { return static_cast<int>(to_ymd(serial_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd(serial_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd(serial_).day()); }

std::string Date::iso() const {
  auto ymd = to_ymd(serial_);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace chipvuln
