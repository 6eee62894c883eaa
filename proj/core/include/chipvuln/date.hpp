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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chipvuln {

// Calendar date without time of day. Arithmetic is in whole calendar days.
class Date {
 public:
  constexpr Date() = default;

  // Throws std::invalid_argument for dates that do not exist.
  static Date from_ymd(int year, unsigned month, unsigned day);
  static Date from_serial(std::int32_t days_since_epoch) {
    Date d;
    d.serial_ = days_since_epoch;
    return d;
  }
  static Date today();

  // Strict YYYY-MM-DD.
  static std::optional<Date> parse_iso(std::string_view text);

  // Accepts YYYY-MM-DD, "March 4, 2024", "4 March 2024" and "2022, February 25".
  static std::optional<Date> parse_loose(std::string_view text);

  int year() const;
  unsigned month() const;
  unsigned day() const;
  std::int32_t serial() const { return serial_; }

  Date add_days(std::int32_t n) const { return from_serial(serial_ + n); }
  bool is_first_of_month() const { return day() == 1; }

  std::string iso() const;

  friend constexpr auto operator<=>(Date, Date) = default;
  friend constexpr bool operator==(Date, Date) = default;

 private:
  std::int32_t serial_ = 0;
};

// to - from, in days.
inline std::int32_t days_between(Date from, Date to) {
  return to.serial() - from.serial();
}

}  // namespace chipvuln
