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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chipvuln/parsers.hpp"

namespace chipvuln::detail {

inline ValidationIssue reject(std::string entry, std::string field, std::string rule, std::string raw) {
  return ValidationIssue{std::move(entry), std::move(field), std::move(rule), std::move(raw),
                         IssueSeverity::kReject};
}

inline ValidationIssue warn(std::string entry, std::string field, std::string rule, std::string raw) {
  return ValidationIssue{std::move(entry), std::move(field), std::move(rule), std::move(raw),
                         IssueSeverity::kWarn};
}

// CVE text to id, or a reject issue appended to issues.
std::optional<CveId> read_cve(std::string_view raw, Date retrieved_at, const std::string& entry,
                              std::vector<ValidationIssue>& issues);

// "7.5" -> 75 tenths. Range is checked separately by check_record.
std::optional<int> read_score_tenths(std::string_view raw);

// "CVSS:3.1/AV:N/..." -> "3.1"; bare v2 vectors -> "2.0".
std::string cvss_version_from_vector(std::string_view vector);

bool has_reject(const std::vector<ValidationIssue>& issues, std::size_t from);

}  // namespace chipvuln::detail
