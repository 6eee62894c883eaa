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
#include "chipvuln/normalize.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

#include "chipvuln/domain.hpp"
#include "chipvuln/errors.hpp"

namespace chipvuln {
namespace {

constexpr std::array<std::string_view, 5> kMarketingPrefixes = {"SNAPDRAGON", "EXYNOS", "HELIO",
                                                               "DIMENSITY", "TIGER"};

bool is_prefix_word(std::string_view upper_token) {
  return std::find(kMarketingPrefixes.begin(), kMarketingPrefixes.end(), upper_token) !=
         kMarketingPrefixes.end();
}

std::vector<std::string> tokens_of(std::string_view raw) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '-') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string join(const std::vector<std::string>& tokens, std::size_t from, std::size_t to,
                 std::string_view sep) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += sep;
    out += tokens[i];
  }
  return out;
}

}  // namespace

NormalizedChipsetName normalize_chipset_name(std::string_view raw) {
  const std::vector<std::string> original = tokens_of(raw);
  std::vector<std::string> upper;
  upper.reserve(original.size());
  for (const auto& t : original) upper.push_back(to_upper(t));

  NormalizedChipsetName out;
  auto prefix = std::find_if(upper.begin(), upper.end(), [](const std::string& t) { return is_prefix_word(t); });
  if (prefix == upper.end()) {
    out.model_number = join(upper, 0, upper.size(), "");
  } else {
    const auto at = static_cast<std::size_t>(prefix - upper.begin());
    out.marketing_name = join(original, at, original.size(), " ");
    out.model_number = at > 0 ? join(upper, 0, at, "") : join(upper, at + 1, upper.size(), "");
  }
  if (out.model_number.empty()) {
    throw NormalizationError("chipset name '" + std::string(raw) + "' has no model number");
  }
  if (is_prefix_word(out.model_number)) {
    throw NormalizationError("chipset name '" + std::string(raw) +
                             "' reduces to a bare marketing prefix");
  }
  return out;
}

}  // namespace chipvuln
