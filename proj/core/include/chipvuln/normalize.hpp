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

namespace chipvuln {

struct NormalizedChipsetName {
  std::string model_number;
  std::optional<std::string> marketing_name;
};

// Turns a raw chipset string into the join key used across sources.
//
// The text is upper-cased, hyphens act as separators and whitespace is
// removed from the model number. A marketing prefix word (Snapdragon, Exynos,
// Helio, Dimensity, Tiger) and everything after it become the marketing name;
// the tokens before it form the model number. When nothing precedes the
// prefix word, the tokens after it are the model number ("Exynos 2100" ->
// "2100"). Deterministic and idempotent on model_number.
//
// Throws NormalizationError if no model number remains.
NormalizedChipsetName normalize_chipset_name(std::string_view raw);

}  // namespace chipvuln
