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

#include <cstdint>

#include "chipvuln/knowledge_base.hpp"

namespace chipvuln::bench {

struct SyntheticShape {
  int chipsets = 50;
  int vulnerabilities = 2000;
  int phones = 200;
  int updates_per_phone = 8;
  int max_affected = 6;  // chipsets per vulnerability
};

// Deterministic random knowledge base built through the public API.
KnowledgeBase synthetic_kb(const SyntheticShape& shape, std::uint64_t seed = 1);

}  // namespace chipvuln::bench
