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
#include <set>
#include <string>
#include <vector>

#include "chipvuln/knowledge_base.hpp"

namespace chipvuln {

struct PickFilters {
  std::set<std::string> oems;                     // empty: any (case-insensitive)
  std::set<ChipsetManufacturer> manufacturers;    // empty: any
  std::optional<Date> released_from;              // inclusive
  std::optional<Date> released_to;                // inclusive
};

struct PickRequest {
  int k = 1;  // total selection size, locked devices included
  PickFilters filters;
  std::vector<DeviceKey> locked;
};

struct PickResult {
  std::vector<SmartphoneModel> selection;
  std::vector<int> marginal_gain;  // per selected device, in order
  int total = 0;                   // distinct vulnerabilities covered
  std::vector<std::vector<int>> overlap;  // |V(B(a)) & V(B(b))|; diagonal |V(B(a))|
  int candidates = 0;
  std::string notice;  // truncation and similar remarks
};

bool passes(const SmartphoneModel& s, const PickFilters& f);

// Greedy maximum coverage over devices whose chipset is linked. Locked
// devices come first; then the candidate adding the most uncovered
// vulnerabilities is taken, ties broken by fewer vulnerabilities shared with
// the covered set, newer release date, then device name and OEM.
//
// std::invalid_argument: k < 1. NotFoundError: unknown locked device.
// PreconditionError: a locked device fails the filters or has no linked chipset.
PickResult pick_devices(const PickRequest& req, const KnowledgeBase& kb);

// |V(B(candidate)) \ union of V(B(s)) over the selection|.
int coverage_delta(const std::vector<DeviceKey>& selection, const DeviceKey& candidate, const KnowledgeBase& kb);

}  // namespace chipvuln
