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
#include <string_view>

#include "chipvuln/domain.hpp"
#include "chipvuln/key_terms.hpp"

namespace chipvuln {

// Case-insensitive substring match of the manufacturer's component terms.
// The longest matching term wins. Equal-length winners that disagree raise
// AmbiguityError. nullopt means Unknown.
std::optional<Component> classify_component(std::string_view component_raw, ChipsetManufacturer cm,
                                            const KeyTermTable& table);

// Same discipline over terms carrying a location.
Location classify_location(std::string_view text, ChipsetManufacturer cm, const KeyTermTable& table);

// Qualcomm marks internal findings explicitly. Other manufacturers only name
// external discoverers, so a credit means External and its absence Unknown.
DiscoveryAttribution classify_discovery(const VantagePointRecord& record, ChipsetManufacturer cm);

// Analytics modes for uncredited findings.
enum class AttributionMode {
  kStrict,  // Unknown stays its own category
  kPaper,   // Unknown counts as Internal (upper bound on internal share)
};
DiscoveryAttribution effective_attribution(DiscoveryAttribution a, AttributionMode mode);

// T_patch(v): earliest chipset-manufacturer publication date.
// Throws UnresolvableError when no such record exists.
Date resolve_patch_date(const Vulnerability& vuln);

// Recomputes every derived field of vuln from its records. Idempotent.
// Ambiguous classifications leave the field Unknown.
void augment(Vulnerability& vuln, const KeyTermTable& table);

}  // namespace chipvuln
