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

#include <string>
#include <string_view>

#include "chipvuln/analytics.hpp"
#include "chipvuln/picker.hpp"
#include "chipvuln/serialization.hpp"

namespace chipvuln {

// Machine-readable report objects. Field names are stable and documented in
// docs/schemas.md. Each report carries a "reference_full_dataset" object with
// the values observed on the complete live dataset, for comparison only.
Json to_json(const IntroductionReport& r);
Json to_json(const DiscoveryReport& r);
Json to_json(const SeverityByLocationReport& r);
Json to_json(const PatchLatencyReport& r);
Json to_json(const AvailabilityMatrix& r);
Json to_json(const SeverityConsistencyReport& r);
Json to_json(const UnmitigatedReport& r);
Json to_json(const UpdateTimelineReport& r);
Json to_json(const std::vector<AffectedDistributionRow>& r);
Json to_json(const ImpactReport& r);
Json to_json(const FiveNumberSummary& s);
Json to_json(const KruskalWallisResult& k);
Json to_json(const PickResult& r);

// {"k", "filters": {"oems", "manufacturers", "released_from", "released_to"},
//  "locked": [device id]}. Device ids resolve against kb (NotFoundError);
// malformed input throws std::invalid_argument.
PickRequest pick_request_from_json(const Json& j, const KnowledgeBase& kb);
DeviceKey device_from_id(std::string_view id, const KnowledgeBase& kb);

struct ReportOptions {
  int threshold_days = 90;
  int window_days = 365;
  DateRange period = default_availability_period();
  Date cutoff = default_unmitigated_cutoff();
  AttributionMode mode = AttributionMode::kStrict;
};

// section: rq1 | rq2 | rq3 | rq4 | all. rq1 is exactly the introduction
// report; the others group their reports under fixed keys.
// Throws std::invalid_argument for an unknown section.
Json report_json(const KnowledgeBase& kb, std::string_view section, const ReportOptions& opts = {});
std::string report_text(const KnowledgeBase& kb, std::string_view section, const ReportOptions& opts = {});
std::string impact_text(const ImpactReport& r);

}  // namespace chipvuln
