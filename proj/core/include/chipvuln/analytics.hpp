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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chipvuln/augmentation.hpp"
#include "chipvuln/knowledge_base.hpp"
#include "chipvuln/statistics.hpp"

namespace chipvuln {

// ---- Introduction (RQ1) ----------------------------------------------------

// v is newly introduced in c iff no chipset affected by v was released
// strictly earlier than c. nullopt: some affected chipset lacks a release date.
// Throws PreconditionError if v is not in V(c).
std::optional<bool> newly_introduced(const Vulnerability& v, const ChipsetModel& c, const KnowledgeBase& kb);

// not newly introduced, T_rel(c) <= T_patch(v) and v in V(c).
// nullopt: T_patch unresolvable or a release date is missing.
std::optional<bool> persists_into(const Vulnerability& v, const ChipsetModel& c, const KnowledgeBase& kb);

// Earliest-released chipset of the same manufacturer released strictly later.
const ChipsetModel* next_chipset(const ChipsetModel& c, const KnowledgeBase& kb);

struct ChipsetIntroduction {
  ChipsetKey chipset;
  Date release_date;
  int total = 0;       // included vulnerabilities in V(c)
  int excluded = 0;    // affected chipsets without release date
  int newly_introduced = 0;
  int inherited = 0;
  int persisting = 0;
  int unpatched = 0;   // no resolvable T_patch; not counted in persisting
  std::optional<ChipsetKey> next;
  int removed_before_next = 0;  // T_patch <= T_rel(next); only when next exists
  double newly_share = 0;
  double inherited_share = 0;
  std::optional<double> removed_before_next_share;
};

struct IntroductionReport {
  std::vector<ChipsetIntroduction> chipsets;  // chipsets with a release date and total > 0
  std::vector<ChipsetKey> chipsets_without_release_date;
  std::vector<CveId> excluded_vulnerabilities;
  std::optional<double> mean_total, median_total;
  std::optional<double> mean_newly_share, median_newly_share;
  std::optional<double> mean_inherited_share;
  std::optional<double> mean_removed_before_next_share, median_removed_before_next_share;
};
IntroductionReport introduction_report(const KnowledgeBase& kb);

// ---- Discovery (RQ2) -------------------------------------------------------

struct AttributionCounts {
  int total = 0;
  int internal = 0;
  int external = 0;
  int unknown = 0;
  double internal_fraction() const { return total ? static_cast<double>(internal) / total : 0.0; }
};

struct DiscoveryYear {
  ChipsetManufacturer manufacturer;
  int year = 0;
  AttributionCounts counts;
};

struct ComponentDiscoveryRow {
  std::optional<Component> component;  // nullopt row holds Unknown
  std::map<ChipsetManufacturer, AttributionCounts> per_manufacturer;
  AttributionCounts all;
};

struct DiscoveryReport {
  AttributionMode mode = AttributionMode::kStrict;
  std::vector<DiscoveryYear> per_year;          // ordered by manufacturer, year
  std::vector<ComponentDiscoveryRow> components;  // fixed component order, Unknown last
  int skipped_without_bulletin = 0;
};
DiscoveryReport discovery_report(const KnowledgeBase& kb, AttributionMode mode = AttributionMode::kStrict);

// ---- Patching (RQ3) --------------------------------------------------------

// Score of the most recent NVD record that carries one.
std::optional<CvssScore> nist_severity(const Vulnerability& v);
// Score of the first bulletin record (natural-key order) that carries one.
std::optional<CvssScore> cm_severity(const Vulnerability& v);

struct LocationSeverity {
  Location location;
  std::optional<FiveNumberSummary> summary;
};

struct SeverityByLocationReport {
  LocationSeverity firmware{Location::kFirmware, std::nullopt};
  LocationSeverity driver{Location::kDriver, std::nullopt};
  std::optional<double> median_difference;  // firmware - driver
  std::optional<KruskalWallisResult> test;
  std::string notice;  // set when the test could not run
  int without_nist_score = 0;
  int unknown_location = 0;
};
SeverityByLocationReport severity_by_location(const KnowledgeBase& kb);

struct LatencyEntry {
  CveId cve;
  ChipsetManufacturer manufacturer;
  int days = 0;
};

struct LatencySummary {
  int n = 0;
  int compliant = 0;
  double compliance = 0;
  std::optional<double> median, q95;
};

struct PatchLatencyReport {
  int threshold_days = 90;
  std::vector<LatencyEntry> entries;      // nonnegative day counts
  std::vector<LatencyEntry> data_errors;  // negative day counts
  LatencySummary overall;
  std::map<ChipsetManufacturer, LatencySummary> per_manufacturer;
};
PatchLatencyReport patch_latency_report(const KnowledgeBase& kb, int threshold_days = 90);

struct DateRange {
  Date first;
  Date last;  // inclusive
};
DateRange default_availability_period();

struct AvailabilityRow {
  ChipsetManufacturer manufacturer;
  int n = 0;
  int in_cm = 0;
  int in_nvd = 0;
  int in_aosp = 0;
  double cm_share = 0, nvd_share = 0, aosp_share = 0;
};

struct AvailabilityMatrix {
  int window_days = 365;
  DateRange period;
  std::vector<AvailabilityRow> rows;  // manufacturers with n > 0
};
AvailabilityMatrix availability_matrix(const KnowledgeBase& kb, int window_days = 365,
                                       DateRange period = default_availability_period());

struct ConsistencyCounts {
  int n = 0;
  int nist_lower = 0;
  int equal = 0;
  int nist_higher = 0;
  double lower_share = 0, equal_share = 0, higher_share = 0;
};

struct SeverityConsistencyReport {
  ConsistencyCounts overall;
  std::map<ChipsetManufacturer, ConsistencyCounts> per_manufacturer;
};
SeverityConsistencyReport severity_consistency(const KnowledgeBase& kb);

// ---- Updating (RQ4) --------------------------------------------------------

Date default_unmitigated_cutoff();

struct UnmitigatedReport {
  Date cutoff;
  std::vector<CveId> candidates;   // criteria i, iii, iv
  std::vector<CveId> mitigated;    // candidates with a mitigating update
  std::vector<CveId> unmitigated;  // candidates meeting criterion ii as well
  double unmitigated_share = 0;
};
UnmitigatedReport unmitigated_report(const KnowledgeBase& kb, Date cutoff = default_unmitigated_cutoff());
std::vector<CveId> unmitigated_vulnerabilities(const KnowledgeBase& kb, Date cutoff = default_unmitigated_cutoff());

struct UpdatePair {
  CveId cve;
  DeviceKey device;
  Date first_update;
  std::optional<int> latency_days;  // nullopt when T_patch is unknown
};

struct VulnerabilitySpread {
  CveId cve;
  int updated_devices = 0;
  int spread_days = 0;
  int first_to_half_days = 0;
};

struct UpdateTimelineReport {
  std::vector<UpdatePair> pairs;
  std::vector<UpdatePair> data_errors;  // negative latency
  int latency_n = 0;
  std::optional<double> latency_q25, latency_median, latency_q95;
  std::vector<VulnerabilitySpread> spreads;
  std::optional<double> median_spread, median_first_to_half;
};
UpdateTimelineReport update_timeline_report(const KnowledgeBase& kb);

struct AffectedDistributionRow {
  ChipsetManufacturer manufacturer;
  FiveNumberSummary summary;
  double mean = 0;
};
std::vector<AffectedDistributionRow> affected_count_distribution(const KnowledgeBase& kb);

struct ImpactReport {
  CveId cve;
  std::vector<ChipsetKey> chipsets;
  std::vector<DeviceKey> smartphones;
  std::map<std::string, int> per_oem;
  std::string warning;
};
// Throws NotFoundError for an unknown CVE.
ImpactReport impact_report(const CveId& cve, const KnowledgeBase& kb);

}  // namespace chipvuln
