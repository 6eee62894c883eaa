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
#include "chipvuln/augmentation.hpp"

#include <algorithm>
#include <set>

#include "chipvuln/errors.hpp"

namespace chipvuln {
namespace {

template <typename Target, typename Select>
std::optional<Target> longest_match(std::string_view text, ChipsetManufacturer cm, const KeyTermTable& table,
                                    Select select) {
  const std::string hay = to_lower(text);
  std::size_t best_len = 0;
  std::vector<const ComponentKeyTerm*> best;
  for (const auto& e : table.entries()) {
    if (e.manufacturer != cm) continue;
    std::optional<Target> target = select(e);
    if (!target) continue;
    const std::string needle = to_lower(e.term);
    if (needle.empty() || hay.find(needle) == std::string::npos) continue;
    if (needle.size() > best_len) {
      best_len = needle.size();
      best.clear();
    }
    if (needle.size() == best_len) best.push_back(&e);
  }
  if (best.empty()) return std::nullopt;
  std::set<Target> targets;
  for (const auto* e : best) targets.insert(*select(*e));
  if (targets.size() > 1) {
    std::vector<std::string> terms;
    for (const auto* e : best) terms.push_back(e->term);
    std::string msg = "ambiguous key terms for '" + std::string(text) + "':";
    for (const auto& t : terms) msg += " '" + t + "'";
    throw AmbiguityError(std::move(terms), msg);
  }
  return *targets.begin();
}

bool is_placeholder_credit(std::string_view credit) {
  const std::string c = to_lower(trim(credit));
  return c.empty() || c == "-" || c == "n/a" || c == "na" || c == "none" || c == "unknown" ||
         c == "anonymous" || c.find("internal") != std::string::npos;
}

}  // namespace

std::optional<Component> classify_component(std::string_view component_raw, ChipsetManufacturer cm,
                                            const KeyTermTable& table) {
  return longest_match<Component>(component_raw, cm, table,
                                  [](const ComponentKeyTerm& e) { return e.component; });
}

Location classify_location(std::string_view text, ChipsetManufacturer cm, const KeyTermTable& table) {
  auto loc = longest_match<Location>(text, cm, table, [](const ComponentKeyTerm& e) { return e.location; });
  return loc.value_or(Location::kUnknown);
}

DiscoveryAttribution classify_discovery(const VantagePointRecord& record, ChipsetManufacturer cm) {
  if (cm == ChipsetManufacturer::kQualcomm) {
    if (!record.internal_flag) return DiscoveryAttribution::kUnknown;
    return *record.internal_flag ? DiscoveryAttribution::kInternal : DiscoveryAttribution::kExternal;
  }
  if (record.credit && !is_placeholder_credit(*record.credit)) return DiscoveryAttribution::kExternal;
  return DiscoveryAttribution::kUnknown;
}

DiscoveryAttribution effective_attribution(DiscoveryAttribution a, AttributionMode mode) {
  if (mode == AttributionMode::kPaper && a == DiscoveryAttribution::kUnknown) return DiscoveryAttribution::kInternal;
  return a;
}

Date resolve_patch_date(const Vulnerability& vuln) {
  std::optional<Date> best;
  for (const auto& r : vuln.records) {
    if (r.source != Source::kCmBulletin) continue;
    if (!best || r.publication_date < *best) best = r.publication_date;
  }
  if (!best) throw UnresolvableError("no chipset-manufacturer record for " + vuln.cve.str());
  return *best;
}

void augment(Vulnerability& vuln, const KeyTermTable& table) {
  std::sort(vuln.records.begin(), vuln.records.end(),
            [](const auto& a, const auto& b) { return natural_key(a) < natural_key(b); });

  vuln.manufacturer.reset();
  vuln.component.reset();
  vuln.location = Location::kUnknown;
  vuln.attribution = DiscoveryAttribution::kUnknown;
  vuln.report_date.reset();
  vuln.patch_date.reset();

  std::set<ChipsetManufacturer> nvd_vendors;
  for (const auto& r : vuln.records) {
    if (r.source == Source::kNvd && r.manufacturer) nvd_vendors.insert(*r.manufacturer);
    if (r.source != Source::kCmBulletin) continue;
    if (!vuln.patch_date || r.publication_date < *vuln.patch_date) vuln.patch_date = r.publication_date;
    if (r.report_date && (!vuln.report_date || *r.report_date < *vuln.report_date)) vuln.report_date = r.report_date;
    if (!r.manufacturer) continue;
    const ChipsetManufacturer cm = *r.manufacturer;
    if (!vuln.manufacturer) vuln.manufacturer = cm;

    if (!vuln.component && r.component_raw) {
      try {
        vuln.component = classify_component(*r.component_raw, cm, table);
      } catch (const AmbiguityError&) {
      }
    }
    if (vuln.location == Location::kUnknown) {
      for (const std::string* text : {r.component_raw ? &*r.component_raw : nullptr, &r.description}) {
        if (!text) continue;
        try {
          vuln.location = classify_location(*text, cm, table);
        } catch (const AmbiguityError&) {
        }
        if (vuln.location != Location::kUnknown) break;
      }
    }
    if (vuln.attribution == DiscoveryAttribution::kUnknown) vuln.attribution = classify_discovery(r, cm);
  }
  // NVD-only vulnerabilities keep a manufacturer when the CPE vendor is unique.
  if (!vuln.manufacturer && nvd_vendors.size() == 1) vuln.manufacturer = *nvd_vendors.begin();
}

}  // namespace chipvuln
