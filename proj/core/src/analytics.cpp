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
#include "chipvuln/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "chipvuln/errors.hpp"

namespace chipvuln {
namespace {

std::optional<double> opt_mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  return mean(xs);
}

std::optional<double> opt_quantile(const std::vector<double>& xs, double q) {
  if (xs.empty()) return std::nullopt;
  return quantile(xs, q);
}

double share(int part, int whole) { return whole ? static_cast<double>(part) / whole : 0.0; }

bool has_bulletin_record(const Vulnerability& v) {
  return std::any_of(v.records.begin(), v.records.end(),
                     [](const auto& r) { return r.source == Source::kCmBulletin; });
}

// Some affected chipset lacks a release date.
bool missing_release_date(const Vulnerability& v, const KnowledgeBase& kb) {
  for (const auto& k : v.affected_chipsets) {
    const ChipsetModel* c = kb.chipset(k);
    if (!c || !c->release_date) return true;
  }
  return false;
}

void count_attribution(AttributionCounts& c, DiscoveryAttribution a) {
  ++c.total;
  switch (a) {
    case DiscoveryAttribution::kInternal: ++c.internal; break;
    case DiscoveryAttribution::kExternal: ++c.external; break;
    case DiscoveryAttribution::kUnknown: ++c.unknown; break;
  }
}

LatencySummary summarize_latency(const std::vector<int>& days, int threshold) {
  LatencySummary s;
  s.n = static_cast<int>(days.size());
  std::vector<double> xs(days.begin(), days.end());
  s.compliant = static_cast<int>(std::count_if(days.begin(), days.end(), [&](int d) { return d <= threshold; }));
  s.compliance = share(s.compliant, s.n);
  s.median = opt_quantile(xs, 0.5);
  s.q95 = opt_quantile(xs, 0.95);
  return s;
}

void finish_consistency(ConsistencyCounts& c) {
  c.lower_share = share(c.nist_lower, c.n);
  c.equal_share = share(c.equal, c.n);
  c.higher_share = share(c.nist_higher, c.n);
}

}  // namespace

std::optional<bool> newly_introduced(const Vulnerability& v, const ChipsetModel& c, const KnowledgeBase& kb) {
  if (!v.affects(c.key)) {
    throw PreconditionError(v.cve.str() + " does not affect " + c.key.str());
  }
  if (!c.release_date || missing_release_date(v, kb)) return std::nullopt;
  for (const auto& k : v.affected_chipsets) {
    if (*kb.chipset(k)->release_date < *c.release_date) return false;
  }
  return true;
}

std::optional<bool> persists_into(const Vulnerability& v, const ChipsetModel& c, const KnowledgeBase& kb) {
  if (!v.affects(c.key)) return false;
  if (!v.patch_date) return std::nullopt;
  const auto fresh = newly_introduced(v, c, kb);
  if (!fresh) return std::nullopt;
  return !*fresh && *c.release_date <= *v.patch_date;
}

const ChipsetModel* next_chipset(const ChipsetModel& c, const KnowledgeBase& kb) {
  if (!c.release_date) return nullptr;
  const ChipsetModel* best = nullptr;
  for (const auto& [k, other] : kb.chipsets()) {
    if (k.manufacturer != c.key.manufacturer || !other.release_date) continue;
    if (*other.release_date <= *c.release_date) continue;
    if (!best || *other.release_date < *best->release_date) best = &other;
  }
  return best;
}

IntroductionReport introduction_report(const KnowledgeBase& kb) {
  IntroductionReport rep;
  std::set<CveId> excluded;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    if (!v.affected_chipsets.empty() && missing_release_date(v, kb)) excluded.insert(cve);
  }
  rep.excluded_vulnerabilities.assign(excluded.begin(), excluded.end());

  std::vector<double> totals, newly_shares, inherited_shares, removed_shares;
  for (const auto& [key, c] : kb.chipsets()) {
    if (!c.release_date) {
      if (!kb.vulnerabilities_of(key).empty()) rep.chipsets_without_release_date.push_back(key);
      continue;
    }
    ChipsetIntroduction row;
    row.chipset = key;
    row.release_date = *c.release_date;
    const ChipsetModel* next = next_chipset(c, kb);
    if (next) row.next = next->key;
    int patched = 0;
    for (const auto& cve : kb.vulnerabilities_of(key)) {
      if (excluded.contains(cve)) {
        ++row.excluded;
        continue;
      }
      const Vulnerability& v = *kb.vulnerability(cve);
      ++row.total;
      if (*newly_introduced(v, c, kb)) {
        ++row.newly_introduced;
      } else {
        ++row.inherited;
      }
      if (!v.patch_date) {
        ++row.unpatched;
        continue;
      }
      ++patched;
      if (*persists_into(v, c, kb)) ++row.persisting;
      if (next && *v.patch_date <= *next->release_date) ++row.removed_before_next;
    }
    if (row.total == 0) continue;
    row.newly_share = share(row.newly_introduced, row.total);
    row.inherited_share = share(row.inherited, row.total);
    if (next && patched > 0) {
      row.removed_before_next_share = share(row.removed_before_next, patched);
      removed_shares.push_back(*row.removed_before_next_share);
    }
    totals.push_back(row.total);
    newly_shares.push_back(row.newly_share);
    inherited_shares.push_back(row.inherited_share);
    rep.chipsets.push_back(row);
  }
  rep.mean_total = opt_mean(totals);
  rep.median_total = opt_quantile(totals, 0.5);
  rep.mean_newly_share = opt_mean(newly_shares);
  rep.median_newly_share = opt_quantile(newly_shares, 0.5);
  rep.mean_inherited_share = opt_mean(inherited_shares);
  rep.mean_removed_before_next_share = opt_mean(removed_shares);
  rep.median_removed_before_next_share = opt_quantile(removed_shares, 0.5);
  return rep;
}

DiscoveryReport discovery_report(const KnowledgeBase& kb, AttributionMode mode) {
  DiscoveryReport rep;
  rep.mode = mode;
  std::map<std::pair<ChipsetManufacturer, int>, AttributionCounts> years;
  std::map<std::optional<Component>, ComponentDiscoveryRow> rows;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    if (!has_bulletin_record(v) || !v.manufacturer) {
      ++rep.skipped_without_bulletin;
      continue;
    }
    const auto a = effective_attribution(v.attribution, mode);
    count_attribution(years[{*v.manufacturer, cve.year}], a);
    auto& row = rows[v.component];
    count_attribution(row.per_manufacturer[*v.manufacturer], a);
    count_attribution(row.all, a);
  }
  for (const auto& [k, counts] : years) rep.per_year.push_back({k.first, k.second, counts});
  for (Component c : all_components()) {
    ComponentDiscoveryRow row = rows[c];
    row.component = c;
    rep.components.push_back(row);
  }
  ComponentDiscoveryRow unknown = rows[std::nullopt];
  unknown.component.reset();
  rep.components.push_back(unknown);
  return rep;
}

std::optional<CvssScore> nist_severity(const Vulnerability& v) {
  const VantagePointRecord* best = nullptr;
  for (const auto& r : v.records) {
    if (r.source != Source::kNvd || !r.severity) continue;
    if (!best || best->publication_date <= r.publication_date) best = &r;
  }
  if (!best) return std::nullopt;
  return best->severity;
}

std::optional<CvssScore> cm_severity(const Vulnerability& v) {
  for (const auto& r : v.records) {
    if (r.source == Source::kCmBulletin && r.severity) return r.severity;
  }
  return std::nullopt;
}

SeverityByLocationReport severity_by_location(const KnowledgeBase& kb) {
  SeverityByLocationReport rep;
  std::vector<double> fw, drv;
  for (const auto& [_, v] : kb.vulnerabilities()) {
    if (v.location == Location::kUnknown) {
      ++rep.unknown_location;
      continue;
    }
    const auto s = nist_severity(v);
    if (!s) {
      ++rep.without_nist_score;
      continue;
    }
    (v.location == Location::kFirmware ? fw : drv).push_back(s->value());
  }
  if (!fw.empty()) rep.firmware.summary = five_number_summary(fw);
  if (!drv.empty()) rep.driver.summary = five_number_summary(drv);
  if (fw.empty() || drv.empty()) {
    rep.notice = "test skipped: a location group is empty";
    return rep;
  }
  rep.median_difference = rep.firmware.summary->median - rep.driver.summary->median;
  try {
    rep.test = kruskal_wallis({{"Firmware", fw}, {"Driver", drv}});
  } catch (const DegenerateDataError&) {
    // Every score identical: the groups cannot differ.
    rep.test = KruskalWallisResult{0.0, 1.0, 1, fw.size() + drv.size()};
  } catch (const PreconditionError& e) {
    rep.notice = std::string("test skipped: ") + e.what();
  }
  return rep;
}

PatchLatencyReport patch_latency_report(const KnowledgeBase& kb, int threshold_days) {
  PatchLatencyReport rep;
  rep.threshold_days = threshold_days;
  std::vector<int> all;
  std::map<ChipsetManufacturer, std::vector<int>> by_cm;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    if (!v.report_date || !v.patch_date || !v.manufacturer) continue;
    const int days = days_between(*v.report_date, *v.patch_date);
    LatencyEntry e{cve, *v.manufacturer, days};
    if (days < 0) {
      rep.data_errors.push_back(e);
      continue;
    }
    rep.entries.push_back(e);
    all.push_back(days);
    by_cm[*v.manufacturer].push_back(days);
  }
  rep.overall = summarize_latency(all, threshold_days);
  for (const auto& [cm, days] : by_cm) rep.per_manufacturer[cm] = summarize_latency(days, threshold_days);
  return rep;
}

DateRange default_availability_period() {
  return {Date::from_ymd(2022, 6, 1), Date::from_ymd(2023, 5, 31)};
}

AvailabilityMatrix availability_matrix(const KnowledgeBase& kb, int window_days, DateRange period) {
  AvailabilityMatrix m;
  m.window_days = window_days;
  m.period = period;
  std::map<ChipsetManufacturer, AvailabilityRow> rows;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    if (!v.patch_date || !v.manufacturer || !has_bulletin_record(v)) continue;
    if (*v.patch_date < period.first || period.last < *v.patch_date) continue;
    const Date limit = v.patch_date->add_days(window_days);
    auto& row = rows[*v.manufacturer];
    row.manufacturer = *v.manufacturer;
    ++row.n;
    ++row.in_cm;
    const bool nvd = std::any_of(v.records.begin(), v.records.end(), [&](const auto& r) {
      return r.source == Source::kNvd && r.publication_date <= limit;
    });
    if (nvd) ++row.in_nvd;
    const auto listed = kb.earliest_aosp_listing(cve);
    if (listed && *listed <= limit) ++row.in_aosp;
  }
  for (auto& [_, r] : rows) {
    r.cm_share = share(r.in_cm, r.n);
    r.nvd_share = share(r.in_nvd, r.n);
    r.aosp_share = share(r.in_aosp, r.n);
    m.rows.push_back(r);
  }
  return m;
}

SeverityConsistencyReport severity_consistency(const KnowledgeBase& kb) {
  SeverityConsistencyReport rep;
  for (const auto& [_, v] : kb.vulnerabilities()) {
    const auto cm = cm_severity(v);
    const auto nist = nist_severity(v);
    if (!cm || !nist || !v.manufacturer) continue;
    for (ConsistencyCounts* c : {&rep.overall, &rep.per_manufacturer[*v.manufacturer]}) {
      ++c->n;
      if (nist->tenths < cm->tenths) {
        ++c->nist_lower;
      } else if (nist->tenths > cm->tenths) {
        ++c->nist_higher;
      } else {
        ++c->equal;
      }
    }
  }
  finish_consistency(rep.overall);
  for (auto& [_, c] : rep.per_manufacturer) finish_consistency(c);
  return rep;
}

Date default_unmitigated_cutoff() { return Date::from_ymd(2023, 1, 1); }

UnmitigatedReport unmitigated_report(const KnowledgeBase& kb, Date cutoff) {
  UnmitigatedReport rep;
  rep.cutoff = cutoff;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    if (!v.patch_date || !(*v.patch_date < cutoff)) continue;  // (iv)
    bool any_with_updates = false;
    bool released_before = false;
    bool mitigated = false;
    for (const SmartphoneModel* s : kb.affected_smartphones(cve)) {
      if (kb.updates_of(s->key).empty()) continue;
      any_with_updates = true;                                       // (i)
      if (s->release_date < *v.patch_date) released_before = true;  // (iii)
      if (!kb.mitigating_updates(cve, s->key).empty()) mitigated = true;
    }
    if (!any_with_updates || !released_before) continue;
    rep.candidates.push_back(cve);
    (mitigated ? rep.mitigated : rep.unmitigated).push_back(cve);  // (ii)
  }
  rep.unmitigated_share = share(static_cast<int>(rep.unmitigated.size()), static_cast<int>(rep.candidates.size()));
  return rep;
}

std::vector<CveId> unmitigated_vulnerabilities(const KnowledgeBase& kb, Date cutoff) {
  return unmitigated_report(kb, cutoff).unmitigated;
}

UpdateTimelineReport update_timeline_report(const KnowledgeBase& kb) {
  UpdateTimelineReport rep;
  std::vector<double> latencies, spreads, halves;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    std::vector<Date> firsts;
    for (const SmartphoneModel* s : kb.affected_smartphones(cve)) {
      const auto ups = kb.mitigating_updates(cve, s->key);
      if (ups.empty()) continue;
      UpdatePair p{cve, s->key, ups.front().release_date, std::nullopt};
      firsts.push_back(p.first_update);
      if (v.patch_date) {
        p.latency_days = days_between(*v.patch_date, p.first_update);
        if (*p.latency_days < 0) {
          rep.data_errors.push_back(p);
          continue;
        }
        latencies.push_back(*p.latency_days);
      }
      rep.pairs.push_back(p);
    }
    if (firsts.empty()) continue;
    std::sort(firsts.begin(), firsts.end());
    const std::size_t m = firsts.size();
    VulnerabilitySpread sp{cve, static_cast<int>(m), days_between(firsts.front(), firsts.back()),
                           days_between(firsts.front(), firsts[(m + 1) / 2 - 1])};
    spreads.push_back(sp.spread_days);
    halves.push_back(sp.first_to_half_days);
    rep.spreads.push_back(sp);
  }
  rep.latency_n = static_cast<int>(latencies.size());
  rep.latency_q25 = opt_quantile(latencies, 0.25);
  rep.latency_median = opt_quantile(latencies, 0.5);
  rep.latency_q95 = opt_quantile(latencies, 0.95);
  rep.median_spread = opt_quantile(spreads, 0.5);
  rep.median_first_to_half = opt_quantile(halves, 0.5);
  return rep;
}

std::vector<AffectedDistributionRow> affected_count_distribution(const KnowledgeBase& kb) {
  std::map<ChipsetManufacturer, std::vector<double>> counts;
  for (const auto& [cve, v] : kb.vulnerabilities()) {
    if (!v.manufacturer) continue;
    counts[*v.manufacturer].push_back(static_cast<double>(kb.affected_smartphones(cve).size()));
  }
  std::vector<AffectedDistributionRow> out;
  for (const auto& [cm, xs] : counts) out.push_back({cm, five_number_summary(xs), mean(xs)});
  return out;
}

ImpactReport impact_report(const CveId& cve, const KnowledgeBase& kb) {
  const Vulnerability* v = kb.vulnerability(cve);
  if (!v) throw NotFoundError("unknown vulnerability " + cve.str());
  ImpactReport rep;
  rep.cve = cve;
  rep.chipsets.assign(v->affected_chipsets.begin(), v->affected_chipsets.end());
  for (const SmartphoneModel* s : kb.affected_smartphones(cve)) {
    rep.smartphones.push_back(s->key);
    ++rep.per_oem[s->key.oem];
  }
  if (rep.chipsets.empty()) rep.warning = "no chipset links for " + cve.str();
  return rep;
}

}  // namespace chipvuln
