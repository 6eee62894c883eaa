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
#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>

namespace chipvuln::testing {

double oracle_quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - std::floor(h)) * (xs[hi] - xs[lo]);
}

namespace {

std::optional<double> avg(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

std::optional<double> med(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  return oracle_quantile(xs, 0.5);
}

std::optional<double> qt(const std::vector<double>& xs, double q) {
  if (xs.empty()) return std::nullopt;
  return oracle_quantile(xs, q);
}

bool any_release_missing(const Instance& inst, int v) {
  for (int c : inst.vulns[v].chipsets) {
    if (!inst.chipsets[c].release) return true;
  }
  return false;
}

}  // namespace

std::optional<bool> oracle_newly(const Instance& inst, int v, int c) {
  if (!inst.chipsets[c].release || any_release_missing(inst, v)) return std::nullopt;
  // for all c': v in V(c') implies T_rel(c') >= T_rel(c)
  for (std::size_t other = 0; other < inst.chipsets.size(); ++other) {
    const bool member = inst.vulns[v].chipsets.count(static_cast<int>(other)) > 0;
    if (member && !(*inst.chipsets[other].release >= *inst.chipsets[c].release)) return false;
  }
  return true;
}

std::optional<bool> oracle_persists(const Instance& inst, int v, int c) {
  if (!inst.vulns[v].chipsets.count(c)) return false;
  if (!inst.vulns[v].patch) return std::nullopt;
  const auto fresh = oracle_newly(inst, v, c);
  if (!fresh) return std::nullopt;
  return !*fresh && *inst.chipsets[c].release <= *inst.vulns[v].patch;
}

OracleIntro oracle_introduction(const Instance& inst) {
  OracleIntro out;
  for (std::size_t v = 0; v < inst.vulns.size(); ++v) {
    if (!inst.vulns[v].chipsets.empty() && any_release_missing(inst, static_cast<int>(v))) {
      out.excluded.insert(inst.vulns[v].cve);
    }
  }
  std::vector<int> order(inst.chipsets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key_of(inst.chipsets[a]) < key_of(inst.chipsets[b]); });

  std::vector<double> totals, newly, inherited, removed;
  for (int c : order) {
    const auto& chip = inst.chipsets[c];
    if (!chip.release) continue;
    OracleIntroRow row;
    row.chipset = key_of(chip);
    // Earliest strictly later release by the same manufacturer; ties between
    // equally dated successors go to the smaller key.
    int next = -1;
    for (int o : order) {
      const auto& other = inst.chipsets[o];
      if (other.cm != chip.cm || !other.release || *other.release <= *chip.release) continue;
      if (next < 0 || *other.release < *inst.chipsets[next].release) next = o;
    }
    if (next >= 0) row.next = key_of(inst.chipsets[next]);
    int patched = 0;
    for (std::size_t v = 0; v < inst.vulns.size(); ++v) {
      const auto& vuln = inst.vulns[v];
      if (!vuln.chipsets.count(c)) continue;
      if (out.excluded.count(vuln.cve)) {
        ++row.excluded;
        continue;
      }
      ++row.total;
      (*oracle_newly(inst, static_cast<int>(v), c) ? row.newly : row.inherited)++;
      if (!vuln.patch) {
        ++row.unpatched;
        continue;
      }
      ++patched;
      if (*oracle_persists(inst, static_cast<int>(v), c)) ++row.persisting;
      if (next >= 0 && *vuln.patch <= *inst.chipsets[next].release) ++row.removed;
    }
    if (row.total == 0) continue;
    row.newly_share = static_cast<double>(row.newly) / row.total;
    row.inherited_share = static_cast<double>(row.inherited) / row.total;
    if (next >= 0 && patched > 0) {
      row.removed_share = static_cast<double>(row.removed) / patched;
      removed.push_back(*row.removed_share);
    }
    totals.push_back(row.total);
    newly.push_back(row.newly_share);
    inherited.push_back(row.inherited_share);
    out.rows.push_back(row);
  }
  out.mean_total = avg(totals);
  out.median_total = med(totals);
  out.mean_newly = avg(newly);
  out.median_newly = med(newly);
  out.mean_inherited = avg(inherited);
  out.mean_removed = avg(removed);
  out.median_removed = med(removed);
  return out;
}

std::set<DeviceKey> oracle_affected(const Instance& inst, int v) {
  std::set<DeviceKey> out;
  for (const auto& p : inst.phones) {
    if (inst.vulns[v].chipsets.count(p.chipset)) out.insert(key_of(p));
  }
  return out;
}

namespace {

bool listed_by_spl(const Instance& inst, int v, Date spl) {
  for (const auto& b : inst.bulletins) {
    if (b.spl <= spl && b.vulns.count(v)) return true;
  }
  return false;
}

bool has_updates(const Instance& inst, int p) {
  return std::any_of(inst.updates.begin(), inst.updates.end(), [&](const auto& u) { return u.phone == p; });
}

int phone_index(const Instance& inst, const DeviceKey& k) {
  for (std::size_t i = 0; i < inst.phones.size(); ++i) {
    if (key_of(inst.phones[i]) == k) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::vector<Date> oracle_mitigating(const Instance& inst, int v, int p) {
  // Distinct updates only: identical rows describe one event.
  std::set<std::tuple<Date, std::set<int>, std::optional<Date>>> seen;
  std::vector<Date> out;
  for (const auto& u : inst.updates) {
    if (u.phone != p) continue;
    const bool explicit_hit = u.explicit_vulns.count(v) > 0;
    const bool spl_hit = u.spl && listed_by_spl(inst, v, *u.spl);
    if (!explicit_hit && !spl_hit) continue;
    if (seen.insert({u.release, u.explicit_vulns, u.spl}).second) out.push_back(u.release);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OracleUnmitigated oracle_unmitigated(const Instance& inst, Date cutoff) {
  OracleUnmitigated out;
  for (std::size_t v = 0; v < inst.vulns.size(); ++v) {
    const auto& vuln = inst.vulns[v];
    if (!vuln.patch || !(*vuln.patch < cutoff)) continue;  // (iv)
    std::vector<int> with_updates;
    for (const auto& k : oracle_affected(inst, static_cast<int>(v))) {
      const int p = phone_index(inst, k);
      if (has_updates(inst, p)) with_updates.push_back(p);
    }
    if (with_updates.empty()) continue;  // (i)
    const bool after_release = std::any_of(with_updates.begin(), with_updates.end(),
                                           [&](int p) { return inst.phones[p].release < *vuln.patch; });
    if (!after_release) continue;  // (iii)
    out.candidates.insert(vuln.cve);
    const bool none_mitigated = std::all_of(with_updates.begin(), with_updates.end(), [&](int p) {
      return oracle_mitigating(inst, static_cast<int>(v), p).empty();
    });
    if (none_mitigated) out.unmitigated.insert(vuln.cve);  // (ii)
  }
  return out;
}

OracleTimeline oracle_timeline(const Instance& inst) {
  OracleTimeline out;
  std::vector<double> latencies, spreads, halves;
  for (std::size_t v = 0; v < inst.vulns.size(); ++v) {
    const auto& vuln = inst.vulns[v];
    std::vector<Date> firsts;
    for (const auto& k : oracle_affected(inst, static_cast<int>(v))) {
      const auto dates = oracle_mitigating(inst, static_cast<int>(v), phone_index(inst, k));
      if (dates.empty()) continue;
      OraclePair pair{vuln.cve, k, dates.front(), std::nullopt};
      firsts.push_back(dates.front());
      if (vuln.patch) {
        pair.latency = dates.front().serial() - vuln.patch->serial();
        if (*pair.latency < 0) {
          out.data_errors.insert(pair);
          continue;
        }
        latencies.push_back(*pair.latency);
      }
      out.pairs.insert(pair);
    }
    if (firsts.empty()) continue;
    std::sort(firsts.begin(), firsts.end());
    const int m = static_cast<int>(firsts.size());
    const int half = (m + 1) / 2;  // ceil(m / 2), 1-based
    OracleSpread s{vuln.cve, m, firsts.back().serial() - firsts.front().serial(),
                   firsts[half - 1].serial() - firsts.front().serial()};
    spreads.push_back(s.spread);
    halves.push_back(s.first_to_half);
    out.spreads.insert(s);
  }
  out.q25 = qt(latencies, 0.25);
  out.median = qt(latencies, 0.5);
  out.q95 = qt(latencies, 0.95);
  out.median_spread = qt(spreads, 0.5);
  out.median_first_to_half = qt(halves, 0.5);
  return out;
}

int optimal_coverage(const std::vector<std::set<int>>& sets, int k) {
  const int n = static_cast<int>(sets.size());
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > k) continue;
    std::set<int> u;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) u.insert(sets[i].begin(), sets[i].end());
    }
    best = std::max(best, static_cast<int>(u.size()));
  }
  return best;
}

}  // namespace chipvuln::testing
