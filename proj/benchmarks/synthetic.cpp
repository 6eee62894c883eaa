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
#include "synthetic.hpp"

#include <random>
#include <set>

namespace chipvuln::bench {

KnowledgeBase synthetic_kb(const SyntheticShape& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Date epoch = Date::from_ymd(2016, 1, 1);
  constexpr ChipsetManufacturer kCms[] = {ChipsetManufacturer::kQualcomm, ChipsetManufacturer::kMediatek};
  constexpr VantagePoint kBulletins[] = {VantagePoint::kQualcommBulletin, VantagePoint::kMediatekBulletin};

  KnowledgeBase kb;
  std::vector<ChipsetKey> chips;
  for (int c = 0; c < s.chipsets; ++c) {
    const ChipsetKey key{kCms[c % 2], "SM" + std::to_string(1000 + c)};
    kb.upsert_chipset({key, epoch.add_days(uniform(0, 1500)), std::nullopt});
    chips.push_back(key);
  }
  for (int v = 0; v < s.vulnerabilities; ++v) {
    const int cm = uniform(0, 1);
    std::set<std::string> affected;
    const int n = uniform(1, s.max_affected);
    while (static_cast<int>(affected.size()) < n) {
      const int c = uniform(0, s.chipsets / 2 - 1) * 2 + cm;
      affected.insert(chips[c].model_number);
    }
    VantagePointRecord r;
    r.source = Source::kCmBulletin;
    r.vantage_point = kBulletins[cm];
    r.manufacturer = kCms[cm];
    r.cve = CveId{2017 + v % 6, std::to_string(10000 + v)};
    r.publication_date = Date::from_ymd(2017 + v % 6, uniform(1, 12), 1);
    r.affected_chipset_strings.assign(affected.begin(), affected.end());
    r.description = "generated";
    r.severity = CvssScore{uniform(10, 100), "3.1"};
    kb.upsert_vulnerability(r);
  }
  std::vector<CveId> cves;
  for (const auto& [cve, _] : kb.vulnerabilities()) cves.push_back(cve);
  for (int m = 0; m < 72; ++m) {
    AospBulletin b{Date::from_ymd(2017 + m / 12, m % 12 + 1, 1), {}};
    for (int i = 0; i < 20; ++i) b.cves.insert(cves[uniform(0, static_cast<int>(cves.size()) - 1)]);
    kb.add_aosp_bulletin(b);
  }
  for (int p = 0; p < s.phones; ++p) {
    const DeviceKey dev{p % 2 ? "Samsung" : "Xiaomi", "Phone " + std::to_string(p)};
    const Date release = epoch.add_days(uniform(300, 2200));
    kb.upsert_smartphone({dev, chips[uniform(0, s.chipsets - 1)], release});
    for (int u = 0; u < s.updates_per_phone; ++u) {
      const Date when = release.add_days(30 * (u + 1));
      kb.add_update({dev, when, {}, Date::from_ymd(when.year(), when.month(), 1)});
    }
  }
  kb.link_all();
  return kb;
}

}  // namespace chipvuln::bench
