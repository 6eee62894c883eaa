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
#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <random>

#include "chipvuln/analytics.hpp"
#include "corpus.hpp"
#include "instances.hpp"

namespace chipvuln {
namespace {

using CM = ChipsetManufacturer;

Date d(const char* iso) { return *Date::parse_iso(iso); }
CveId cve(const char* s) { return validate_cve(s); }

// Small hand-built knowledge bases for the worked examples.
struct Builder {
  KnowledgeBase kb{testing::shipped_key_terms()};

  ChipsetKey chip(CM cm, const char* model, std::optional<const char*> rel = "2020-01-01") {
    ChipsetModel c{{cm, model}, std::nullopt, std::nullopt};
    if (rel) c.release_date = d(*rel);
    kb.upsert_chipset(c);
    return c.key;
  }

  VantagePointRecord& cm_record(CM cm, const char* id, const char* published, std::vector<std::string> chips) {
    VantagePointRecord r;
    r.source = Source::kCmBulletin;
    r.vantage_point = cm == CM::kQualcomm   ? VantagePoint::kQualcommBulletin
                      : cm == CM::kMediatek ? VantagePoint::kMediatekBulletin
                      : cm == CM::kSamsung  ? VantagePoint::kSamsungMobileBulletin
                                            : VantagePoint::kUnisocBulletin;
    r.cve = cve(id);
    r.manufacturer = cm;
    r.publication_date = d(published);
    r.affected_chipset_strings = std::move(chips);
    pending.push_back(r);
    return pending.back();
  }

  VantagePointRecord& nvd_record(const char* id, const char* published, std::optional<double> score) {
    VantagePointRecord r;
    r.source = Source::kNvd;
    r.vantage_point = VantagePoint::kNvd;
    r.cve = cve(id);
    r.publication_date = d(published);
    if (score) r.severity = CvssScore{static_cast<int>(*score * 10 + 0.5), "3.1"};
    pending.push_back(r);
    return pending.back();
  }

  DeviceKey phone(const char* oem, const char* name, const ChipsetKey& c, const char* rel = "2021-01-01") {
    DeviceKey k{oem, name};
    kb.upsert_smartphone({k, c, d(rel)});
    return k;
  }

  KnowledgeBase& done() {
    for (const auto& r : pending) kb.upsert_vulnerability(r);
    pending.clear();
    kb.link_all();
    return kb;
  }

  std::deque<VantagePointRecord> pending;
};

TEST(Introduction, ToysetPredicates) {
  const auto kb = testing::load_toyset();
  const auto& c1 = *kb.chipset({CM::kQualcomm, "SM7125"});
  const auto& c2 = *kb.chipset({CM::kQualcomm, "SM7225"});
  const auto& v1 = *kb.vulnerability(cve("CVE-2021-30001"));
  const auto& v2 = *kb.vulnerability(cve("CVE-2021-30002"));
  const auto& v3 = *kb.vulnerability(cve("CVE-2021-30003"));
  EXPECT_EQ(c1.release_date, d("2020-01-01"));
  EXPECT_EQ(c2.release_date, d("2021-01-01"));
  EXPECT_EQ(v1.patch_date, d("2021-06-01"));

  EXPECT_EQ(newly_introduced(v1, c1, kb), true);
  EXPECT_EQ(newly_introduced(v1, c2, kb), false);
  EXPECT_EQ(persists_into(v1, c2, kb), true);
  EXPECT_EQ(persists_into(v3, c2, kb), false);
  EXPECT_EQ(newly_introduced(v2, c2, kb), true);
  EXPECT_EQ(persists_into(v2, c2, kb), false);
  EXPECT_EQ(next_chipset(c1, kb), &c2);
  EXPECT_EQ(next_chipset(c2, kb), nullptr);
}

TEST(Introduction, VacuousAndTiedReleaseDates) {
  Builder b;
  const auto a = b.chip(CM::kQualcomm, "SM1000", "2021-03-01");
  const auto c = b.chip(CM::kQualcomm, "SM2000", "2021-03-01");
  b.cm_record(CM::kQualcomm, "CVE-2021-0001", "2021-06-01", {"SM1000"});
  b.cm_record(CM::kQualcomm, "CVE-2021-0002", "2021-06-01", {"SM1000", "SM2000"});
  auto& kb = b.done();
  EXPECT_EQ(newly_introduced(*kb.vulnerability(cve("CVE-2021-0001")), *kb.chipset(a), kb), true);
  EXPECT_EQ(newly_introduced(*kb.vulnerability(cve("CVE-2021-0002")), *kb.chipset(a), kb), true);
  EXPECT_EQ(newly_introduced(*kb.vulnerability(cve("CVE-2021-0002")), *kb.chipset(c), kb), true);
  // same-date chipsets are not each other's successor
  EXPECT_EQ(next_chipset(*kb.chipset(a), kb), nullptr);
}

TEST(Introduction, ToysetReport) {
  const auto rep = introduction_report(testing::load_toyset());
  ASSERT_EQ(rep.chipsets.size(), 2u);
  const auto& c1 = rep.chipsets[0];
  EXPECT_EQ(c1.chipset.model_number, "SM7125");
  EXPECT_EQ(c1.total, 2);
  EXPECT_EQ(c1.newly_introduced, 2);
  EXPECT_EQ(c1.inherited, 0);
  EXPECT_EQ(c1.next, (ChipsetKey{CM::kQualcomm, "SM7225"}));
  EXPECT_EQ(c1.removed_before_next, 0);
  const auto& c2 = rep.chipsets[1];
  EXPECT_EQ(c2.total, 2);
  EXPECT_EQ(c2.newly_introduced, 1);
  EXPECT_EQ(c2.inherited, 1);
  EXPECT_EQ(c2.persisting, 1);
  EXPECT_FALSE(c2.next);
  EXPECT_FALSE(c2.removed_before_next_share);
  EXPECT_EQ(rep.mean_total, 2.0);
  EXPECT_EQ(rep.median_newly_share, 0.75);
}

TEST(Introduction, MissingReleaseDateExcludesVulnerability) {
  Builder b;
  b.chip(CM::kMediatek, "MT1000", "2020-01-01");
  b.chip(CM::kMediatek, "MT2000", std::nullopt);
  b.cm_record(CM::kMediatek, "CVE-2021-0001", "2021-06-01", {"MT1000", "MT2000"});
  b.cm_record(CM::kMediatek, "CVE-2021-0002", "2021-06-01", {"MT1000"});
  const auto rep = introduction_report(b.done());
  EXPECT_EQ(rep.excluded_vulnerabilities, (std::vector<CveId>{cve("CVE-2021-0001")}));
  EXPECT_EQ(rep.chipsets_without_release_date, (std::vector<ChipsetKey>{{CM::kMediatek, "MT2000"}}));
  ASSERT_EQ(rep.chipsets.size(), 1u);
  EXPECT_EQ(rep.chipsets[0].total, 1);
  EXPECT_EQ(rep.chipsets[0].excluded, 1);
}

TEST(Introduction, EmptyKnowledgeBase) {
  const auto rep = introduction_report(KnowledgeBase(testing::shipped_key_terms()));
  EXPECT_TRUE(rep.chipsets.empty());
  EXPECT_FALSE(rep.mean_total);
}

TEST(Discovery, InternalFractionPerYear) {
  Builder b;
  b.chip(CM::kQualcomm, "SM1000");
  for (const char* id : {"CVE-2023-1001", "CVE-2023-1002", "CVE-2023-1003", "CVE-2023-1004"}) {
    b.cm_record(CM::kQualcomm, id, "2023-05-01", {"SM1000"}).internal_flag = std::string(id) == "CVE-2023-1001";
  }
  auto& mtk = b.cm_record(CM::kMediatek, "CVE-2022-1005", "2023-05-01", {});
  mtk.credit = "None";
  auto& kb = b.done();
  const auto strict = discovery_report(kb);
  ASSERT_EQ(strict.per_year.size(), 2u);
  const auto& q = strict.per_year[0];
  EXPECT_EQ(q.manufacturer, CM::kQualcomm);
  EXPECT_EQ(q.year, 2023);
  EXPECT_EQ(q.counts.total, 4);
  EXPECT_EQ(q.counts.internal, 1);
  EXPECT_DOUBLE_EQ(q.counts.internal_fraction(), 0.25);
  EXPECT_EQ(strict.per_year[1].counts.unknown, 1);
  EXPECT_EQ(strict.per_year[1].counts.internal, 0);

  const auto paper = discovery_report(kb, AttributionMode::kPaper);
  EXPECT_EQ(paper.per_year[1].counts.internal, 1);
  EXPECT_EQ(paper.per_year[1].counts.unknown, 0);
  EXPECT_EQ(paper.per_year[0].counts.internal, 1);
}

TEST(SeverityByLocation, MedianDifference) {
  Builder b;
  b.chip(CM::kQualcomm, "SM1000");
  const std::vector<std::pair<const char*, double>> firmware = {
      {"CVE-2022-2001", 6.5}, {"CVE-2022-2002", 7.8}, {"CVE-2022-2003", 9.1}};
  const std::vector<std::pair<const char*, double>> driver = {
      {"CVE-2022-3001", 5.5}, {"CVE-2022-3002", 7.0}, {"CVE-2022-3003", 8.8}};
  for (const auto& [id, s] : firmware) {
    b.cm_record(CM::kQualcomm, id, "2022-06-01", {"SM1000"}).component_raw = "WLAN Firmware";
    b.nvd_record(id, "2022-07-01", s);
  }
  for (const auto& [id, s] : driver) {
    auto& r = b.cm_record(CM::kQualcomm, id, "2022-06-01", {"SM1000"});
    r.component_raw = "Graphics";
    r.description = "Use after free in the GPU kernel driver.";
    b.nvd_record(id, "2022-07-01", s);
  }
  b.cm_record(CM::kQualcomm, "CVE-2022-4001", "2022-06-01", {"SM1000"}).component_raw = "Core";
  b.nvd_record("CVE-2022-4001", "2022-07-01", 5.0);
  b.cm_record(CM::kQualcomm, "CVE-2022-4002", "2022-06-01", {"SM1000"}).component_raw = "Modem";

  const auto rep = severity_by_location(b.done());
  ASSERT_TRUE(rep.firmware.summary && rep.driver.summary);
  EXPECT_DOUBLE_EQ(rep.firmware.summary->median, 7.8);
  EXPECT_DOUBLE_EQ(rep.driver.summary->median, 7.0);
  ASSERT_TRUE(rep.median_difference);
  EXPECT_NEAR(*rep.median_difference, 0.8, 1e-12);
  EXPECT_EQ(rep.unknown_location, 1);
  EXPECT_EQ(rep.without_nist_score, 1);
  ASSERT_TRUE(rep.test);
  const auto direct = kruskal_wallis({{"firmware", {6.5, 7.8, 9.1}}, {"driver", {5.5, 7.0, 8.8}}});
  EXPECT_NEAR(rep.test->h, direct.h, 1e-12);
}

KnowledgeBase two_location_kb(std::vector<double> fw, std::vector<double> drv) {
  Builder b;
  b.chip(CM::kQualcomm, "SM1000");
  int n = 1000;
  for (double s : fw) {
    const std::string id = "CVE-2022-" + std::to_string(n++);
    b.cm_record(CM::kQualcomm, id.c_str(), "2022-06-01", {"SM1000"}).component_raw = "Modem firmware";
    b.nvd_record(id.c_str(), "2022-07-01", s);
  }
  for (double s : drv) {
    const std::string id = "CVE-2022-" + std::to_string(n++);
    b.cm_record(CM::kQualcomm, id.c_str(), "2022-06-01", {"SM1000"}).component_raw = "Audio driver";
    b.nvd_record(id.c_str(), "2022-07-01", s);
  }
  return std::move(b.done());
}

TEST(SeverityByLocation, IdenticalAndSeparatedGroups) {
  auto same = severity_by_location(two_location_kb({5, 7}, {5, 7}));
  ASSERT_TRUE(same.test);
  EXPECT_EQ(same.test->h, 0.0);
  EXPECT_EQ(same.test->p, 1.0);

  auto apart = severity_by_location(two_location_kb({9, 9, 9}, {5, 5, 5}));
  ASSERT_TRUE(apart.test);
  EXPECT_GT(apart.firmware.summary->median, apart.driver.summary->median);
  // scipy.stats.kruskal([9,9,9],[5,5,5])
  EXPECT_NEAR(apart.test->h, 5.0, 1e-9);
  EXPECT_NEAR(apart.test->p, 0.025347318677468252, 1e-9);

  // all scores identical: reported as no difference rather than an error
  auto degenerate = severity_by_location(two_location_kb({6, 6}, {6}));
  ASSERT_TRUE(degenerate.test);
  EXPECT_EQ(degenerate.test->h, 0.0);
  EXPECT_EQ(degenerate.test->p, 1.0);

  auto tiny = severity_by_location(two_location_kb({6}, {7}));
  EXPECT_FALSE(tiny.test);
  EXPECT_FALSE(tiny.notice.empty());
}

TEST(PatchLatency, CalendarDays) {
  Builder b;
  b.chip(CM::kSamsung, "S5E9925");
  b.cm_record(CM::kSamsung, "CVE-2021-0001", "2021-03-31", {"S5E9925"}).report_date = d("2021-01-01");
  b.cm_record(CM::kSamsung, "CVE-2021-0002", "2021-03-31", {"S5E9925"}).report_date = d("2021-03-31");
  b.cm_record(CM::kSamsung, "CVE-2021-0003", "2021-03-31", {"S5E9925"}).report_date = d("2020-12-30");
  b.cm_record(CM::kSamsung, "CVE-2021-0004", "2021-03-31", {"S5E9925"});
  const auto rep = patch_latency_report(b.done());
  ASSERT_EQ(rep.entries.size(), 3u);
  EXPECT_EQ(rep.entries[0].days, 89);
  EXPECT_EQ(rep.entries[1].days, 0);
  EXPECT_EQ(rep.entries[2].days, 91);
  EXPECT_EQ(rep.overall.n, 3);
  EXPECT_EQ(rep.overall.compliant, 2);
  EXPECT_EQ(rep.per_manufacturer.at(CM::kSamsung).median, 89.0);
  EXPECT_TRUE(rep.data_errors.empty());
}

TEST(Availability, AospShareWithinWindow) {
  Builder b;
  b.chip(CM::kMediatek, "MT1000");
  for (const char* id : {"CVE-2022-0001", "CVE-2022-0002", "CVE-2022-0003", "CVE-2022-0004"}) {
    b.cm_record(CM::kMediatek, id, "2022-08-01", {"MT1000"});
  }
  b.nvd_record("CVE-2022-0001", "2022-08-05", 7.0);
  b.kb.add_aosp_bulletin({d("2022-09-01"), {cve("CVE-2022-0001"), cve("CVE-2022-0002")}});
  b.kb.add_aosp_bulletin({d("2023-09-01"), {cve("CVE-2022-0003")}});  // past the 365-day window
  const auto m = availability_matrix(b.done());
  ASSERT_EQ(m.rows.size(), 1u);
  EXPECT_EQ(m.rows[0].n, 4);
  EXPECT_DOUBLE_EQ(m.rows[0].aosp_share, 0.5);
  EXPECT_DOUBLE_EQ(m.rows[0].nvd_share, 0.25);
  EXPECT_DOUBLE_EQ(m.rows[0].cm_share, 1.0);
  EXPECT_TRUE(availability_matrix(b.kb, 365, {d("2020-01-01"), d("2020-12-31")}).rows.empty());
}

TEST(SeverityConsistency, ThreeWayComparison) {
  Builder b;
  b.chip(CM::kQualcomm, "SM1000");
  auto scored = [&](const char* id, double cm_score, double nist) {
    b.cm_record(CM::kQualcomm, id, "2022-06-01", {"SM1000"}).severity =
        CvssScore{static_cast<int>(cm_score * 10 + 0.5), "3.1"};
    b.nvd_record(id, "2022-07-01", nist);
  };
  scored("CVE-2022-0001", 7.5, 7.5);
  scored("CVE-2022-0002", 7.5, 9.8);
  scored("CVE-2022-0003", 8.4, 5.5);
  scored("CVE-2022-0004", 6.0, 6.0);
  b.cm_record(CM::kQualcomm, "CVE-2022-0005", "2022-06-01", {"SM1000"});
  const auto rep = severity_consistency(b.done());
  EXPECT_EQ(rep.overall.n, 4);
  EXPECT_EQ(rep.overall.equal, 2);
  EXPECT_EQ(rep.overall.nist_higher, 1);
  EXPECT_EQ(rep.overall.nist_lower, 1);
  EXPECT_DOUBLE_EQ(rep.overall.lower_share + rep.overall.equal_share + rep.overall.higher_share, 1.0);
}

struct UnmitigatedFixture : Builder {
  DeviceKey s1, s2;
  UnmitigatedFixture() {
    const auto c = chip(CM::kQualcomm, "SM1000", "2020-06-01");
    s1 = phone("Samsung", "Galaxy A1", c, "2021-01-01");
    s2 = phone("Xiaomi", "Redmi 1", c, "2021-01-01");
    kb.add_update({s1, d("2022-03-10"), {}, d("2021-12-01")});
    kb.add_update({s2, d("2022-04-10"), {}, d("2021-12-01")});
  }
};

TEST(Unmitigated, FourCriteria) {
  UnmitigatedFixture f;
  f.cm_record(CM::kQualcomm, "CVE-2022-0001", "2022-02-07", {"SM1000"});  // all four hold
  f.cm_record(CM::kQualcomm, "CVE-2022-0002", "2022-02-07", {"SM1000"});  // listed in s2's changelog
  f.kb.add_update({f.s2, d("2022-05-10"), {cve("CVE-2022-0002")}, std::nullopt});
  f.cm_record(CM::kQualcomm, "CVE-2023-0003", "2023-06-01", {"SM1000"});  // after cutoff
  f.cm_record(CM::kQualcomm, "CVE-2020-0004", "2020-11-02", {"SM1000"});  // phones released later
  const auto rep = unmitigated_report(f.done());
  EXPECT_EQ(rep.cutoff, d("2023-01-01"));
  EXPECT_EQ(rep.candidates, (std::vector<CveId>{cve("CVE-2022-0001"), cve("CVE-2022-0002")}));
  EXPECT_EQ(rep.mitigated, (std::vector<CveId>{cve("CVE-2022-0002")}));
  EXPECT_EQ(rep.unmitigated, (std::vector<CveId>{cve("CVE-2022-0001")}));
  EXPECT_DOUBLE_EQ(rep.unmitigated_share, 0.5);
  EXPECT_EQ(unmitigated_vulnerabilities(f.kb), rep.unmitigated);
}

TEST(Timeline, LatencySpreadAndFirstToHalf) {
  Builder b;
  const auto c = b.chip(CM::kQualcomm, "SM1000");
  const auto s1 = b.phone("Samsung", "Galaxy A1", c);
  const auto s2 = b.phone("Samsung", "Galaxy A2", c);
  b.cm_record(CM::kQualcomm, "CVE-2021-0001", "2022-01-01", {"SM1000"});
  b.kb.add_update({s1, d("2022-02-01"), {cve("CVE-2021-0001")}, std::nullopt});
  b.kb.add_update({s2, d("2022-04-01"), {cve("CVE-2021-0001")}, std::nullopt});
  b.kb.add_update({s2, d("2022-05-01"), {cve("CVE-2021-0001")}, std::nullopt});
  const auto rep = update_timeline_report(b.done());
  ASSERT_EQ(rep.pairs.size(), 2u);
  EXPECT_EQ(rep.pairs[0].latency_days, 31);
  EXPECT_EQ(rep.pairs[1].latency_days, 90);
  ASSERT_EQ(rep.spreads.size(), 1u);
  EXPECT_EQ(rep.spreads[0].updated_devices, 2);
  EXPECT_EQ(rep.spreads[0].spread_days, 59);
  EXPECT_EQ(rep.spreads[0].first_to_half_days, 0);
  EXPECT_EQ(rep.latency_n, 2);
  EXPECT_DOUBLE_EQ(*rep.latency_median, 60.5);
}

TEST(Timeline, SinglePhoneAndDataErrors) {
  Builder b;
  const auto c = b.chip(CM::kQualcomm, "SM1000");
  const auto s1 = b.phone("Samsung", "Galaxy A1", c);
  b.cm_record(CM::kQualcomm, "CVE-2021-0001", "2022-01-01", {"SM1000"});
  b.cm_record(CM::kQualcomm, "CVE-2021-0002", "2022-06-01", {"SM1000"});
  b.kb.add_update({s1, d("2022-03-01"), {cve("CVE-2021-0001"), cve("CVE-2021-0002")}, std::nullopt});
  const auto rep = update_timeline_report(b.done());
  ASSERT_EQ(rep.pairs.size(), 1u);
  ASSERT_EQ(rep.data_errors.size(), 1u);
  EXPECT_EQ(rep.data_errors[0].cve, cve("CVE-2021-0002"));
  EXPECT_EQ(rep.data_errors[0].latency_days, -92);
  EXPECT_EQ(rep.spreads.at(0).spread_days, 0);
}

TEST(Timeline, ToysetQuantiles) {
  const auto rep = update_timeline_report(testing::load_toyset());
  EXPECT_EQ(rep.latency_n, 5);
  EXPECT_EQ(rep.latency_q25, 212.0);
  EXPECT_EQ(rep.latency_median, 282.0);
  EXPECT_EQ(rep.latency_q95, 328.0);
}

TEST(AffectedDistribution, ToysetAndOmission) {
  const auto rows = affected_count_distribution(testing::load_toyset());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].manufacturer, CM::kQualcomm);
  EXPECT_EQ(rows[0].summary.n, 3u);
  EXPECT_EQ(rows[0].summary.max, 3);
  EXPECT_EQ(rows[0].summary.min, 1);
  EXPECT_EQ(rows[0].summary.median, 2);
  EXPECT_DOUBLE_EQ(rows[0].mean, 2.0);
}

TEST(Impact, ToysetAndUnlinked) {
  const auto kb = testing::load_toyset();
  const auto rep = impact_report(cve("CVE-2021-30001"), kb);
  EXPECT_EQ(rep.chipsets.size(), 2u);
  EXPECT_EQ(rep.smartphones.size(), 3u);
  EXPECT_EQ(rep.per_oem.at("Xiaomi"), 2);
  EXPECT_EQ(rep.per_oem.at("Samsung"), 1);
  EXPECT_TRUE(rep.warning.empty());

  Builder b;
  b.nvd_record("CVE-2022-0009", "2022-07-01", 5.0);
  const auto none = impact_report(cve("CVE-2022-0009"), b.done());
  EXPECT_TRUE(none.smartphones.empty());
  EXPECT_FALSE(none.warning.empty());
  EXPECT_THROW(impact_report(cve("CVE-2022-0010"), b.kb), NotFoundError);
}

// Extra updates on phones that already receive updates never add unmitigated
// vulnerabilities; extra links never remove affected devices. A first update
// for a phone can satisfy criterion (i) and so may add candidates.
TEST(AnalyticsProperty, Monotonicity) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    auto inst = testing::random_instance(rng);
    if (inst.phones.empty() || inst.vulns.empty()) continue;
    const auto before_kb = testing::build_kb(inst);
    const auto before = unmitigated_vulnerabilities(before_kb, d("2023-01-01"));

    auto more = inst;
    testing::InstanceUpdate extra;
    if (inst.updates.empty()) continue;
    extra.phone = inst.updates[rng() % inst.updates.size()].phone;
    extra.release = d("2022-11-01");
    extra.explicit_vulns = {static_cast<int>(rng() % inst.vulns.size())};
    more.updates.push_back(extra);
    const auto after = unmitigated_vulnerabilities(testing::build_kb(more), d("2023-01-01"));
    EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));

    auto linked = inst;
    const int v = static_cast<int>(rng() % inst.vulns.size());
    const int cm_chip = *inst.vulns[v].chipsets.begin();
    for (std::size_t c = 0; c < inst.chipsets.size(); ++c) {
      if (inst.chipsets[c].cm == inst.chipsets[cm_chip].cm) {
        linked.vulns[v].chipsets.insert(static_cast<int>(c));
        break;
      }
    }
    const auto kb2 = testing::build_kb(linked);
    std::set<DeviceKey> a, bset;
    for (const auto* p : before_kb.affected_smartphones(inst.vulns[v].cve)) a.insert(p->key);
    for (const auto* p : kb2.affected_smartphones(inst.vulns[v].cve)) bset.insert(p->key);
    EXPECT_TRUE(std::includes(bset.begin(), bset.end(), a.begin(), a.end()));
  }
}

TEST(AnalyticsProperty, SharesBoundedAndDaysNonnegative) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const auto kb = testing::build_kb(testing::random_instance(rng));
    for (const auto& c : introduction_report(kb).chipsets) {
      EXPECT_GE(c.newly_share, 0.0);
      EXPECT_LE(c.newly_share, 1.0);
      EXPECT_NEAR(c.newly_share + c.inherited_share, 1.0, 1e-12);
      if (c.removed_before_next_share) {
        EXPECT_GE(*c.removed_before_next_share, 0.0);
        EXPECT_LE(*c.removed_before_next_share, 1.0);
      }
    }
    const auto t = update_timeline_report(kb);
    for (const auto& p : t.pairs) {
      if (p.latency_days) EXPECT_GE(*p.latency_days, 0);
    }
    for (const auto& s : t.spreads) {
      EXPECT_GE(s.spread_days, 0);
      EXPECT_LE(s.first_to_half_days, s.spread_days);
    }
    for (const auto& e : patch_latency_report(kb).entries) EXPECT_GE(e.days, 0);
    const auto u = unmitigated_report(kb);
    EXPECT_GE(u.unmitigated_share, 0.0);
    EXPECT_LE(u.unmitigated_share, 1.0);
    for (const auto& r : availability_matrix(kb, 365, {d("2015-01-01"), d("2030-01-01")}).rows) {
      EXPECT_EQ(r.cm_share, 1.0);
    }
  }
}

}  // namespace
}  // namespace chipvuln
