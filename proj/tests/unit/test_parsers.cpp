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
#include <cstdlib>
#include <fstream>

#include "chipvuln/parsers.hpp"
#include "chipvuln/serialization.hpp"
#include "corpus.hpp"

namespace chipvuln {
namespace {

using testing::CorpusDocument;
using testing::corpus_documents;
using testing::corpus_retrieved_at;
using testing::fixtures_dir;
using testing::read_text;

SourceDocument fixture(const std::string& rel) {
  const auto path = fixtures_dir() / rel;
  const auto vp = parse_vantage_point(path.parent_path().filename().string());
  return make_document(vp, corpus_retrieved_at(), read_text(path), path.filename().string());
}

template <class R>
std::vector<ValidationIssue> issues_with(const R& r, std::string_view rule) {
  std::vector<ValidationIssue> out;
  std::copy_if(r.issues.begin(), r.issues.end(), std::back_inserter(out),
               [&](const ValidationIssue& i) { return i.rule == rule; });
  return out;
}

std::string parse_error_anchor(const SourceDocument& doc) {
  try {
    parse_document(doc);
  } catch (const ParseError& e) {
    return e.anchor();
  }
  return "<none>";
}

TEST(SourceDocument, RejectsEmptyBodyAndWrongFormat) {
  try {
    make_document(VantagePoint::kNvd, corpus_retrieved_at(), "");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.rule(), "empty-body");
  }
  try {
    make_document(VantagePoint::kNvd, corpus_retrieved_at(), "<html></html>");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.rule(), "format-mismatch");
  }
  EXPECT_EQ(make_document(VantagePoint::kTecnoUpdates, corpus_retrieved_at(), " [] ").format,
            DocumentFormat::kJson);
}

TEST(CmBulletin, ThreeEntriesOneBadCve) {
  const auto r = parse_cm_bulletin(fixture("qualcomm-bulletin/2022-10-bulletin.html"), ChipsetManufacturer::kQualcomm);
  ASSERT_EQ(r.items.size(), 2u);
  const auto bad = issues_with(r, "cve-pattern");
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].severity, IssueSeverity::kReject);
  EXPECT_EQ(bad[0].raw_value, "CVE-20XX-1");

  const auto& modem = r.items[0];
  EXPECT_EQ(modem.cve.str(), "CVE-2022-33251");
  EXPECT_EQ(modem.source, Source::kCmBulletin);
  EXPECT_EQ(modem.publication_date, Date::from_ymd(2022, 10, 3));
  EXPECT_EQ(modem.report_date, Date::from_ymd(2022, 5, 17));
  EXPECT_EQ(modem.component_raw.value_or(""), "Modem");
  EXPECT_EQ(modem.internal_flag, true);
  ASSERT_TRUE(modem.severity);
  EXPECT_EQ(modem.severity->tenths, 75);
  EXPECT_EQ(modem.affected_chipset_strings,
            (std::vector<std::string>{"SM8450", "SM8475", "SM-8350", "SD 8 Gen1 5G"}));

  const auto& wlan = r.items[1];
  EXPECT_EQ(wlan.component_raw.value_or(""), "WLAN Firmware");
  EXPECT_EQ(wlan.internal_flag, false);
}

TEST(CmBulletin, EmptyTableIsParseError) {
  EXPECT_EQ(parse_error_anchor(fixture("qualcomm-bulletin/empty-table.html")), "CVE ID");
}

TEST(CmBulletin, LabelDriftIsRejectedNotGuessed) {
  const auto r = parse_cm_bulletin(fixture("qualcomm-bulletin/missing-label.html"), ChipsetManufacturer::kQualcomm);
  const auto unknown = issues_with(r, "unknown-label");
  const auto missing = issues_with(r, "missing-label");
  ASSERT_EQ(unknown.size(), 1u);
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(unknown[0].raw_value, "Exploitability");
  EXPECT_EQ(missing[0].field, "Source");
  EXPECT_EQ(unknown[0].entry, missing[0].entry);
  for (const auto& rec : r.items) EXPECT_NE(rec.cve.str(), unknown[0].entry);
}

TEST(CmBulletin, OtherManufacturers) {
  EXPECT_EQ(parse_cm_bulletin(fixture("mediatek-bulletin/2023-03-bulletin.html"), ChipsetManufacturer::kMediatek)
                .items.size(),
            3u);
  EXPECT_EQ(parse_cm_bulletin(fixture("samsung-mobile-bulletin/2023-02-smr.html"), ChipsetManufacturer::kSamsung)
                .items.size(),
            2u);
  const auto psirt =
      parse_cm_bulletin(fixture("samsung-semiconductor-bulletin/2023-03-psirt.html"), ChipsetManufacturer::kSamsung);
  EXPECT_EQ(psirt.items.size(), 1u);
  EXPECT_EQ(issues_with(psirt, "cvss-range").size(), 1u);
  const auto unisoc = parse_cm_bulletin(fixture("unisoc-bulletin/2023-04-bulletin.html"), ChipsetManufacturer::kUnisoc);
  ASSERT_EQ(unisoc.items.size(), 2u);
  EXPECT_EQ(unisoc.items[0].publication_date, Date::from_ymd(2023, 4, 3));
}

TEST(Nvd, CpeNamesChipset) {
  const auto r = parse_nvd_record(fixture("nvd/CVE-2022-33251.json"));
  ASSERT_EQ(r.items.size(), 1u);
  const auto& rec = r.items[0];
  EXPECT_EQ(rec.source, Source::kNvd);
  EXPECT_EQ(rec.cve.str(), "CVE-2022-33251");
  EXPECT_NE(std::find(rec.affected_chipset_strings.begin(), rec.affected_chipset_strings.end(), "sm8450"),
            rec.affected_chipset_strings.end())
      << canonical(to_json(rec));
  ASSERT_TRUE(rec.severity);
  EXPECT_EQ(rec.severity->version, "3.1");
}

TEST(Nvd, MissingCpeIsWarn) {
  const auto r = parse_nvd_record(fixture("nvd/CVE-2023-20610-no-cpe.json"));
  ASSERT_EQ(r.items.size(), 1u);
  const auto w = issues_with(r, "no-cpe");
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].severity, IssueSeverity::kWarn);
  EXPECT_TRUE(r.items[0].affected_chipset_strings.empty());
}

TEST(Nvd, OutOfRangeScoreIsReject) {
  const auto r = parse_nvd_record(fixture("nvd/CVE-2021-1903-score-11.json"));
  EXPECT_TRUE(r.items.empty());
  const auto bad = issues_with(r, "cvss-range");
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].severity, IssueSeverity::kReject);
  EXPECT_EQ(bad[0].raw_value, "11.0");
}

TEST(Nvd, MissingScoreLeavesSeverityAbsent) {
  const auto r = parse_nvd_record(fixture("nvd/CVE-2023-21425-no-score.json"));
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_FALSE(r.items[0].severity);
  EXPECT_EQ(r.items[0].affected_chipset_strings, (std::vector<std::string>{"exynos 2100"}));
}

TEST(Nvd, MalformedIsParseError) {
  EXPECT_EQ(parse_error_anchor(fixture("nvd/malformed.json")), "json");
}

TEST(Aosp, SeptemberBulletin) {
  const auto r = parse_aosp_bulletin(fixture("android-bulletin/2023-09-01.html"));
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_EQ(r.items[0].spl_date, Date::from_ymd(2023, 9, 1));
  EXPECT_EQ(r.items[0].cves.size(), 5u);
  EXPECT_TRUE(r.items[0].cves.contains(validate_cve("CVE-2023-20610")));
  EXPECT_EQ(issues_with(r, "cve-pattern").size(), 1u);
}

TEST(Aosp, DuplicateCveCountsOnce) {
  const std::string body =
      "<html><body><h2>2023-10-01 security patch level vulnerability details</h2><table>"
      "<tr><th>CVE</th><th>Severity</th></tr>"
      "<tr><td>CVE-2023-40100</td><td>High</td></tr>"
      "<tr><td>CVE-2023-40100</td><td>High</td></tr></table></body></html>";
  const auto r = parse_aosp_bulletin(make_document(VantagePoint::kAndroidBulletin, corpus_retrieved_at(), body));
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_EQ(r.items[0].cves.size(), 1u);
}

TEST(Aosp, SplMustExistAndBeFirstOfMonth) {
  EXPECT_NE(parse_error_anchor(fixture("android-bulletin/missing-spl.html")), "<none>");
  EXPECT_NE(parse_error_anchor(fixture("android-bulletin/mid-month-spl.html")), "<none>");
}

TEST(OemChangelog, EvidenceKinds) {
  const auto r = parse_oem_changelog(fixture("samsung-updates/2022-03.html"), "Samsung");
  ASSERT_GE(r.items.size(), 2u);
  const auto& s22 = r.items[0];
  EXPECT_EQ(s22.device, (DeviceKey{"Samsung", "Galaxy S22"}));
  EXPECT_EQ(s22.release_date, Date::from_ymd(2022, 3, 10));
  EXPECT_EQ(s22.spl_date, Date::from_ymd(2022, 3, 1));
  EXPECT_EQ(s22.explicit_cves, (std::set<CveId>{validate_cve("CVE-2022-0001")}));

  const auto& spl_only = r.items[1];
  EXPECT_TRUE(spl_only.explicit_cves.empty());
  EXPECT_TRUE(spl_only.spl_date);

  const auto none = issues_with(r, "no-evidence");
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].severity, IssueSeverity::kReject);
  for (const auto& u : r.items) EXPECT_NE(u.device.device_name, "Galaxy A13");
}

TEST(OemChangelog, OtherOems) {
  const auto x = parse_oem_changelog(fixture("xiaomi-updates/2023-q1.html"), "Xiaomi");
  EXPECT_EQ(issues_with(x, "date-format").size(), 1u);
  EXPECT_EQ(issues_with(x, "spl-after-release").size(), 1u);
  const auto t = parse_oem_changelog(fixture("tecno-updates/phantom.json"), "Tecno");
  EXPECT_EQ(issues_with(t, "no-evidence").size(), 1u);
  EXPECT_EQ(issues_with(t, "missing-value").size(), 1u);
}

TEST(DeviceCatalog, ExclusionOfInactiveOems) {
  const auto r = parse_device_catalog(fixture("device-catalog/eligible-oems.html"));
  EXPECT_EQ(r.items.size(), 2u);
  ASSERT_EQ(r.exclusions.size(), 1u);
  EXPECT_EQ(r.exclusions[0].device.oem, "Legacy Phones");
}

TEST(DeviceCatalog, EmptyCatalogIsEmpty) {
  const std::string body =
      "<html><body><table><tr><th>Brand</th><th>Model</th><th>Chipset</th><th>Release Date</th></tr>"
      "</table></body></html>";
  const auto r = parse_device_catalog(make_document(VantagePoint::kDeviceCatalog, corpus_retrieved_at(), body));
  EXPECT_TRUE(r.items.empty());
  EXPECT_TRUE(r.issues.empty());
}

TEST(DeviceCatalog, PlausibilityRules) {
  const auto r = parse_device_catalog(fixture("device-catalog/plausibility.html"));
  EXPECT_EQ(issues_with(r, "missing-chipset").size(), 1u);
  EXPECT_EQ(issues_with(r, "unknown-manufacturer").size(), 1u);
  EXPECT_EQ(issues_with(r, "duplicate").size(), 1u);
}

TEST(DeviceCatalog, ReleaseBeforeChipsetWarns) {
  const std::vector<ChipsetModel> known = {
      {ChipsetKey{ChipsetManufacturer::kMediatek, "MT6789"}, Date::from_ymd(2022, 5, 18), std::nullopt}};
  const auto r = parse_device_catalog(fixture("device-catalog/plausibility.html"), known);
  const auto w = issues_with(r, "release-before-chipset");
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].severity, IssueSeverity::kWarn);
  EXPECT_EQ(w[0].raw_value, "2022-03-01");
}

TEST(ChipsetReleaseDates, QuarterAndExactDates) {
  const auto m = parse_chipset_release_dates(fixture("chipset-release-dates/mediatek.html"));
  auto find = [](const auto& items, std::string_view model) {
    return std::find_if(items.begin(), items.end(), [&](const ChipsetModel& c) { return c.key.model_number == model; });
  };
  auto mt6889 = find(m.items, "MT6889");
  ASSERT_NE(mt6889, m.items.end());
  EXPECT_EQ(mt6889->release_date, Date::from_ymd(2020, 1, 1));
  EXPECT_EQ(issues_with(m, "missing-date").size(), 1u);
  EXPECT_EQ(issues_with(m, "date-format").size(), 1u);
  EXPECT_EQ(find(m.items, "MT6895"), m.items.end());

  const auto q = parse_chipset_release_dates(fixture("chipset-release-dates/qualcomm.html"));
  auto sm8150 = find(q.items, "SM8150");
  ASSERT_NE(sm8150, q.items.end());
  EXPECT_EQ(sm8150->release_date, Date::from_ymd(2018, 12, 4));
}

TEST(ReleaseDate, QuarterMapsToFirstDay) {
  EXPECT_EQ(parse_release_date("Q1 2020"), Date::from_ymd(2020, 1, 1));
  EXPECT_EQ(parse_release_date("Q4 2021"), Date::from_ymd(2021, 10, 1));
  EXPECT_FALSE(parse_release_date("Q5 2021"));
}

// Goldens are regenerated with CHIPVULN_UPDATE_GOLDENS=1 and reviewed by hand.
TEST(GoldenCorpus, EveryFixtureMatchesItsGolden) {
  const bool update = std::getenv("CHIPVULN_UPDATE_GOLDENS") != nullptr;
  const auto docs = corpus_documents(fixtures_dir());
  ASSERT_GE(docs.size(), 20u);
  for (const CorpusDocument& d : docs) {
    std::string actual;
    for (const auto& line : testing::golden_lines(d)) actual += line + "\n";
    const auto golden = testing::golden_path(d.path);
    if (update) {
      std::ofstream(golden, std::ios::binary) << actual;
      continue;
    }
    ASSERT_TRUE(std::filesystem::exists(golden)) << golden;
    EXPECT_EQ(read_text(golden), actual) << d.path;
  }
}

TEST(ParserProperty, DeterministicAndRejectFree) {
  for (const CorpusDocument& d : corpus_documents(fixtures_dir())) {
    EXPECT_EQ(testing::golden_lines(d), testing::golden_lines(d)) << d.path;
    for (const auto& line : testing::golden_lines(d)) {
      const auto j = Json::parse(line);
      if (j.value("kind", "") == "issue" && j["severity"] == "reject") {
        // a rejected entry never reappears as an item with the same identifier
        const std::string entry = j["entry"];
        for (const auto& other : testing::golden_lines(d)) {
          const auto o = Json::parse(other);
          if (o["kind"] == "record") EXPECT_NE(o["cve"].get<std::string>(), entry) << d.path;
        }
      }
    }
  }
}

}  // namespace
}  // namespace chipvuln
