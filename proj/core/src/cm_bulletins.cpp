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
#include <algorithm>
#include <map>
#include <set>

#include "chipvuln/html.hpp"
#include "chipvuln/parsers.hpp"
#include "parse_util.hpp"

namespace chipvuln {
namespace {

using detail::reject;
using detail::warn;

// Canonical descriptor a vantage-point label maps onto.
enum class Field {
  kCve,
  kDescription,
  kComponent,
  kScore,
  kSeverityLabel,
  kCvssVector,
  kAffectedChipsets,
  kCredit,
  kInternalSource,
  kReportDate,
  kIgnored,
};

struct LabelRule {
  std::string_view label;
  Field field;
  bool required;
};

enum class Layout {
  kLabelRows,  // one key/value table per entry
  kColumns,    // one row per entry under a header row
};

struct BulletinFormat {
  Layout layout;
  std::string_view cve_label;  // structural anchor for entries
  std::vector<LabelRule> rules;
};

const BulletinFormat& format_for(VantagePoint vp) {
  static const BulletinFormat qualcomm{
      Layout::kLabelRows,
      "CVE ID",
      {
          {"CVE ID", Field::kCve, true},
          {"Title", Field::kIgnored, false},
          {"Description", Field::kDescription, true},
          {"Technology Area", Field::kComponent, true},
          {"Vulnerability Type", Field::kIgnored, false},
          {"Access Vector", Field::kIgnored, false},
          {"Security Rating", Field::kSeverityLabel, false},
          {"CVSS Rating", Field::kIgnored, false},
          {"CVSS Score", Field::kScore, false},
          {"CVSS String", Field::kCvssVector, false},
          {"Source", Field::kInternalSource, true},
          {"Date Reported", Field::kReportDate, false},
          {"Customer Notified Date", Field::kIgnored, false},
          {"Affected Chipsets", Field::kAffectedChipsets, true},
      }};
  static const BulletinFormat mediatek{
      Layout::kColumns,
      "CVE",
      {
          {"CVE", Field::kCve, true},
          {"Subcomponent", Field::kComponent, true},
          {"Description", Field::kDescription, true},
          {"Severity", Field::kSeverityLabel, false},
          {"CVSS Score", Field::kScore, false},
          {"CWE", Field::kIgnored, false},
          {"Affected Chipsets", Field::kAffectedChipsets, true},
          {"Affected Software Versions", Field::kIgnored, false},
          {"Credit", Field::kCredit, false},
      }};
  static const BulletinFormat samsung_semiconductor{
      Layout::kColumns,
      "CVE ID",
      {
          {"CVE ID", Field::kCve, true},
          {"Affected Products", Field::kAffectedChipsets, true},
          {"Component", Field::kComponent, true},
          {"Description", Field::kDescription, true},
          {"Severity", Field::kSeverityLabel, false},
          {"CVSS", Field::kScore, false},
          {"CVSS Vector", Field::kCvssVector, false},
          {"Reported Date", Field::kReportDate, false},
          {"Credit", Field::kCredit, false},
      }};
  static const BulletinFormat samsung_mobile{
      Layout::kColumns,
      "CVE",
      {
          {"SVE", Field::kIgnored, false},
          {"CVE", Field::kCve, true},
          {"Severity", Field::kSeverityLabel, false},
          {"CVSS Score", Field::kScore, false},
          {"Affected Chipsets", Field::kAffectedChipsets, true},
          {"Component", Field::kComponent, true},
          {"Description", Field::kDescription, true},
          {"Reported On", Field::kReportDate, false},
          {"Credit", Field::kCredit, false},
      }};
  static const BulletinFormat unisoc{
      Layout::kColumns,
      "CVE ID",
      {
          {"CVE ID", Field::kCve, true},
          {"Component", Field::kComponent, true},
          {"Description", Field::kDescription, true},
          {"Severity", Field::kSeverityLabel, false},
          {"CVSS Score", Field::kScore, false},
          {"Affected Chipsets", Field::kAffectedChipsets, true},
          {"Credit", Field::kCredit, false},
      }};
  switch (vp) {
    case VantagePoint::kQualcommBulletin:
      return qualcomm;
    case VantagePoint::kMediatekBulletin:
      return mediatek;
    case VantagePoint::kSamsungSemiconductorBulletin:
      return samsung_semiconductor;
    case VantagePoint::kSamsungMobileBulletin:
      return samsung_mobile;
    case VantagePoint::kUnisocBulletin:
      return unisoc;
    default:
      throw PreconditionError("'" + std::string(to_string(vp)) + "' is not a chipset-manufacturer bulletin");
  }
}

const LabelRule* rule_for(const BulletinFormat& f, std::string_view label) {
  const std::string key = html::label_key(label);
  for (const auto& r : f.rules) {
    if (html::label_key(r.label) == key) return &r;
  }
  return nullptr;
}

bool is_placeholder(std::string_view s) {
  const std::string k = to_lower(trim(s));
  return k.empty() || k == "-" || k == "n/a" || k == "na" || k == "none";
}

// One bulletin entry as (label, value) pairs in document order.
using Entry = std::vector<std::pair<std::string, std::string>>;

std::optional<VantagePointRecord> build_record(const SourceDocument& doc, ChipsetManufacturer cm,
                                               const BulletinFormat& format, Date published,
                                               const Entry& entry, const std::string& locator,
                                               std::vector<ValidationIssue>& issues) {
  const std::size_t mark = issues.size();
  std::map<Field, std::string> values;
  std::set<std::string> present;
  for (const auto& [label, value] : entry) {
    const LabelRule* rule = rule_for(format, label);
    if (!rule) {
      issues.push_back(reject(locator, label, "unknown-label", label));
      continue;
    }
    present.insert(html::label_key(rule->label));
    if (rule->field != Field::kIgnored) values[rule->field] = value;
  }
  for (const auto& r : format.rules) {
    if (r.required && !present.contains(html::label_key(r.label))) {
      issues.push_back(reject(locator, std::string(r.label), "missing-label", ""));
    }
  }

  VantagePointRecord rec;
  rec.source = Source::kCmBulletin;
  rec.vantage_point = doc.vantage_point;
  rec.manufacturer = cm;
  rec.publication_date = published;

  std::optional<CveId> cve;
  if (auto it = values.find(Field::kCve); it != values.end()) {
    cve = detail::read_cve(it->second, doc.retrieved_at, locator, issues);
  }
  if (auto it = values.find(Field::kDescription); it != values.end()) {
    rec.description = html::collapse_whitespace(it->second);
  }
  if (auto it = values.find(Field::kComponent); it != values.end() && !is_placeholder(it->second)) {
    rec.component_raw = html::collapse_whitespace(it->second);
  }
  if (auto it = values.find(Field::kSeverityLabel); it != values.end() && !is_placeholder(it->second)) {
    rec.severity_label = html::collapse_whitespace(it->second);
  }
  if (auto it = values.find(Field::kScore); it != values.end() && !is_placeholder(it->second)) {
    if (auto tenths = detail::read_score_tenths(it->second)) {
      rec.severity = CvssScore{*tenths, {}};
    } else {
      issues.push_back(reject(locator, "severity", "cvss-format", trim(it->second)));
    }
  }
  if (auto it = values.find(Field::kCvssVector); it != values.end() && rec.severity) {
    rec.severity->version = detail::cvss_version_from_vector(it->second);
  }
  if (auto it = values.find(Field::kAffectedChipsets); it != values.end()) {
    std::set<std::string> seen;
    for (auto& s : split_list(it->second)) {
      if (seen.insert(s).second) rec.affected_chipset_strings.push_back(std::move(s));
    }
    if (rec.affected_chipset_strings.empty()) {
      issues.push_back(warn(locator, "affected_chipsets", "no-affected-chipsets", ""));
    }
  }
  if (auto it = values.find(Field::kCredit); it != values.end() && !is_placeholder(it->second)) {
    rec.credit = html::collapse_whitespace(it->second);
  }
  if (auto it = values.find(Field::kInternalSource); it != values.end() && !is_placeholder(it->second)) {
    rec.internal_flag = to_lower(it->second).find("internal") != std::string::npos;
  }
  if (auto it = values.find(Field::kReportDate); it != values.end() && !is_placeholder(it->second)) {
    if (auto d = Date::parse_loose(it->second)) {
      rec.report_date = *d;
    } else {
      issues.push_back(reject(locator, "report_date", "date-format", trim(it->second)));
    }
  }

  if (cve) {
    rec.cve = *cve;
    auto checks = check_record(rec, doc.retrieved_at, locator);
    issues.insert(issues.end(), checks.begin(), checks.end());
  }
  if (!cve || detail::has_reject(issues, mark)) return std::nullopt;
  return rec;
}

}  // namespace

ParseResult<VantagePointRecord> parse_cm_bulletin(const SourceDocument& doc, ChipsetManufacturer cm) {
  if (bulletin_manufacturer(doc.vantage_point) != cm) {
    throw PreconditionError("document family '" + std::string(to_string(doc.vantage_point)) +
                            "' is not a " + std::string(to_string(cm)) + " bulletin");
  }
  const BulletinFormat& format = format_for(doc.vantage_point);
  const html::Node root = html::parse(doc.body);

  const html::Node* published_cell = html::cell_after_label(root, "Published Date");
  if (!published_cell) {
    throw ParseError("Published Date", "bulletin '" + doc.name + "' has no 'Published Date' field");
  }
  const std::string published_raw = published_cell->text_content();
  auto published = Date::parse_loose(published_raw);
  if (!published) {
    throw ParseError("Published Date", "bulletin '" + doc.name + "' has unparseable date '" + published_raw + "'");
  }

  std::vector<Entry> entries;
  const std::string anchor = html::label_key(format.cve_label);
  for (const html::Node* t : root.find_all("table")) {
    if (format.layout == Layout::kLabelRows) {
      auto rows = html::read_label_rows(*t);
      const bool is_entry = std::any_of(rows.begin(), rows.end(), [&](const auto& r) {
        return html::label_key(r.first) == anchor;
      });
      if (is_entry) entries.push_back(std::move(rows));
    } else {
      const html::Table table = html::read_table(*t);
      const bool is_entry = std::any_of(table.headers.begin(), table.headers.end(),
                                        [&](const std::string& h) { return html::label_key(h) == anchor; });
      if (!is_entry) continue;
      for (const auto& row : table.rows) {
        Entry e;
        for (std::size_t i = 0; i < table.headers.size(); ++i) {
          e.emplace_back(table.headers[i], i < row.size() ? row[i] : std::string());
        }
        entries.push_back(std::move(e));
      }
    }
  }
  if (entries.empty()) {
    throw ParseError(std::string(format.cve_label),
                     "bulletin '" + doc.name + "' has no entries anchored on '" + std::string(format.cve_label) + "'");
  }

  ParseResult<VantagePointRecord> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string locator = "entry " + std::to_string(i + 1);
    if (auto rec = build_record(doc, cm, format, *published, entries[i], locator, out.issues)) {
      out.items.push_back(std::move(*rec));
    }
  }
  return out;
}

}  // namespace chipvuln
