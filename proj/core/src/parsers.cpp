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
#include "chipvuln/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "chipvuln/html.hpp"
#include "chipvuln/normalize.hpp"
#include "parse_util.hpp"

namespace chipvuln {

using detail::reject;
using detail::warn;

namespace detail {

std::optional<CveId> read_cve(std::string_view raw, Date retrieved_at, const std::string& entry,
                              std::vector<ValidationIssue>& issues) {
  try {
    return validate_cve(trim(raw), retrieved_at.year());
  } catch (const ValidationError& e) {
    issues.push_back(reject(entry, "cve", e.rule(), trim(raw)));
    return std::nullopt;
  }
}

std::optional<int> read_score_tenths(std::string_view raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return static_cast<int>(std::lround(v * 10.0));
}

std::string cvss_version_from_vector(std::string_view vector) {
  const std::string v = trim(vector);
  if (v.rfind("CVSS:", 0) == 0) {
    const auto slash = v.find('/');
    return v.substr(5, slash == std::string::npos ? std::string::npos : slash - 5);
  }
  if (v.rfind("AV:", 0) == 0 || v.rfind("(AV:", 0) == 0) return "2.0";
  return {};
}

bool has_reject(const std::vector<ValidationIssue>& issues, std::size_t from) {
  for (std::size_t i = from; i < issues.size(); ++i) {
    if (issues[i].severity == IssueSeverity::kReject) return true;
  }
  return false;
}

}  // namespace detail

namespace {

using nlohmann::json;

json parse_json(const SourceDocument& doc) {
  try {
    return json::parse(doc.body);
  } catch (const json::parse_error& e) {
    throw ParseError("json", "document '" + doc.name + "' is not valid JSON: " + e.what());
  }
}

std::string json_string(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

std::optional<ChipsetManufacturer> manufacturer_from_word(std::string_view word) {
  const std::string w = to_lower(word);
  if (w == "qualcomm" || w == "snapdragon") return ChipsetManufacturer::kQualcomm;
  if (w == "mediatek" || w == "helio" || w == "dimensity") return ChipsetManufacturer::kMediatek;
  if (w == "samsung" || w == "exynos") return ChipsetManufacturer::kSamsung;
  if (w == "unisoc" || w == "spreadtrum") return ChipsetManufacturer::kUnisoc;
  return std::nullopt;
}

// Column index by header label, -1 when absent.
int column_of(const html::Table& t, std::string_view label) {
  const std::string want = html::label_key(label);
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    if (html::label_key(t.headers[i]) == want) return static_cast<int>(i);
  }
  return -1;
}

std::string cell(const std::vector<std::string>& row, int col) {
  if (col < 0 || static_cast<std::size_t>(col) >= row.size()) return {};
  return trim(row[static_cast<std::size_t>(col)]);
}


// Splits a free-text CVE list; invalid tokens become warn issues.
std::set<CveId> read_cve_tokens(std::string_view text, Date retrieved_at, const std::string& entry,
                                std::vector<ValidationIssue>& issues) {
  std::set<CveId> out;
  for (const auto& token : split_list(text)) {
    for (const auto& word : split_list(std::regex_replace(token, std::regex("\\s+"), ","))) {
      try {
        out.insert(validate_cve(word, retrieved_at.year()));
      } catch (const ValidationError& e) {
        issues.push_back(warn(entry, "cve", e.rule(), word));
      }
    }
  }
  return out;
}

std::optional<Date> read_spl(std::string_view raw, const std::string& entry,
                             std::vector<ValidationIssue>& issues, bool& bad) {
  const std::string s = trim(raw);
  if (s.empty() || s == "-") return std::nullopt;
  if (auto d = Date::parse_loose(s)) return d;
  issues.push_back(reject(entry, "spl_date", "date-format", s));
  bad = true;
  return std::nullopt;
}

void check_update(const DeviceUpdate& u, Date retrieved_at, const std::string& entry,
                  std::vector<ValidationIssue>& issues) {
  if (u.explicit_cves.empty() && !u.spl_date) {
    issues.push_back(reject(entry, "evidence", "no-evidence", ""));
  }
  if (u.release_date > retrieved_at) {
    issues.push_back(reject(entry, "release_date", "date-future", u.release_date.iso()));
  }
  if (u.spl_date && *u.spl_date > u.release_date) {
    issues.push_back(warn(entry, "spl_date", "spl-after-release", u.spl_date->iso()));
  }
}

// Column-table changelog (Samsung, Xiaomi).
struct ChangelogColumns {
  std::string_view device;
  std::string_view date;
  std::string_view spl;
  std::string_view cves;
};

ParseResult<DeviceUpdate> parse_changelog_table(const SourceDocument& doc, std::string_view oem,
                                                const ChangelogColumns& cols) {
  const html::Node root = html::parse(doc.body);
  ParseResult<DeviceUpdate> out;
  bool found = false;
  int n = 0;
  for (const html::Node* t : root.find_all("table")) {
    const html::Table table = html::read_table(*t);
    const int c_dev = column_of(table, cols.device);
    const int c_date = column_of(table, cols.date);
    if (c_dev < 0 || c_date < 0) continue;
    found = true;
    const int c_spl = column_of(table, cols.spl);
    const int c_cves = column_of(table, cols.cves);
    for (const auto& row : table.rows) {
      const std::string entry = "entry " + std::to_string(++n);
      const std::size_t mark = out.issues.size();
      const std::string device = cell(row, c_dev);
      if (device.empty()) {
        out.issues.push_back(reject(entry, "device", "missing-value", ""));
        continue;
      }
      DeviceUpdate u;
      u.device = DeviceKey{std::string(oem), device};
      const std::string date_raw = cell(row, c_date);
      auto date = Date::parse_loose(date_raw);
      if (!date) {
        out.issues.push_back(reject(entry, "release_date", "date-format", date_raw));
        continue;
      }
      u.release_date = *date;
      bool bad = false;
      u.spl_date = read_spl(cell(row, c_spl), entry, out.issues, bad);
      u.explicit_cves = read_cve_tokens(cell(row, c_cves), doc.retrieved_at, entry, out.issues);
      check_update(u, doc.retrieved_at, entry, out.issues);
      if (!bad && !detail::has_reject(out.issues, mark)) out.items.push_back(std::move(u));
    }
  }
  if (!found) {
    throw ParseError(std::string(cols.device),
                     "no changelog table with columns '" + std::string(cols.device) + "' and '" +
                         std::string(cols.date) + "' in '" + doc.name + "'");
  }
  return out;
}

DeviceUpdate read_json_update(const json& u, std::string_view oem, const std::string& device,
                              const SourceDocument& doc, const std::string& entry,
                              std::vector<ValidationIssue>& issues, bool& bad) {
  DeviceUpdate out;
  out.device = DeviceKey{std::string(oem), device};
  const std::string date_raw = json_string(u, "releaseDate");
  auto date = Date::parse_loose(date_raw);
  if (!date) {
    issues.push_back(reject(entry, "release_date", "date-format", date_raw));
    bad = true;
    return out;
  }
  out.release_date = *date;
  out.spl_date = read_spl(json_string(u, "securityPatchLevel"), entry, issues, bad);
  if (auto it = u.find("cves"); it != u.end() && it->is_array()) {
    std::string joined;
    for (const auto& c : *it) {
      if (c.is_string()) joined += c.get<std::string>() + ",";
    }
    out.explicit_cves = read_cve_tokens(joined, doc.retrieved_at, entry, issues);
  }
  return out;
}

ParseResult<DeviceUpdate> parse_tecno_updates(const SourceDocument& doc, std::string_view oem) {
  const json j = parse_json(doc);
  if (!j.is_object() || !j.contains("devices") || !j["devices"].is_array()) {
    throw ParseError("devices", "Tecno update document '" + doc.name + "' has no 'devices' array");
  }
  ParseResult<DeviceUpdate> out;
  int n = 0;
  int device_index = 0;
  for (const auto& d : j["devices"]) {
    ++device_index;
    const std::string model = trim(json_string(d, "model"));
    const auto updates = d.find("updates");
    if (model.empty() || updates == d.end() || !updates->is_array()) {
      out.issues.push_back(reject("device " + std::to_string(device_index), "model", "missing-value", model));
      continue;
    }
    for (const auto& u : *updates) {
      const std::string entry = "entry " + std::to_string(++n);
      const std::size_t mark = out.issues.size();
      bool bad = false;
      DeviceUpdate upd = read_json_update(u, oem, model, doc, entry, out.issues, bad);
      if (bad) continue;
      check_update(upd, doc.retrieved_at, entry, out.issues);
      if (!detail::has_reject(out.issues, mark)) out.items.push_back(std::move(upd));
    }
  }
  return out;
}

ParseResult<DeviceUpdate> parse_tecno_changesets(const SourceDocument& doc, std::string_view oem) {
  const json j = parse_json(doc);
  if (!j.is_object() || !j.contains("patches") || !j["patches"].is_array()) {
    throw ParseError("patches", "Tecno changeset document '" + doc.name + "' has no 'patches' array");
  }
  ParseResult<DeviceUpdate> out;
  int n = 0;
  for (const auto& p : j["patches"]) {
    const std::string entry = "entry " + std::to_string(++n);
    const auto models = p.find("models");
    if (models == p.end() || !models->is_array() || models->empty()) {
      out.issues.push_back(reject(entry, "models", "missing-value", ""));
      continue;
    }
    for (const auto& m : *models) {
      const std::string model = m.is_string() ? trim(m.get<std::string>()) : std::string();
      const std::string dev_entry = entry + " " + model;
      const std::size_t mark = out.issues.size();
      if (model.empty()) {
        out.issues.push_back(reject(entry, "models", "missing-value", ""));
        continue;
      }
      bool bad = false;
      DeviceUpdate upd = read_json_update(p, oem, model, doc, dev_entry, out.issues, bad);
      if (bad) continue;
      check_update(upd, doc.retrieved_at, dev_entry, out.issues);
      if (!detail::has_reject(out.issues, mark)) out.items.push_back(std::move(upd));
    }
  }
  return out;
}

std::optional<std::string> product_from_cpe(std::string_view criteria, std::string* vendor) {
  // cpe:2.3:<part>:<vendor>:<product>:...
  std::vector<std::string> parts;
  std::string cur;
  for (char c : criteria) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() < 5 || parts[0] != "cpe" || (parts[2] != "h" && parts[2] != "o")) return std::nullopt;
  *vendor = parts[3];
  std::string product = parts[4];
  constexpr std::string_view kFirmware = "_firmware";
  if (product.size() > kFirmware.size() &&
      product.compare(product.size() - kFirmware.size(), kFirmware.size(), kFirmware) == 0) {
    product.resize(product.size() - kFirmware.size());
  }
  std::replace(product.begin(), product.end(), '_', ' ');
  return product;
}

}  // namespace

SourceDocument make_document(VantagePoint vp, Date retrieved_at, std::string body, std::string name) {
  if (trim(body).empty()) {
    throw ValidationError("empty-body", "document '" + name + "' is empty");
  }
  SourceDocument doc;
  doc.vantage_point = vp;
  doc.retrieved_at = retrieved_at;
  doc.format = expected_format(vp);
  const char first = trim(body).front();
  const bool looks_json = first == '{' || first == '[';
  if ((doc.format == DocumentFormat::kJson) != looks_json) {
    throw ValidationError("format-mismatch", "document '" + name + "' is not " +
                                                 std::string(to_string(doc.format)) + " as expected for " +
                                                 std::string(to_string(vp)));
  }
  doc.body = std::move(body);
  doc.name = std::move(name);
  return doc;
}

Date oem_activity_cutoff() { return Date::from_ymd(2022, 1, 1); }

std::string default_oem(VantagePoint vp) {
  switch (vp) {
    case VantagePoint::kSamsungUpdates:
      return "Samsung";
    case VantagePoint::kXiaomiUpdates:
      return "Xiaomi";
    case VantagePoint::kTecnoUpdates:
    case VantagePoint::kTecnoChangesets:
      return "Tecno";
    default:
      return {};
  }
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(std::move(t));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ';' || c == '\n') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::optional<Date> parse_release_date(std::string_view text) {
  const std::string s = trim(text);
  static const std::regex quarter(R"(^[Qq]([1-4])\s+(\d{4})$)");
  std::smatch m;
  if (std::regex_match(s, m, quarter)) {
    const unsigned q = static_cast<unsigned>(std::stoi(m[1].str()));
    return Date::from_ymd(std::stoi(m[2].str()), 3 * (q - 1) + 1, 1);
  }
  return Date::parse_loose(s);
}

std::vector<ValidationIssue> check_record(const VantagePointRecord& r, Date retrieved_at,
                                          const std::string& entry) {
  std::vector<ValidationIssue> issues;
  if (r.publication_date > retrieved_at) {
    issues.push_back(reject(entry, "publication_date", "date-future", r.publication_date.iso()));
  }
  if (r.publication_date < earliest_publication_date()) {
    issues.push_back(reject(entry, "publication_date", "date-before-scope", r.publication_date.iso()));
  }
  if (r.severity && (r.severity->tenths < 0 || r.severity->tenths > 100)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", r.severity->value());
    issues.push_back(reject(entry, "severity", "cvss-range", buf));
  }
  if (r.report_date && *r.report_date > retrieved_at) {
    issues.push_back(reject(entry, "report_date", "date-future", r.report_date->iso()));
  }
  if (r.report_date && *r.report_date > r.publication_date) {
    issues.push_back(warn(entry, "report_date", "report-after-publication", r.report_date->iso()));
  }
  if (trim(r.description).empty()) {
    issues.push_back(warn(entry, "description", "missing-value", ""));
  }
  return issues;
}

ParseResult<VantagePointRecord> parse_nvd_record(const SourceDocument& doc) {
  const json j = parse_json(doc);
  if (!j.is_object() || !j.contains("vulnerabilities") || !j["vulnerabilities"].is_array()) {
    throw ParseError("vulnerabilities", "NVD document '" + doc.name + "' has no 'vulnerabilities' array");
  }
  const json& vulns = j["vulnerabilities"];
  if (vulns.size() != 1) {
    throw ParseError("vulnerabilities", "NVD document '" + doc.name + "' holds " +
                                            std::to_string(vulns.size()) + " entries, expected one");
  }
  if (!vulns[0].contains("cve") || !vulns[0]["cve"].is_object()) {
    throw ParseError("cve", "NVD entry in '" + doc.name + "' has no 'cve' object");
  }
  const json& cve = vulns[0]["cve"];
  const std::string id = json_string(cve, "id");
  if (id.empty()) throw ParseError("cve.id", "NVD entry in '" + doc.name + "' has no id");
  const std::string published = json_string(cve, "published");
  if (published.size() < 10) {
    throw ParseError("cve.published", "NVD entry " + id + " has no publication date");
  }

  ParseResult<VantagePointRecord> out;
  const std::string entry = id;
  auto cve_id = detail::read_cve(id, doc.retrieved_at, entry, out.issues);
  auto pub = Date::parse_iso(std::string_view(published).substr(0, 10));
  if (!pub) out.issues.push_back(reject(entry, "publication_date", "date-format", published));
  if (!cve_id || !pub) return out;

  VantagePointRecord r;
  r.source = Source::kNvd;
  r.vantage_point = VantagePoint::kNvd;
  r.cve = *cve_id;
  r.publication_date = *pub;
  if (auto it = cve.find("descriptions"); it != cve.end() && it->is_array()) {
    for (const auto& d : *it) {
      if (json_string(d, "lang") == "en") {
        r.description = json_string(d, "value");
        break;
      }
    }
  }

  // Base score: newest CVSS version first, NIST's primary assessment preferred.
  if (auto metrics = cve.find("metrics"); metrics != cve.end() && metrics->is_object()) {
    for (const auto& [key, version] : {std::pair{"cvssMetricV31", "3.1"}, std::pair{"cvssMetricV30", "3.0"},
                                       std::pair{"cvssMetricV2", "2.0"}}) {
      auto list = metrics->find(key);
      if (list == metrics->end() || !list->is_array() || list->empty()) continue;
      const json* chosen = &(*list)[0];
      for (const auto& m : *list) {
        if (json_string(m, "type") == "Primary") {
          chosen = &m;
          break;
        }
      }
      const json* data = chosen->contains("cvssData") ? &(*chosen)["cvssData"] : nullptr;
      if (!data || !data->contains("baseScore") || !(*data)["baseScore"].is_number()) continue;
      const double score = (*data)["baseScore"].get<double>();
      r.severity = CvssScore{static_cast<int>(std::lround(score * 10.0)), version};
      std::string label = json_string(*data, "baseSeverity");
      if (label.empty()) label = json_string(*chosen, "baseSeverity");
      if (!label.empty()) r.severity_label = label;
      break;
    }
  }

  // Affected chipsets from hardware/firmware CPEs of chipset vendors.
  std::set<std::string> seen;
  std::set<ChipsetManufacturer> vendors;
  bool any_cpe = false;
  if (auto configs = cve.find("configurations"); configs != cve.end() && configs->is_array()) {
    for (const auto& config : *configs) {
      if (!config.contains("nodes")) continue;
      for (const auto& node : config["nodes"]) {
        if (!node.contains("cpeMatch")) continue;
        for (const auto& match : node["cpeMatch"]) {
          any_cpe = true;
          if (match.contains("vulnerable") && match["vulnerable"].is_boolean() && !match["vulnerable"].get<bool>()) {
            continue;
          }
          std::string vendor;
          auto product = product_from_cpe(json_string(match, "criteria"), &vendor);
          if (!product) continue;
          auto cm = manufacturer_from_word(vendor);
          if (!cm) continue;
          vendors.insert(*cm);
          if (seen.insert(*product).second) r.affected_chipset_strings.push_back(*product);
        }
      }
    }
  }
  if (!any_cpe) {
    out.issues.push_back(warn(entry, "affected_chipsets", "no-cpe", ""));
  } else if (r.affected_chipset_strings.empty()) {
    out.issues.push_back(warn(entry, "affected_chipsets", "no-chipset-cpe", ""));
  }
  if (vendors.size() == 1) r.manufacturer = *vendors.begin();

  const std::size_t mark = out.issues.size();
  auto checks = check_record(r, doc.retrieved_at, entry);
  out.issues.insert(out.issues.end(), checks.begin(), checks.end());
  if (!detail::has_reject(out.issues, mark)) out.items.push_back(std::move(r));
  return out;
}

ParseResult<AospBulletin> parse_aosp_bulletin(const SourceDocument& doc) {
  const html::Node root = html::parse(doc.body);
  static const std::regex spl_re(R"((\d{4}-\d{2}-\d{2})\s+security patch level)", std::regex::icase);
  std::optional<Date> spl;
  std::string spl_raw;
  for (std::string_view tag : {"h1", "h2", "h3", "h4", "p"}) {
    for (const html::Node* n : root.find_all(tag)) {
      const std::string text = n->text_content();
      std::smatch m;
      if (!std::regex_search(text, m, spl_re)) continue;
      auto d = Date::parse_iso(m[1].str());
      if (!d) throw ParseError("security patch level", "unparseable patch level '" + m[1].str() + "'");
      if (!spl || *d < *spl) {
        spl = d;
        spl_raw = m[1].str();
      }
    }
  }
  if (!spl) {
    throw ParseError("security patch level",
                     "bulletin '" + doc.name + "' names no '<date> security patch level'");
  }
  if (!spl->is_first_of_month()) {
    throw ParseError("security patch level", "bulletin patch level " + spl_raw + " is not the first of a month");
  }

  ParseResult<AospBulletin> out;
  AospBulletin bulletin;
  bulletin.spl_date = *spl;
  bool any_table = false;
  for (const html::Node* t : root.find_all("table")) {
    const html::Table table = html::read_table(*t);
    int col = column_of(table, "CVE");
    if (col < 0) col = column_of(table, "CVEs");
    if (col < 0) continue;
    any_table = true;
    for (const auto& row : table.rows) {
      const std::string text = cell(row, col);
      auto ids = read_cve_tokens(text, doc.retrieved_at, "SPL " + spl_raw, out.issues);
      bulletin.cves.insert(ids.begin(), ids.end());
    }
  }
  if (!any_table) throw ParseError("CVE", "bulletin '" + doc.name + "' has no table with a CVE column");
  out.items.push_back(std::move(bulletin));
  return out;
}

ParseResult<DeviceUpdate> parse_oem_changelog(const SourceDocument& doc, std::string_view oem) {
  switch (doc.vantage_point) {
    case VantagePoint::kSamsungUpdates:
      return parse_changelog_table(doc, oem, {"Model", "Release Date", "Security Patch Level", "Security Patch Details"});
    case VantagePoint::kXiaomiUpdates:
      return parse_changelog_table(doc, oem, {"Device", "Date", "Android Security Patch", "Fixed CVEs"});
    case VantagePoint::kTecnoUpdates:
      return parse_tecno_updates(doc, oem);
    case VantagePoint::kTecnoChangesets:
      return parse_tecno_changesets(doc, oem);
    default:
      throw PreconditionError("'" + std::string(to_string(doc.vantage_point)) + "' is not an OEM changelog");
  }
}

CatalogResult parse_device_catalog(const SourceDocument& doc, std::span<const ChipsetModel> known_chipsets) {
  const html::Node root = html::parse(doc.body);
  CatalogResult out;
  std::vector<SmartphoneModel> parsed;
  std::set<DeviceKey> seen;
  int n = 0;
  bool found = false;
  for (const html::Node* t : root.find_all("table")) {
    const html::Table table = html::read_table(*t);
    const int c_brand = column_of(table, "Brand");
    const int c_model = column_of(table, "Model");
    const int c_chip = column_of(table, "Chipset");
    const int c_date = column_of(table, "Release Date");
    if (c_brand < 0 || c_model < 0 || c_chip < 0 || c_date < 0) continue;
    found = true;
    for (const auto& row : table.rows) {
      const std::string brand = cell(row, c_brand);
      const std::string model = cell(row, c_model);
      const std::string entry = brand + " " + model;
      ++n;
      if (brand.empty() || model.empty()) {
        out.issues.push_back(reject("entry " + std::to_string(n), "device", "missing-value", entry));
        continue;
      }
      const std::string chip = cell(row, c_chip);
      if (chip.empty()) {
        out.issues.push_back(reject(entry, "chipset", "missing-chipset", ""));
        continue;
      }
      const auto space = chip.find(' ');
      auto cm = manufacturer_from_word(chip.substr(0, space));
      if (!cm || space == std::string::npos) {
        out.issues.push_back(reject(entry, "chipset", "unknown-manufacturer", chip));
        continue;
      }
      // "Exynos 2100" keeps its family word for normalization.
      const std::string first = to_lower(chip.substr(0, space));
      const std::string rest = (first == "exynos" || first == "helio" || first == "dimensity" ||
                                first == "snapdragon")
                                   ? chip
                                   : chip.substr(space + 1);
      NormalizedChipsetName name;
      try {
        name = normalize_chipset_name(rest);
      } catch (const NormalizationError&) {
        out.issues.push_back(reject(entry, "chipset", "chipset-normalization", chip));
        continue;
      }
      const std::string date_raw = cell(row, c_date);
      auto date = Date::parse_loose(date_raw);
      if (!date) {
        out.issues.push_back(reject(entry, "release_date", "date-format", date_raw));
        continue;
      }
      if (*date > doc.retrieved_at) {
        out.issues.push_back(reject(entry, "release_date", "date-future", date->iso()));
        continue;
      }
      SmartphoneModel s{DeviceKey{brand, model}, ChipsetKey{*cm, name.model_number}, *date};
      if (!seen.insert(s.key).second) {
        out.issues.push_back(warn(entry, "device", "duplicate", entry));
        continue;
      }
      for (const auto& c : known_chipsets) {
        if (c.key == s.chipset && c.release_date && *c.release_date > s.release_date) {
          out.issues.push_back(warn(entry, "release_date", "release-before-chipset", date->iso()));
        }
      }
      parsed.push_back(std::move(s));
    }
  }
  if (!found) {
    throw ParseError("Chipset", "catalog '" + doc.name + "' has no table with Brand/Model/Chipset/Release Date columns");
  }

  std::map<std::string, Date> latest;
  for (const auto& s : parsed) {
    auto [it, inserted] = latest.emplace(s.key.oem, s.release_date);
    if (!inserted && it->second < s.release_date) it->second = s.release_date;
  }
  for (auto& s : parsed) {
    if (latest[s.key.oem] < oem_activity_cutoff()) {
      out.exclusions.push_back({s.key, "oem-inactive-since-" + oem_activity_cutoff().iso()});
    } else {
      out.items.push_back(std::move(s));
    }
  }
  return out;
}

ParseResult<ChipsetModel> parse_chipset_release_dates(const SourceDocument& doc) {
  const html::Node root = html::parse(doc.body);
  std::optional<ChipsetManufacturer> cm;
  for (std::string_view tag : {"h1", "title"}) {
    const html::Node* n = root.find_first(tag);
    if (!n) continue;
    std::string word;
    for (char c : n->text_content() + " ") {
      if (std::isalnum(static_cast<unsigned char>(c))) {
        word.push_back(c);
      } else {
        if (!cm && !word.empty()) cm = manufacturer_from_word(word);
        word.clear();
      }
    }
    if (cm) break;
  }
  if (!cm) {
    throw ParseError("title", "release-date page '" + doc.name + "' does not name a chipset manufacturer");
  }

  ParseResult<ChipsetModel> out;
  std::set<ChipsetKey> seen;
  bool found = false;
  for (const html::Node* t : root.find_all("table")) {
    const html::Table table = html::read_table(*t);
    const int c_model = column_of(table, "Model number");
    const int c_date = column_of(table, "Release date");
    if (c_model < 0 || c_date < 0) continue;
    found = true;
    const int c_name = column_of(table, "Marketing name");
    for (const auto& row : table.rows) {
      const std::string raw_model = cell(row, c_model);
      const std::string entry = raw_model.empty() ? "row" : raw_model;
      NormalizedChipsetName name;
      try {
        name = normalize_chipset_name(raw_model);
      } catch (const NormalizationError&) {
        out.issues.push_back(reject(entry, "model_number", "chipset-normalization", raw_model));
        continue;
      }
      const std::string date_raw = cell(row, c_date);
      if (date_raw.empty()) {
        out.issues.push_back(reject(entry, "release_date", "missing-date", ""));
        continue;
      }
      auto date = parse_release_date(date_raw);
      if (!date) {
        out.issues.push_back(reject(entry, "release_date", "date-format", date_raw));
        continue;
      }
      if (*date > doc.retrieved_at) {
        out.issues.push_back(reject(entry, "release_date", "date-future", date->iso()));
        continue;
      }
      if (*date < earliest_publication_date()) {
        out.issues.push_back(warn(entry, "release_date", "date-before-scope", date->iso()));
      }
      ChipsetModel c;
      c.key = ChipsetKey{*cm, name.model_number};
      c.release_date = *date;
      const std::string marketing = cell(row, c_name);
      if (!marketing.empty()) {
        c.marketing_name = marketing;
      } else {
        c.marketing_name = name.marketing_name;
      }
      if (!seen.insert(c.key).second) {
        out.issues.push_back(warn(entry, "model_number", "duplicate", raw_model));
        continue;
      }
      out.items.push_back(std::move(c));
    }
  }
  if (!found) {
    throw ParseError("Model number", "release-date page '" + doc.name + "' has no Model number/Release date table");
  }
  return out;
}

ParsedDocument parse_document(const SourceDocument& doc, std::string_view oem,
                              std::span<const ChipsetModel> known_chipsets) {
  if (auto cm = bulletin_manufacturer(doc.vantage_point)) return parse_cm_bulletin(doc, *cm);
  switch (doc.vantage_point) {
    case VantagePoint::kNvd:
      return parse_nvd_record(doc);
    case VantagePoint::kAndroidBulletin:
      return parse_aosp_bulletin(doc);
    case VantagePoint::kDeviceCatalog:
      return parse_device_catalog(doc, known_chipsets);
    case VantagePoint::kChipsetReleaseDates:
      return parse_chipset_release_dates(doc);
    default:
      return parse_oem_changelog(doc, oem.empty() ? default_oem(doc.vantage_point) : std::string(oem));
  }
}

}  // namespace chipvuln
