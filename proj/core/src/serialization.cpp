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
#include "chipvuln/serialization.hpp"

#include <cmath>

namespace chipvuln {
namespace {

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

void put_date(Json& j, const char* key, const std::optional<Date>& v) {
  if (v) j[key] = v->iso();
}

Date date_of(const Json& j) {
  auto d = Date::parse_iso(j.get<std::string>());
  if (!d) throw ValidationError("date-format", "bad date '" + j.get<std::string>() + "'");
  return *d;
}

std::optional<Date> opt_date(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return date_of(j[key]);
}

std::optional<std::string> opt_string(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

template <class T>
Json tagged(const char* kind, const T& v) {
  Json j = to_json(v);
  j["kind"] = kind;
  return j;
}

}  // namespace

Json to_json(const CveId& v) { return v.str(); }

Json to_json(const CvssScore& v) {
  Json j;
  // One decimal, exactly as published.
  j["score"] = v.tenths / 10.0;
  if (!v.version.empty()) j["version"] = v.version;
  return j;
}

Json to_json(const ChipsetKey& v) {
  return Json{{"manufacturer", to_string(v.manufacturer)}, {"model_number", v.model_number}};
}

Json to_json(const ChipsetModel& v) {
  Json j = to_json(v.key);
  put_date(j, "release_date", v.release_date);
  put(j, "marketing_name", v.marketing_name);
  return j;
}

Json to_json(const DeviceKey& v) {
  return Json{{"oem", v.oem}, {"device_name", v.device_name}, {"id", v.id()}};
}

Json to_json(const SmartphoneModel& v) {
  Json j = to_json(v.key);
  j["chipset"] = to_json(v.chipset);
  j["release_date"] = v.release_date.iso();
  return j;
}

Json to_json(const VantagePointRecord& v) {
  Json j;
  j["source"] = to_string(v.source);
  j["vantage_point"] = to_string(v.vantage_point);
  j["cve"] = v.cve.str();
  if (v.manufacturer) j["manufacturer"] = to_string(*v.manufacturer);
  j["publication_date"] = v.publication_date.iso();
  put_date(j, "report_date", v.report_date);
  if (v.severity) j["severity"] = to_json(*v.severity);
  put(j, "severity_label", v.severity_label);
  j["description"] = v.description;
  j["affected_chipset_strings"] = v.affected_chipset_strings;
  put(j, "component_raw", v.component_raw);
  put(j, "credit", v.credit);
  put(j, "internal_flag", v.internal_flag);
  return j;
}

Json to_json(const Vulnerability& v) {
  Json j;
  j["cve"] = v.cve.str();
  if (v.manufacturer) j["manufacturer"] = to_string(*v.manufacturer);
  j["component"] = v.component ? std::string(to_string(*v.component)) : std::string("Unknown");
  j["location"] = to_string(v.location);
  j["attribution"] = to_string(v.attribution);
  put_date(j, "report_date", v.report_date);
  put_date(j, "patch_date", v.patch_date);
  Json chips = Json::array();
  for (const auto& c : v.affected_chipsets) chips.push_back(to_json(c));
  j["affected_chipsets"] = std::move(chips);
  Json recs = Json::array();
  for (const auto& r : v.records) recs.push_back(to_json(r));
  j["records"] = std::move(recs);
  return j;
}

Json to_json(const DeviceUpdate& v) {
  Json j;
  j["device"] = to_json(v.device);
  j["release_date"] = v.release_date.iso();
  put_date(j, "spl_date", v.spl_date);
  Json cves = Json::array();
  for (const auto& c : v.explicit_cves) cves.push_back(c.str());
  j["explicit_cves"] = std::move(cves);
  return j;
}

Json to_json(const AospBulletin& v) {
  Json cves = Json::array();
  for (const auto& c : v.cves) cves.push_back(c.str());
  return Json{{"spl_date", v.spl_date.iso()}, {"cves", std::move(cves)}};
}

Json to_json(const ValidationIssue& v) {
  return Json{{"entry", v.entry},
              {"field", v.field},
              {"rule", v.rule},
              {"raw_value", v.raw_value},
              {"severity", v.severity == IssueSeverity::kReject ? "reject" : "warn"}};
}

Json to_json(const ExclusionFlag& v) { return Json{{"device", to_json(v.device)}, {"reason", v.reason}}; }

Json to_json(const ComponentKeyTerm& v) {
  Json j{{"manufacturer", to_string(v.manufacturer)}, {"term", v.term}};
  if (v.component) j["component"] = to_string(*v.component);
  if (v.location) j["location"] = to_string(*v.location);
  return j;
}

CveId cve_from_json(const Json& j) {
  // Stored data was validated on ingestion; only the pattern is re-checked.
  return validate_cve(j.get<std::string>(), 9999);
}

ChipsetKey chipset_key_from_json(const Json& j) {
  return ChipsetKey{parse_manufacturer(j.at("manufacturer").get<std::string>()),
                    j.at("model_number").get<std::string>()};
}

ChipsetModel chipset_from_json(const Json& j) {
  ChipsetModel c;
  c.key = chipset_key_from_json(j);
  c.release_date = opt_date(j, "release_date");
  c.marketing_name = opt_string(j, "marketing_name");
  return c;
}

DeviceKey device_key_from_json(const Json& j) {
  return DeviceKey{j.at("oem").get<std::string>(), j.at("device_name").get<std::string>()};
}

SmartphoneModel smartphone_from_json(const Json& j) {
  return SmartphoneModel{device_key_from_json(j), chipset_key_from_json(j.at("chipset")),
                         date_of(j.at("release_date"))};
}

VantagePointRecord record_from_json(const Json& j) {
  VantagePointRecord r;
  r.source = parse_source(j.at("source").get<std::string>());
  r.vantage_point = parse_vantage_point(j.at("vantage_point").get<std::string>());
  r.cve = cve_from_json(j.at("cve"));
  if (j.contains("manufacturer")) r.manufacturer = parse_manufacturer(j["manufacturer"].get<std::string>());
  r.publication_date = date_of(j.at("publication_date"));
  r.report_date = opt_date(j, "report_date");
  if (j.contains("severity")) {
    const Json& s = j["severity"];
    r.severity = CvssScore{static_cast<int>(std::lround(s.at("score").get<double>() * 10.0)),
                           s.value("version", std::string())};
  }
  r.severity_label = opt_string(j, "severity_label");
  r.description = j.value("description", std::string());
  r.affected_chipset_strings = j.value("affected_chipset_strings", std::vector<std::string>{});
  r.component_raw = opt_string(j, "component_raw");
  r.credit = opt_string(j, "credit");
  if (j.contains("internal_flag")) r.internal_flag = j["internal_flag"].get<bool>();
  return r;
}

DeviceUpdate update_from_json(const Json& j) {
  DeviceUpdate u;
  u.device = device_key_from_json(j.at("device"));
  u.release_date = date_of(j.at("release_date"));
  u.spl_date = opt_date(j, "spl_date");
  for (const auto& c : j.value("explicit_cves", Json::array())) u.explicit_cves.insert(cve_from_json(c));
  return u;
}

AospBulletin bulletin_from_json(const Json& j) {
  AospBulletin b;
  b.spl_date = date_of(j.at("spl_date"));
  for (const auto& c : j.value("cves", Json::array())) b.cves.insert(cve_from_json(c));
  return b;
}

std::string canonical(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

std::vector<std::string> canonical_lines(const ParsedDocument& parsed) {
  std::vector<std::string> lines;
  std::visit(
      [&](const auto& result) {
        using T = std::decay_t<decltype(result)>;
        for (const auto& item : result.items) {
          const char* kind = "item";
          if constexpr (std::is_same_v<T, ParseResult<VantagePointRecord>>) kind = "record";
          if constexpr (std::is_same_v<T, ParseResult<AospBulletin>>) kind = "aosp_bulletin";
          if constexpr (std::is_same_v<T, ParseResult<DeviceUpdate>>) kind = "device_update";
          if constexpr (std::is_same_v<T, CatalogResult>) kind = "smartphone";
          if constexpr (std::is_same_v<T, ParseResult<ChipsetModel>>) kind = "chipset";
          lines.push_back(canonical(tagged(kind, item)));
        }
        for (const auto& issue : result.issues) lines.push_back(canonical(tagged("issue", issue)));
        if constexpr (std::is_same_v<T, CatalogResult>) {
          for (const auto& ex : result.exclusions) lines.push_back(canonical(tagged("exclusion", ex)));
        }
      },
      parsed);
  return lines;
}

std::string canonical_error_line(const ParseError& e) {
  return canonical(Json{{"kind", "parse_error"}, {"anchor", e.anchor()}, {"message", e.what()}});
}

}  // namespace chipvuln
