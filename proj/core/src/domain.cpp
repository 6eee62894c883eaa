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
#include "chipvuln/domain.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace chipvuln {
namespace {

template <class E>
struct Vocab {
  std::vector<std::pair<E, std::string_view>> entries;

  std::string_view name(E v) const {
    for (const auto& [e, n] : entries) {
      if (e == v) return n;
    }
    return "?";
  }

  E parse(std::string_view text, std::string_view what) const {
    const std::string folded = to_lower(trim(text));
    for (const auto& [e, n] : entries) {
      if (to_lower(n) == folded) return e;
    }
    throw VocabularyError("unknown " + std::string(what) + " '" + std::string(text) + "'");
  }
};

const Vocab<ChipsetManufacturer>& manufacturers() {
  static const Vocab<ChipsetManufacturer> v{{
      {ChipsetManufacturer::kQualcomm, "Qualcomm"},
      {ChipsetManufacturer::kMediatek, "Mediatek"},
      {ChipsetManufacturer::kSamsung, "Samsung"},
      {ChipsetManufacturer::kUnisoc, "Unisoc"},
  }};
  return v;
}

const Vocab<Component>& components() {
  // Row order of the per-component discovery table.
  static const Vocab<Component> v{{
      {Component::kCellular, "Cellular"},
      {Component::kWiFi, "WiFi"},
      {Component::kGpu, "GPU"},
      {Component::kTrust, "Trust"},
      {Component::kAudio, "Audio"},
      {Component::kVision, "Vision"},
      {Component::kBluetooth, "Bluetooth"},
      {Component::kDebug, "Debug"},
      {Component::kBoot, "Boot"},
      {Component::kIpc, "IPC"},
      {Component::kMachineLearning, "MachineLearning"},
      {Component::kPosition, "Position"},
      {Component::kMemoryManagement, "MemoryManagement"},
      {Component::kPower, "Power"},
      {Component::kVirtualization, "Virtualization"},
      {Component::kNfc, "NFC"},
  }};
  return v;
}

const Vocab<Location>& locations() {
  static const Vocab<Location> v{{
      {Location::kFirmware, "Firmware"},
      {Location::kDriver, "Driver"},
      {Location::kUnknown, "Unknown"},
  }};
  return v;
}

const Vocab<DiscoveryAttribution>& attributions() {
  static const Vocab<DiscoveryAttribution> v{{
      {DiscoveryAttribution::kInternal, "Internal"},
      {DiscoveryAttribution::kExternal, "External"},
      {DiscoveryAttribution::kUnknown, "Unknown"},
  }};
  return v;
}

const Vocab<Source>& sources() {
  static const Vocab<Source> v{{
      {Source::kCmBulletin, "CmBulletin"},
      {Source::kNvd, "Nvd"},
      {Source::kAospBulletin, "AospBulletin"},
      {Source::kOemChangelog, "OemChangelog"},
  }};
  return v;
}

const Vocab<VantagePoint>& vantage_points() {
  static const Vocab<VantagePoint> v{{
      {VantagePoint::kQualcommBulletin, "qualcomm-bulletin"},
      {VantagePoint::kMediatekBulletin, "mediatek-bulletin"},
      {VantagePoint::kSamsungMobileBulletin, "samsung-mobile-bulletin"},
      {VantagePoint::kSamsungSemiconductorBulletin, "samsung-semiconductor-bulletin"},
      {VantagePoint::kUnisocBulletin, "unisoc-bulletin"},
      {VantagePoint::kSamsungUpdates, "samsung-updates"},
      {VantagePoint::kXiaomiUpdates, "xiaomi-updates"},
      {VantagePoint::kTecnoUpdates, "tecno-updates"},
      {VantagePoint::kTecnoChangesets, "tecno-changesets"},
      {VantagePoint::kAndroidBulletin, "android-bulletin"},
      {VantagePoint::kNvd, "nvd"},
      {VantagePoint::kDeviceCatalog, "device-catalog"},
      {VantagePoint::kChipsetReleaseDates, "chipset-release-dates"},
  }};
  return v;
}

}  // namespace

const std::vector<ChipsetManufacturer>& all_manufacturers() {
  static const std::vector<ChipsetManufacturer> v = {
      ChipsetManufacturer::kQualcomm, ChipsetManufacturer::kMediatek,
      ChipsetManufacturer::kSamsung, ChipsetManufacturer::kUnisoc};
  return v;
}

const std::vector<Component>& all_components() {
  static const std::vector<Component> v = [] {
    std::vector<Component> out;
    for (const auto& [c, _] : components().entries) out.push_back(c);
    return out;
  }();
  return v;
}

const std::vector<VantagePoint>& all_vantage_points() {
  static const std::vector<VantagePoint> v = [] {
    std::vector<VantagePoint> out;
    for (const auto& [c, _] : vantage_points().entries) out.push_back(c);
    return out;
  }();
  return v;
}

std::string_view to_string(ChipsetManufacturer v) { return manufacturers().name(v); }
std::string_view to_string(Component v) { return components().name(v); }
std::string_view to_string(Location v) { return locations().name(v); }
std::string_view to_string(DiscoveryAttribution v) { return attributions().name(v); }
std::string_view to_string(Source v) { return sources().name(v); }
std::string_view to_string(VantagePoint v) { return vantage_points().name(v); }
std::string_view to_string(DocumentFormat v) { return v == DocumentFormat::kHtml ? "html" : "json"; }

ChipsetManufacturer parse_manufacturer(std::string_view text) {
  // "MediaTek" is the vendor's own spelling.
  return manufacturers().parse(text, "chipset manufacturer");
}
Component parse_component(std::string_view text) {
  const std::string folded = to_lower(trim(text));
  if (folded == "machine learning") return Component::kMachineLearning;
  if (folded == "memory management" || folded == "memory") return Component::kMemoryManagement;
  if (folded == "wi-fi" || folded == "wlan") return Component::kWiFi;
  return components().parse(text, "component");
}
Location parse_location(std::string_view text) { return locations().parse(text, "location"); }
DiscoveryAttribution parse_attribution(std::string_view text) {
  return attributions().parse(text, "discovery attribution");
}
Source parse_source(std::string_view text) { return sources().parse(text, "source"); }
VantagePoint parse_vantage_point(std::string_view text) {
  return vantage_points().parse(text, "vantage point");
}

Source source_of(VantagePoint vp) {
  switch (vp) {
    case VantagePoint::kQualcommBulletin:
    case VantagePoint::kMediatekBulletin:
    case VantagePoint::kSamsungMobileBulletin:
    case VantagePoint::kSamsungSemiconductorBulletin:
    case VantagePoint::kUnisocBulletin:
      return Source::kCmBulletin;
    case VantagePoint::kNvd:
      return Source::kNvd;
    case VantagePoint::kAndroidBulletin:
      return Source::kAospBulletin;
    default:
      return Source::kOemChangelog;
  }
}

DocumentFormat expected_format(VantagePoint vp) {
  switch (vp) {
    case VantagePoint::kNvd:
    case VantagePoint::kTecnoUpdates:
    case VantagePoint::kTecnoChangesets:
      return DocumentFormat::kJson;
    default:
      return DocumentFormat::kHtml;
  }
}

std::optional<ChipsetManufacturer> bulletin_manufacturer(VantagePoint vp) {
  switch (vp) {
    case VantagePoint::kQualcommBulletin:
      return ChipsetManufacturer::kQualcomm;
    case VantagePoint::kMediatekBulletin:
      return ChipsetManufacturer::kMediatek;
    case VantagePoint::kSamsungMobileBulletin:
    case VantagePoint::kSamsungSemiconductorBulletin:
      return ChipsetManufacturer::kSamsung;
    case VantagePoint::kUnisocBulletin:
      return ChipsetManufacturer::kUnisoc;
    default:
      return std::nullopt;
  }
}

std::string CveId::str() const { return "CVE-" + std::to_string(year) + "-" + sequence; }

std::strong_ordering operator<=>(const CveId& a, const CveId& b) {
  if (auto c = a.year <=> b.year; c != 0) return c;
  // Numeric order on the sequence; all digits, no leading sign.
  if (auto c = a.sequence.size() <=> b.sequence.size(); c != 0) return c;
  return a.sequence.compare(b.sequence) <=> 0;
}

CveId validate_cve(std::string_view text, int max_year) {
  const std::string upper = to_upper(text);
  const std::string_view s = upper;
  if (s.size() < 10 || s.substr(0, 4) != "CVE-" || s[8] != '-') {
    throw ValidationError("cve-pattern", "'" + std::string(text) + "' does not match CVE-<YEAR>-<NUM>");
  }
  const std::string_view year = s.substr(4, 4);
  const std::string_view seq = s.substr(9);
  auto all_digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(year) || !all_digits(seq)) {
    throw ValidationError("cve-pattern", "'" + std::string(text) + "' does not match CVE-<YEAR>-<NUM>");
  }
  if (seq.size() < 4) {
    throw ValidationError("cve-sequence-length",
                          "'" + std::string(text) + "' has fewer than four sequence digits");
  }
  const int y = std::stoi(std::string(year));
  if (y < 1999) {
    throw ValidationError("cve-year-range", "'" + std::string(text) + "' predates 1999");
  }
  if (y > max_year) {
    throw ValidationError("cve-year-future",
                          "'" + std::string(text) + "' has a year in the future (after " +
                              std::to_string(max_year) + ")");
  }
  return CveId{y, std::string(seq)};
}

CveId validate_cve(std::string_view text) { return validate_cve(text, Date::today().year()); }

std::string ChipsetKey::str() const {
  return std::string(to_string(manufacturer)) + "/" + model_number;
}

std::string DeviceKey::id() const {
  std::string out;
  bool dash = false;
  for (char c : oem + " " + device_name) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      if (dash && !out.empty()) out.push_back('-');
      out.push_back(static_cast<char>(std::tolower(uc)));
      dash = false;
    } else {
      dash = true;
    }
  }
  return out;
}

RecordKey natural_key(const VantagePointRecord& r) {
  return RecordKey{r.cve, r.vantage_point, r.publication_date};
}

Date earliest_publication_date() { return Date::from_ymd(2009, 9, 1); }

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace chipvuln
