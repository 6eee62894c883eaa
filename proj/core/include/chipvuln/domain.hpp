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
#pragma once

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chipvuln/date.hpp"
#include "chipvuln/errors.hpp"

namespace chipvuln {

enum class ChipsetManufacturer { kQualcomm, kMediatek, kSamsung, kUnisoc };

// Common component nomenclature shared across manufacturers.
enum class Component {
  kBluetooth,
  kWiFi,
  kCellular,
  kGpu,
  kVision,
  kNfc,
  kBoot,
  kPosition,
  kAudio,
  kVirtualization,
  kMachineLearning,
  kTrust,
  kPower,
  kIpc,
  kMemoryManagement,
  kDebug,
};

enum class Location { kFirmware, kDriver, kUnknown };

enum class DiscoveryAttribution { kInternal, kExternal, kUnknown };

// Kind of publication channel a record came from.
enum class Source { kCmBulletin, kNvd, kAospBulletin, kOemChangelog };

// Concrete document family (one parser each).
enum class VantagePoint {
  kQualcommBulletin,
  kMediatekBulletin,
  kSamsungMobileBulletin,
  kSamsungSemiconductorBulletin,
  kUnisocBulletin,
  kSamsungUpdates,
  kXiaomiUpdates,
  kTecnoUpdates,
  kTecnoChangesets,
  kAndroidBulletin,
  kNvd,
  kDeviceCatalog,
  kChipsetReleaseDates,
};

enum class DocumentFormat { kHtml, kJson };

const std::vector<ChipsetManufacturer>& all_manufacturers();
// Components in the row order of the per-component discovery table.
const std::vector<Component>& all_components();
const std::vector<VantagePoint>& all_vantage_points();

std::string_view to_string(ChipsetManufacturer v);
std::string_view to_string(Component v);
std::string_view to_string(Location v);
std::string_view to_string(DiscoveryAttribution v);
std::string_view to_string(Source v);
std::string_view to_string(VantagePoint v);
std::string_view to_string(DocumentFormat v);

// Case-insensitive; throw VocabularyError for anything outside the closed set.
ChipsetManufacturer parse_manufacturer(std::string_view text);
Component parse_component(std::string_view text);
Location parse_location(std::string_view text);
DiscoveryAttribution parse_attribution(std::string_view text);
Source parse_source(std::string_view text);
VantagePoint parse_vantage_point(std::string_view text);

Source source_of(VantagePoint vp);
DocumentFormat expected_format(VantagePoint vp);
// Manufacturer that publishes a chipset-manufacturer bulletin family.
std::optional<ChipsetManufacturer> bulletin_manufacturer(VantagePoint vp);

struct CveId {
  int year = 0;
  std::string sequence;

  std::string str() const;

  friend bool operator==(const CveId&, const CveId&) = default;
  friend std::strong_ordering operator<=>(const CveId& a, const CveId& b);
};

// Parses "CVE-<YEAR>-<NUM>" after upper-casing. The year must lie in
// [1999, max_year] and the sequence must have at least four digits.
// Throws ValidationError naming the failed rule.
CveId validate_cve(std::string_view text, int max_year);
CveId validate_cve(std::string_view text);

// CVSS base score held in tenths so that comparisons are exact.
struct CvssScore {
  int tenths = 0;
  std::string version;  // "3.1", "3.0", "2.0" or empty when unknown

  double value() const { return tenths / 10.0; }
  friend bool operator==(const CvssScore&, const CvssScore&) = default;
  friend auto operator<=>(const CvssScore&, const CvssScore&) = default;
};

struct ChipsetKey {
  ChipsetManufacturer manufacturer = ChipsetManufacturer::kQualcomm;
  std::string model_number;  // normalized

  std::string str() const;
  friend bool operator==(const ChipsetKey&, const ChipsetKey&) = default;
  friend auto operator<=>(const ChipsetKey&, const ChipsetKey&) = default;
};

struct ChipsetModel {
  ChipsetKey key;
  std::optional<Date> release_date;  // T_rel(c)
  std::optional<std::string> marketing_name;

  friend bool operator==(const ChipsetModel&, const ChipsetModel&) = default;
};

struct DeviceKey {
  std::string oem;
  std::string device_name;

  // URL-safe slug, e.g. "samsung-galaxy-s22".
  std::string id() const;
  friend bool operator==(const DeviceKey&, const DeviceKey&) = default;
  friend auto operator<=>(const DeviceKey&, const DeviceKey&) = default;
};

struct SmartphoneModel {
  DeviceKey key;
  ChipsetKey chipset;  // B(s)
  Date release_date;

  friend bool operator==(const SmartphoneModel&, const SmartphoneModel&) = default;
};

// One vantage point's raw view of one vulnerability.
struct VantagePointRecord {
  Source source = Source::kCmBulletin;
  VantagePoint vantage_point = VantagePoint::kQualcommBulletin;
  CveId cve;
  std::optional<ChipsetManufacturer> manufacturer;
  Date publication_date;
  std::optional<Date> report_date;
  std::optional<CvssScore> severity;
  std::optional<std::string> severity_label;
  std::string description;
  std::vector<std::string> affected_chipset_strings;
  std::optional<std::string> component_raw;
  std::optional<std::string> credit;
  std::optional<bool> internal_flag;

  friend bool operator==(const VantagePointRecord&, const VantagePointRecord&) = default;
};

// Records are unique per (cve, vantage point, publication date).
struct RecordKey {
  CveId cve;
  VantagePoint vantage_point;
  Date publication_date;
  friend bool operator==(const RecordKey&, const RecordKey&) = default;
  friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};
RecordKey natural_key(const VantagePointRecord& r);

struct Vulnerability {
  CveId cve;
  std::vector<VantagePointRecord> records;  // ordered by natural key
  std::optional<ChipsetManufacturer> manufacturer;
  std::optional<Component> component;  // nullopt means Unknown
  Location location = Location::kUnknown;
  DiscoveryAttribution attribution = DiscoveryAttribution::kUnknown;
  std::optional<Date> report_date;  // T_report(v)
  std::optional<Date> patch_date;   // T_patch(v)
  std::set<ChipsetKey> affected_chipsets;  // defines v in V(c)

  bool affects(const ChipsetKey& c) const { return affected_chipsets.contains(c); }
  friend bool operator==(const Vulnerability&, const Vulnerability&) = default;
};

struct DeviceUpdate {
  DeviceKey device;
  Date release_date;  // T_OEM
  std::set<CveId> explicit_cves;
  std::optional<Date> spl_date;

  friend bool operator==(const DeviceUpdate&, const DeviceUpdate&) = default;
  friend auto operator<=>(const DeviceUpdate& a, const DeviceUpdate& b) {
    if (auto c = a.device <=> b.device; c != 0) return c;
    if (auto c = a.release_date <=> b.release_date; c != 0) return c;
    if (auto c = a.spl_date <=> b.spl_date; c != 0) return c;
    return a.explicit_cves <=> b.explicit_cves;
  }
};

struct AospBulletin {
  Date spl_date;
  std::set<CveId> cves;

  friend bool operator==(const AospBulletin&, const AospBulletin&) = default;
};

struct ComponentKeyTerm {
  ChipsetManufacturer manufacturer = ChipsetManufacturer::kQualcomm;
  std::string term;
  std::optional<Component> component;  // empty for location-only cues
  std::optional<Location> location;

  friend bool operator==(const ComponentKeyTerm&, const ComponentKeyTerm&) = default;
};

// Earliest publication date accepted for any record.
inline constexpr int kEarliestYear = 2009;
Date earliest_publication_date();

std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

}  // namespace chipvuln
