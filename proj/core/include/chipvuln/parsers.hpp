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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chipvuln/domain.hpp"

namespace chipvuln {

struct SourceDocument {
  VantagePoint vantage_point = VantagePoint::kQualcommBulletin;
  Date retrieved_at;  // plausibility reference: nothing may be dated after it
  std::string body;
  DocumentFormat format = DocumentFormat::kHtml;
  std::string name;  // file name or URL, for messages only
};

// Builds a document and checks its invariants: non-empty body, and a format
// that matches the vantage point's publication format. Throws ValidationError.
SourceDocument make_document(VantagePoint vp, Date retrieved_at, std::string body,
                             std::string name = {});

enum class IssueSeverity { kReject, kWarn };

struct ValidationIssue {
  std::string entry;  // which entry of the document ("entry 2", a CVE, a device)
  std::string field;
  std::string rule;
  std::string raw_value;
  IssueSeverity severity = IssueSeverity::kReject;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

template <class T>
struct ParseResult {
  std::vector<T> items;  // only entries without reject-level issues
  std::vector<ValidationIssue> issues;

  bool has_rejects() const {
    for (const auto& i : issues) {
      if (i.severity == IssueSeverity::kReject) return true;
    }
    return false;
  }
};

struct ExclusionFlag {
  DeviceKey device;
  std::string reason;
  friend bool operator==(const ExclusionFlag&, const ExclusionFlag&) = default;
};

struct CatalogResult : ParseResult<SmartphoneModel> {
  std::vector<ExclusionFlag> exclusions;
};

// OEMs are in scope only if they released a model on or after this date.
Date oem_activity_cutoff();

ParseResult<VantagePointRecord> parse_cm_bulletin(const SourceDocument& doc, ChipsetManufacturer cm);
ParseResult<VantagePointRecord> parse_nvd_record(const SourceDocument& doc);
// Exactly one item on success.
ParseResult<AospBulletin> parse_aosp_bulletin(const SourceDocument& doc);
ParseResult<DeviceUpdate> parse_oem_changelog(const SourceDocument& doc, std::string_view oem);
// known_chipsets enables the "device released before its chipset" check.
CatalogResult parse_device_catalog(const SourceDocument& doc,
                                   std::span<const ChipsetModel> known_chipsets = {});
ParseResult<ChipsetModel> parse_chipset_release_dates(const SourceDocument& doc);

using ParsedDocument = std::variant<ParseResult<VantagePointRecord>, ParseResult<AospBulletin>,
                                    ParseResult<DeviceUpdate>, CatalogResult,
                                    ParseResult<ChipsetModel>>;

// Dispatches on doc.vantage_point. OEM changelogs use the OEM implied by the
// family unless oem is given.
ParsedDocument parse_document(const SourceDocument& doc, std::string_view oem = {},
                              std::span<const ChipsetModel> known_chipsets = {});

std::string default_oem(VantagePoint vp);

// Shared helpers, exposed for tests.
std::vector<std::string> split_list(std::string_view text);
// "Q1 2020" -> 2020-01-01; ISO and loose dates pass through.
std::optional<Date> parse_release_date(std::string_view text);
// Plausibility checks common to every vantage-point record.
std::vector<ValidationIssue> check_record(const VantagePointRecord& r, Date retrieved_at,
                                          const std::string& entry);

}  // namespace chipvuln
