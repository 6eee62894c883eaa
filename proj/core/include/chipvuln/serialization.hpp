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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chipvuln/domain.hpp"
#include "chipvuln/parsers.hpp"

// Canonical structured-text form. Objects are nlohmann::json with sorted
// keys; absent optionals are omitted. One object per line in .jsonl files.
namespace chipvuln {

using Json = nlohmann::json;

Json to_json(const CveId& v);
Json to_json(const CvssScore& v);
Json to_json(const ChipsetKey& v);
Json to_json(const ChipsetModel& v);
Json to_json(const DeviceKey& v);
Json to_json(const SmartphoneModel& v);
Json to_json(const VantagePointRecord& v);
Json to_json(const Vulnerability& v);
Json to_json(const DeviceUpdate& v);
Json to_json(const AospBulletin& v);
Json to_json(const ValidationIssue& v);
Json to_json(const ExclusionFlag& v);
Json to_json(const ComponentKeyTerm& v);

CveId cve_from_json(const Json& j);
ChipsetKey chipset_key_from_json(const Json& j);
ChipsetModel chipset_from_json(const Json& j);
DeviceKey device_key_from_json(const Json& j);
SmartphoneModel smartphone_from_json(const Json& j);
VantagePointRecord record_from_json(const Json& j);
DeviceUpdate update_from_json(const Json& j);
AospBulletin bulletin_from_json(const Json& j);

// Stable single-line rendering used everywhere bytes are compared.
std::string canonical(const Json& j);

// Golden form of a parse outcome: items, then issues, then exclusions, each
// line tagged with "kind".
std::vector<std::string> canonical_lines(const ParsedDocument& parsed);
// Golden line for a document that failed to parse.
std::string canonical_error_line(const ParseError& e);

}  // namespace chipvuln
