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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chipvuln/domain.hpp"

namespace chipvuln {

// Per-manufacturer key terms mapping vendor vocabulary onto the common
// component names and onto firmware/driver locations.
//
// Invariants, checked on construction (throws ValidationError):
//   * no two entries of one manufacturer share a case-folded term;
//   * every Component is reachable from at least one entry.
class KeyTermTable {
 public:
  KeyTermTable() = default;  // empty; only useful as a placeholder
  explicit KeyTermTable(std::vector<ComponentKeyTerm> entries);

  const std::vector<ComponentKeyTerm>& entries() const { return entries_; }
  const std::string& version() const { return version_; }
  void set_version(std::string v) { version_ = std::move(v); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const KeyTermTable&, const KeyTermTable&) = default;

 private:
  std::vector<ComponentKeyTerm> entries_;
  std::string version_;
};

// Line format: "manufacturer | term | component | location?".
//   manufacturer  one of the four, or "*" for all of them
//   component     a Component name, or "-" for a location-only cue
//   location      Firmware or Driver, optional
// "#" starts a comment; "# version: X" records the table version.
KeyTermTable parse_key_term_table(std::string_view text);
KeyTermTable load_key_term_table(const std::filesystem::path& path);
std::string format_key_term_table(const KeyTermTable& table);

}  // namespace chipvuln
