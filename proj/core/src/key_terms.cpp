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
#include "chipvuln/key_terms.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace chipvuln {
namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '|') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

KeyTermTable::KeyTermTable(std::vector<ComponentKeyTerm> entries) : entries_(std::move(entries)) {
  std::set<std::pair<ChipsetManufacturer, std::string>> seen;
  std::set<Component> reachable;
  for (const auto& e : entries_) {
    if (trim(e.term).empty()) throw ValidationError("empty-term", "key term table has an empty term");
    if (!e.component && !e.location) {
      throw ValidationError("empty-entry", "key term '" + e.term + "' maps to neither component nor location");
    }
    if (e.location == Location::kUnknown) {
      throw ValidationError("unknown-location", "key term '" + e.term + "' cannot map to location Unknown");
    }
    if (!seen.emplace(e.manufacturer, to_lower(e.term)).second) {
      throw ValidationError("duplicate-term", "duplicate key term '" + e.term + "' for " +
                                                  std::string(to_string(e.manufacturer)));
    }
    if (e.component) reachable.insert(*e.component);
  }
  for (Component c : all_components()) {
    if (!reachable.contains(c)) {
      throw ValidationError("unreachable-component",
                            "no key term maps to component " + std::string(to_string(c)));
    }
  }
}

KeyTermTable parse_key_term_table(std::string_view text) {
  std::vector<ComponentKeyTerm> entries;
  std::string version;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(std::string_view(t).substr(1));
      if (body.rfind("version:", 0) == 0) version = trim(std::string_view(body).substr(8));
      continue;
    }
    auto fields = split_fields(t);
    if (fields.size() < 3 || fields.size() > 4) {
      throw ValidationError("line-format", "key term line " + std::to_string(lineno) +
                                               " needs 3 or 4 '|'-separated fields");
    }
    std::vector<ChipsetManufacturer> cms;
    if (fields[0] == "*") {
      cms = all_manufacturers();
    } else {
      cms.push_back(parse_manufacturer(fields[0]));
    }
    ComponentKeyTerm e;
    e.term = fields[1];
    if (fields[2] != "-") e.component = parse_component(fields[2]);
    if (fields.size() == 4 && !fields[3].empty() && fields[3] != "-") e.location = parse_location(fields[3]);
    for (auto cm : cms) {
      e.manufacturer = cm;
      entries.push_back(e);
    }
  }
  KeyTermTable table(std::move(entries));
  table.set_version(version);
  return table;
}

KeyTermTable load_key_term_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("file", "cannot read key term table " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_term_table(ss.str());
}

std::string format_key_term_table(const KeyTermTable& table) {
  std::string out;
  if (!table.version().empty()) out += "# version: " + table.version() + "\n";
  for (const auto& e : table.entries()) {
    out += std::string(to_string(e.manufacturer)) + " | " + e.term + " | " +
           (e.component ? std::string(to_string(*e.component)) : std::string("-"));
    if (e.location) out += " | " + std::string(to_string(*e.location));
    out += "\n";
  }
  return out;
}

}  // namespace chipvuln
