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

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Small forgiving HTML reader. Enough structure for label-anchored
// extraction from bulletin tables; not a conforming HTML5 parser.
namespace chipvuln::html {

struct Node {
  enum class Kind { kElement, kText };

  Kind kind = Kind::kElement;
  std::string tag;  // lower-case; empty for text nodes and the document root
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // decoded text for text nodes
  std::vector<std::unique_ptr<Node>> children;

  bool is_element(std::string_view name) const { return kind == Kind::kElement && tag == name; }
  const std::string* attribute(std::string_view name) const;

  // Descendant text with whitespace collapsed and trimmed. <br> counts as a
  // line break and is rendered as "\n" when keep_breaks is set.
  std::string text_content(bool keep_breaks = false) const;

  std::vector<const Node*> find_all(std::string_view tag_name) const;
  const Node* find_first(std::string_view tag_name) const;
  std::vector<const Node*> element_children(std::string_view tag_name = {}) const;
};

Node parse(std::string_view source);

std::string decode_entities(std::string_view s);
std::string collapse_whitespace(std::string_view s);

// Normalised form used to compare labels: collapsed, trimmed, case-folded,
// trailing ':' dropped.
std::string label_key(std::string_view s);

// Equivalent of the CSS selector "td:contains(label) + td" with an exact
// label match: the first cell whose label_key equals label_key(label),
// followed by its next sibling cell. Returns nullptr when absent.
const Node* cell_after_label(const Node& scope, std::string_view label);

// Rows of a table as cell text. The first row whose cells are <th> (or the
// first row, if none) is treated as the header.
struct Table {
  const Node* node = nullptr;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};
Table read_table(const Node& table);

// Key/value table: each row is label cell followed by value cell.
std::vector<std::pair<std::string, std::string>> read_label_rows(const Node& table);

}  // namespace chipvuln::html
