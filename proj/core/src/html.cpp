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
#include "chipvuln/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>

#include "chipvuln/domain.hpp"

namespace chipvuln::html {
namespace {

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta",
    "param", "source", "track", "wbr"};

bool is_void(std::string_view tag) {
  return std::find(kVoidElements.begin(), kVoidElements.end(), tag) != kVoidElements.end();
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x110000) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class TreeBuilder {
 public:
  explicit TreeBuilder(std::string_view src) : src_(src) { stack_.push_back(&root_); }

  Node build() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        if (starts_with("<!--")) {
          skip_past("-->");
        } else if (starts_with("<!") || starts_with("<?")) {
          skip_past(">");
        } else if (starts_with("</")) {
          close_tag();
        } else if (pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
          open_tag();
        } else {
          add_text(src_.substr(pos_, 1));
          ++pos_;
        }
      } else {
        const auto next = src_.find('<', pos_);
        const auto end = next == std::string_view::npos ? src_.size() : next;
        add_text(src_.substr(pos_, end - pos_));
        pos_ = end;
      }
    }
    return std::move(root_);
  }

 private:
  bool starts_with(std::string_view p) const { return src_.substr(pos_, p.size()) == p; }

  void skip_past(std::string_view terminator) {
    const auto at = src_.find(terminator, pos_);
    pos_ = at == std::string_view::npos ? src_.size() : at + terminator.size();
  }

  Node* current() { return stack_.back(); }

  void add_text(std::string_view raw) {
    if (raw.empty()) return;
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::kText;
    node->text = decode_entities(raw);
    current()->children.push_back(std::move(node));
  }

  std::string read_name() {
    std::string name;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>' && src_[pos_] != '/' &&
           src_[pos_] != '=') {
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_]))));
      ++pos_;
    }
    return name;
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  // Elements whose start tag implicitly closes an open element of the same
  // family inside the nearest table/list scope.
  void implicit_close(const std::string& tag) {
    auto close_up_to = [&](std::initializer_list<std::string_view> closable,
                           std::initializer_list<std::string_view> barriers) {
      for (std::size_t i = stack_.size(); i-- > 1;) {
        const std::string& t = stack_[i]->tag;
        if (std::find(barriers.begin(), barriers.end(), t) != barriers.end()) return;
        if (std::find(closable.begin(), closable.end(), t) != closable.end()) {
          stack_.resize(i);
          return;
        }
      }
    };
    if (tag == "td" || tag == "th") {
      close_up_to({"td", "th"}, {"tr", "table"});
    } else if (tag == "tr") {
      close_up_to({"tr"}, {"table"});
    } else if (tag == "thead" || tag == "tbody" || tag == "tfoot") {
      close_up_to({"thead", "tbody", "tfoot"}, {"table"});
    } else if (tag == "li") {
      close_up_to({"li"}, {"ul", "ol"});
    } else if (tag == "p") {
      close_up_to({"p"}, {"div", "td", "th", "li", "body", "table"});
    } else if (tag == "option") {
      close_up_to({"option"}, {"select"});
    }
  }

  void open_tag() {
    ++pos_;  // '<'
    auto node = std::make_unique<Node>();
    node->tag = read_name();
    bool self_closing = false;
    while (pos_ < src_.size() && src_[pos_] != '>') {
      skip_space();
      if (pos_ >= src_.size()) break;
      if (src_[pos_] == '/') {
        self_closing = true;
        ++pos_;
        continue;
      }
      if (src_[pos_] == '>') break;
      std::string name = read_name();
      if (name.empty()) {
        ++pos_;
        continue;
      }
      std::string value;
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '=') {
        ++pos_;
        skip_space();
        if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
          const char q = src_[pos_++];
          const auto end = src_.find(q, pos_);
          const auto stop = end == std::string_view::npos ? src_.size() : end;
          value = decode_entities(src_.substr(pos_, stop - pos_));
          pos_ = std::min(stop + 1, src_.size());
        } else {
          const auto start = pos_;
          while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>') ++pos_;
          value = decode_entities(src_.substr(start, pos_ - start));
        }
      }
      node->attributes.emplace_back(std::move(name), std::move(value));
    }
    if (pos_ < src_.size()) ++pos_;  // '>'

    const std::string tag = node->tag;
    implicit_close(tag);
    Node* raw = node.get();
    current()->children.push_back(std::move(node));
    if (tag == "script" || tag == "style") {
      const std::string closing = "</" + tag;
      std::size_t end = pos_;
      while (true) {
        end = src_.find('<', end);
        if (end == std::string_view::npos || to_lower(src_.substr(end, closing.size())) == closing) break;
        ++end;
      }
      const auto stop = end == std::string_view::npos ? src_.size() : end;
      auto text = std::make_unique<Node>();
      text->kind = Node::Kind::kText;
      text->text = std::string(src_.substr(pos_, stop - pos_));
      raw->children.push_back(std::move(text));
      pos_ = stop;
      if (pos_ < src_.size()) skip_past(">");
      return;
    }
    if (!self_closing && !is_void(tag)) stack_.push_back(raw);
  }

  void close_tag() {
    pos_ += 2;
    const std::string name = read_name();
    skip_past(">");
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == name) {
        stack_.resize(i);
        return;
      }
    }
    // Stray end tag: ignored.
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Node root_;
  std::vector<Node*> stack_;
};

void collect_text(const Node& n, std::string& out, bool keep_breaks) {
  if (n.kind == Node::Kind::kText) {
    out += n.text;
    return;
  }
  if (n.tag == "script" || n.tag == "style") return;
  if (n.tag == "br") {
    out += keep_breaks ? "\n" : " ";
    return;
  }
  const bool block = n.tag == "p" || n.tag == "div" || n.tag == "li" || n.tag == "td" ||
                     n.tag == "th" || n.tag == "tr";
  if (block && !out.empty()) out += keep_breaks ? "\n" : " ";
  for (const auto& c : n.children) collect_text(*c, out, keep_breaks);
  if (block) out += keep_breaks ? "\n" : " ";
}

void collect_all(const Node& n, std::string_view tag, std::vector<const Node*>& out) {
  for (const auto& c : n.children) {
    if (c->kind == Node::Kind::kElement) {
      if (c->tag == tag) out.push_back(c.get());
      collect_all(*c, tag, out);
    }
  }
}

std::vector<const Node*> row_cells(const Node& row) {
  std::vector<const Node*> cells;
  for (const auto& c : row.children) {
    if (c->is_element("td") || c->is_element("th")) cells.push_back(c.get());
  }
  return cells;
}

}  // namespace

const std::string* Node::attribute(std::string_view name) const {
  for (const auto& [k, v] : attributes) {
    if (k == name) return &v;
  }
  return nullptr;
}

std::string Node::text_content(bool keep_breaks) const {
  std::string raw;
  collect_text(*this, raw, keep_breaks);
  if (!keep_breaks) return collapse_whitespace(raw);
  // Collapse within lines, drop empty lines.
  std::string out;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const auto nl = raw.find('\n', start);
    const auto end = nl == std::string::npos ? raw.size() : nl;
    std::string line = collapse_whitespace(std::string_view(raw).substr(start, end - start));
    if (!line.empty()) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return out;
}

std::vector<const Node*> Node::find_all(std::string_view tag_name) const {
  std::vector<const Node*> out;
  collect_all(*this, tag_name, out);
  return out;
}

const Node* Node::find_first(std::string_view tag_name) const {
  for (const auto& c : children) {
    if (c->kind != Kind::kElement) continue;
    if (c->tag == tag_name) return c.get();
    if (const Node* hit = c->find_first(tag_name)) return hit;
  }
  return nullptr;
}

std::vector<const Node*> Node::element_children(std::string_view tag_name) const {
  std::vector<const Node*> out;
  for (const auto& c : children) {
    if (c->kind == Kind::kElement && (tag_name.empty() || c->tag == tag_name)) out.push_back(c.get());
  }
  return out;
}

Node parse(std::string_view source) { return TreeBuilder(source).build(); }

std::string decode_entities(std::string_view s) {
  static const std::array<std::pair<std::string_view, std::string_view>, 12> kNamed = {{
      {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"},
      {"nbsp", " "}, {"ndash", "–"}, {"mdash", "—"}, {"rsquo", "’"},
      {"lsquo", "‘"}, {"ldquo", "“"}, {"rdquo", "”"},
  }};
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view name = s.substr(i + 1, semi - i - 1);
    bool done = false;
    if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      bool ok = name.size() > (hex ? 2u : 1u);
      for (std::size_t k = hex ? 2 : 1; ok && k < name.size(); ++k) {
        const char c = name[k];
        if (hex && std::isxdigit(static_cast<unsigned char>(c))) {
          cp = cp * 16 + static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10));
        } else if (!hex && std::isdigit(static_cast<unsigned char>(c))) {
          cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
        } else {
          ok = false;
        }
        if (cp > 0x10FFFF) ok = false;
      }
      if (ok) {
        append_utf8(out, cp == 0xA0 ? 0x20 : cp);
        done = true;
      }
    } else {
      for (const auto& [n, v] : kNamed) {
        if (n == name) {
          out += v;
          done = true;
          break;
        }
      }
    }
    if (done) {
      i = semi + 1;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (is_space(c)) {
      space = true;
    } else {
      if (space && !out.empty()) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string label_key(std::string_view s) {
  std::string k = to_lower(collapse_whitespace(s));
  while (!k.empty() && (k.back() == ':' || k.back() == ' ')) k.pop_back();
  return k;
}

const Node* cell_after_label(const Node& scope, std::string_view label) {
  const std::string want = label_key(label);
  for (const Node* row : scope.find_all("tr")) {
    auto cells = row_cells(*row);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      if (label_key(cells[i]->text_content()) == want) return cells[i + 1];
    }
  }
  return nullptr;
}

Table read_table(const Node& table) {
  Table out;
  out.node = &table;
  std::vector<const Node*> rows = table.find_all("tr");
  std::size_t header_row = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto cells = row_cells(*rows[i]);
    if (!cells.empty() && std::all_of(cells.begin(), cells.end(), [](const Node* c) { return c->tag == "th"; })) {
      header_row = i;
      break;
    }
  }
  if (header_row == rows.size()) header_row = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> texts;
    for (const Node* c : row_cells(*rows[i])) texts.push_back(c->text_content(true));
    if (i == header_row) {
      for (auto& t : texts) t = collapse_whitespace(t);
      out.headers = std::move(texts);
    } else if (i > header_row && !texts.empty()) {
      out.rows.push_back(std::move(texts));
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_label_rows(const Node& table) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Node* row : table.find_all("tr")) {
    auto cells = row_cells(*row);
    if (cells.size() >= 2) {
      out.emplace_back(collapse_whitespace(cells[0]->text_content()), cells[1]->text_content(true));
    } else if (cells.size() == 1) {
      out.emplace_back(collapse_whitespace(cells[0]->text_content()), std::string());
    }
  }
  return out;
}

}  // namespace chipvuln::html
