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
#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "chipvuln/serialization.hpp"

#ifndef CHIPVULN_TEST_DATA_DIR
#error "CHIPVULN_TEST_DATA_DIR must point at the repository data directory"
#endif

namespace chipvuln::testing {
namespace fs = std::filesystem;

fs::path data_dir() { return CHIPVULN_TEST_DATA_DIR; }
fs::path fixtures_dir() { return data_dir() / "fixtures"; }
fs::path toyset_dir() { return data_dir() / "toyset"; }

Date corpus_retrieved_at() { return Date::from_ymd(2024, 6, 1); }

std::vector<CorpusDocument> corpus_documents(const fs::path& dir) {
  std::vector<CorpusDocument> out;
  for (const auto& vp_dir : fs::directory_iterator(dir)) {
    if (!vp_dir.is_directory()) continue;
    const VantagePoint vp = parse_vantage_point(vp_dir.path().filename().string());
    for (const auto& f : fs::directory_iterator(vp_dir.path())) {
      const auto ext = f.path().extension();
      if (f.is_regular_file() && (ext == ".html" || ext == ".json")) out.push_back({f.path(), vp});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path golden_path(const fs::path& document) {
  return document.parent_path() / (document.stem().string() + ".golden.jsonl");
}

std::vector<std::string> golden_lines(const CorpusDocument& doc) {
  try {
    const SourceDocument sd =
        make_document(doc.vantage_point, corpus_retrieved_at(), read_text(doc.path), doc.path.filename().string());
    return canonical_lines(parse_document(sd));
  } catch (const ParseError& e) {
    return {canonical_error_line(e)};
  }
}

std::shared_ptr<const KeyTermTable> shipped_key_terms() {
  static const auto table = std::make_shared<const KeyTermTable>(load_key_term_table(data_dir() / "key_terms.txt"));
  return table;
}

KnowledgeBase ingest_documents(const std::vector<CorpusDocument>& docs) {
  KnowledgeBase kb(shipped_key_terms());
  for (const auto& d : docs) {
    const SourceDocument sd =
        make_document(d.vantage_point, corpus_retrieved_at(), read_text(d.path), d.path.filename().string());
    ParsedDocument parsed;
    try {
      parsed = parse_document(sd);
    } catch (const ParseError&) {
      continue;  // seeded malformations contribute nothing
    }
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          for (const auto& item : r.items) {
            if constexpr (std::is_same_v<T, ParseResult<VantagePointRecord>>) kb.upsert_vulnerability(item);
            if constexpr (std::is_same_v<T, ParseResult<AospBulletin>>) kb.add_aosp_bulletin(item);
            if constexpr (std::is_same_v<T, ParseResult<DeviceUpdate>>) kb.add_update(item);
            if constexpr (std::is_same_v<T, CatalogResult>) kb.upsert_smartphone(item);
            if constexpr (std::is_same_v<T, ParseResult<ChipsetModel>>) kb.upsert_chipset(item);
          }
        },
        parsed);
  }
  kb.link_all();
  return kb;
}

KnowledgeBase load_toyset() { return ingest_documents(corpus_documents(toyset_dir())); }

}  // namespace chipvuln::testing
