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
#include <memory>

#include "chipvuln/knowledge_base.hpp"

namespace chipvuln {

// Relational persistence of a KnowledgeBase in an SQLite file.
// save() replaces the whole content in one transaction; load() restores the
// links exactly as saved rather than re-deriving them.
// Errors surface as StoreError.
void save_sqlite(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase load_sqlite(const std::filesystem::path& path);

// One .jsonl file per table plus key_terms.txt, lines in key order.
// Import ignores vulnerabilities.jsonl, whose fields are derived.
void export_jsonl(const KnowledgeBase& kb, const std::filesystem::path& dir);
KnowledgeBase import_jsonl(const std::filesystem::path& dir);

}  // namespace chipvuln
