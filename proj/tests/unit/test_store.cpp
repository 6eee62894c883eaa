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
#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "chipvuln/store.hpp"
#include "corpus.hpp"
#include "instances.hpp"

namespace chipvuln {
namespace {

namespace fs = std::filesystem;

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chipvuln-store-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string dump(const KnowledgeBase& kb, const std::string& name) {
    const fs::path d = dir_ / name;
    export_jsonl(kb, d);
    std::vector<fs::path> files;
    for (const auto& f : fs::directory_iterator(d)) files.push_back(f.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += f.filename().string() + "\n" + testing::read_text(f);
    return all;
  }

  fs::path dir_;
};

TEST_F(StoreTest, SqliteRoundTripPreservesEverything) {
  const auto kb = testing::ingest_documents(testing::corpus_documents(testing::fixtures_dir()));
  save_sqlite(kb, dir_ / "kb.db");
  const auto back = load_sqlite(dir_ / "kb.db");
  EXPECT_EQ(dump(back, "b"), dump(kb, "a"));
  EXPECT_EQ(back.key_terms(), kb.key_terms());
  EXPECT_EQ(back.unresolved_strings(), kb.unresolved_strings());
  EXPECT_EQ(back.links(), kb.links());
  EXPECT_EQ(back.vulnerabilities(), kb.vulnerabilities());
}

TEST_F(StoreTest, SaveOverwritesPreviousContents) {
  const auto corpus = testing::ingest_documents(testing::corpus_documents(testing::fixtures_dir()));
  const auto toy = testing::load_toyset();
  save_sqlite(corpus, dir_ / "kb.db");
  save_sqlite(toy, dir_ / "kb.db");
  EXPECT_EQ(dump(load_sqlite(dir_ / "kb.db"), "b"), dump(toy, "a"));
}

TEST_F(StoreTest, JsonlRoundTrip) {
  const auto kb = testing::load_toyset();
  export_jsonl(kb, dir_ / "export");
  const auto back = import_jsonl(dir_ / "export");
  EXPECT_EQ(dump(back, "b"), dump(kb, "a"));
  EXPECT_EQ(back.smartphones(), kb.smartphones());
  EXPECT_EQ(back.updates(), kb.updates());
}

TEST_F(StoreTest, RandomInstancesRoundTrip) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const auto kb = testing::build_kb(testing::random_instance(rng));
    const auto db = dir_ / ("r" + std::to_string(i) + ".db");
    save_sqlite(kb, db);
    EXPECT_EQ(dump(load_sqlite(db), "b" + std::to_string(i)), dump(kb, "a" + std::to_string(i)));
  }
}

TEST_F(StoreTest, MissingOrCorruptStoresFail) {
  EXPECT_THROW(load_sqlite(dir_ / "absent.db"), StoreError);
  EXPECT_THROW(import_jsonl(dir_ / "absent"), StoreError);
  std::ofstream(dir_ / "junk.db") << "this is not a database";
  EXPECT_THROW(load_sqlite(dir_ / "junk.db"), StoreError);
}

}  // namespace
}  // namespace chipvuln
