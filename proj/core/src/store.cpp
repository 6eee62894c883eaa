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
#include "chipvuln/store.hpp"

#include <sqlite3.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "chipvuln/errors.hpp"
#include "chipvuln/serialization.hpp"

namespace chipvuln {
namespace {

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS key_terms (
  manufacturer TEXT NOT NULL, term TEXT NOT NULL, component TEXT, location TEXT,
  PRIMARY KEY (manufacturer, term));
CREATE TABLE IF NOT EXISTS chipsets (
  manufacturer TEXT NOT NULL, model_number TEXT NOT NULL, release_date TEXT, marketing_name TEXT,
  PRIMARY KEY (manufacturer, model_number));
CREATE TABLE IF NOT EXISTS smartphones (
  id TEXT PRIMARY KEY, oem TEXT NOT NULL, device_name TEXT NOT NULL,
  chipset_manufacturer TEXT NOT NULL, chipset_model TEXT NOT NULL, release_date TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS vulnerabilities (
  cve TEXT PRIMARY KEY, manufacturer TEXT, component TEXT, location TEXT NOT NULL,
  attribution TEXT NOT NULL, report_date TEXT, patch_date TEXT);
CREATE TABLE IF NOT EXISTS records (
  cve TEXT NOT NULL REFERENCES vulnerabilities(cve), vantage_point TEXT NOT NULL,
  publication_date TEXT NOT NULL, source TEXT NOT NULL, severity_tenths INTEGER, severity_version TEXT,
  body TEXT NOT NULL,
  PRIMARY KEY (cve, vantage_point, publication_date));
CREATE TABLE IF NOT EXISTS vulnerability_chipsets (
  cve TEXT NOT NULL REFERENCES vulnerabilities(cve),
  chipset_manufacturer TEXT NOT NULL, chipset_model TEXT NOT NULL,
  vantage_point TEXT NOT NULL, raw TEXT NOT NULL,
  PRIMARY KEY (cve, chipset_manufacturer, chipset_model, vantage_point, raw),
  FOREIGN KEY (chipset_manufacturer, chipset_model) REFERENCES chipsets(manufacturer, model_number));
CREATE TABLE IF NOT EXISTS unresolved_strings (
  cve TEXT NOT NULL, vantage_point TEXT NOT NULL, raw TEXT NOT NULL, reason TEXT NOT NULL,
  PRIMARY KEY (cve, vantage_point, raw));
CREATE TABLE IF NOT EXISTS updates (
  id INTEGER PRIMARY KEY, device_id TEXT NOT NULL, oem TEXT NOT NULL, device_name TEXT NOT NULL,
  release_date TEXT NOT NULL, spl_date TEXT);
CREATE TABLE IF NOT EXISTS update_cves (
  update_id INTEGER NOT NULL REFERENCES updates(id), cve TEXT NOT NULL,
  PRIMARY KEY (update_id, cve));
CREATE TABLE IF NOT EXISTS aosp_bulletins (spl_date TEXT PRIMARY KEY);
CREATE TABLE IF NOT EXISTS aosp_bulletin_cves (
  spl_date TEXT NOT NULL REFERENCES aosp_bulletins(spl_date), cve TEXT NOT NULL,
  PRIMARY KEY (spl_date, cve));
)sql";

constexpr const char* kTables[] = {"update_cves", "updates", "aosp_bulletin_cves", "aosp_bulletins",
                                   "vulnerability_chipsets", "unresolved_strings", "records",
                                   "vulnerabilities", "smartphones", "chipsets", "key_terms", "meta"};

class Db {
 public:
  Db(const std::filesystem::path& path, int flags) {
    if (sqlite3_open_v2(path.string().c_str(), &db_, flags, nullptr) != SQLITE_OK) {
      std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
      sqlite3_close(db_);
      throw StoreError("cannot open " + path.string() + ": " + msg);
    }
  }
  ~Db() { sqlite3_close(db_); }
  Db(const Db&) = delete;
  Db& operator=(const Db&) = delete;

  void exec(const char* sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown error";
      sqlite3_free(err);
      throw StoreError("sqlite: " + msg);
    }
  }
  sqlite3* get() const { return db_; }

 private:
  sqlite3* db_ = nullptr;
};

class Stmt {
 public:
  Stmt(Db& db, const char* sql) : db_(db.get()) {
    if (sqlite3_prepare_v2(db_, sql, -1, &st_, nullptr) != SQLITE_OK) {
      throw StoreError(std::string("sqlite prepare: ") + sqlite3_errmsg(db_));
    }
  }
  ~Stmt() { sqlite3_finalize(st_); }
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  Stmt& bind(int i, const std::string& v) {
    sqlite3_bind_text(st_, i, v.c_str(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Stmt& bind(int i, std::string_view v) { return bind(i, std::string(v)); }
  Stmt& bind(int i, const char* v) { return bind(i, std::string(v)); }
  Stmt& bind(int i, std::int64_t v) {
    sqlite3_bind_int64(st_, i, v);
    return *this;
  }
  template <typename T>
  Stmt& bind(int i, const std::optional<T>& v) {
    if (!v) {
      sqlite3_bind_null(st_, i);
      return *this;
    }
    return bind(i, *v);
  }
  Stmt& bind(int i, const Date& d) { return bind(i, d.iso()); }

  // Executes a statement that returns no rows, then resets it for reuse.
  void run() {
    if (sqlite3_step(st_) != SQLITE_DONE) throw StoreError(std::string("sqlite step: ") + sqlite3_errmsg(db_));
    sqlite3_reset(st_);
    sqlite3_clear_bindings(st_);
  }
  bool next() {
    int rc = sqlite3_step(st_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw StoreError(std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }
  std::optional<std::string> text(int col) const {
    if (sqlite3_column_type(st_, col) == SQLITE_NULL) return std::nullopt;
    return std::string(reinterpret_cast<const char*>(sqlite3_column_text(st_, col)));
  }
  std::string str(int col) const { return text(col).value_or(""); }
  std::int64_t integer(int col) const { return sqlite3_column_int64(st_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* st_ = nullptr;
};

std::optional<std::string> opt_name(const auto& v) {
  if (!v) return std::nullopt;
  return std::string(to_string(*v));
}

std::optional<std::string> opt_iso(const std::optional<Date>& d) {
  if (!d) return std::nullopt;
  return d->iso();
}

Date iso_date(const std::string& s) {
  auto d = Date::parse_iso(s);
  if (!d) throw StoreError("bad stored date '" + s + "'");
  return *d;
}

std::optional<Date> opt_date(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return iso_date(*s);
}

std::shared_ptr<const KeyTermTable> table_from_entries(std::vector<ComponentKeyTerm> entries, std::string version) {
  if (entries.empty()) return std::make_shared<KeyTermTable>();
  auto t = std::make_shared<KeyTermTable>(std::move(entries));
  t->set_version(std::move(version));
  return t;
}

}  // namespace

void save_sqlite(const KnowledgeBase& kb, const std::filesystem::path& path) {
  Db db(path, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
  db.exec(kSchema);
  db.exec("BEGIN IMMEDIATE");
  try {
    for (const char* t : kTables) db.exec(("DELETE FROM " + std::string(t)).c_str());

    Stmt meta(db, "INSERT INTO meta VALUES (?, ?)");
    meta.bind(1, "key_terms_version").bind(2, kb.key_terms().version()).run();

    Stmt kt(db, "INSERT INTO key_terms VALUES (?, ?, ?, ?)");
    for (const auto& e : kb.key_terms().entries()) {
      kt.bind(1, to_string(e.manufacturer)).bind(2, e.term).bind(3, opt_name(e.component)).bind(4, opt_name(e.location)).run();
    }

    Stmt ch(db, "INSERT INTO chipsets VALUES (?, ?, ?, ?)");
    for (const auto& [k, c] : kb.chipsets()) {
      ch.bind(1, to_string(k.manufacturer)).bind(2, k.model_number).bind(3, opt_iso(c.release_date)).bind(4, c.marketing_name).run();
    }

    Stmt sp(db, "INSERT INTO smartphones VALUES (?, ?, ?, ?, ?, ?)");
    for (const auto& [k, s] : kb.smartphones()) {
      sp.bind(1, k.id()).bind(2, k.oem).bind(3, k.device_name).bind(4, to_string(s.chipset.manufacturer))
          .bind(5, s.chipset.model_number).bind(6, s.release_date).run();
    }

    Stmt vu(db, "INSERT INTO vulnerabilities VALUES (?, ?, ?, ?, ?, ?, ?)");
    Stmt rec(db, "INSERT INTO records VALUES (?, ?, ?, ?, ?, ?, ?)");
    for (const auto& [cve, v] : kb.vulnerabilities()) {
      vu.bind(1, cve.str()).bind(2, opt_name(v.manufacturer)).bind(3, opt_name(v.component))
          .bind(4, to_string(v.location)).bind(5, to_string(v.attribution)).bind(6, opt_iso(v.report_date))
          .bind(7, opt_iso(v.patch_date)).run();
      for (const auto& r : v.records) {
        rec.bind(1, cve.str()).bind(2, to_string(r.vantage_point)).bind(3, r.publication_date)
            .bind(4, to_string(r.source));
        if (r.severity) {
          rec.bind(5, static_cast<std::int64_t>(r.severity->tenths)).bind(6, r.severity->version);
        } else {
          rec.bind(5, std::optional<std::string>{}).bind(6, std::optional<std::string>{});
        }
        rec.bind(7, canonical(to_json(r))).run();
      }
    }

    Stmt ln(db, "INSERT INTO vulnerability_chipsets VALUES (?, ?, ?, ?, ?)");
    for (const auto& [cve, chips] : kb.links()) {
      for (const auto& [chip, why] : chips) {
        for (const auto& p : why) {
          ln.bind(1, cve.str()).bind(2, to_string(chip.manufacturer)).bind(3, chip.model_number)
              .bind(4, to_string(p.vantage_point)).bind(5, p.raw).run();
        }
      }
    }

    Stmt un(db, "INSERT INTO unresolved_strings VALUES (?, ?, ?, ?)");
    for (const auto& u : kb.unresolved_strings()) {
      un.bind(1, u.cve.str()).bind(2, to_string(u.vantage_point)).bind(3, u.raw).bind(4, u.reason).run();
    }

    Stmt up(db, "INSERT INTO updates VALUES (?, ?, ?, ?, ?, ?)");
    Stmt uc(db, "INSERT INTO update_cves VALUES (?, ?)");
    std::int64_t id = 0;
    for (const auto& u : kb.updates()) {
      ++id;
      up.bind(1, id).bind(2, u.device.id()).bind(3, u.device.oem).bind(4, u.device.device_name)
          .bind(5, u.release_date).bind(6, opt_iso(u.spl_date)).run();
      for (const auto& c : u.explicit_cves) uc.bind(1, id).bind(2, c.str()).run();
    }

    Stmt ab(db, "INSERT INTO aosp_bulletins VALUES (?)");
    Stmt abc(db, "INSERT INTO aosp_bulletin_cves VALUES (?, ?)");
    for (const auto& [d, b] : kb.aosp_bulletins()) {
      ab.bind(1, d).run();
      for (const auto& c : b.cves) abc.bind(1, d).bind(2, c.str()).run();
    }
    db.exec("COMMIT");
  } catch (...) {
    sqlite3_exec(db.get(), "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
}

KnowledgeBase load_sqlite(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw StoreError("no knowledge base at " + path.string());
  Db db(path, SQLITE_OPEN_READONLY);
  try {
    std::string version;
    {
      Stmt s(db, "SELECT value FROM meta WHERE key = 'key_terms_version'");
      if (s.next()) version = s.str(0);
    }
    std::vector<ComponentKeyTerm> terms;
    {
      Stmt s(db, "SELECT manufacturer, term, component, location FROM key_terms ORDER BY rowid");
      while (s.next()) {
        ComponentKeyTerm e;
        e.manufacturer = parse_manufacturer(s.str(0));
        e.term = s.str(1);
        if (auto c = s.text(2)) e.component = parse_component(*c);
        if (auto l = s.text(3)) e.location = parse_location(*l);
        terms.push_back(std::move(e));
      }
    }
    KnowledgeBase kb(table_from_entries(std::move(terms), version));
    {
      Stmt s(db, "SELECT manufacturer, model_number, release_date, marketing_name FROM chipsets");
      while (s.next()) {
        kb.upsert_chipset({{parse_manufacturer(s.str(0)), s.str(1)}, opt_date(s.text(2)), s.text(3)});
      }
    }
    {
      Stmt s(db, "SELECT oem, device_name, chipset_manufacturer, chipset_model, release_date FROM smartphones");
      while (s.next()) {
        kb.upsert_smartphone({{s.str(0), s.str(1)}, {parse_manufacturer(s.str(2)), s.str(3)}, iso_date(s.str(4))});
      }
    }
    {
      Stmt s(db, "SELECT body FROM records");
      while (s.next()) kb.upsert_vulnerability(record_from_json(Json::parse(s.str(0))));
    }
    {
      Stmt s(db, "SELECT spl_date FROM aosp_bulletins");
      while (s.next()) kb.add_aosp_bulletin({iso_date(s.str(0)), {}});
      Stmt c(db, "SELECT spl_date, cve FROM aosp_bulletin_cves");
      while (c.next()) kb.add_aosp_bulletin({iso_date(c.str(0)), {validate_cve(c.str(1), 9999)}});
    }
    {
      Stmt s(db, "SELECT id, oem, device_name, release_date, spl_date FROM updates ORDER BY id");
      Stmt c(db, "SELECT update_id, cve FROM update_cves ORDER BY update_id");
      std::map<std::int64_t, std::set<CveId>> cves;
      while (c.next()) cves[c.integer(0)].insert(validate_cve(c.str(1), 9999));
      while (s.next()) {
        kb.add_update({{s.str(1), s.str(2)}, iso_date(s.str(3)), cves[s.integer(0)], opt_date(s.text(4))});
      }
    }
    kb.clear_links();
    {
      Stmt s(db, "SELECT cve, chipset_manufacturer, chipset_model, vantage_point, raw FROM vulnerability_chipsets");
      while (s.next()) {
        kb.restore_link(validate_cve(s.str(0), 9999), {parse_manufacturer(s.str(1)), s.str(2)},
                        {parse_vantage_point(s.str(3)), s.str(4)});
      }
      Stmt u(db, "SELECT cve, vantage_point, raw, reason FROM unresolved_strings");
      while (u.next()) {
        kb.restore_unresolved({validate_cve(u.str(0), 9999), parse_vantage_point(u.str(1)), u.str(2), u.str(3)});
      }
    }
    return kb;
  } catch (const StoreError&) {
    throw;
  } catch (const std::exception& e) {
    throw StoreError("corrupt knowledge base " + path.string() + ": " + e.what());
  }
}

namespace {

void write_lines(const std::filesystem::path& file, const std::vector<std::string>& lines) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw StoreError("cannot write " + file.string());
  for (const auto& l : lines) out << l << '\n';
}

std::vector<Json> read_lines(const std::filesystem::path& file) {
  std::vector<Json> out;
  std::ifstream in(file, std::ios::binary);
  if (!in) return out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw StoreError(file.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

void export_jsonl(const KnowledgeBase& kb, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> lines;
  for (const auto& [_, c] : kb.chipsets()) lines.push_back(canonical(to_json(c)));
  write_lines(dir / "chipsets.jsonl", lines);

  lines.clear();
  for (const auto& [_, s] : kb.smartphones()) lines.push_back(canonical(to_json(s)));
  write_lines(dir / "smartphones.jsonl", lines);

  lines.clear();
  std::vector<std::string> derived;
  for (const auto& [_, v] : kb.vulnerabilities()) {
    for (const auto& r : v.records) lines.push_back(canonical(to_json(r)));
    Json j = to_json(v);
    j.erase("records");
    derived.push_back(canonical(j));
  }
  write_lines(dir / "records.jsonl", lines);
  write_lines(dir / "vulnerabilities.jsonl", derived);

  lines.clear();
  for (const auto& [cve, chips] : kb.links()) {
    for (const auto& [chip, why] : chips) {
      for (const auto& p : why) {
        lines.push_back(canonical(Json{{"cve", cve.str()},
                                       {"chipset", to_json(chip)},
                                       {"vantage_point", to_string(p.vantage_point)},
                                       {"raw", p.raw}}));
      }
    }
  }
  write_lines(dir / "vulnerability_chipsets.jsonl", lines);

  lines.clear();
  for (const auto& u : kb.unresolved_strings()) {
    lines.push_back(canonical(Json{{"cve", u.cve.str()},
                                   {"vantage_point", to_string(u.vantage_point)},
                                   {"raw", u.raw},
                                   {"reason", u.reason}}));
  }
  write_lines(dir / "unresolved_strings.jsonl", lines);

  lines.clear();
  for (const auto& u : kb.updates()) lines.push_back(canonical(to_json(u)));
  write_lines(dir / "updates.jsonl", lines);

  lines.clear();
  for (const auto& [_, b] : kb.aosp_bulletins()) lines.push_back(canonical(to_json(b)));
  write_lines(dir / "aosp_bulletins.jsonl", lines);

  std::ofstream kt(dir / "key_terms.txt", std::ios::binary);
  kt << format_key_term_table(kb.key_terms());
}

KnowledgeBase import_jsonl(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw StoreError("no export directory " + dir.string());
  try {
    std::shared_ptr<const KeyTermTable> table = std::make_shared<KeyTermTable>();
    const auto kt_path = dir / "key_terms.txt";
    if (std::filesystem::exists(kt_path) && std::filesystem::file_size(kt_path) > 0) {
      table = std::make_shared<KeyTermTable>(load_key_term_table(kt_path));
    }
    KnowledgeBase kb(table);
    for (const auto& j : read_lines(dir / "chipsets.jsonl")) kb.upsert_chipset(chipset_from_json(j));
    for (const auto& j : read_lines(dir / "smartphones.jsonl")) kb.upsert_smartphone(smartphone_from_json(j));
    for (const auto& j : read_lines(dir / "records.jsonl")) kb.upsert_vulnerability(record_from_json(j));
    for (const auto& j : read_lines(dir / "updates.jsonl")) kb.add_update(update_from_json(j));
    for (const auto& j : read_lines(dir / "aosp_bulletins.jsonl")) kb.add_aosp_bulletin(bulletin_from_json(j));
    kb.clear_links();
    for (const auto& j : read_lines(dir / "vulnerability_chipsets.jsonl")) {
      kb.restore_link(cve_from_json(j.at("cve")), chipset_key_from_json(j.at("chipset")),
                      {parse_vantage_point(j.at("vantage_point").get<std::string>()), j.at("raw").get<std::string>()});
    }
    for (const auto& j : read_lines(dir / "unresolved_strings.jsonl")) {
      kb.restore_unresolved({cve_from_json(j.at("cve")), parse_vantage_point(j.at("vantage_point").get<std::string>()),
                             j.at("raw").get<std::string>(), j.at("reason").get<std::string>()});
    }
    return kb;
  } catch (const StoreError&) {
    throw;
  } catch (const std::exception& e) {
    throw StoreError("cannot import " + dir.string() + ": " + e.what());
  }
}

}  // namespace chipvuln
