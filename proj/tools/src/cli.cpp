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
#include "chipvuln/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chipvuln/api.hpp"
#include "chipvuln/errors.hpp"
#include "chipvuln/parsers.hpp"
#include "chipvuln/report_format.hpp"
#include "chipvuln/serialization.hpp"
#include "chipvuln/store.hpp"

#ifndef CHIPVULN_VERSION
#define CHIPVULN_VERSION "dev"
#endif

namespace chipvuln::cli {
namespace fs = std::filesystem;

Environment process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

namespace {

// Resolved configuration. Precedence: flags > CHIPVULN_* environment >
// config file > defaults.
struct Config {
  std::string data_dir = "data";
  std::string key_terms;  // default: <data_dir>/key_terms.txt
  std::string store = "chipvuln.db";
  ReportOptions report;
};

struct Flags {
  std::string config_file, data_dir, key_terms, store, cutoff, mode;
  int window_days = 0, threshold_days = 0;
};

Date parse_date_arg(const std::string& s, const char* what) {
  auto d = Date::parse_iso(s);
  if (!d) throw CLI::ValidationError(std::string(what), "expected YYYY-MM-DD, got '" + s + "'");
  return *d;
}

AttributionMode parse_mode(const std::string& s) {
  if (s == "strict") return AttributionMode::kStrict;
  if (s == "paper") return AttributionMode::kPaper;
  throw CLI::ValidationError("mode", "expected strict or paper, got '" + s + "'");
}

int parse_int_setting(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(std::string(what), "expected an integer, got '" + s + "'");
}

void apply(Config& c, const std::string& key, const std::string& value) {
  if (key == "data_dir") c.data_dir = value;
  else if (key == "key_terms") c.key_terms = value;
  else if (key == "store") c.store = value;
  else if (key == "cutoff") c.report.cutoff = parse_date_arg(value, "cutoff");
  else if (key == "window_days") c.report.window_days = parse_int_setting(value, "window_days");
  else if (key == "threshold_days") c.report.threshold_days = parse_int_setting(value, "threshold_days");
  else if (key == "mode") c.report.mode = parse_mode(value);
  else throw CLI::ValidationError("config", "unknown setting '" + key + "'");
}

constexpr const char* kSettings[] = {"data_dir", "key_terms", "store", "cutoff", "window_days", "threshold_days", "mode"};

Config resolve(const CLI::App& app, const Flags& f, const Environment& env) {
  Config c;
  std::string config_file = f.config_file;
  if (config_file.empty()) config_file = env("CHIPVULN_CONFIG").value_or("");
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw CLI::ValidationError("config", "cannot read " + config_file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw CLI::ValidationError("config", config_file + ": " + e.what());
    }
    for (const auto& [k, v] : j.items()) apply(c, k, v.is_string() ? v.get<std::string>() : v.dump());
  }
  for (const char* key : kSettings) {
    std::string var = std::string("CHIPVULN_") + key;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (auto v = env(var)) apply(c, key, *v);
  }
  auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
  if (given("--data-dir")) c.data_dir = f.data_dir;
  if (given("--key-terms")) c.key_terms = f.key_terms;
  if (given("--store")) c.store = f.store;
  if (given("--cutoff")) c.report.cutoff = parse_date_arg(f.cutoff, "--cutoff");
  if (given("--window-days")) c.report.window_days = f.window_days;
  if (given("--threshold-days")) c.report.threshold_days = f.threshold_days;
  if (given("--mode")) c.report.mode = parse_mode(f.mode);
  if (c.key_terms.empty()) c.key_terms = (fs::path(c.data_dir) / "key_terms.txt").string();
  return c;
}

std::shared_ptr<const KeyTermTable> load_table(const Config& c, std::ostream& err) {
  if (!fs::exists(c.key_terms)) {
    err << "warning: key term table " << c.key_terms << " not found; components stay Unknown\n";
    return std::make_shared<KeyTermTable>();
  }
  return std::make_shared<KeyTermTable>(load_key_term_table(c.key_terms));
}

KnowledgeBase open_or_create(const Config& c, std::ostream& err) {
  if (fs::exists(c.store)) return load_sqlite(c.store);
  return KnowledgeBase(load_table(c, err));
}

KnowledgeBase open_existing(const Config& c) {
  if (!fs::exists(c.store)) throw StoreError("no knowledge base at " + c.store + "; run ingest first");
  return load_sqlite(c.store);
}

std::vector<fs::path> expand(const std::vector<std::string>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() != ".jsonl") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else if (fs::exists(p)) {
      out.emplace_back(p);
    } else {
      throw CLI::ValidationError("path", "no such file or directory: " + p);
    }
  }
  return out;
}

VantagePoint source_for(const fs::path& file, const std::string& source) {
  if (!source.empty()) return parse_vantage_point(source);
  try {
    return parse_vantage_point(file.parent_path().filename().string());
  } catch (const VocabularyError&) {
    throw CLI::ValidationError("--source", "cannot infer the source of " + file.string() + "; pass --source");
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw StoreError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string issue_line(const fs::path& file, const ValidationIssue& i) {
  return file.filename().string() + ": " + (i.severity == IssueSeverity::kReject ? "reject" : "warn") + " " +
         i.entry + " " + i.field + " " + i.rule + (i.raw_value.empty() ? "" : " '" + i.raw_value + "'");
}

struct Tally {
  int documents = 0, items = 0, rejects = 0, warnings = 0, failed = 0;
};

template <class R>
void count_issues(const R& r, Tally& t) {
  for (const auto& i : r.issues) (i.severity == IssueSeverity::kReject ? t.rejects : t.warnings)++;
}

// Parses one file. Returns nullopt after reporting a document-level failure.
std::optional<ParsedDocument> parse_file(const fs::path& file, VantagePoint vp, Date retrieved_at,
                                         const std::string& oem, const KnowledgeBase* kb, std::ostream& err,
                                         Tally& t) {
  ++t.documents;
  try {
    SourceDocument doc = make_document(vp, retrieved_at, read_file(file), file.filename().string());
    std::vector<ChipsetModel> known;
    if (kb) {
      for (const auto& [_, c] : kb->chipsets()) known.push_back(c);
    }
    ParsedDocument parsed = parse_document(doc, oem, known);
    std::visit(
        [&](const auto& r) {
          count_issues(r, t);
          for (const auto& i : r.issues) err << issue_line(file, i) << "\n";
        },
        parsed);
    return parsed;
  } catch (const ParseError& e) {
    err << file.filename().string() << ": parse error at '" << e.anchor() << "': " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << file.filename().string() << ": " << e.rule() << ": " << e.what() << "\n";
  }
  ++t.failed;
  return std::nullopt;
}

void ingest_into(KnowledgeBase& kb, const ParsedDocument& parsed, Tally& t) {
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        for (const auto& item : r.items) {
          ++t.items;
          if constexpr (std::is_same_v<T, ParseResult<VantagePointRecord>>) {
            kb.upsert_vulnerability(item);
          } else if constexpr (std::is_same_v<T, ParseResult<AospBulletin>>) {
            kb.add_aosp_bulletin(item);
          } else if constexpr (std::is_same_v<T, ParseResult<DeviceUpdate>>) {
            kb.add_update(item);
          } else if constexpr (std::is_same_v<T, CatalogResult>) {
            kb.upsert_smartphone(item);
          } else {
            kb.upsert_chipset(item);
          }
        }
      },
      parsed);
}

void print_pick_text(const PickResult& r, std::ostream& out) {
  for (std::size_t i = 0; i < r.selection.size(); ++i) {
    out << i + 1 << ". " << r.selection[i].key.id() << " (" << r.selection[i].chipset.str() << ") +"
        << r.marginal_gain[i] << "\n";
  }
  out << "total distinct vulnerabilities: " << r.total << "\n";
  if (!r.notice.empty()) out << r.notice << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Chipset vulnerability lifecycle knowledge base", "chipvuln"};
  app.set_version_flag("--version", CHIPVULN_VERSION);
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config_file, "JSON settings file (also CHIPVULN_CONFIG)");
  app.add_option("--data-dir", f.data_dir, "Data directory (default: data)");
  app.add_option("--key-terms", f.key_terms, "Key term table (default: <data-dir>/key_terms.txt)");
  app.add_option("--store", f.store, "Knowledge base file (default: chipvuln.db)");
  app.add_option("--cutoff", f.cutoff, "Unmitigated-vulnerability cutoff date (default 2023-01-01)");
  app.add_option("--window-days", f.window_days, "Availability propagation window (default 365)");
  app.add_option("--threshold-days", f.threshold_days, "Patch latency threshold (default 90)");
  app.add_option("--mode", f.mode, "Attribution mode: strict or paper");

  std::string source, retrieved, oem, format = "text", section, cve_text, bind = "127.0.0.1:8080", path;
  std::vector<std::string> paths, f_oems, f_cms, locked;
  std::string released_from, released_to;
  int k = 1;

  auto* ingest = app.add_subcommand("ingest", "Parse documents into the knowledge base");
  ingest->add_option("--source", source, "Vantage point, e.g. qualcomm-bulletin (default: parent directory name)");
  ingest->add_option("--retrieved-at", retrieved, "Retrieval date used for plausibility checks (default: today)");
  ingest->add_option("--oem", oem, "OEM name for changelog sources");
  ingest->add_option("paths", paths, "Files or directories")->required();

  auto* augment_cmd = app.add_subcommand("augment", "Re-derive components, locations and attribution");
  auto* link_cmd = app.add_subcommand("link", "Resolve chipset strings and device chipsets");

  auto* report = app.add_subcommand("report", "Print lifecycle metrics");
  report->add_option("section", section, "rq1, rq2, rq3, rq4 or all")
      ->required()
      ->check(CLI::IsMember({"rq1", "rq2", "rq3", "rq4", "all"}));
  report->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  auto* impact = app.add_subcommand("impact", "Affected chipsets and smartphones of one CVE");
  impact->add_option("cve", cve_text, "CVE identifier")->required();
  impact->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  auto* pick = app.add_subcommand("pick", "Choose devices covering the most distinct vulnerabilities");
  pick->add_option("--k", k, "Number of devices")->required()->check(CLI::PositiveNumber);
  pick->add_option("--oem", f_oems, "Restrict to OEM (repeatable)");
  pick->add_option("--manufacturer", f_cms, "Restrict to chipset manufacturer (repeatable)");
  pick->add_option("--from", released_from, "Released on or after (YYYY-MM-DD)");
  pick->add_option("--to", released_to, "Released on or before (YYYY-MM-DD)");
  pick->add_option("--lock", locked, "Device id to include (repeatable)");
  pick->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  auto* export_cmd = app.add_subcommand("export", "Write one .jsonl file per table");
  export_cmd->add_option("path", path, "Output directory")->required();

  auto* import_cmd = app.add_subcommand("import", "Replace the knowledge base with an export");
  import_cmd->add_option("path", path, "Export directory")->required();

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--bind", bind, "host:port (default 127.0.0.1:8080)");

  auto* validate = app.add_subcommand("validate", "Parse documents without storing them and list issues");
  validate->add_option("--source", source, "Vantage point (default: parent directory name)");
  validate->add_option("--retrieved-at", retrieved, "Retrieval date (default: today)");
  validate->add_option("--oem", oem, "OEM name for changelog sources");
  validate->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  validate->add_option("paths", paths, "Files or directories")->required();

  Config cfg;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    cfg = resolve(app, f, env);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    const Date retrieved_at = retrieved.empty() ? Date::today() : parse_date_arg(retrieved, "--retrieved-at");

    if (*ingest) {
      KnowledgeBase kb = open_or_create(cfg, err);
      Tally t;
      for (const auto& file : expand(paths)) {
        auto parsed = parse_file(file, source_for(file, source), retrieved_at, oem, &kb, err, t);
        if (parsed) ingest_into(kb, *parsed, t);
      }
      save_sqlite(kb, cfg.store);
      out << "ingested " << t.items << " items from " << t.documents << " documents (" << t.rejects
          << " rejected entries, " << t.warnings << " warnings, " << t.failed << " failed documents)\n";
      return (t.rejects || t.failed) ? kFailure : kOk;
    }

    if (*validate) {
      Tally t;
      bool machine = format == "machine";
      for (const auto& file : expand(paths)) {
        std::ostringstream issues;
        auto parsed = parse_file(file, source_for(file, source), retrieved_at, oem, nullptr, issues, t);
        if (machine && parsed) {
          for (const auto& line : canonical_lines(*parsed)) {
            if (line.find("\"kind\":\"issue\"") != std::string::npos) out << line << "\n";
          }
        } else {
          out << issues.str();
        }
      }
      out << t.documents << " documents: " << t.rejects << " rejected entries, " << t.warnings << " warnings, "
          << t.failed << " failed\n";
      return (t.rejects || t.failed) ? kFailure : kOk;
    }

    if (*augment_cmd) {
      KnowledgeBase kb = open_existing(cfg);
      auto table = load_table(cfg, err);
      kb.set_key_terms(table);
      save_sqlite(kb, cfg.store);
      int unknown = 0;
      for (const auto& [_, v] : kb.vulnerabilities()) unknown += v.component ? 0 : 1;
      out << "augmented " << kb.vulnerabilities().size() << " vulnerabilities with key term table "
          << (table->version().empty() ? "(unversioned)" : table->version()) << "; " << unknown
          << " without a component\n";
      return kOk;
    }

    if (*link_cmd) {
      KnowledgeBase kb = open_existing(cfg);
      kb.link_all();
      save_sqlite(kb, cfg.store);
      std::size_t links = 0;
      for (const auto& [_, chips] : kb.links()) links += chips.size();
      out << "linked " << links << " vulnerability/chipset pairs; " << kb.linked_smartphones().size() << " of "
          << kb.smartphones().size() << " devices resolved; " << kb.unresolved_strings().size()
          << " unresolved chipset strings; " << kb.link_conflicts().size() << " NVD-only links\n";
      for (const auto& u : kb.unresolved_strings()) {
        err << "unresolved: " << u.cve.str() << " " << to_string(u.vantage_point) << " '" << u.raw << "' ("
            << u.reason << ")\n";
      }
      for (const auto& d : kb.unresolved_devices()) err << "unresolved device: " << d.id() << "\n";
      return kOk;
    }

    if (*report) {
      KnowledgeBase kb = open_existing(cfg);
      if (format == "machine") {
        out << canonical(report_json(kb, section, cfg.report)) << "\n";
      } else {
        out << report_text(kb, section, cfg.report);
      }
      return kOk;
    }

    if (*impact) {
      KnowledgeBase kb = open_existing(cfg);
      const ImpactReport r = impact_report(validate_cve(cve_text), kb);
      if (format == "machine") {
        out << canonical(to_json(r)) << "\n";
      } else {
        out << impact_text(r);
      }
      return kOk;
    }

    if (*pick) {
      KnowledgeBase kb = open_existing(cfg);
      PickRequest req;
      req.k = k;
      req.filters.oems.insert(f_oems.begin(), f_oems.end());
      for (const auto& m : f_cms) req.filters.manufacturers.insert(parse_manufacturer(m));
      if (!released_from.empty()) req.filters.released_from = parse_date_arg(released_from, "--from");
      if (!released_to.empty()) req.filters.released_to = parse_date_arg(released_to, "--to");
      for (const auto& id : locked) req.locked.push_back(device_from_id(id, kb));
      const PickResult r = pick_devices(req, kb);
      if (format == "machine") {
        out << canonical(to_json(r)) << "\n";
      } else {
        print_pick_text(r, out);
      }
      return kOk;
    }

    if (*export_cmd) {
      export_jsonl(open_existing(cfg), path);
      out << "exported to " << path << "\n";
      return kOk;
    }

    if (*import_cmd) {
      KnowledgeBase kb = import_jsonl(path);
      save_sqlite(kb, cfg.store);
      out << "imported " << kb.vulnerabilities().size() << " vulnerabilities into " << cfg.store << "\n";
      return kOk;
    }

    if (*serve) {
      const auto colon = bind.rfind(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--bind", "expected host:port");
      const std::string host = bind.substr(0, colon);
      const int port = parse_int_setting(bind.substr(colon + 1), "--bind");
      ApiOptions opts;
      opts.report = cfg.report;
      ApiService api(std::make_shared<const KnowledgeBase>(open_existing(cfg)), opts);
      const int bound = api.bind(host, port);
      err << "serving on " << host << ":" << bound << "\n";
      api.run();
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace chipvuln::cli
