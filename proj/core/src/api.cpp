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
#include "chipvuln/api.hpp"

#include <httplib.h>

#include <charconv>
#include <stdexcept>
#include <vector>

#include "chipvuln/errors.hpp"

namespace chipvuln {
namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

ApiResponse ok(const Json& j) { return {200, canonical(j)}; }

[[noreturn]] void not_found(const std::string& what) { throw ApiError{404, "not_found", what}; }

int int_param(const std::map<std::string, std::string>& q, const std::string& key, int fallback) {
  auto it = q.find(key);
  if (it == q.end()) return fallback;
  int v = 0;
  const auto& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ApiError{400, "invalid_argument", "query parameter '" + key + "' must be an integer"};
  }
  return v;
}

Json parse_body(std::string_view body) {
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ApiError{400, "bad_request", std::string("malformed JSON body: ") + e.what()};
  }
}

template <typename Map, typename Fn>
Json page(const Map& items, int limit, int offset, Fn fn) {
  Json arr = Json::array();
  int i = 0;
  for (const auto& [k, v] : items) {
    if (i++ < offset) continue;
    if (static_cast<int>(arr.size()) >= limit) break;
    arr.push_back(fn(v));
  }
  return {{"items", arr}, {"total", items.size()}, {"limit", limit}, {"offset", offset}};
}

}  // namespace

ApiResponse error_response(const ApiError& e) {
  return {e.status, canonical(Json{{"error", {{"code", e.code}, {"message", e.message}}}})};
}

struct ApiService::Server {
  httplib::Server http;
};

ApiService::ApiService(std::shared_ptr<const KnowledgeBase> kb, ApiOptions opts)
    : opts_(std::move(opts)), kb_(std::move(kb)) {
  if (!kb_) kb_ = std::make_shared<KnowledgeBase>();
}

ApiService::~ApiService() { stop(); }

void ApiService::swap_snapshot(std::shared_ptr<const KnowledgeBase> kb) {
  std::lock_guard lock(mu_);
  kb_ = kb ? std::move(kb) : std::make_shared<KnowledgeBase>();
}

std::shared_ptr<const KnowledgeBase> ApiService::snapshot() const {
  std::lock_guard lock(mu_);
  return kb_;
}

ApiResponse ApiService::handle(std::string_view method, std::string_view path,
                               const std::map<std::string, std::string>& query, std::string_view body) const {
  const auto kb = snapshot();
  try {
    return route(*kb, method, path, query, body);
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const NotFoundError& e) {
    return error_response({404, "not_found", e.what()});
  } catch (const PreconditionError& e) {
    return error_response({409, "conflict", e.what()});
  } catch (const ValidationError& e) {
    return error_response({400, "invalid_argument", e.what()});
  } catch (const VocabularyError& e) {
    return error_response({400, "invalid_argument", e.what()});
  } catch (const std::invalid_argument& e) {
    return error_response({400, "invalid_argument", e.what()});
  } catch (const std::exception& e) {
    return error_response({500, "internal", e.what()});
  }
}

ApiResponse ApiService::route(const KnowledgeBase& kb, std::string_view method, std::string_view path,
                              const std::map<std::string, std::string>& query, std::string_view body) const {
  const auto parts = split_path(path);
  if (method == "OPTIONS") return {204, "", "text/plain"};
  const auto n = parts.size();
  const ReportOptions& ro = opts_.report;

  if (method == "POST") {
    if (n == 1 && parts[0] == "pick") {
      return ok(to_json(pick_devices(pick_request_from_json(parse_body(body), kb), kb)));
    }
    if (n == 2 && parts[0] == "pick" && parts[1] == "delta") {
      const Json j = parse_body(body);
      std::vector<DeviceKey> selection;
      std::string candidate;
      try {
        for (const auto& id : j.value("selection", Json::array())) {
          selection.push_back(device_from_id(id.get<std::string>(), kb));
        }
        candidate = j.at("candidate").get<std::string>();
      } catch (const Json::exception& e) {
        throw ApiError{400, "bad_request", std::string("malformed delta request: ") + e.what()};
      }
      const DeviceKey cand = device_from_id(candidate, kb);
      return ok({{"candidate", cand.id()}, {"delta", coverage_delta(selection, cand, kb)}});
    }
    not_found("no POST route " + std::string(path));
  }
  if (method != "GET") not_found("no " + std::string(method) + " route " + std::string(path));

  if (n == 1 && parts[0] == "health") {
    return ok({{"status", "ok"},
               {"chipsets", kb.chipsets().size()},
               {"devices", kb.smartphones().size()},
               {"vulnerabilities", kb.vulnerabilities().size()}});
  }

  const int limit = int_param(query, "limit", opts_.default_limit);
  const int offset = int_param(query, "offset", 0);
  if (limit < 1 || limit > opts_.max_limit || offset < 0) {
    throw ApiError{400, "invalid_argument",
                   "limit must be in [1, " + std::to_string(opts_.max_limit) + "] and offset nonnegative"};
  }

  if (n >= 1 && parts[0] == "chipsets") {
    if (n == 1) {
      return ok(page(kb.chipsets(), limit, offset, [&](const ChipsetModel& c) {
        Json j = to_json(c);
        j["vulnerability_count"] = kb.vulnerabilities_of(c.key).size();
        return j;
      }));
    }
    if (n == 3) {
      ChipsetKey key{parse_manufacturer(parts[1]), to_upper(parts[2])};
      const ChipsetModel* c = kb.chipset(key);
      if (!c) not_found("unknown chipset " + parts[1] + "/" + parts[2]);
      Json j = to_json(*c);
      Json vulns = Json::array();
      for (const auto& v : kb.vulnerabilities_of(key)) vulns.push_back(v.str());
      Json devices = Json::array();
      for (const auto* s : kb.smartphones_with(key)) devices.push_back(s->key.id());
      j["vulnerabilities"] = vulns;
      j["devices"] = devices;
      if (const ChipsetModel* next = next_chipset(*c, kb)) j["next_chipset"] = to_json(next->key);
      return ok(j);
    }
  }

  if (n >= 1 && parts[0] == "devices") {
    if (n == 1) {
      return ok(page(kb.smartphones(), limit, offset, [&](const SmartphoneModel& s) {
        Json j = to_json(s);
        j["linked"] = kb.chipset_of(s.key).has_value();
        return j;
      }));
    }
    if (n == 2) {
      const SmartphoneModel* s = kb.smartphone_by_id(parts[1]);
      if (!s) not_found("unknown device " + parts[1]);
      Json j = to_json(*s);
      j["linked"] = kb.chipset_of(s->key).has_value();
      Json vulns = Json::array();
      if (auto chip = kb.chipset_of(s->key)) {
        for (const auto& v : kb.vulnerabilities_of(*chip)) vulns.push_back(v.str());
      }
      j["vulnerabilities"] = vulns;
      Json ups = Json::array();
      for (const auto& u : kb.updates_of(s->key)) ups.push_back(to_json(u));
      j["updates"] = ups;
      return ok(j);
    }
  }

  if (n == 2 && parts[0] == "vulnerabilities") {
    CveId cve;
    try {
      cve = validate_cve(parts[1], 9999);
    } catch (const ValidationError&) {
      not_found("unknown vulnerability " + parts[1]);
    }
    Json j = to_json(impact_report(cve, kb));
    j["vulnerability"] = to_json(*kb.vulnerability(cve));
    return ok(j);
  }

  if (n == 2 && parts[0] == "metrics") {
    const std::string& m = parts[1];
    if (m == "introduction") return ok(to_json(introduction_report(kb)));
    if (m == "discovery") {
      AttributionMode mode = ro.mode;
      if (auto it = query.find("mode"); it != query.end()) {
        if (it->second == "strict") {
          mode = AttributionMode::kStrict;
        } else if (it->second == "paper") {
          mode = AttributionMode::kPaper;
        } else {
          throw ApiError{400, "invalid_argument", "mode must be strict or paper"};
        }
      }
      return ok(to_json(discovery_report(kb, mode)));
    }
    if (m == "severity") return ok(to_json(severity_by_location(kb)));
    if (m == "patch-latency") return ok(to_json(patch_latency_report(kb, int_param(query, "threshold_days", ro.threshold_days))));
    if (m == "availability") {
      return ok(to_json(availability_matrix(kb, int_param(query, "window_days", ro.window_days), ro.period)));
    }
    if (m == "consistency") return ok(to_json(severity_consistency(kb)));
    if (m == "unmitigated") {
      Date cutoff = ro.cutoff;
      if (auto it = query.find("cutoff"); it != query.end()) {
        auto d = Date::parse_iso(it->second);
        if (!d) throw ApiError{400, "invalid_argument", "cutoff must be an ISO date"};
        cutoff = *d;
      }
      return ok(to_json(unmitigated_report(kb, cutoff)));
    }
    if (m == "update-timeline") return ok(to_json(update_timeline_report(kb)));
    if (m == "affected-distribution") return ok(to_json(affected_count_distribution(kb)));
  }
  not_found("no route " + std::string(path));
}

int ApiService::bind(const std::string& host, int port) {
  if (!server_) server_ = std::make_unique<Server>();
  auto& http = server_->http;
  auto adapt = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const ApiResponse r = handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", opts_.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    if (!r.body.empty()) res.set_content(r.body, r.content_type);
  };
  http.Get(R"(/.*)", adapt);
  http.Post(R"(/.*)", adapt);
  http.Options(R"(/.*)", adapt);
  if (port == 0) {
    const int bound = http.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!http.bind_to_port(host, port)) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void ApiService::run() {
  if (!server_) throw std::logic_error("bind() before run()");
  server_->http.listen_after_bind();
}

void ApiService::stop() {
  if (server_) server_->http.stop();
}

}  // namespace chipvuln
