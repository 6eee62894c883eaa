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

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "chipvuln/knowledge_base.hpp"
#include "chipvuln/report_format.hpp"

namespace chipvuln {

// Error body: {"error": {"code": ..., "message": ...}}.
// Codes: bad_request (400), invalid_argument (400), not_found (404),
// conflict (409), internal (500).
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ApiOptions {
  ReportOptions report;
  std::string cors_origin = "*";
  int default_limit = 100;
  int max_limit = 1000;
};

// Read-only HTTP service over a knowledge-base snapshot. handle() is the
// whole routing logic and is safe to call concurrently; the HTTP server only
// adapts requests to it.
class ApiService {
 public:
  explicit ApiService(std::shared_ptr<const KnowledgeBase> kb, ApiOptions opts = {});
  ~ApiService();
  ApiService(const ApiService&) = delete;
  ApiService& operator=(const ApiService&) = delete;

  // Requests already running keep the snapshot they started with.
  void swap_snapshot(std::shared_ptr<const KnowledgeBase> kb);
  std::shared_ptr<const KnowledgeBase> snapshot() const;

  ApiResponse handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query = {}, std::string_view body = {}) const;

  // Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  // Serves until stop(); call after bind().
  void run();
  void stop();
  const ApiOptions& options() const { return opts_; }

 private:
  ApiResponse route(const KnowledgeBase& kb, std::string_view method, std::string_view path,
                    const std::map<std::string, std::string>& query, std::string_view body) const;

  ApiOptions opts_;
  mutable std::mutex mu_;
  std::shared_ptr<const KnowledgeBase> kb_;
  struct Server;
  std::unique_ptr<Server> server_;
};

ApiResponse error_response(const ApiError& e);

}  // namespace chipvuln
