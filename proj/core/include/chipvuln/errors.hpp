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

#include <stdexcept>
#include <string>
#include <vector>

namespace chipvuln {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value from a closed vocabulary (manufacturer, component, ...) was not recognised.
class VocabularyError : public Error {
 public:
  using Error::Error;
};

// Input failed a plausibility rule. rule() names the rule, e.g. "cve-pattern".
class ValidationError : public Error {
 public:
  ValidationError(std::string rule, const std::string& message)
      : Error(message), rule_(std::move(rule)) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A document could not be parsed at all. anchor() is the first structural
// anchor (label, heading, JSON key) the parser failed to find.
class ParseError : public Error {
 public:
  ParseError(std::string anchor, const std::string& message)
      : Error(message), anchor_(std::move(anchor)) {}
  const std::string& anchor() const { return anchor_; }

 private:
  std::string anchor_;
};

// Several key terms of equal length matched and pointed at different targets.
class AmbiguityError : public Error {
 public:
  AmbiguityError(std::vector<std::string> terms, const std::string& message)
      : Error(message), terms_(std::move(terms)) {}
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Raised when T_patch cannot be determined (no chipset-manufacturer record).
class UnresolvableError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class StoreError : public Error {
 public:
  using Error::Error;
};

}  // namespace chipvuln
