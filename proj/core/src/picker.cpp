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
#include "chipvuln/picker.hpp"

#include <algorithm>
#include <stdexcept>

#include "chipvuln/errors.hpp"

namespace chipvuln {
namespace {

const std::set<CveId>& coverage_of(const DeviceKey& d, const KnowledgeBase& kb) {
  static const std::set<CveId> none;
  const auto chip = kb.chipset_of(d);
  return chip ? kb.vulnerabilities_of(*chip) : none;
}

int count_new(const std::set<CveId>& vs, const std::set<CveId>& covered) {
  int n = 0;
  for (const auto& v : vs) n += covered.contains(v) ? 0 : 1;
  return n;
}

int count_shared(const std::set<CveId>& a, const std::set<CveId>& b) {
  int n = 0;
  for (const auto& v : a) n += b.contains(v) ? 1 : 0;
  return n;
}

}  // namespace

bool passes(const SmartphoneModel& s, const PickFilters& f) {
  if (!f.oems.empty()) {
    const std::string oem = to_lower(s.key.oem);
    const bool hit = std::any_of(f.oems.begin(), f.oems.end(), [&](const auto& o) { return to_lower(o) == oem; });
    if (!hit) return false;
  }
  if (!f.manufacturers.empty() && !f.manufacturers.contains(s.chipset.manufacturer)) return false;
  if (f.released_from && s.release_date < *f.released_from) return false;
  if (f.released_to && *f.released_to < s.release_date) return false;
  return true;
}

PickResult pick_devices(const PickRequest& req, const KnowledgeBase& kb) {
  if (req.k < 1) throw std::invalid_argument("k must be at least 1");
  PickResult res;

  std::vector<const SmartphoneModel*> pool;
  for (const SmartphoneModel* s : kb.linked_smartphones()) {
    if (passes(*s, req.filters)) pool.push_back(s);
  }
  res.candidates = static_cast<int>(pool.size());

  std::set<CveId> covered;
  std::set<DeviceKey> chosen;
  auto take = [&](const SmartphoneModel& s) {
    const auto& vs = coverage_of(s.key, kb);
    res.marginal_gain.push_back(count_new(vs, covered));
    covered.insert(vs.begin(), vs.end());
    res.selection.push_back(s);
    chosen.insert(s.key);
  };

  for (const auto& key : req.locked) {
    const SmartphoneModel* s = kb.smartphone(key);
    if (!s) throw NotFoundError("unknown device " + key.id());
    if (!kb.chipset_of(key)) throw PreconditionError("locked device " + key.id() + " has no linked chipset");
    if (!passes(*s, req.filters)) throw PreconditionError("locked device " + key.id() + " fails the filters");
    if (!chosen.contains(key)) take(*s);
  }
  if (static_cast<int>(res.selection.size()) > req.k) res.notice = "locked devices exceed k";

  while (static_cast<int>(res.selection.size()) < req.k) {
    const SmartphoneModel* best = nullptr;
    int best_gain = -1, best_shared = 0;
    for (const SmartphoneModel* s : pool) {
      if (chosen.contains(s->key)) continue;
      const auto& vs = coverage_of(s->key, kb);
      const int gain = count_new(vs, covered);
      const int shared = static_cast<int>(vs.size()) - gain;
      bool better = false;
      if (!best || gain != best_gain) {
        better = !best || gain > best_gain;
      } else if (shared != best_shared) {
        better = shared < best_shared;
      } else if (s->release_date != best->release_date) {
        better = best->release_date < s->release_date;
      } else {
        better = std::tie(s->key.device_name, s->key.oem) < std::tie(best->key.device_name, best->key.oem);
      }
      if (better) {
        best = s;
        best_gain = gain;
        best_shared = shared;
      }
    }
    if (!best) {
      res.notice = "k exceeds the " + std::to_string(res.candidates) + " candidate devices; all returned";
      break;
    }
    take(*best);
  }

  res.total = static_cast<int>(covered.size());
  const std::size_t n = res.selection.size();
  res.overlap.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const int v = count_shared(coverage_of(res.selection[i].key, kb), coverage_of(res.selection[j].key, kb));
      res.overlap[i][j] = res.overlap[j][i] = v;
    }
  }
  return res;
}

int coverage_delta(const std::vector<DeviceKey>& selection, const DeviceKey& candidate, const KnowledgeBase& kb) {
  std::set<CveId> covered;
  for (const auto& d : selection) {
    const auto& vs = coverage_of(d, kb);
    covered.insert(vs.begin(), vs.end());
  }
  return count_new(coverage_of(candidate, kb), covered);
}

}  // namespace chipvuln
