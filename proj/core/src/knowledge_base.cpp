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
#include "chipvuln/knowledge_base.hpp"

#include <algorithm>
#include <cstdint>

#include "chipvuln/augmentation.hpp"
#include "chipvuln/errors.hpp"
#include "chipvuln/normalize.hpp"
#include "chipvuln/serialization.hpp"

namespace chipvuln {
namespace {

std::string marketing_key(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '-' || c == '\t') continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

const std::set<CveId>& empty_cves() {
  static const std::set<CveId> s;
  return s;
}

}  // namespace

KnowledgeBase::KnowledgeBase() : key_terms_(std::make_shared<KeyTermTable>()) {}

KnowledgeBase::KnowledgeBase(std::shared_ptr<const KeyTermTable> key_terms)
    : key_terms_(key_terms ? std::move(key_terms) : std::make_shared<KeyTermTable>()) {}

void KnowledgeBase::set_key_terms(std::shared_ptr<const KeyTermTable> key_terms) {
  key_terms_ = key_terms ? std::move(key_terms) : std::make_shared<KeyTermTable>();
  for (auto& [_, v] : vulnerabilities_) augment(v, *key_terms_);
}

void KnowledgeBase::upsert_chipset(const ChipsetModel& chipset) {
  auto [it, inserted] = chipsets_.emplace(chipset.key, chipset);
  ChipsetModel& cur = it->second;
  if (!inserted) {
    if (chipset.release_date && (!cur.release_date || *chipset.release_date < *cur.release_date)) {
      cur.release_date = chipset.release_date;
    }
    if (chipset.marketing_name && !chipset.marketing_name->empty() &&
        (!cur.marketing_name || cur.marketing_name->empty() || *chipset.marketing_name < *cur.marketing_name)) {
      if (cur.marketing_name) marketing_index_[marketing_key(*cur.marketing_name)].erase(cur.key);
      cur.marketing_name = chipset.marketing_name;
    }
  }
  if (cur.marketing_name && !cur.marketing_name->empty()) {
    marketing_index_[marketing_key(*cur.marketing_name)].insert(cur.key);
  }
}

void KnowledgeBase::upsert_smartphone(const SmartphoneModel& phone) {
  auto it = smartphones_.find(phone.key);
  if (it != smartphones_.end()) {
    const SmartphoneModel& cur = it->second;
    if (std::tie(cur.release_date, cur.chipset) <= std::tie(phone.release_date, phone.chipset)) return;
    devices_by_chipset_[cur.chipset].erase(cur.key);
    it->second = phone;
  } else {
    smartphones_.emplace(phone.key, phone);
  }
  devices_by_chipset_[phone.chipset].insert(phone.key);
}

const Vulnerability& KnowledgeBase::upsert_vulnerability(const VantagePointRecord& record) {
  auto [it, inserted] = vulnerabilities_.try_emplace(record.cve);
  Vulnerability& v = it->second;
  if (inserted) v.cve = record.cve;
  const RecordKey key = natural_key(record);
  auto existing = std::find_if(v.records.begin(), v.records.end(),
                               [&](const VantagePointRecord& r) { return natural_key(r) == key; });
  if (existing == v.records.end()) {
    v.records.push_back(record);
  } else if (canonical(to_json(record)) > canonical(to_json(*existing))) {
    *existing = record;
  }
  augment(v, *key_terms_);
  relink(v);
  return v;
}

void KnowledgeBase::add_update(const DeviceUpdate& update) { updates_.insert(update); }

void KnowledgeBase::add_aosp_bulletin(const AospBulletin& bulletin) {
  auto& b = aosp_bulletins_[bulletin.spl_date];
  b.spl_date = bulletin.spl_date;
  b.cves.insert(bulletin.cves.begin(), bulletin.cves.end());
  for (const auto& cve : bulletin.cves) {
    auto [it, inserted] = aosp_first_listing_.emplace(cve, bulletin.spl_date);
    if (!inserted && bulletin.spl_date < it->second) it->second = bulletin.spl_date;
  }
}

std::vector<ChipsetKey> KnowledgeBase::resolve(const std::string& raw, std::optional<ChipsetManufacturer> cm,
                                               bool* normalization_failed) const {
  *normalization_failed = false;
  NormalizedChipsetName n;
  try {
    n = normalize_chipset_name(raw);
  } catch (const NormalizationError&) {
    *normalization_failed = true;
    return {};
  }
  std::vector<ChipsetKey> out;
  const auto cms = cm ? std::vector<ChipsetManufacturer>{*cm} : all_manufacturers();
  for (auto m : cms) {
    ChipsetKey k{m, n.model_number};
    if (chipsets_.contains(k)) out.push_back(k);
  }
  if (out.empty() && n.marketing_name) {
    auto it = marketing_index_.find(marketing_key(*n.marketing_name));
    if (it != marketing_index_.end()) {
      for (const auto& k : it->second) {
        if (!cm || k.manufacturer == *cm) out.push_back(k);
      }
    }
  }
  return out;
}

void KnowledgeBase::relink(Vulnerability& vuln) {
  // Drop this vulnerability's previous links and unresolved entries.
  if (auto it = links_.find(vuln.cve); it != links_.end()) {
    for (const auto& [chip, _] : it->second) chipset_vulns_[chip].erase(vuln.cve);
    links_.erase(it);
  }
  std::erase_if(unresolved_, [&](const UnresolvedString& u) { return u.cve == vuln.cve; });

  for (const auto& r : vuln.records) {
    std::optional<ChipsetManufacturer> scope;
    if (r.source == Source::kCmBulletin) {
      if (!r.manufacturer) continue;
      scope = r.manufacturer;
    } else if (r.source != Source::kNvd) {
      continue;
    }
    for (const auto& raw : r.affected_chipset_strings) {
      bool norm_failed = false;
      auto keys = resolve(raw, scope, &norm_failed);
      if (keys.empty()) {
        unresolved_.insert({vuln.cve, r.vantage_point, raw, norm_failed ? "normalization" : "no-match"});
        continue;
      }
      for (const auto& k : keys) restore_link(vuln.cve, k, {r.vantage_point, raw});
    }
  }
  vuln.affected_chipsets.clear();
  if (auto it = links_.find(vuln.cve); it != links_.end()) {
    for (const auto& [chip, _] : it->second) vuln.affected_chipsets.insert(chip);
  }
}

void KnowledgeBase::restore_link(const CveId& cve, const ChipsetKey& chipset, const LinkProvenance& why) {
  if (!chipsets_.contains(chipset)) throw StoreError("link to unknown chipset " + chipset.str());
  auto vit = vulnerabilities_.find(cve);
  if (vit == vulnerabilities_.end()) throw StoreError("link from unknown vulnerability " + cve.str());
  links_[cve][chipset].insert(why);
  chipset_vulns_[chipset].insert(cve);
  vit->second.affected_chipsets.insert(chipset);
}

std::size_t KnowledgeBase::link_vulnerability_chipsets(const CveId& cve) {
  auto it = vulnerabilities_.find(cve);
  if (it == vulnerabilities_.end()) throw NotFoundError("unknown vulnerability " + cve.str());
  relink(it->second);
  return it->second.affected_chipsets.size();
}

void KnowledgeBase::clear_links() {
  links_.clear();
  chipset_vulns_.clear();
  unresolved_.clear();
  for (auto& [_, v] : vulnerabilities_) v.affected_chipsets.clear();
}

void KnowledgeBase::link_all() {
  clear_links();
  for (auto& [_, v] : vulnerabilities_) relink(v);
}

const ChipsetModel* KnowledgeBase::chipset(const ChipsetKey& key) const {
  auto it = chipsets_.find(key);
  return it == chipsets_.end() ? nullptr : &it->second;
}

const SmartphoneModel* KnowledgeBase::smartphone(const DeviceKey& key) const {
  auto it = smartphones_.find(key);
  return it == smartphones_.end() ? nullptr : &it->second;
}

const SmartphoneModel* KnowledgeBase::smartphone_by_id(std::string_view id) const {
  for (const auto& [k, s] : smartphones_) {
    if (k.id() == id) return &s;
  }
  return nullptr;
}

const Vulnerability* KnowledgeBase::vulnerability(const CveId& cve) const {
  auto it = vulnerabilities_.find(cve);
  return it == vulnerabilities_.end() ? nullptr : &it->second;
}

const std::set<CveId>& KnowledgeBase::vulnerabilities_of(const ChipsetKey& chipset) const {
  auto it = chipset_vulns_.find(chipset);
  return it == chipset_vulns_.end() ? empty_cves() : it->second;
}

std::optional<ChipsetKey> KnowledgeBase::chipset_of(const DeviceKey& device) const {
  const SmartphoneModel* s = smartphone(device);
  if (!s || !chipsets_.contains(s->chipset)) return std::nullopt;
  return s->chipset;
}

std::vector<const SmartphoneModel*> KnowledgeBase::linked_smartphones() const {
  std::vector<const SmartphoneModel*> out;
  for (const auto& [_, s] : smartphones_) {
    if (chipsets_.contains(s.chipset)) out.push_back(&s);
  }
  return out;
}

std::vector<const SmartphoneModel*> KnowledgeBase::smartphones_with(const ChipsetKey& chipset) const {
  std::vector<const SmartphoneModel*> out;
  if (!chipsets_.contains(chipset)) return out;
  auto it = devices_by_chipset_.find(chipset);
  if (it == devices_by_chipset_.end()) return out;
  for (const auto& d : it->second) out.push_back(&smartphones_.at(d));
  return out;
}

std::vector<const SmartphoneModel*> KnowledgeBase::affected_smartphones(const CveId& cve) const {
  std::vector<const SmartphoneModel*> out;
  auto it = links_.find(cve);
  if (it == links_.end()) return out;
  for (const auto& [chip, _] : it->second) {
    auto more = smartphones_with(chip);
    out.insert(out.end(), more.begin(), more.end());
  }
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->key < b->key; });
  return out;
}

std::vector<DeviceUpdate> KnowledgeBase::updates_of(const DeviceKey& device) const {
  std::vector<DeviceUpdate> out;
  auto it = updates_.lower_bound(DeviceUpdate{device, Date::from_serial(INT32_MIN), {}, std::nullopt});
  for (; it != updates_.end() && it->device == device; ++it) out.push_back(*it);
  return out;
}

std::optional<Date> KnowledgeBase::earliest_aosp_listing(const CveId& cve) const {
  auto it = aosp_first_listing_.find(cve);
  if (it == aosp_first_listing_.end()) return std::nullopt;
  return it->second;
}

std::vector<DeviceUpdate> KnowledgeBase::mitigating_updates(const CveId& cve, const DeviceKey& device) const {
  const auto listed = earliest_aosp_listing(cve);
  std::vector<DeviceUpdate> out;
  for (auto& u : updates_of(device)) {
    const bool explicit_fix = u.explicit_cves.contains(cve);
    const bool spl_fix = listed && u.spl_date && *listed <= *u.spl_date;
    if (explicit_fix || spl_fix) out.push_back(std::move(u));
  }
  // updates_of is already ordered by release date within one device.
  return out;
}

std::vector<DeviceKey> KnowledgeBase::unresolved_devices() const {
  std::vector<DeviceKey> out;
  for (const auto& [k, s] : smartphones_) {
    if (!chipsets_.contains(s.chipset)) out.push_back(k);
  }
  return out;
}

std::vector<LinkConflict> KnowledgeBase::link_conflicts() const {
  std::vector<LinkConflict> out;
  for (const auto& [cve, chips] : links_) {
    const Vulnerability& v = vulnerabilities_.at(cve);
    const bool has_cm = std::any_of(v.records.begin(), v.records.end(),
                                    [](const auto& r) { return r.source == Source::kCmBulletin; });
    if (!has_cm) continue;
    for (const auto& [chip, why] : chips) {
      const bool from_cm = std::any_of(why.begin(), why.end(),
                                       [](const auto& p) { return source_of(p.vantage_point) == Source::kCmBulletin; });
      if (!from_cm) out.push_back({cve, chip});
    }
  }
  return out;
}

}  // namespace chipvuln
