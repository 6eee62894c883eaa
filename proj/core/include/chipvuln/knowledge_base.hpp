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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chipvuln/domain.hpp"
#include "chipvuln/key_terms.hpp"

namespace chipvuln {

// Why a vulnerability is linked to a chipset: the record string that resolved.
struct LinkProvenance {
  VantagePoint vantage_point = VantagePoint::kNvd;
  std::string raw;
  friend bool operator==(const LinkProvenance&, const LinkProvenance&) = default;
  friend auto operator<=>(const LinkProvenance&, const LinkProvenance&) = default;
};

struct UnresolvedString {
  CveId cve;
  VantagePoint vantage_point = VantagePoint::kNvd;
  std::string raw;
  std::string reason;  // "no-match" or "normalization"
  friend bool operator==(const UnresolvedString&, const UnresolvedString&) = default;
  friend auto operator<=>(const UnresolvedString&, const UnresolvedString&) = default;
};

// NVD linked a chipset that none of the vulnerability's bulletin records name.
struct LinkConflict {
  CveId cve;
  ChipsetKey chipset;
  friend bool operator==(const LinkConflict&, const LinkConflict&) = default;
  friend auto operator<=>(const LinkConflict&, const LinkConflict&) = default;
};

// In-memory knowledge base. Copies are cheap enough to serve as read
// snapshots; the API shares them as shared_ptr<const KnowledgeBase>.
//
// v in V(c) holds iff the vulnerability/chipset link exists.
// Vulnerability::affected_chipsets mirrors the link table.
class KnowledgeBase {
 public:
  KnowledgeBase();
  explicit KnowledgeBase(std::shared_ptr<const KeyTermTable> key_terms);

  const KeyTermTable& key_terms() const { return *key_terms_; }
  // Swaps the table and re-derives every vulnerability.
  void set_key_terms(std::shared_ptr<const KeyTermTable> key_terms);

  // Conflicting release dates keep the earliest; marketing names keep the
  // smallest non-empty value, so ingestion order does not matter.
  void upsert_chipset(const ChipsetModel& chipset);
  // Duplicate catalog rows keep the earliest release date.
  void upsert_smartphone(const SmartphoneModel& phone);
  // Keyed on the CVE; a record replaces one with the same natural key
  // (the larger canonical form wins). Re-derives the vulnerability and
  // re-links it against the chipsets known at this point.
  const Vulnerability& upsert_vulnerability(const VantagePointRecord& record);
  void add_update(const DeviceUpdate& update);
  // Bulletins with the same SPL date are merged.
  void add_aosp_bulletin(const AospBulletin& bulletin);

  // Returns the number of links created for this vulnerability.
  std::size_t link_vulnerability_chipsets(const CveId& cve);
  // Recomputes every vulnerability/chipset and device/chipset link.
  void link_all();
  // Used when loading persisted state: installs a link verbatim.
  void restore_link(const CveId& cve, const ChipsetKey& chipset, const LinkProvenance& why);
  void restore_unresolved(const UnresolvedString& u) { unresolved_.insert(u); }
  // Drops every vulnerability/chipset link and the unresolved report.
  void clear_links();

  const std::map<ChipsetKey, ChipsetModel>& chipsets() const { return chipsets_; }
  const std::map<DeviceKey, SmartphoneModel>& smartphones() const { return smartphones_; }
  const std::map<CveId, Vulnerability>& vulnerabilities() const { return vulnerabilities_; }
  const std::set<DeviceUpdate>& updates() const { return updates_; }
  const std::map<Date, AospBulletin>& aosp_bulletins() const { return aosp_bulletins_; }

  const ChipsetModel* chipset(const ChipsetKey& key) const;
  const SmartphoneModel* smartphone(const DeviceKey& key) const;
  const SmartphoneModel* smartphone_by_id(std::string_view id) const;
  const Vulnerability* vulnerability(const CveId& cve) const;

  // V(c).
  const std::set<CveId>& vulnerabilities_of(const ChipsetKey& chipset) const;
  // B(s); nullopt when the device's chipset is not in C.
  std::optional<ChipsetKey> chipset_of(const DeviceKey& device) const;
  // S: devices whose chipset resolves.
  std::vector<const SmartphoneModel*> linked_smartphones() const;
  std::vector<const SmartphoneModel*> smartphones_with(const ChipsetKey& chipset) const;
  std::vector<const SmartphoneModel*> affected_smartphones(const CveId& cve) const;

  std::vector<DeviceUpdate> updates_of(const DeviceKey& device) const;
  // Earliest AOSP SPL date listing the CVE.
  std::optional<Date> earliest_aosp_listing(const CveId& cve) const;
  // Updates of the device that mitigate the CVE, ascending by release date.
  std::vector<DeviceUpdate> mitigating_updates(const CveId& cve, const DeviceKey& device) const;

  const std::map<CveId, std::map<ChipsetKey, std::set<LinkProvenance>>>& links() const { return links_; }
  const std::set<UnresolvedString>& unresolved_strings() const { return unresolved_; }
  std::vector<DeviceKey> unresolved_devices() const;
  std::vector<LinkConflict> link_conflicts() const;

 private:
  void relink(Vulnerability& vuln);
  std::vector<ChipsetKey> resolve(const std::string& raw, std::optional<ChipsetManufacturer> cm,
                                  bool* normalization_failed) const;

  std::shared_ptr<const KeyTermTable> key_terms_;
  std::map<ChipsetKey, ChipsetModel> chipsets_;
  std::map<std::string, std::set<ChipsetKey>> marketing_index_;
  std::map<DeviceKey, SmartphoneModel> smartphones_;
  std::map<ChipsetKey, std::set<DeviceKey>> devices_by_chipset_;
  std::map<CveId, Vulnerability> vulnerabilities_;
  std::set<DeviceUpdate> updates_;
  std::map<Date, AospBulletin> aosp_bulletins_;
  std::map<CveId, Date> aosp_first_listing_;

  std::map<CveId, std::map<ChipsetKey, std::set<LinkProvenance>>> links_;
  std::map<ChipsetKey, std::set<CveId>> chipset_vulns_;
  std::set<UnresolvedString> unresolved_;
};

}  // namespace chipvuln
