/*
 * Copyright 2026 latentview contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lv {

// A non-missing cell. value is 1 (viewed) or 0 (sampled pseudo-negative);
// absent cells are missing.
struct Entry {
  int32_t item = 0;
  int32_t user = 0;
  int8_t value = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sparse ternary user-item view matrix. Immutable once built; share freely
// across threads.
class ViewMatrix {
 public:
  friend class ViewMatrixBuilder;

  int32_t num_items() const { return static_cast<int32_t>(item_ids_.size()); }
  int32_t num_users() const { return static_cast<int32_t>(user_ids_.size()); }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  const std::vector<std::string>& user_ids() const { return user_ids_; }

  // nullopt = missing.
  std::optional<int8_t> value(int32_t item, int32_t user) const;

  size_t entry_count() const { return entries_.size(); }
  size_t positive_count() const { return positive_count_; }
  double density() const;

  // Entries sorted by (item, user); the canonical iteration order.
  std::vector<Entry> sorted_entries() const;

  // Users with value 1 per item, ascending. Length num_items().
  std::vector<std::vector<int32_t>> viewers_by_item() const;
  // Items with value 1 per user, ascending. Length num_users().
  std::vector<std::vector<int32_t>> positives_by_user() const;
  // Items with any non-missing value per user, ascending.
  std::vector<std::vector<int32_t>> nonmissing_items_by_user() const;

  bool has_owners() const { return !owners_.empty(); }
  // owner user index per item, -1 where absent. Empty when no owners loaded.
  const std::vector<int32_t>& owners() const { return owners_; }

  // `item_id<TAB>user_id<TAB>value` rows in canonical order.
  void write_matrix_tsv(const std::string& path) const;
  void write_owners_tsv(const std::string& path) const;

  // Content equality: id lists, entries and owners match by identifier.
  bool same_content(const ViewMatrix& other) const;

 private:
  ViewMatrix() = default;

  static uint64_t key(int32_t item, int32_t user) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(item)) << 32) |
           static_cast<uint32_t>(user);
  }

  std::vector<std::string> item_ids_;
  std::vector<std::string> user_ids_;
  std::unordered_map<uint64_t, int8_t> entries_;
  std::vector<int32_t> owners_;  // empty or length num_items()
  size_t positive_count_ = 0;
};

// Incremental construction with first-appearance index assignment.
class ViewMatrixBuilder {
 public:
  ViewMatrixBuilder() = default;

  // Seeds the builder with an existing matrix (ids, entries, owners).
  static ViewMatrixBuilder from(const ViewMatrix& m);

  int32_t add_item(const std::string& id);
  int32_t add_user(const std::string& id);

  // value must be 0 or 1. Setting the same value twice is a no-op;
  // conflicting values raise.
  void set_value(int32_t item, int32_t user, int8_t value);
  void set_owner(int32_t item, int32_t user);

  ViewMatrix build();

 private:
  ViewMatrix m_;
  std::unordered_map<std::string, int32_t> item_index_;
  std::unordered_map<std::string, int32_t> user_index_;
};

// --- corpus operations ---

struct PopularityTable {
  // positives per item, length num_items()
  std::vector<int64_t> p;
  int64_t total() const;
};

struct CorpusSplit {
  std::vector<int32_t> tr_items;  // ascending
  std::vector<int32_t> te_items;  // ascending
  std::vector<std::pair<int32_t, int32_t>> train_entries;  // (item,user) ascending
  std::vector<std::pair<int32_t, int32_t>> val_entries;    // (item,user) ascending
};

// Raw view log: `item_id<TAB>user_id` per line, repeat views collapse.
// owners_path may be empty. Owner users unknown to the view log are appended
// with zero views; owners of unknown items are an error.
ViewMatrix ingest_views(const std::string& views_path, const std::string& owners_path = "");

// 3-column matrix export reader (values in {1,0}).
ViewMatrix read_matrix_tsv(const std::string& matrix_path, const std::string& owners_path = "");

// Removes items and users whose positive count falls outside
// [min_count, max_count], iterating to fixpoint, then reindexes survivors in
// original order. Owners survive when both endpoints do.
ViewMatrix apply_activity_filter(const ViewMatrix& m, int64_t min_count, int64_t max_count);

PopularityTable popularity(const ViewMatrix& m);

// Seeded uniform item partition with |te| = round(te_fraction * M).
CorpusSplit split_items(const ViewMatrix& m, double te_fraction, uint64_t seed);

// Completes the split: non-missing entries of tr rows go to train/val with
// |val| = round(val_fraction * n). te rows contribute nothing.
void split_entries(const ViewMatrix& m, CorpusSplit& split, double val_fraction, uint64_t seed);

void write_split_tsv(const ViewMatrix& m, const CorpusSplit& split, const std::string& path);
CorpusSplit read_split_tsv(const ViewMatrix& m, const std::string& path);

}  // namespace lv
