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

#include "lv/view_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lv/error.hpp"
#include "lv/rng.hpp"
#include "lv/tsv.hpp"

namespace lv {

std::optional<int8_t> ViewMatrix::value(int32_t item, int32_t user) const {
  auto it = entries_.find(key(item, user));
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

double ViewMatrix::density() const {
  const double cells = static_cast<double>(num_items()) * static_cast<double>(num_users());
  return cells == 0.0 ? 0.0 : static_cast<double>(entries_.size()) / cells;
}

std::vector<Entry> ViewMatrix::sorted_entries() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) {
    out.push_back(Entry{static_cast<int32_t>(k >> 32), static_cast<int32_t>(k & 0xFFFFFFFFu), v});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.item != b.item ? a.item < b.item : a.user < b.user;
  });
  return out;
}

std::vector<std::vector<int32_t>> ViewMatrix::viewers_by_item() const {
  std::vector<std::vector<int32_t>> out(num_items());
  for (const auto& [k, v] : entries_) {
    if (v == 1) {
      out[k >> 32].push_back(static_cast<int32_t>(k & 0xFFFFFFFFu));
    }
  }
  for (auto& v : out) {
    std::sort(v.begin(), v.end());
  }
  return out;
}

std::vector<std::vector<int32_t>> ViewMatrix::positives_by_user() const {
  std::vector<std::vector<int32_t>> out(num_users());
  for (const auto& [k, v] : entries_) {
    if (v == 1) {
      out[k & 0xFFFFFFFFu].push_back(static_cast<int32_t>(k >> 32));
    }
  }
  for (auto& v : out) {
    std::sort(v.begin(), v.end());
  }
  return out;
}

std::vector<std::vector<int32_t>> ViewMatrix::nonmissing_items_by_user() const {
  std::vector<std::vector<int32_t>> out(num_users());
  for (const auto& [k, v] : entries_) {
    out[k & 0xFFFFFFFFu].push_back(static_cast<int32_t>(k >> 32));
  }
  for (auto& v : out) {
    std::sort(v.begin(), v.end());
  }
  return out;
}

void ViewMatrix::write_matrix_tsv(const std::string& path) const {
  std::ostringstream out;
  for (const Entry& e : sorted_entries()) {
    out << item_ids_[e.item] << '\t' << user_ids_[e.user] << '\t' << int(e.value) << '\n';
  }
  tsv::write_file(path, out.str());
}

void ViewMatrix::write_owners_tsv(const std::string& path) const {
  std::ostringstream out;
  for (int32_t i = 0; i < num_items(); ++i) {
    if (!owners_.empty() && owners_[i] >= 0) {
      out << item_ids_[i] << '\t' << user_ids_[owners_[i]] << '\n';
    }
  }
  tsv::write_file(path, out.str());
}

bool ViewMatrix::same_content(const ViewMatrix& other) const {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(item_ids_) != sorted(other.item_ids_) ||
      sorted(user_ids_) != sorted(other.user_ids_) ||
      entries_.size() != other.entries_.size()) {
    return false;
  }
  // index assignment may differ; compare entries through ids
  std::unordered_map<std::string, int32_t> o_item, o_user;
  for (int32_t i = 0; i < other.num_items(); ++i) {
    o_item.emplace(other.item_ids_[i], i);
  }
  for (int32_t j = 0; j < other.num_users(); ++j) {
    o_user.emplace(other.user_ids_[j], j);
  }
  for (const Entry& e : sorted_entries()) {
    auto v = other.value(o_item.at(item_ids_[e.item]), o_user.at(user_ids_[e.user]));
    if (!v || *v != e.value) {
      return false;
    }
  }
  // owners by id pairs
  auto owner_pairs = [](const ViewMatrix& m) {
    std::vector<std::pair<std::string, std::string>> out;
    for (int32_t i = 0; i < m.num_items(); ++i) {
      if (!m.owners_.empty() && m.owners_[i] >= 0) {
        out.emplace_back(m.item_ids_[i], m.user_ids_[m.owners_[i]]);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return owner_pairs(*this) == owner_pairs(other);
}

// --- builder ---

ViewMatrixBuilder ViewMatrixBuilder::from(const ViewMatrix& m) {
  ViewMatrixBuilder b;
  b.m_.item_ids_ = m.item_ids_;
  b.m_.user_ids_ = m.user_ids_;
  b.m_.entries_ = m.entries_;
  b.m_.owners_ = m.owners_;
  b.m_.positive_count_ = m.positive_count_;
  for (int32_t i = 0; i < m.num_items(); ++i) {
    b.item_index_.emplace(m.item_ids_[i], i);
  }
  for (int32_t j = 0; j < m.num_users(); ++j) {
    b.user_index_.emplace(m.user_ids_[j], j);
  }
  return b;
}

int32_t ViewMatrixBuilder::add_item(const std::string& id) {
  auto [it, inserted] = item_index_.emplace(id, static_cast<int32_t>(m_.item_ids_.size()));
  if (inserted) {
    m_.item_ids_.push_back(id);
    if (!m_.owners_.empty()) {
      m_.owners_.push_back(-1);
    }
  }
  return it->second;
}

int32_t ViewMatrixBuilder::add_user(const std::string& id) {
  auto [it, inserted] = user_index_.emplace(id, static_cast<int32_t>(m_.user_ids_.size()));
  if (inserted) {
    m_.user_ids_.push_back(id);
  }
  return it->second;
}

void ViewMatrixBuilder::set_value(int32_t item, int32_t user, int8_t value) {
  if (item < 0 || item >= m_.num_items() || user < 0 || user >= m_.num_users()) {
    throw Error("entry index out of range");
  }
  if (value != 0 && value != 1) {
    throw Error("entry value must be 0 or 1");
  }
  auto [it, inserted] = m_.entries_.emplace(ViewMatrix::key(item, user), value);
  if (!inserted && it->second != value) {
    throw Error("conflicting values for item " + m_.item_ids_[item] + ", user " +
                m_.user_ids_[user]);
  }
  if (inserted && value == 1) {
    ++m_.positive_count_;
  }
}

void ViewMatrixBuilder::set_owner(int32_t item, int32_t user) {
  if (item < 0 || item >= m_.num_items() || user < 0 || user >= m_.num_users()) {
    throw Error("owner index out of range");
  }
  if (m_.owners_.empty()) {
    m_.owners_.assign(m_.item_ids_.size(), -1);
  }
  m_.owners_[item] = user;
}

ViewMatrix ViewMatrixBuilder::build() { return std::move(m_); }

// --- operations ---

namespace {

// Attaches `item_id<TAB>owner_user_id` rows to an already-built matrix.
// Unknown items are an error; unknown owner users are appended with no views.
ViewMatrix attach_owners(ViewMatrix m, const std::string& owners_path) {
  ViewMatrixBuilder b = ViewMatrixBuilder::from(m);
  std::unordered_map<std::string, int32_t> item_index;
  for (int32_t i = 0; i < m.num_items(); ++i) {
    item_index.emplace(m.item_ids()[i], i);
  }
  tsv::for_each_row(owners_path, [&](size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError(owners_path, line, "expected `item_id<TAB>user_id`");
    }
    auto it = item_index.find(std::string(f[0]));
    if (it == item_index.end()) {
      throw ParseError(owners_path, line, "owner for unknown item '" + std::string(f[0]) + "'");
    }
    const int32_t j = b.add_user(std::string(f[1]));
    b.set_owner(it->second, j);
  });
  return b.build();
}

}  // namespace

ViewMatrix ingest_views(const std::string& views_path, const std::string& owners_path) {
  ViewMatrixBuilder b;
  tsv::for_each_row(views_path, [&](size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError(views_path, line, "expected `item_id<TAB>user_id`");
    }
    const int32_t i = b.add_item(std::string(f[0]));
    const int32_t j = b.add_user(std::string(f[1]));
    b.set_value(i, j, 1);
  });
  ViewMatrix m = b.build();
  if (owners_path.empty()) {
    return m;
  }

  ViewMatrixBuilder ob = ViewMatrixBuilder::from(m);
  const auto& item_ids = m.item_ids();
  std::unordered_map<std::string, int32_t> item_index;
  for (int32_t i = 0; i < m.num_items(); ++i) {
    item_index.emplace(item_ids[i], i);
  }
  tsv::for_each_row(owners_path, [&](size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError(owners_path, line, "expected `item_id<TAB>user_id`");
    }
    auto it = item_index.find(std::string(f[0]));
    if (it == item_index.end()) {
      throw ParseError(owners_path, line, "owner for unknown item '" + std::string(f[0]) + "'");
    }
    const int32_t j = ob.add_user(std::string(f[1]));  // appended with zero views if new
    ob.set_owner(it->second, j);
  });
  return ob.build();
}

ViewMatrix read_matrix_tsv(const std::string& matrix_path, const std::string& owners_path) {
  ViewMatrixBuilder b;
  tsv::for_each_row(matrix_path, [&](size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 3 || f[0].empty() || f[1].empty()) {
      throw ParseError(matrix_path, line, "expected `item_id<TAB>user_id<TAB>value`");
    }
    const long long v = tsv::parse_int(f[2], matrix_path, line);
    if (v != 0 && v != 1) {
      throw ParseError(matrix_path, line, "value must be 0 or 1");
    }
    const int32_t i = b.add_item(std::string(f[0]));
    const int32_t j = b.add_user(std::string(f[1]));
    b.set_value(i, j, static_cast<int8_t>(v));
  });
  ViewMatrix m = b.build();
  if (owners_path.empty()) {
    return m;
  }
  ViewMatrixBuilder ob = ViewMatrixBuilder::from(m);
  std::unordered_map<std::string, int32_t> item_index;
  for (int32_t i = 0; i < m.num_items(); ++i) {
    item_index.emplace(m.item_ids()[i], i);
  }
  tsv::for_each_row(owners_path, [&](size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError(owners_path, line, "expected `item_id<TAB>user_id`");
    }
    auto it = item_index.find(std::string(f[0]));
    if (it == item_index.end()) {
      throw ParseError(owners_path, line, "owner for unknown item '" + std::string(f[0]) + "'");
    }
    const int32_t j = ob.add_user(std::string(f[1]));
    ob.set_owner(it->second, j);
  });
  return ob.build();
}

ViewMatrix apply_activity_filter(const ViewMatrix& m, int64_t min_count, int64_t max_count) {
  if (min_count < 0 || min_count > max_count) {
    throw Error("activity filter requires 0 <= min_count <= max_count");
  }
  const auto entries = m.sorted_entries();
  std::vector<char> item_alive(m.num_items(), 1);
  std::vector<char> user_alive(m.num_users(), 1);

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int64_t> item_count(m.num_items(), 0);
    std::vector<int64_t> user_count(m.num_users(), 0);
    for (const Entry& e : entries) {
      if (e.value == 1 && item_alive[e.item] && user_alive[e.user]) {
        ++item_count[e.item];
        ++user_count[e.user];
      }
    }
    for (int32_t i = 0; i < m.num_items(); ++i) {
      if (item_alive[i] && (item_count[i] < min_count || item_count[i] > max_count)) {
        item_alive[i] = 0;
        changed = true;
      }
    }
    for (int32_t j = 0; j < m.num_users(); ++j) {
      if (user_alive[j] && (user_count[j] < min_count || user_count[j] > max_count)) {
        user_alive[j] = 0;
        changed = true;
      }
    }
  }

  ViewMatrixBuilder b;
  for (int32_t i = 0; i < m.num_items(); ++i) {
    if (item_alive[i]) {
      b.add_item(m.item_ids()[i]);
    }
  }
  for (int32_t j = 0; j < m.num_users(); ++j) {
    if (user_alive[j]) {
      b.add_user(m.user_ids()[j]);
    }
  }
  std::vector<int32_t> item_map(m.num_items(), -1);
  std::vector<int32_t> user_map(m.num_users(), -1);
  {
    int32_t next = 0;
    for (int32_t i = 0; i < m.num_items(); ++i) {
      if (item_alive[i]) item_map[i] = next++;
    }
    next = 0;
    for (int32_t j = 0; j < m.num_users(); ++j) {
      if (user_alive[j]) user_map[j] = next++;
    }
  }
  for (const Entry& e : entries) {
    if (item_alive[e.item] && user_alive[e.user]) {
      b.set_value(item_map[e.item], user_map[e.user], e.value);
    }
  }
  if (m.has_owners()) {
    for (int32_t i = 0; i < m.num_items(); ++i) {
      const int32_t o = m.owners()[i];
      if (item_alive[i] && o >= 0 && user_alive[o]) {
        b.set_owner(item_map[i], user_map[o]);
      }
    }
  }
  ViewMatrix out = b.build();
  if (m.entry_count() > 0 && out.entry_count() == 0) {
    throw Error("activity filter removed the whole corpus");
  }
  return out;
}

PopularityTable popularity(const ViewMatrix& m) {
  PopularityTable t;
  t.p.assign(m.num_items(), 0);
  for (const Entry& e : m.sorted_entries()) {
    if (e.value == 1) {
      ++t.p[e.item];
    }
  }
  return t;
}

int64_t PopularityTable::total() const { return std::accumulate(p.begin(), p.end(), int64_t{0}); }

CorpusSplit split_items(const ViewMatrix& m, double te_fraction, uint64_t seed) {
  if (!(te_fraction > 0.0 && te_fraction < 1.0)) {
    throw Error("te_fraction must be in (0, 1)");
  }
  const int32_t M = m.num_items();
  if (M < 2) {
    throw Error("need at least 2 items to split");
  }
  std::vector<int32_t> idx(M);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(derive_seed(seed, rng_stream::kSplitItems));
  rng.shuffle(idx);
  const auto n_te = static_cast<size_t>(std::llround(te_fraction * M));

  CorpusSplit split;
  split.te_items.assign(idx.begin(), idx.begin() + n_te);
  split.tr_items.assign(idx.begin() + n_te, idx.end());
  std::sort(split.te_items.begin(), split.te_items.end());
  std::sort(split.tr_items.begin(), split.tr_items.end());
  return split;
}

void split_entries(const ViewMatrix& m, CorpusSplit& split, double val_fraction, uint64_t seed) {
  if (!(val_fraction >= 0.0 && val_fraction < 1.0)) {
    throw Error("val_fraction must be in [0, 1)");
  }
  std::vector<char> is_tr(m.num_items(), 0);
  for (int32_t i : split.tr_items) {
    is_tr[i] = 1;
  }
  std::vector<std::pair<int32_t, int32_t>> pool;
  for (const Entry& e : m.sorted_entries()) {
    if (is_tr[e.item]) {
      pool.emplace_back(e.item, e.user);
    }
  }
  if (pool.empty()) {
    throw Error("no non-missing entries in tr rows");
  }
  Rng rng(derive_seed(seed, rng_stream::kSplitEntries));
  rng.shuffle(pool);
  const auto n_val = static_cast<size_t>(std::llround(val_fraction * static_cast<double>(pool.size())));
  split.val_entries.assign(pool.begin(), pool.begin() + n_val);
  split.train_entries.assign(pool.begin() + n_val, pool.end());
  std::sort(split.val_entries.begin(), split.val_entries.end());
  std::sort(split.train_entries.begin(), split.train_entries.end());
}

void write_split_tsv(const ViewMatrix& m, const CorpusSplit& split, const std::string& path) {
  std::ostringstream out;
  for (int32_t i : split.tr_items) {
    out << "tr\t" << m.item_ids()[i] << '\n';
  }
  for (int32_t i : split.te_items) {
    out << "te\t" << m.item_ids()[i] << '\n';
  }
  for (const auto& [i, j] : split.train_entries) {
    out << "train\t" << m.item_ids()[i] << '\t' << m.user_ids()[j] << '\n';
  }
  for (const auto& [i, j] : split.val_entries) {
    out << "val\t" << m.item_ids()[i] << '\t' << m.user_ids()[j] << '\n';
  }
  tsv::write_file(path, out.str());
}

CorpusSplit read_split_tsv(const ViewMatrix& m, const std::string& path) {
  std::unordered_map<std::string, int32_t> item_index, user_index;
  for (int32_t i = 0; i < m.num_items(); ++i) {
    item_index.emplace(m.item_ids()[i], i);
  }
  for (int32_t j = 0; j < m.num_users(); ++j) {
    user_index.emplace(m.user_ids()[j], j);
  }
  CorpusSplit split;
  tsv::for_each_row(path, [&](size_t line, const std::vector<std::string_view>& f) {
    auto item_of = [&](std::string_view id) {
      auto it = item_index.find(std::string(id));
      if (it == item_index.end()) {
        throw ParseError(path, line, "unknown item '" + std::string(id) + "'");
      }
      return it->second;
    };
    auto user_of = [&](std::string_view id) {
      auto it = user_index.find(std::string(id));
      if (it == user_index.end()) {
        throw ParseError(path, line, "unknown user '" + std::string(id) + "'");
      }
      return it->second;
    };
    if (f[0] == "tr" && f.size() == 2) {
      split.tr_items.push_back(item_of(f[1]));
    } else if (f[0] == "te" && f.size() == 2) {
      split.te_items.push_back(item_of(f[1]));
    } else if (f[0] == "train" && f.size() == 3) {
      split.train_entries.emplace_back(item_of(f[1]), user_of(f[2]));
    } else if (f[0] == "val" && f.size() == 3) {
      split.val_entries.emplace_back(item_of(f[1]), user_of(f[2]));
    } else {
      throw ParseError(path, line, "bad split row");
    }
  });
  std::sort(split.tr_items.begin(), split.tr_items.end());
  std::sort(split.te_items.begin(), split.te_items.end());
  std::sort(split.train_entries.begin(), split.train_entries.end());
  std::sort(split.val_entries.begin(), split.val_entries.end());
  return split;
}

}  // namespace lv
