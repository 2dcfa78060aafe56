// Copyright 2026 The Authors.
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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "nnr/errors.hpp"

namespace nnr {

// Strictly increasing set of 0-based indices drawn from [0, universe).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : universe_(universe) {}
  IndexSet(std::vector<std::size_t> indices, std::size_t universe)
      : indices_(std::move(indices)), universe_(universe) {
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (indices_[k] >= universe_) {
        throw InvalidInput("index " + std::to_string(indices_[k]) +
                           " outside universe of size " +
                           std::to_string(universe_));
      }
      if (k > 0 && indices_[k - 1] >= indices_[k]) {
        throw InvalidInput("index set must be strictly increasing");
      }
    }
  }
  IndexSet(std::initializer_list<std::size_t> indices, std::size_t universe)
      : IndexSet(std::vector<std::size_t>(indices), universe) {}

  // Sorts and deduplicates before validating.
  static IndexSet FromUnsorted(std::vector<std::size_t> indices,
                               std::size_t universe) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return IndexSet(std::move(indices), universe);
  }

  static IndexSet All(std::size_t universe) {
    std::vector<std::size_t> idx(universe);
    for (std::size_t i = 0; i < universe; ++i) idx[i] = i;
    return IndexSet(std::move(idx), universe);
  }

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::size_t universe() const { return universe_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  bool subset_of(const IndexSet& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(),
                         indices_.begin(), indices_.end());
  }

  // Position of i within the set, or size() when absent.
  std::size_t position(std::size_t i) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
    if (it == indices_.end() || *it != i) return indices_.size();
    return static_cast<std::size_t>(it - indices_.begin());
  }

  IndexSet intersect(const IndexSet& other) const {
    std::vector<std::size_t> out;
    std::set_intersection(indices_.begin(), indices_.end(),
                          other.indices_.begin(), other.indices_.end(),
                          std::back_inserter(out));
    return IndexSet(std::move(out), universe_);
  }

  // `{0,2,5}`
  std::string str() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(indices_[k]);
    }
    return s + "}";
  }

  // Equality ignores the universe; callers compare within one universe.
  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.indices_ == b.indices_;
  }

 private:
  std::vector<std::size_t> indices_;
  std::size_t universe_ = 0;
};

// Total order on subsets: smaller cardinality first, equal cardinalities
// compared as sorted index sequences.
inline std::strong_ordering LexCompare(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

inline bool LexBefore(const IndexSet& a, const IndexSet& b) {
  return LexCompare(a, b) == std::strong_ordering::less;
}

// All k-subsets of [0, universe) in lexicographic order.
inline std::vector<IndexSet> Combinations(std::size_t universe, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > universe) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.emplace_back(cur, universe);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == universe - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Every subset of [0, universe) in LexCompare order, starting with the
// empty set.
inline std::vector<IndexSet> SubsetsInLexOrder(std::size_t universe) {
  std::vector<IndexSet> out;
  for (std::size_t k = 0; k <= universe; ++k) {
    auto level = Combinations(universe, k);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

inline std::uint64_t Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace nnr
