// Copyright 2026 The locw1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCW1_QUBITS_HPP
#define LOCW1_QUBITS_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace locw1 {

// Qubit labels are 1-based. Throughout the library, matrix indices use the
// big-endian convention: the smallest label in a support is the most
// significant bit of the row/column index.
//
// A QubitSet is an ordered set of distinct labels. Subsets of {1..n} with
// n <= 32 can round-trip through a bit mask where bit (q-1) stands for
// qubit q.
class QubitSet {
 public:
  QubitSet() = default;

  QubitSet(std::initializer_list<int> labels) : QubitSet(std::vector<int>(labels)) {}

  explicit QubitSet(std::vector<int> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] < 1) throw std::invalid_argument("QubitSet: labels are 1-based");
      if (i > 0 && labels_[i] == labels_[i - 1])
        throw std::invalid_argument("QubitSet: duplicate label");
    }
  }

  // {1, 2, ..., n}
  static QubitSet range(int n) {
    if (n < 0) throw std::invalid_argument("QubitSet::range: negative size");
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return QubitSet(std::move(v));
  }

  static QubitSet from_mask(std::uint32_t mask) {
    std::vector<int> v;
    for (int q = 1; q <= 32; ++q)
      if (mask & (1u << (q - 1))) v.push_back(q);
    return QubitSet(std::move(v));
  }

  std::uint32_t mask() const {
    std::uint32_t m = 0;
    for (int q : labels_) {
      if (q > 32) throw std::domain_error("QubitSet::mask: label exceeds 32");
      m |= 1u << (q - 1);
    }
    return m;
  }

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }

  bool contains(int label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
  }

  // Index of `label` in ascending order, or -1.
  int position_of(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
  }

  bool subset_of(const QubitSet& other) const {
    return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(),
                         labels_.end());
  }

  bool disjoint_from(const QubitSet& other) const {
    std::vector<int> tmp;
    std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                          other.labels_.end(), std::back_inserter(tmp));
    return tmp.empty();
  }

  QubitSet unite(const QubitSet& other) const {
    std::vector<int> v;
    std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(),
                   other.labels_.end(), std::back_inserter(v));
    return QubitSet(std::move(v));
  }

  QubitSet minus(const QubitSet& other) const {
    std::vector<int> v;
    std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(),
                        other.labels_.end(), std::back_inserter(v));
    return QubitSet(std::move(v));
  }

  bool operator==(const QubitSet& other) const = default;

 private:
  std::vector<int> labels_;
};

}  // namespace locw1

#endif
