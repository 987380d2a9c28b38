// Copyright 2026 The fracbml Authors.
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

#ifndef FRACBML_INDEX_SET_HPP_
#define FRACBML_INDEX_SET_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fracbml {

// Subset of [m] = {1, ..., m} with m <= kMaxIndex. Indices are 1-based.
class IndexSet {
 public:
  static constexpr int kMaxIndex = 64;

  constexpr IndexSet() = default;
  IndexSet(std::initializer_list<int> members);
  static IndexSet from_bits(std::uint64_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }
  // [1, n]
  static IndexSet range(int n);

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(int i) const {
    return i >= 1 && i <= kMaxIndex && ((bits_ >> (i - 1)) & 1u);
  }
  // Largest member, 0 when empty.
  int max_index() const { return 64 - std::countl_zero(bits_); }

  void insert(int i);
  void erase(int i);

  std::vector<int> members() const;
  bool subset_of(const IndexSet& other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  friend IndexSet operator&(IndexSet a, IndexSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  friend IndexSet operator|(IndexSet a, IndexSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend IndexSet operator-(IndexSet a, IndexSet b) {
    return from_bits(a.bits_ & ~b.bits_);
  }
  friend bool operator==(IndexSet a, IndexSet b) { return a.bits_ == b.bits_; }

  // "{1,3}"
  std::string str() const;

 private:
  std::uint64_t bits_ = 0;
};

// Lexicographic order on the sorted member lists: {1} < {1,2} < {1,3} < {2}.
std::strong_ordering lex_compare(const IndexSet& a, const IndexSet& b);

struct LexLess {
  bool operator()(const IndexSet& a, const IndexSet& b) const {
    return lex_compare(a, b) < 0;
  }
};

}  // namespace fracbml

#endif  // FRACBML_INDEX_SET_HPP_
