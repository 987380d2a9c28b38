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

#include "fracbml/index_set.hpp"

#include <stdexcept>

namespace fracbml {

IndexSet::IndexSet(std::initializer_list<int> members) {
  for (int i : members) insert(i);
}

IndexSet IndexSet::range(int n) {
  if (n < 0 || n > kMaxIndex) throw std::out_of_range("index range");
  return from_bits(n == 64 ? ~std::uint64_t{0}
                           : ((std::uint64_t{1} << n) - 1));
}

void IndexSet::insert(int i) {
  if (i < 1 || i > kMaxIndex) {
    throw std::out_of_range("index " + std::to_string(i) + " out of range");
  }
  bits_ |= std::uint64_t{1} << (i - 1);
}

void IndexSet::erase(int i) {
  if (i < 1 || i > kMaxIndex) return;
  bits_ &= ~(std::uint64_t{1} << (i - 1));
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b) + 1);
  }
  return out;
}

std::string IndexSet::str() const {
  std::string out = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::strong_ordering lex_compare(const IndexSet& a, const IndexSet& b) {
  std::uint64_t x = a.bits();
  std::uint64_t y = b.bits();
  while (x != 0 && y != 0) {
    int i = std::countr_zero(x);
    int j = std::countr_zero(y);
    if (i != j) return i <=> j;
    x &= x - 1;
    y &= y - 1;
  }
  // A proper prefix sorts first.
  return (x != 0) <=> (y != 0);
}

}  // namespace fracbml
