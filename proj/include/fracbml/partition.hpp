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

// Fractional partitions of [m]: a family of subsets with positive rational
// weights such that the weights of the subsets containing any fixed index
// sum to one.

#ifndef FRACBML_PARTITION_HPP_
#define FRACBML_PARTITION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracbml/index_set.hpp"
#include "fracbml/rational.hpp"

namespace fracbml {

struct Term {
  IndexSet set;
  Rational weight;
  friend bool operator==(const Term&, const Term&) = default;
};

// Plain data; use validate() / require_valid() to check the partition rules.
struct FractionalPartition {
  int m = 0;
  std::vector<Term> terms;

  // Weight of `s`, zero when s is not a member of the family.
  Rational weight_of(const IndexSet& s) const;
  std::string str() const;
  friend bool operator==(const FractionalPartition&,
                         const FractionalPartition&) = default;
};

using WeightMap = std::map<IndexSet, Rational, LexLess>;

// Terms sorted by LexLess on their subsets.
FractionalPartition canonical(FractionalPartition p);
WeightMap weight_map(const FractionalPartition& p);
FractionalPartition from_weight_map(int m, const WeightMap& w);

struct Violation {
  enum class Kind {
    kBadGroundSet,
    kEmptySubset,
    kIndexOutOfRange,
    kDuplicateSubset,
    kNonPositiveWeight,
    kWeightAboveOne,
    kIndexSum,
    kFullSetInNonTrivial,
  };
  Kind kind;
  // Offending index for kIndexSum / kIndexOutOfRange, else 0.
  int index = 0;
  IndexSet set;
  // Actual per-index weight sum for kIndexSum, offending weight otherwise.
  Rational actual;
  std::string message;
};

std::vector<Violation> validate(const FractionalPartition& p);

// Throws std::invalid_argument carrying the first violation.
void require_valid(const FractionalPartition& p);

bool is_trivial(const FractionalPartition& p);
FractionalPartition trivial_partition(int m);
// All (m-1)-subsets with weight 1/(m-1). Requires m >= 3.
FractionalPartition leave_one_out(int m);

// Relabels index i as new_label[i - 1]. new_label must be a permutation of
// [m]; the result is in canonical order.
FractionalPartition relabel(const FractionalPartition& p,
                            std::span<const int> new_label);

// q copies of a covering multiset: block S is repeated q * beta(S) times,
// blocks appear in canonical term order, and each index lies in exactly q
// blocks.
struct RationalReduction {
  int m = 0;
  std::int64_t q = 0;
  std::vector<IndexSet> blocks;
};

RationalReduction reduce_to_rational(const FractionalPartition& p);

// For every index i, the increasing block positions h_1(i) < ... < h_q(i)
// (1-based) of the blocks that contain i.
class ScheduleTable {
 public:
  explicit ScheduleTable(const RationalReduction& r);

  int m() const { return m_; }
  int q() const { return q_; }
  int s() const { return s_; }

  // h_k(i); k in [1, q], i in [1, m].
  int h(int k, int i) const { return rows_[(i - 1) * q_ + (k - 1)]; }
  std::span<const int> row(int i) const {
    return {rows_.data() + (i - 1) * q_, static_cast<std::size_t>(q_)};
  }

  // {i : h_k(i) <= j}, for j in [0, s].
  IndexSet inverse_image(int k, int j) const;

 private:
  int m_;
  int q_;
  int s_;
  std::vector<int> rows_;
};

// Partition induced on the first k indices after dropping the rest.
// gamma is the total weight of the subsets that contain all of [k]; when
// gamma == 1 the induced partition is the trivial one and `partition` is
// empty.
struct Translation {
  Rational gamma;
  std::optional<FractionalPartition> partition;
  bool trivial() const { return !partition.has_value(); }
};

// Requires p valid and non-trivial and 1 <= k <= m. Callers relabel first so
// that the retained indices are 1..k.
Translation translate_partition(const FractionalPartition& p, int k);

// ---- The polytope of all fractional partitions of [m] ----

inline constexpr int kMaxPolytopeDim = 5;

// Extreme points, in lexicographic order of their sorted supports.
// 2 <= m <= kMaxPolytopeDim. Computed once per m and cached.
const std::vector<FractionalPartition>& enumerate_vertices(int m);

// True iff p is the unique solution of the covering equations restricted to
// its support.
bool vertex_check(const FractionalPartition& p);

struct VertexDecomposition {
  struct Part {
    FractionalPartition vertex;
    Rational alpha;
  };
  std::vector<Part> parts;
};

// Convex combination of extreme points reproducing p exactly. Each vertex's
// support lies inside the support of p. Requires m <= kMaxPolytopeDim.
VertexDecomposition decompose_to_vertices(const FractionalPartition& p);

// Lexicographic order of sorted supports; the tie-break used everywhere
// vertices are listed.
bool support_less(const FractionalPartition& a, const FractionalPartition& b);

}  // namespace fracbml

#endif  // FRACBML_PARTITION_HPP_
