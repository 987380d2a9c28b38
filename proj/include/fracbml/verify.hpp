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

// Fractional superadditivity of one-dimensional Lebesgue measure under
// Minkowski addition, its equality cases, and the identities and side
// inequalities that surround it.
//
// Every routine here recomputes the quantities it asserts about from
// scratch. A failed assertion is a mathematical finding, reported as
// InvariantViolation rather than silently returned.

#ifndef FRACBML_VERIFY_HPP_
#define FRACBML_VERIFY_HPP_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracbml/index_set.hpp"
#include "fracbml/interval_set.hpp"
#include "fracbml/partition.hpp"
#include "fracbml/rational.hpp"

namespace fracbml {

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Memoizes Minkowski sums of sub-families of a fixed list of sets.
class SumCache {
 public:
  explicit SumCache(std::span<const CompactSet> sets) : sets_(sets) {}

  const CompactSet& get(const IndexSet& s);
  const CompactSet& total() { return get(IndexSet::range(size())); }
  int size() const { return static_cast<int>(sets_.size()); }

 private:
  std::span<const CompactSet> sets_;
  std::map<IndexSet, CompactSet, LexLess> cache_;
};

struct Superadditivity {
  Rational lhs;    // |A_1 + ... + A_m|
  Rational rhs;    // sum over S of beta(S) |sum_{i in S} A_i|
  Rational slack;  // lhs - rhs, never negative
};

// Throws std::invalid_argument when |sets| != m or p is invalid.
Superadditivity check_superadditivity(std::span<const CompactSet> sets,
                                      const FractionalPartition& p);

enum class Equality { kConditionA, kConditionB, kConditionC, kStrict };
const char* equality_name(Equality e);

struct SumShape {
  IndexSet set;
  Shape shape;
  Rational measure;
};

struct EqualityReport {
  Rational lhs;
  Rational rhs;
  Rational slack;
  Equality classification = Equality::kStrict;
  // One entry per member of the partition, original indices.
  std::vector<SumShape> shapes;
  // A member whose sum is neither a positive-measure interval nor a point.
  std::optional<IndexSet> witness;
  // Number of input sets with at least two points.
  int k = 0;
  // Weight of the members containing every multi-point set; absent if k = 0.
  std::optional<Rational> gamma;
  // order[p] is the original index placed at position p + 1 when the
  // multi-point sets are moved to the front.
  std::vector<int> order;
  bool renumbered = false;
};

// Decides equality structurally (shapes of the partial sums and the
// translated partition) and cross-checks the verdict against the
// independently computed slack. Throws std::invalid_argument for a trivial
// partition and InvariantViolation when the two routes disagree.
EqualityReport classify_equality(std::span<const CompactSet> sets,
                                 const FractionalPartition& p);

struct HullIdentity {
  Rational lhs_hull;
  Rational rhs_hull;
};

// |conv(sum A)| == sum beta(S) |conv(sum_S A)|; asserted.
HullIdentity conv_identity(std::span<const CompactSet> sets,
                           const FractionalPartition& p);

struct ConvexityPropagation {
  bool hypothesis_met = false;
  // Meaningful only when hypothesis_met; true whenever it is reported.
  bool total_convex = true;
};

// If every member sum is convex, the total sum is convex. Checked twice:
// directly on the shape of the total and by folding the Schneider index
// bound over a cover of [m].
ConvexityPropagation convexity_propagation(std::span<const CompactSet> sets,
                                           const FractionalPartition& p);

// One cell (k, j) of the row decomposition of the reduced inequality.
struct ProofCell {
  int k = 0;
  int j = 0;
  // Half-open window (lo, hi]; empty when lo == hi.
  Rational lo;
  Rational hi;
  // |sum_{S_j} A ∩ (lo, hi]|
  Rational mu_block;
  // |sum_{[m]} A ∩ (lo, hi]|
  Rational mu_total;
  // |sum_{[m]} A ∩ (lo + c, hi + c]|, the window before it is shifted
  // back by c = sum of a_i over the earlier-scheduled indices outside S_j.
  Rational mu_total_tile;

  bool strict() const { return mu_block < mu_total; }
};

struct ProofDecomposition {
  std::int64_t q = 0;
  std::vector<IndexSet> blocks;
  Rational lhs;                          // |sum_{[m]} A|
  std::vector<Rational> block_measures;  // |sum_{S_j} A|, j = 1..s
  std::vector<ProofCell> cells;          // k-major, then j
  std::vector<Rational> row_sums;        // sum_j mu_block(k, j), k = 1..q
  Rational total;                        // sum_{k,j} mu_block
  // Cells with mu_block < mu_total, as (k, j).
  std::vector<std::pair<int, int>> strict_cells;
  bool all_cells_equal = true;
  // Same test against mu_total_tile.
  bool all_tiles_equal = true;

  const ProofCell& cell(int k, int j) const {
    return cells[static_cast<std::size_t>(k - 1) * blocks.size() + (j - 1)];
  }
};

// Requires min(A_i) = 0 for every set; throws std::invalid_argument
// ("translate to min 0 first") otherwise.
ProofDecomposition proof_decomposition(std::span<const CompactSet> sets,
                                       const RationalReduction& r);

// inf { lambda >= 0 : A + lambda conv(A) is convex }.
Rational schneider_index(const CompactSet& a);

struct SchneiderUnion {
  Rational c_union;
  Rational c_s;
  Rational c_t;
  bool ok = false;
};

SchneiderUnion schneider_union_monotonicity(std::span<const CompactSet> sets,
                                            const IndexSet& s,
                                            const IndexSet& t);

// Delta_k = |conv(A)| - |A(k)| with A(k) = (A + ... + A) / k.
struct DeficitSeries {
  CompactSet set;
  std::vector<std::pair<int, Rational>> values;
};

DeficitSeries volume_deficit(const CompactSet& a, int k_max);

// |A+B+C| + |conv A| - |A+B| - |A+C|; asserted non-negative.
Rational supermod_conv(const CompactSet& a, const CompactSet& b,
                       const CompactSet& c);

// Three-set rewrite of the right-hand side as a convex combination of the
// five volumes
//   V1 = (|A12| + |A13| + |A23|) / 2,  V2 = |A12| + |A3|,
//   V3 = |A13| + |A2|,  V4 = |A23| + |A1|,  V5 = |A1| + |A2| + |A3|.
struct V3Decomposition {
  // Indices are swapped so that the third singleton weight is minimal;
  // order[p] is the original index at position p + 1.
  std::array<int, 3> order{1, 2, 3};
  std::array<Rational, 5> alpha;
  std::array<Rational, 5> volumes;
  Rational total;  // |A1 + A2 + A3|
  Rational rhs;
  bool equality_equiv = false;
};

// Requires m == 3 and a non-trivial partition.
V3Decomposition v3_decompose(std::span<const CompactSet> sets,
                             const FractionalPartition& p);

}  // namespace fracbml

#endif  // FRACBML_VERIFY_HPP_
