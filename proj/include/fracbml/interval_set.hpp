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

// Exact algebra of one-dimensional compact sets represented as finite
// unions of closed rational intervals.

#ifndef FRACBML_INTERVAL_SET_HPP_
#define FRACBML_INTERVAL_SET_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracbml/index_set.hpp"
#include "fracbml/rational.hpp"

namespace fracbml {

// Closed interval [lo, hi]; lo == hi is a single point.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A non-empty compact set in canonical form: components sorted and strictly
// separated (hi_i < lo_{i+1}). Touching or overlapping inputs are merged, so
// two CompactSets are equal as sets iff their component lists are equal.
class CompactSet {
 public:
  // Throws std::invalid_argument("empty set not representable") for an empty
  // list and std::invalid_argument("malformed interval") when lo > hi.
  static CompactSet normalize(std::vector<Interval> raw);

  static CompactSet point(const Rational& x);
  static CompactSet interval(const Rational& lo, const Rational& hi);

  std::span<const Interval> components() const { return parts_; }
  std::size_t size() const { return parts_.size(); }

  const Rational& min() const { return parts_.front().lo; }
  const Rational& max() const { return parts_.back().hi; }

  bool contains(const Rational& x) const;
  bool is_point() const {
    return parts_.size() == 1 && parts_.front().degenerate();
  }

  // "[0,1] U {2}" style, for diagnostics.
  std::string str() const;

  friend bool operator==(const CompactSet&, const CompactSet&) = default;

 private:
  explicit CompactSet(std::vector<Interval> parts) : parts_(std::move(parts)) {}

  std::vector<Interval> parts_;
};

CompactSet minkowski_sum(const CompactSet& a, const CompactSet& b);

// Minkowski sum of sets[i - 1] over i in s (1-based indices).
// Throws std::invalid_argument("empty index set") for s = {} and
// std::out_of_range when an index exceeds sets.size().
CompactSet sum_family(std::span<const CompactSet> sets, const IndexSet& s);

Rational measure(const CompactSet& a);

// |A ∩ (lo, hi]|; zero when hi <= lo.
Rational measure_within(const CompactSet& a, const Rational& lo,
                        const Rational& hi);

CompactSet convex_hull(const CompactSet& a);

// x -> scale * x + shift. Throws std::invalid_argument("non-positive scale").
CompactSet affine(const CompactSet& a, const Rational& scale,
                  const Rational& shift);

// Translate so that min(A) = 0.
CompactSet to_origin(const CompactSet& a);

enum class Shape { kPoint, kInterval, kNonConvex };

Shape classify_shape(const CompactSet& a);
const char* shape_name(Shape s);

// Largest gap lo_{i+1} - hi_i between consecutive components; 0 for one
// component.
Rational max_gap(const CompactSet& a);

// Local structure of A at x.
struct PointInfo {
  bool in_set = false;
  // x is a limit of a decreasing sequence in A.
  bool in_rlp = false;
  // x is a limit of an increasing sequence in A.
  bool in_llp = false;
  // Every neighbourhood of x meets A in positive measure.
  bool in_pm = false;
  // inf / sup of the closure of PM(A) strictly right / left of x.
  std::optional<Rational> x_right;
  std::optional<Rational> x_left;
};

PointInfo point_predicates(const CompactSet& a, const Rational& x);

}  // namespace fracbml

#endif  // FRACBML_INTERVAL_SET_HPP_
