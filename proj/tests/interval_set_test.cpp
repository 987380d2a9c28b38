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

#include "fracbml/interval_set.hpp"

#include <gtest/gtest.h>

#include "fracbml/oracle.hpp"
#include "test_util.hpp"

namespace fracbml {
namespace {

using testing::iv;
using testing::pt;
using testing::R;
using testing::U;

const oracle::GridParams kFine{R(1, 64), R(16)};

std::vector<Interval> parts_of(const CompactSet& a) {
  auto c = a.components();
  return {c.begin(), c.end()};
}

TEST(Normalize, MergesTouching) {
  EXPECT_EQ(parts_of(U({{0, 1}, {1, 2}})), (std::vector<Interval>{{0, 2}}));
}

TEST(Normalize, Sorts) {
  EXPECT_EQ(parts_of(U({{2, 3}, {0, 1}})),
            (std::vector<Interval>{{0, 1}, {2, 3}}));
}

TEST(Normalize, MergesOverlapAndKeepsPoint) {
  const std::vector<Interval> raw{{0, 2}, {1, 3}, {5, 5}};
  const CompactSet a = CompactSet::normalize(raw);
  EXPECT_EQ(parts_of(a), (std::vector<Interval>{{0, 3}, {5, 5}}));
  auto in_raw = [&](const Rational& x) {
    for (const auto& r : raw) {
      if (r.lo <= x && x <= r.hi) return true;
    }
    return false;
  };
  EXPECT_TRUE(testing::same_on_grid(a, in_raw, R(1, 64), -64, 7 * 64));
}

TEST(Normalize, PointInsideIntervalIsAbsorbed) {
  EXPECT_EQ(U({{0, 2}, {1, 1}}), iv(0, 2));
  EXPECT_EQ(U({{2, 2}, {2, 2}}), pt(2));
}

TEST(Normalize, Errors) {
  EXPECT_THROW(CompactSet::normalize({}), std::invalid_argument);
  EXPECT_THROW(CompactSet::normalize({{1, 0}}), std::invalid_argument);
  EXPECT_THROW(CompactSet::interval(2, 1), std::invalid_argument);
}

TEST(Minkowski, Examples) {
  EXPECT_EQ(minkowski_sum(iv(0, 1), iv(0, 1)), iv(0, 2));
  const CompactSet two_points = U({{0, 0}, {2, 2}});
  const CompactSet sum = minkowski_sum(two_points, iv(0, 1));
  EXPECT_EQ(sum, U({{0, 1}, {2, 3}}));
  EXPECT_EQ(oracle::grid_minkowski(two_points, iv(0, 1), kFine).mismatches, 0);
  const CompactSet a = U({{0, 1}, {R(5, 2), 3}, {7, 7}});
  EXPECT_EQ(minkowski_sum(pt(0), a), a);
}

TEST(SumFamily, Examples) {
  const std::vector<CompactSet> units{iv(0, 1), iv(0, 1), iv(0, 1)};
  EXPECT_EQ(sum_family(units, {1, 2, 3}), iv(0, 3));
  const std::vector<CompactSet> sets{U({{0, 0}, {10, 10}}), iv(0, 1), iv(0, 1)};
  const CompactSet s12 = sum_family(sets, {1, 2});
  EXPECT_EQ(s12, U({{0, 1}, {10, 11}}));
  EXPECT_EQ(oracle::grid_minkowski(sets[0], sets[1], kFine).mismatches, 0);
  EXPECT_EQ(sum_family(sets, {2}), sets[1]);
}

TEST(SumFamily, Errors) {
  const std::vector<CompactSet> sets{iv(0, 1)};
  EXPECT_THROW(sum_family(sets, IndexSet{}), std::invalid_argument);
  EXPECT_THROW(sum_family(sets, {2}), std::out_of_range);
}

TEST(Measure, Examples) {
  EXPECT_EQ(measure(iv(0, 2)), 2);
  EXPECT_EQ(measure(U({{0, 1}, {2, 3}})), 2);
  EXPECT_EQ(measure(U({{0, 0}, {5, 5}})), 0);
}

TEST(Measure, Within) {
  const CompactSet a = U({{0, 1}, {2, 3}});
  EXPECT_EQ(measure_within(a, R(1, 2), R(5, 2)), 1);
  EXPECT_EQ(measure_within(a, 1, 2), 0);
  EXPECT_EQ(measure_within(a, -5, 5), 2);
  EXPECT_EQ(measure_within(a, 3, 3), 0);
}

TEST(Hull, Examples) {
  EXPECT_EQ(convex_hull(U({{0, 1}, {2, 3}})), iv(0, 3));
  EXPECT_EQ(convex_hull(U({{0, 0}, {1, 1}})), iv(0, 1));
  const CompactSet a = U({{0, 0}, {2, 2}});
  const CompactSet b = U({{0, 0}, {3, 3}});
  EXPECT_EQ(convex_hull(minkowski_sum(a, b)), iv(0, 5));
  EXPECT_EQ(minkowski_sum(convex_hull(a), convex_hull(b)), iv(0, 5));
}

TEST(Affine, Examples) {
  EXPECT_EQ(affine(iv(0, 2), R(1, 2), 0), iv(0, 1));
  const CompactSet shifted = affine(iv(1, 2), 1, -1);
  EXPECT_EQ(shifted, iv(0, 1));
  EXPECT_EQ(measure(shifted), measure(iv(1, 2)));
  const CompactSet src = U({{0, 1}, {4, 5}});
  const CompactSet img = affine(src, R(1, 2), 3);
  EXPECT_EQ(img, U({{3, R(7, 2)}, {5, R(11, 2)}}));
  auto preimage = [&](const Rational& x) { return src.contains((x - 3) * 2); };
  EXPECT_TRUE(testing::same_on_grid(img, preimage, R(1, 64), 0, 8 * 64));
  EXPECT_THROW(affine(src, 0, 0), std::invalid_argument);
  EXPECT_EQ(to_origin(U({{3, 4}, {6, 6}})), U({{0, 1}, {3, 3}}));
}

TEST(Shape, Examples) {
  EXPECT_EQ(classify_shape(pt(3)), Shape::kPoint);
  EXPECT_EQ(classify_shape(iv(0, 2)), Shape::kInterval);
  EXPECT_EQ(classify_shape(U({{0, 1}, {2, 2}})), Shape::kNonConvex);
  EXPECT_STREQ(shape_name(Shape::kNonConvex), "NonConvex");
}

TEST(MaxGap, Examples) {
  EXPECT_EQ(max_gap(iv(0, 1)), 0);
  EXPECT_EQ(max_gap(U({{0, 1}, {2, 3}})), 1);
  EXPECT_EQ(max_gap(U({{0, 0}, {1, 2}, {5, 5}})), 3);
}

TEST(PointPredicates, Examples) {
  PointInfo p = point_predicates(iv(0, 1), 0);
  EXPECT_TRUE(p.in_rlp);
  EXPECT_FALSE(p.in_llp);
  EXPECT_TRUE(p.in_pm);

  p = point_predicates(U({{0, 0}, {2, 3}}), 0);
  EXPECT_TRUE(p.in_set);
  EXPECT_FALSE(p.in_pm);
  ASSERT_TRUE(p.x_right.has_value());
  EXPECT_EQ(*p.x_right, 2);
  EXPECT_FALSE(p.x_left.has_value());

  p = point_predicates(iv(0, 1), R(1, 2));
  EXPECT_TRUE(p.in_rlp && p.in_llp && p.in_pm);

  p = point_predicates(iv(0, 1), 5);
  EXPECT_FALSE(p.in_set || p.in_rlp || p.in_llp || p.in_pm);
}

// Random sets with endpoints on the 1/8 grid in [0, 2].
CompactSet draw(std::uint64_t seed, int max_components = 3) {
  return oracle::random_set(seed, max_components, 8, 16);
}

TEST(IntervalSetProperty, SumMatchesGridConvolution) {
  const oracle::GridParams g{R(1, 64), R(2)};
  for (std::uint64_t s = 0; s < 300; ++s) {
    const CompactSet a = draw(2 * s);
    const CompactSet b = draw(2 * s + 1);
    const auto rep = oracle::grid_minkowski(a, b, g);
    EXPECT_EQ(rep.mismatches, 0) << a.str() << " + " << b.str();
  }
}

TEST(IntervalSetProperty, MeasureMatchesGridCount) {
  const oracle::GridParams g{R(1, 64), R(2)};
  for (std::uint64_t s = 0; s < 300; ++s) {
    const CompactSet a = draw(s, 5);
    const auto gm = oracle::grid_measure(a, g);
    EXPECT_LE(abs(gm.approx - measure(a)), gm.error_bound) << a.str();
  }
}

TEST(IntervalSetProperty, AlgebraicLaws) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const CompactSet a = draw(3 * s);
    const CompactSet b = draw(3 * s + 1);
    const CompactSet c = draw(3 * s + 2);
    const CompactSet ab = minkowski_sum(a, b);
    EXPECT_EQ(ab, minkowski_sum(b, a));
    EXPECT_EQ(minkowski_sum(ab, c), minkowski_sum(a, minkowski_sum(b, c)));
    EXPECT_EQ(convex_hull(ab),
              minkowski_sum(convex_hull(a), convex_hull(b)));
    // One-dimensional Brunn-Minkowski.
    EXPECT_GE(measure(ab), measure(a) + measure(b));
    EXPECT_EQ(measure(affine(a, R(3, 2), R(-1, 3))), measure(a) * R(3, 2));
    EXPECT_EQ(measure_within(a, a.min() - 1, a.max()), measure(a));
    const Rational mid = (a.min() + a.max()) / 2;
    EXPECT_EQ(measure_within(a, a.min() - 1, mid) + measure_within(a, mid, a.max()),
              measure(a));
  }
}

TEST(IntervalSetProperty, MaxGapMatchesComponentScan) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const CompactSet a = draw(s, 5);
    Rational gap;
    const Rational h(1, 8);
    // Longest run of grid cells (j h, (j+1) h) missing A, times h.
    std::int64_t run = 0;
    for (std::int64_t j = 0; j < 16; ++j) {
      const Rational mid = h * j + h / 2;
      if (a.contains(h * j)) run = 0;
      run = a.contains(mid) || mid < a.min() || mid > a.max() ? 0 : run + 1;
      gap = std::max(gap, h * run);
    }
    EXPECT_EQ(max_gap(a), gap) << a.str();
  }
}

TEST(IntervalSetProperty, PointPredicatesConsistent) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const CompactSet a = draw(s, 4);
    for (std::int64_t j = -1; j <= 17; ++j) {
      const Rational x(j, 8);
      const PointInfo p = point_predicates(a, x);
      EXPECT_EQ(p.in_set, a.contains(x));
      EXPECT_EQ(p.in_pm, p.in_rlp || p.in_llp);
      if (p.in_rlp || p.in_llp) EXPECT_TRUE(p.in_set);
      // x is a right limit point iff a little to its right is in A.
      EXPECT_EQ(p.in_rlp, p.in_set && a.contains(x + R(1, 1024)));
      EXPECT_EQ(p.in_llp, p.in_set && a.contains(x - R(1, 1024)));
    }
  }
}

}  // namespace
}  // namespace fracbml
