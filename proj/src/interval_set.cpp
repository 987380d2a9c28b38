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

#include <algorithm>
#include <stdexcept>

namespace fracbml {

CompactSet CompactSet::normalize(std::vector<Interval> raw) {
  if (raw.empty()) throw std::invalid_argument("empty set not representable");
  for (const Interval& iv : raw) {
    if (iv.lo > iv.hi) throw std::invalid_argument("malformed interval");
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<Interval> merged;
  merged.reserve(raw.size());
  for (const Interval& iv : raw) {
    // Touching components ([0,1] and [1,2]) merge as well.
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(iv);
    }
  }
  return CompactSet(std::move(merged));
}

CompactSet CompactSet::point(const Rational& x) {
  return CompactSet({Interval{x, x}});
}

CompactSet CompactSet::interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("malformed interval");
  return CompactSet({Interval{lo, hi}});
}

bool CompactSet::contains(const Rational& x) const {
  // First component with hi >= x.
  auto it = std::lower_bound(
      parts_.begin(), parts_.end(), x,
      [](const Interval& iv, const Rational& v) { return iv.hi < v; });
  return it != parts_.end() && it->lo <= x;
}

std::string CompactSet::str() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += " U ";
    const Interval& iv = parts_[i];
    if (iv.degenerate()) {
      out += "{" + iv.lo.str() + "}";
    } else {
      out += "[" + iv.lo.str() + "," + iv.hi.str() + "]";
    }
  }
  return out;
}

CompactSet minkowski_sum(const CompactSet& a, const CompactSet& b) {
  std::vector<Interval> raw;
  raw.reserve(a.size() * b.size());
  for (const Interval& x : a.components()) {
    for (const Interval& y : b.components()) {
      raw.push_back({x.lo + y.lo, x.hi + y.hi});
    }
  }
  return CompactSet::normalize(std::move(raw));
}

CompactSet sum_family(std::span<const CompactSet> sets, const IndexSet& s) {
  if (s.empty()) throw std::invalid_argument("empty index set");
  if (s.max_index() > static_cast<int>(sets.size())) {
    throw std::out_of_range("index " + std::to_string(s.max_index()) +
                            " exceeds family size " +
                            std::to_string(sets.size()));
  }
  std::vector<int> idx = s.members();
  CompactSet acc = sets[idx.front() - 1];
  for (std::size_t k = 1; k < idx.size(); ++k) {
    acc = minkowski_sum(acc, sets[idx[k] - 1]);
  }
  return acc;
}

Rational measure(const CompactSet& a) {
  Rational total;
  for (const Interval& iv : a.components()) total += iv.length();
  return total;
}

Rational measure_within(const CompactSet& a, const Rational& lo,
                        const Rational& hi) {
  Rational total;
  if (hi <= lo) return total;
  for (const Interval& iv : a.components()) {
    if (iv.hi <= lo) continue;
    if (iv.lo >= hi) break;
    total += std::min(iv.hi, hi) - std::max(iv.lo, lo);
  }
  return total;
}

CompactSet convex_hull(const CompactSet& a) {
  return CompactSet::interval(a.min(), a.max());
}

CompactSet affine(const CompactSet& a, const Rational& scale,
                  const Rational& shift) {
  if (scale.sign() <= 0) throw std::invalid_argument("non-positive scale");
  std::vector<Interval> out;
  out.reserve(a.size());
  for (const Interval& iv : a.components()) {
    out.push_back({scale * iv.lo + shift, scale * iv.hi + shift});
  }
  return CompactSet::normalize(std::move(out));
}

CompactSet to_origin(const CompactSet& a) { return affine(a, 1, -a.min()); }

Shape classify_shape(const CompactSet& a) {
  if (a.size() > 1) return Shape::kNonConvex;
  return a.components().front().degenerate() ? Shape::kPoint
                                             : Shape::kInterval;
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::kPoint:
      return "Point";
    case Shape::kInterval:
      return "Interval";
    case Shape::kNonConvex:
      return "NonConvex";
  }
  return "?";
}

Rational max_gap(const CompactSet& a) {
  Rational gap;
  auto parts = a.components();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    gap = std::max(gap, parts[i].lo - parts[i - 1].hi);
  }
  return gap;
}

PointInfo point_predicates(const CompactSet& a, const Rational& x) {
  PointInfo info;
  for (const Interval& iv : a.components()) {
    if (iv.lo <= x && x <= iv.hi) {
      info.in_set = true;
      info.in_rlp = x < iv.hi;
      info.in_llp = x > iv.lo;
      info.in_pm = !iv.degenerate();
    }
    if (iv.degenerate()) continue;
    // The closure of PM(A) is the union of the non-degenerate components.
    if (!info.x_right && iv.hi > x) info.x_right = std::max(iv.lo, x);
    if (iv.lo < x) info.x_left = std::min(iv.hi, x);
  }
  return info;
}

}  // namespace fracbml
