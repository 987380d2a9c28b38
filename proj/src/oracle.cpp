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

#include "fracbml/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

namespace fracbml::oracle {
namespace {

void require_inside(const CompactSet& a, const GridParams& g) {
  if (g.resolution.sign() <= 0) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  if (a.min() < -g.bound || a.max() > g.bound) {
    throw std::invalid_argument("set " + a.str() + " leaves the grid box");
  }
}

std::int64_t grid_index(const Rational& x, const Rational& h) {
  const Rational t = x / h;
  if (!t.is_integer()) {
    throw std::invalid_argument("endpoint " + x.str() +
                                " is not on the grid of step " + h.str());
  }
  return t.num();
}

// Grid points of A as a bitset starting at index `offset`.
boost::dynamic_bitset<> grid_bits(const CompactSet& a, const Rational& h,
                                  std::int64_t& offset) {
  offset = grid_index(a.min(), h);
  boost::dynamic_bitset<> bits(grid_index(a.max(), h) - offset + 1);
  for (const Interval& iv : a.components()) {
    for (std::int64_t j = grid_index(iv.lo, h); j <= grid_index(iv.hi, h); ++j) {
      bits.set(j - offset);
    }
  }
  return bits;
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

void grow_sets(std::int64_t den, std::int64_t range, int budget,
               std::int64_t next_lo, std::vector<Interval>& parts,
               std::vector<CompactSet>& out) {
  for (std::int64_t lo = next_lo; lo <= range; ++lo) {
    for (std::int64_t hi = lo; hi <= range; ++hi) {
      parts.push_back({Rational(lo, den), Rational(hi, den)});
      out.push_back(CompactSet::normalize(parts));
      if (budget > 1) grow_sets(den, range, budget - 1, hi + 1, parts, out);
      parts.pop_back();
    }
  }
}

}  // namespace

GridMeasure grid_measure(const CompactSet& a, const GridParams& g) {
  require_inside(a, g);
  const Rational& h = g.resolution;
  const std::int64_t first = floor(-g.bound / h) - 1;
  const std::int64_t last = ceil(g.bound / h);
  auto parts = a.components();
  std::size_t p = 0;
  std::int64_t hits = 0;
  for (std::int64_t j = first; j <= last; ++j) {
    const Rational cell_lo = h * j;
    const Rational cell_hi = h * (j + 1);
    while (p < parts.size() && parts[p].hi < cell_lo) ++p;
    if (p < parts.size() && parts[p].lo <= cell_hi) ++hits;
  }
  return {h * hits, h * static_cast<std::int64_t>(2 * a.size())};
}

GridMinkowskiReport grid_minkowski(const CompactSet& a, const CompactSet& b,
                                   const GridParams& g) {
  require_inside(a, g);
  require_inside(b, g);
  const Rational& h = g.resolution;
  std::int64_t off_a = 0;
  std::int64_t off_b = 0;
  const auto bits_a = grid_bits(a, h, off_a);
  auto bits_b = grid_bits(b, h, off_b);

  // Convolution of the two indicator vectors, then dilation by one cell.
  const std::size_t width = bits_a.size() + bits_b.size() + 1;
  boost::dynamic_bitset<> sums(width);
  bits_b.resize(width);
  for (auto i = bits_a.find_first(); i != bits_a.npos; i = bits_a.find_next(i)) {
    sums |= bits_b << i;
  }
  // dilated[t] is set when any of sums[t - 2 .. t] is, so grid index x maps
  // to t = x - (off_a + off_b) + 1 and sees the sums at x - 1, x, x + 1.
  sums.resize(width + 2);
  const boost::dynamic_bitset<> dilated = (sums << 2) | (sums << 1) | sums;
  const std::int64_t base = off_a + off_b - 1;

  const CompactSet exact = minkowski_sum(a, b);
  GridMinkowskiReport rep;
  const std::int64_t first = floor(-g.bound * 2 / h);
  const std::int64_t last = ceil(g.bound * 2 / h);
  for (std::int64_t x = first; x <= last; ++x) {
    const std::int64_t t = x - base;
    const bool oracle_member =
        t >= 0 && t < static_cast<std::int64_t>(dilated.size()) && dilated[t];
    const Rational point = h * x;
    const bool exact_member = exact.contains(point);
    bool bad = false;
    if (exact_member && !oracle_member) {
      bad = true;
    } else if (oracle_member && !exact_member) {
      // Allowed only within the boundary tolerance h of the exact sum.
      bool near = false;
      for (const Interval& iv : exact.components()) {
        if (iv.lo <= point + h && iv.hi >= point - h) near = true;
      }
      bad = !near;
    }
    ++rep.points_checked;
    if (bad) {
      ++rep.mismatches;
      if (rep.examples.size() < 8) rep.examples.push_back(point);
    }
  }
  return rep;
}

Rational schneider_search(const CompactSet& a) {
  const Rational hull = a.max() - a.min();
  if (hull.is_zero()) return 0;
  std::vector<Rational> candidates{Rational(0)};
  auto parts = a.components();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    candidates.push_back((parts[i].lo - parts[i - 1].hi) / hull);
  }
  std::sort(candidates.begin(), candidates.end());
  for (const Rational& lambda : candidates) {
    const CompactSet widened =
        lambda.is_zero()
            ? CompactSet::point(0)
            : affine(convex_hull(a), lambda, -lambda * a.min());
    if (minkowski_sum(a, widened).size() == 1) return lambda;
  }
  throw std::logic_error("schneider_search: no candidate convexifies " +
                         a.str());
}

CompactSet random_set(std::uint64_t seed, int max_components,
                      std::int64_t denominator, std::int64_t range) {
  if (max_components < 1 || denominator < 1 || range < 0) {
    throw std::invalid_argument("random_set: bad parameters");
  }
  std::mt19937_64 rng(seed);
  const int count = static_cast<int>(uniform(rng, 1, max_components));
  std::vector<Interval> raw;
  for (int c = 0; c < count; ++c) {
    std::int64_t x = uniform(rng, 0, range);
    std::int64_t y = uniform(rng, 0, range);
    if (uniform(rng, 0, 3) == 0) y = x;
    if (y < x) std::swap(x, y);
    raw.push_back({Rational(x, denominator), Rational(y, denominator)});
  }
  return CompactSet::normalize(std::move(raw));
}

Instance random_instance(const InstanceParams& p) {
  if (p.m < 2 || p.max_components < 1) {
    throw std::invalid_argument("random_instance: need m >= 2 and "
                                "max_components >= 1");
  }
  std::mt19937_64 rng(p.seed);
  Instance out;
  for (int i = 0; i < p.m; ++i) {
    out.sets.push_back(random_set(rng(), p.max_components,
                                  p.coordinate_denominator,
                                  p.coordinate_range));
  }
  const auto& vertices = enumerate_vertices(p.m);
  std::vector<const FractionalPartition*> nontrivial;
  for (const auto& v : vertices) {
    if (!is_trivial(v)) nontrivial.push_back(&v);
  }
  const bool mixture = uniform(rng, 0, 1) == 1 && nontrivial.size() >= 2;
  if (!mixture) {
    out.partition = vertices[uniform(rng, 0, vertices.size() - 1)];
    return out;
  }
  const int parts = static_cast<int>(
      uniform(rng, 2, std::min<std::int64_t>(3, nontrivial.size())));
  std::shuffle(nontrivial.begin(), nontrivial.end(), rng);
  std::vector<std::int64_t> w(parts);
  std::int64_t total = 0;
  for (auto& x : w) total += (x = uniform(rng, 1, 4));
  WeightMap mix;
  for (int c = 0; c < parts; ++c) {
    for (const Term& t : nontrivial[c]->terms) {
      mix[t.set] += Rational(w[c], total) * t.weight;
    }
  }
  out.partition = from_weight_map(p.m, mix);
  return out;
}

std::vector<CompactSet> grid_sets(std::int64_t denominator, std::int64_t range,
                                  int max_components) {
  if (denominator < 1 || range < 0 || max_components < 1) {
    throw std::invalid_argument("grid_sets: bad parameters");
  }
  std::vector<CompactSet> out;
  std::vector<Interval> parts;
  grow_sets(denominator, range, max_components, 0, parts, out);
  return out;
}

ScanSummary brute_equality_scan(
    const ScanParams& p, const std::function<void(const ScanRecord&)>& sink) {
  if (p.partition.m != 3) {
    throw std::invalid_argument("brute_equality_scan works on m = 3");
  }
  const auto sets = grid_sets(p.denominator, p.range, p.max_components);
  ScanSummary summary;
  std::vector<CompactSet> triple(3, CompactSet::point(0));
  for (const auto& a : sets) {
    for (const auto& b : sets) {
      for (const auto& c : sets) {
        triple[0] = a;
        triple[1] = b;
        triple[2] = c;
        const EqualityReport rep = classify_equality(triple, p.partition);
        ++summary.instances;
        ++summary.counts[rep.classification];
        if (sink) sink({triple, rep.classification, rep.slack});
      }
    }
  }
  return summary;
}

}  // namespace fracbml::oracle
