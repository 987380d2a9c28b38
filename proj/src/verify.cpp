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

#include "fracbml/verify.hpp"

#include <algorithm>
#include <numeric>

namespace fracbml {
namespace {

void require_family(std::span<const CompactSet> sets,
                    const FractionalPartition& p) {
  require_valid(p);
  if (static_cast<int>(sets.size()) != p.m) {
    throw std::invalid_argument("partition is over m=" + std::to_string(p.m) +
                                " but " + std::to_string(sets.size()) +
                                " sets were given");
  }
}

[[noreturn]] void violated(const std::string& what) {
  throw InvariantViolation(what);
}

Rational weighted_sum(SumCache& sums, const FractionalPartition& p) {
  Rational rhs;
  for (const Term& t : p.terms) rhs += t.weight * measure(sums.get(t.set));
  return rhs;
}

}  // namespace

const CompactSet& SumCache::get(const IndexSet& s) {
  auto it = cache_.find(s);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(s, sum_family(sets_, s)).first->second;
}

Superadditivity check_superadditivity(std::span<const CompactSet> sets,
                                      const FractionalPartition& p) {
  require_family(sets, p);
  SumCache sums(sets);
  Superadditivity out;
  out.lhs = measure(sums.total());
  out.rhs = weighted_sum(sums, p);
  out.slack = out.lhs - out.rhs;
  if (out.slack.sign() < 0) {
    violated("negative slack " + out.slack.str() + " for " + p.str());
  }
  return out;
}

const char* equality_name(Equality e) {
  switch (e) {
    case Equality::kConditionA:
      return "ConditionA";
    case Equality::kConditionB:
      return "ConditionB";
    case Equality::kConditionC:
      return "ConditionC";
    case Equality::kStrict:
      return "Strict";
  }
  return "?";
}

EqualityReport classify_equality(std::span<const CompactSet> sets,
                                 const FractionalPartition& p) {
  require_family(sets, p);
  if (is_trivial(p)) {
    throw std::invalid_argument("trivial partition has no equality content");
  }
  EqualityReport rep;
  const Superadditivity sa = check_superadditivity(sets, p);
  rep.lhs = sa.lhs;
  rep.rhs = sa.rhs;
  rep.slack = sa.slack;

  SumCache sums(sets);
  for (const Term& t : canonical(p).terms) {
    const CompactSet& s = sums.get(t.set);
    rep.shapes.push_back({t.set, classify_shape(s), measure(s)});
  }

  // Multi-point sets first, keeping their relative order.
  for (int i = 1; i <= p.m; ++i) {
    if (!sets[i - 1].is_point()) rep.order.push_back(i);
  }
  rep.k = static_cast<int>(rep.order.size());
  for (int i = 1; i <= p.m; ++i) {
    if (sets[i - 1].is_point()) rep.order.push_back(i);
  }
  std::vector<int> new_label(p.m);
  for (int pos = 0; pos < p.m; ++pos) {
    new_label[rep.order[pos] - 1] = pos + 1;
    if (rep.order[pos] != pos + 1) rep.renumbered = true;
  }

  std::optional<Translation> translated;
  if (rep.k >= 1) {
    translated = translate_partition(relabel(p, new_label), rep.k);
    rep.gamma = translated->gamma;
  }

  if (rep.lhs.is_zero()) {
    rep.classification = Equality::kConditionA;
  } else if (translated->trivial()) {
    rep.classification = Equality::kConditionB;
  } else {
    for (const SumShape& sh : rep.shapes) {
      bool fine = sh.measure.sign() > 0 ? sh.shape == Shape::kInterval
                                        : sh.shape == Shape::kPoint;
      if (!fine) {
        rep.witness = sh.set;
        break;
      }
    }
    rep.classification =
        rep.witness ? Equality::kStrict : Equality::kConditionC;
  }

  const bool equal_by_structure = rep.classification != Equality::kStrict;
  if (equal_by_structure != rep.slack.is_zero()) {
    std::string msg = std::string("classification ") +
                      equality_name(rep.classification) +
                      " disagrees with slack " + rep.slack.str() + " for " +
                      p.str() + " and sets";
    for (const CompactSet& s : sets) msg += " [" + s.str() + "]";
    violated(msg);
  }
  return rep;
}

HullIdentity conv_identity(std::span<const CompactSet> sets,
                           const FractionalPartition& p) {
  require_family(sets, p);
  SumCache sums(sets);
  HullIdentity out;
  out.lhs_hull = measure(convex_hull(sums.total()));
  for (const Term& t : p.terms) {
    out.rhs_hull += t.weight * measure(convex_hull(sums.get(t.set)));
  }
  if (out.lhs_hull != out.rhs_hull) {
    violated("hull identity fails: " + out.lhs_hull.str() +
             " != " + out.rhs_hull.str() + " for " + p.str());
  }
  return out;
}

ConvexityPropagation convexity_propagation(std::span<const CompactSet> sets,
                                           const FractionalPartition& p) {
  require_family(sets, p);
  SumCache sums(sets);
  ConvexityPropagation out;
  out.hypothesis_met = std::all_of(p.terms.begin(), p.terms.end(),
                                   [&](const Term& t) {
                                     return sums.get(t.set).size() == 1;
                                   });
  if (!out.hypothesis_met) return out;

  out.total_convex = classify_shape(sums.total()) != Shape::kNonConvex;

  // Fold c(sum_{U ∪ S}) <= max(c(sum_U), c(sum_S)) along the members.
  IndexSet covered;
  Rational bound;
  for (const Term& t : canonical(p).terms) {
    const IndexSet next = covered | t.set;
    const Rational c_next = schneider_index(sums.get(next));
    const Rational c_member = schneider_index(sums.get(t.set));
    const Rational c_prev = covered.empty() ? Rational(0)
                                            : schneider_index(sums.get(covered));
    if (c_next > std::max(c_prev, c_member)) {
      violated("Schneider union bound fails while folding " + next.str());
    }
    bound = std::max(bound, c_member);
    covered = next;
  }
  if (covered != IndexSet::range(p.m) || !bound.is_zero() ||
      !schneider_index(sums.total()).is_zero()) {
    violated("Schneider fold does not certify convexity of the total sum");
  }
  if (!out.total_convex) {
    violated("member sums are convex but the total sum is not, for " +
             p.str());
  }
  return out;
}

ProofDecomposition proof_decomposition(std::span<const CompactSet> sets,
                                       const RationalReduction& r) {
  if (static_cast<int>(sets.size()) != r.m) {
    throw std::invalid_argument("reduction is over m=" + std::to_string(r.m) +
                                " but " + std::to_string(sets.size()) +
                                " sets were given");
  }
  for (const CompactSet& a : sets) {
    if (!a.min().is_zero()) {
      throw std::invalid_argument("translate to min 0 first");
    }
  }
  const ScheduleTable table(r);
  const int q = table.q();
  const int s = table.s();
  if (static_cast<std::int64_t>(q) * s > 20'000'000) {
    throw std::invalid_argument("reduction too large for a cell table");
  }

  std::vector<Rational> a(r.m);
  for (int i = 1; i <= r.m; ++i) a[i - 1] = sets[i - 1].max();
  auto sum_a = [&](const IndexSet& x) {
    Rational total;
    for (int i : x.members()) total += a[i - 1];
    return total;
  };

  SumCache sums(sets);
  ProofDecomposition out;
  out.q = q;
  out.blocks = r.blocks;
  const CompactSet& total_set = sums.total();
  out.lhs = measure(total_set);
  for (const IndexSet& b : r.blocks) out.block_measures.push_back(measure(sums.get(b)));
  out.cells.resize(static_cast<std::size_t>(q) * s);
  out.row_sums.assign(q, Rational(0));

  for (int k = 1; k <= q; ++k) {
    Rational tile_start;  // running sum over h_k^{-1}([1, j - 1])
    for (int j = 1; j <= s; ++j) {
      const IndexSet& block = r.blocks[j - 1];
      const IndexSet before = table.inverse_image(k, j - 1);
      const IndexSet upto = table.inverse_image(k, j);
      ProofCell& c = out.cells[static_cast<std::size_t>(k - 1) * s + (j - 1)];
      c.k = k;
      c.j = j;
      c.lo = sum_a(before & block);
      c.hi = sum_a(upto & block);
      if (c.lo > c.hi) violated("inverted window in cell");

      const Rational tile_lo = sum_a(before);
      const Rational tile_hi = sum_a(upto);
      if (tile_lo != tile_start) violated("row tiles are not contiguous");
      tile_start = tile_hi;
      if (tile_hi - tile_lo != c.hi - c.lo) {
        violated("tile and window lengths differ");
      }
      if (c.lo < c.hi) {
        c.mu_block = measure_within(sums.get(block), c.lo, c.hi);
        c.mu_total = measure_within(total_set, c.lo, c.hi);
        c.mu_total_tile = measure_within(total_set, tile_lo, tile_hi);
      }
      if (c.mu_block > c.mu_total || c.mu_block > c.mu_total_tile) {
        violated("block sum exceeds total sum inside a cell");
      }
      if (c.strict()) {
        out.strict_cells.emplace_back(k, j);
        out.all_cells_equal = false;
      }
      if (c.mu_block < c.mu_total_tile) out.all_tiles_equal = false;
      out.row_sums[k - 1] += c.mu_block;
    }
    if (tile_start != sum_a(IndexSet::range(r.m))) {
      violated("row tiles do not end at the sum of maxima");
    }
    if (out.row_sums[k - 1] > out.lhs) {
      violated("row " + std::to_string(k) + " exceeds the total measure");
    }
    out.total += out.row_sums[k - 1];
  }

  // For fixed j the windows over k tile (0, sum_{S_j} a].
  for (int j = 1; j <= s; ++j) {
    std::vector<std::pair<Rational, Rational>> windows;
    Rational mu_sum;
    for (int k = 1; k <= q; ++k) {
      const ProofCell& c = out.cell(k, j);
      if (c.lo < c.hi) windows.emplace_back(c.lo, c.hi);
      mu_sum += c.mu_block;
    }
    std::sort(windows.begin(), windows.end());
    Rational reach;
    for (const auto& [lo, hi] : windows) {
      if (lo != reach) violated("windows of block " + std::to_string(j) +
                                " overlap or leave a gap");
      reach = hi;
    }
    if (reach != sum_a(r.blocks[j - 1])) {
      violated("windows of block " + std::to_string(j) +
               " do not reach the block's sum of maxima");
    }
    if (mu_sum != out.block_measures[j - 1]) {
      violated("cells of block " + std::to_string(j) +
               " do not add up to its measure");
    }
  }
  const Rational block_total = std::accumulate(
      out.block_measures.begin(), out.block_measures.end(), Rational(0));
  if (out.total != block_total) violated("cell total differs from block total");
  if (out.total > out.lhs * q) violated("reduced inequality fails");
  return out;
}

Rational schneider_index(const CompactSet& a) {
  const Rational hull = a.max() - a.min();
  if (hull.is_zero()) return 0;
  return max_gap(a) / hull;
}

SchneiderUnion schneider_union_monotonicity(std::span<const CompactSet> sets,
                                            const IndexSet& s,
                                            const IndexSet& t) {
  if (s.empty() || t.empty()) throw std::invalid_argument("empty index set");
  SumCache sums(sets);
  SchneiderUnion out;
  out.c_s = schneider_index(sums.get(s));
  out.c_t = schneider_index(sums.get(t));
  out.c_union = schneider_index(sums.get(s | t));
  out.ok = out.c_union <= std::max(out.c_s, out.c_t);
  if (!out.ok) {
    violated("Schneider index of the union sum " + out.c_union.str() +
             " exceeds max(" + out.c_s.str() + ", " + out.c_t.str() + ")");
  }
  return out;
}

DeficitSeries volume_deficit(const CompactSet& a, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  DeficitSeries out{a, {}};
  const Rational hull = measure(convex_hull(a));
  CompactSet acc = a;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) acc = minkowski_sum(acc, a);
    const CompactSet average = affine(acc, Rational(1, k), 0);
    const Rational delta = hull - measure(average);
    if (delta.sign() < 0) violated("negative volume deficit");
    if (!out.values.empty() && delta > out.values.back().second) {
      violated("volume deficit increases at k=" + std::to_string(k) +
               " for " + a.str());
    }
    out.values.emplace_back(k, delta);
  }
  return out;
}

Rational supermod_conv(const CompactSet& a, const CompactSet& b,
                       const CompactSet& c) {
  const CompactSet ab = minkowski_sum(a, b);
  const Rational slack = measure(minkowski_sum(ab, c)) +
                         measure(convex_hull(a)) - measure(ab) -
                         measure(minkowski_sum(a, c));
  if (slack.sign() < 0) {
    violated("supermodular hull inequality fails for " + a.str() + ", " +
             b.str() + ", " + c.str());
  }
  return slack;
}

V3Decomposition v3_decompose(std::span<const CompactSet> sets,
                             const FractionalPartition& p) {
  require_family(sets, p);
  if (p.m != 3) throw std::invalid_argument("v3_decompose needs m = 3");
  if (is_trivial(p)) {
    throw std::invalid_argument("v3_decompose needs a non-trivial partition");
  }
  V3Decomposition out;
  // Move an index with the smallest singleton weight to position 3.
  int low = 3;
  for (int i = 2; i >= 1; --i) {
    if (p.weight_of({i}) < p.weight_of({low})) low = i;
  }
  std::array<int, 3> new_label{1, 2, 3};
  std::swap(new_label[low - 1], new_label[2]);
  for (int i = 1; i <= 3; ++i) out.order[new_label[i - 1] - 1] = i;
  const FractionalPartition q = relabel(p, new_label);
  std::vector<CompactSet> permuted;
  for (int pos = 0; pos < 3; ++pos) permuted.push_back(sets[out.order[pos] - 1]);

  const Rational b12 = q.weight_of({1, 2});
  const Rational b1 = q.weight_of({1});
  const Rational b2 = q.weight_of({2});
  const Rational b3 = q.weight_of({3});
  out.alpha = {b12 * 2, 0, b2 - b3, b1 - b3, b3};

  SumCache sums(permuted);
  auto vol = [&](std::initializer_list<int> s) { return measure(sums.get(s)); };
  out.volumes = {(vol({1, 2}) + vol({1, 3}) + vol({2, 3})) / 2,
                 vol({1, 2}) + vol({3}), vol({1, 3}) + vol({2}),
                 vol({2, 3}) + vol({1}), vol({1}) + vol({2}) + vol({3})};
  out.total = vol({1, 2, 3});

  SumCache original(sets);
  out.rhs = weighted_sum(original, p);

  Rational alpha_sum;
  Rational combo;
  out.equality_equiv = true;
  for (int i = 0; i < 5; ++i) {
    if (out.alpha[i].sign() < 0) violated("negative coefficient alpha");
    if (out.volumes[i] > out.total) {
      violated("V" + std::to_string(i + 1) + " exceeds |A1+A2+A3|");
    }
    alpha_sum += out.alpha[i];
    combo += out.alpha[i] * out.volumes[i];
    if (out.alpha[i].sign() > 0 && out.volumes[i] != out.total) {
      out.equality_equiv = false;
    }
  }
  if (alpha_sum != 1) violated("coefficients alpha do not sum to 1");
  if (combo != out.rhs) {
    violated("sum alpha_i V_i = " + combo.str() + " differs from rhs " +
             out.rhs.str());
  }
  if (out.equality_equiv != (out.total == out.rhs)) {
    violated("volume-wise equality test disagrees with slack");
  }
  return out;
}

}  // namespace fracbml
