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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. All comparisons are exact; the only
// tolerances are wall-clock budgets and the grid oracle's stated bounds.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracbml/interval_set.hpp"
#include "fracbml/oracle.hpp"
#include "fracbml/partition.hpp"
#include "fracbml/verify.hpp"

namespace {

using namespace fracbml;
using Clock = std::chrono::steady_clock;

constexpr int kFuzzInstances = 10'000;
constexpr int kSmallCampaign = 1'000;
constexpr int kMixtures = 500;
constexpr int kGridPairs = 200;
constexpr int kDeficitKMax = 6;
constexpr double kFuzzBudgetSeconds = 60.0;
constexpr double kEqualityBudgetSeconds = 600.0;
constexpr double kOracleBudgetSeconds = 60.0;
constexpr std::uint64_t kSeedBase = 0x5eed0000;
const Rational kGridStep(1, 128);

struct Result {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const char* name, const Result& r, int& failures) {
  std::printf("criterion %2d  %s  %s: %s\n", id, r.pass ? "PASS" : "FAIL", name,
              r.detail.c_str());
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

// m cycles through 3, 4, 5; at most 3 components; endpoints j/8, j <= 16.
std::vector<oracle::Instance> fuzz_instances() {
  std::vector<oracle::Instance> out;
  out.reserve(kFuzzInstances);
  for (int i = 0; i < kFuzzInstances; ++i) {
    out.push_back(oracle::random_instance({kSeedBase + i, 3 + i % 3, 3, 8, 16}));
  }
  return out;
}

std::vector<CompactSet> shifted(const std::vector<CompactSet>& sets) {
  std::vector<CompactSet> out;
  for (const auto& a : sets) out.push_back(to_origin(a));
  return out;
}

template <typename F>
bool no_throw(F&& f, std::string& why) {
  try {
    f();
    return true;
  } catch (const std::exception& e) {
    why = e.what();
    return false;
  }
}

Result superadditivity(const std::vector<oracle::Instance>& inst) {
  const auto t0 = Clock::now();
  int violations = 0;
  std::string why;
  for (const auto& x : inst) {
    bool ok = no_throw([&] {
      if (check_superadditivity(x.sets, x.partition).slack.sign() < 0) {
        throw std::logic_error("negative slack");
      }
    }, why);
    if (!ok) ++violations;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << inst.size() << " instances, " << violations << " violations, "
    << secs << " s";
  if (violations) d << " (" << why << ")";
  return {violations == 0 && secs <= kFuzzBudgetSeconds, d.str()};
}

Result equality_biconditional(const std::vector<oracle::Instance>& inst) {
  const auto t0 = Clock::now();
  std::int64_t checked = 0;
  std::int64_t discrepancies = 0;
  std::int64_t trivial = 0;
  std::string why;
  auto check = [&](std::span<const CompactSet> sets,
                   const FractionalPartition& p) {
    ++checked;
    bool ok = no_throw([&] {
      const EqualityReport r = classify_equality(sets, p);
      const Rational slack = check_superadditivity(sets, p).slack;
      if ((r.classification != Equality::kStrict) != slack.is_zero()) {
        throw std::logic_error("structure and slack disagree");
      }
    }, why);
    if (!ok) ++discrepancies;
  };
  for (const auto& x : inst) {
    if (is_trivial(x.partition)) {
      ++trivial;
      continue;
    }
    check(x.sets, x.partition);
  }
  std::int64_t scanned = 0;
  const auto grid = oracle::grid_sets(2, 4, 2);
  std::vector<FractionalPartition> scan_partitions;
  for (const auto& v : enumerate_vertices(3)) {
    if (!is_trivial(v)) scan_partitions.push_back(v);
  }
  std::vector<CompactSet> triple(3, CompactSet::point(0));
  for (const auto& p : scan_partitions) {
    for (const auto& a : grid) {
      for (const auto& b : grid) {
        for (const auto& c : grid) {
          triple = {a, b, c};
          check(triple, p);
          ++scanned;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << checked << " instances (" << scanned << " from the grid scan over "
    << scan_partitions.size() << " partitions, " << trivial
    << " trivial-partition fuzz draws skipped), " << discrepancies
    << " discrepancies, " << secs << " s";
  if (discrepancies) d << " (" << why << ")";
  return {discrepancies == 0 && secs <= kEqualityBudgetSeconds, d.str()};
}

Result fixtures() {
  const auto iv = [](int lo, int hi) { return CompactSet::interval(lo, hi); };
  const auto pt = [](int x) { return CompactSet::point(x); };
  const auto ten = CompactSet::normalize({{0, 0}, {10, 10}});
  const auto loo = leave_one_out(3);
  const FractionalPartition pair_single{3, {{{1, 2}, 1}, {{3}, 1}}};
  std::vector<std::string> bad;

  std::vector<CompactSet> units{iv(0, 1), iv(0, 1), iv(0, 1)};
  auto r = classify_equality(units, loo);
  if (r.lhs != 3 || r.rhs != 3 || !r.slack.is_zero()) bad.push_back("unit");

  std::vector<CompactSet> with_ten{ten, iv(0, 1), iv(0, 1)};
  r = classify_equality(with_ten, loo);
  if (r.slack != 1 || r.classification != Equality::kStrict ||
      !r.witness || *r.witness != IndexSet{1, 2}) {
    bad.push_back("{0,10}");
  }

  std::vector<CompactSet> cond_b{iv(0, 1), pt(0), pt(0)};
  r = classify_equality(cond_b, pair_single);
  if (r.classification != Equality::kConditionB || !r.gamma || *r.gamma != 1 ||
      !r.slack.is_zero()) {
    bad.push_back("ConditionB");
  }

  // The pair {1,2} covers both multi-point sets, so the translated partition
  // is trivial and the classifier reports ConditionB.
  std::vector<CompactSet> point_sum{iv(0, 1), iv(0, 1), pt(5)};
  r = classify_equality(point_sum, pair_single);
  if (r.lhs != 2 || r.rhs != 2 || r.classification != Equality::kConditionB) {
    bad.push_back("point-sum");
  }

  std::string detail = "4 fixtures, point-sum fixture classified " +
                       std::string(equality_name(r.classification));
  for (const auto& b : bad) detail += ", " + b + " wrong";
  return {bad.empty(), detail};
}

Result hull_identity(const std::vector<oracle::Instance>& inst) {
  int failures = 0;
  std::string why;
  for (const auto& x : inst) {
    bool ok = no_throw([&] {
      const HullIdentity h = conv_identity(x.sets, x.partition);
      // Recomputed from the hull lengths of the summands.
      Rational direct;
      for (const auto& a : x.sets) direct += a.max() - a.min();
      if (h.lhs_hull != direct || h.rhs_hull != direct) {
        throw std::logic_error("hull identity mismatch");
      }
    }, why);
    if (!ok) ++failures;
  }
  std::ostringstream d;
  d << inst.size() << " instances, " << failures << " failures";
  if (failures) d << " (" << why << ")";
  return {failures == 0, d.str()};
}

Result proof_machinery(const std::vector<oracle::Instance>& inst) {
  int tiling = 0;
  int totals = 0;
  int cell_mismatch = 0;
  int tile_mismatch = 0;
  int errors = 0;
  std::string why;
  std::string first_mismatch;
  for (std::size_t n = 0; n < inst.size(); ++n) {
    const auto& x = inst[n];
    bool ok = no_throw([&] {
      const auto sets = shifted(x.sets);
      const RationalReduction red = reduce_to_rational(x.partition);
      const ProofDecomposition d = proof_decomposition(sets, red);
      const Rational slack = check_superadditivity(sets, x.partition).slack;

      Rational block_total;
      for (std::size_t j = 1; j <= red.blocks.size(); ++j) {
        const IndexSet& b = red.blocks[j - 1];
        Rational reach;
        Rational a_sum;
        for (int i : b.members()) a_sum += sets[i - 1].max();
        std::vector<std::pair<Rational, Rational>> windows;
        for (int k = 1; k <= d.q; ++k) {
          const ProofCell& c = d.cell(k, static_cast<int>(j));
          if (c.lo < c.hi) windows.emplace_back(c.lo, c.hi);
        }
        std::sort(windows.begin(), windows.end());
        bool tiles = true;
        for (const auto& [lo, hi] : windows) {
          tiles = tiles && lo == reach;
          reach = hi;
        }
        if (!tiles || reach != a_sum) ++tiling;
        block_total += measure(sum_family(sets, b));
      }
      Rational cell_total;
      for (const ProofCell& c : d.cells) cell_total += c.mu_block;
      if (cell_total != block_total) ++totals;
      if (d.all_cells_equal != slack.is_zero()) {
        ++cell_mismatch;
        if (first_mismatch.empty()) {
          first_mismatch = "seed " + std::to_string(kSeedBase + n) + " slack " +
                           slack.str() + " " + x.partition.str();
        }
      }
      if (d.all_tiles_equal != slack.is_zero()) ++tile_mismatch;
    }, why);
    if (!ok) ++errors;
  }
  std::ostringstream d;
  d << inst.size() << " instances: " << tiling << " tiling failures, "
    << totals << " total mismatches, " << cell_mismatch
    << " cell-equality mismatches (unshifted windows), " << tile_mismatch
    << " with row tiles, " << errors << " errors";
  if (!first_mismatch.empty()) d << "; first: " << first_mismatch;
  if (errors) d << " (" << why << ")";
  return {tiling == 0 && totals == 0 && cell_mismatch == 0 && errors == 0,
          d.str()};
}

Result vertices_and_mixtures(const std::vector<oracle::Instance>& inst) {
  std::vector<std::string> bad;
  if (enumerate_vertices(2).size() != 2) bad.push_back("m=2 count");
  if (enumerate_vertices(3).size() != 6) bad.push_back("m=3 count");

  std::mt19937_64 rng(kSeedBase);
  int recon_fail = 0;
  for (int n = 0; n < kMixtures; ++n) {
    const int m = 2 + static_cast<int>(rng() % 4);
    std::vector<FractionalPartition> vs;
    for (const auto& v : enumerate_vertices(m)) {
      if (!is_trivial(v)) vs.push_back(v);
    }
    const int parts = 1 + static_cast<int>(rng() % 3);
    WeightMap mix;
    std::int64_t total = 0;
    std::vector<std::pair<std::size_t, std::int64_t>> picks;
    for (int c = 0; c < parts; ++c) {
      picks.emplace_back(rng() % vs.size(), 1 + static_cast<std::int64_t>(rng() % 5));
      total += picks.back().second;
    }
    for (const auto& [v, w] : picks) {
      for (const Term& t : vs[v].terms) mix[t.set] += Rational(w, total) * t.weight;
    }
    const FractionalPartition p = from_weight_map(m, mix);
    std::string why;
    bool ok = no_throw([&] {
      const VertexDecomposition d = decompose_to_vertices(p);
      WeightMap back;
      Rational alpha_sum;
      for (const auto& part : d.parts) {
        if (part.alpha.sign() <= 0 || !vertex_check(part.vertex)) {
          throw std::logic_error("bad part");
        }
        alpha_sum += part.alpha;
        for (const Term& t : part.vertex.terms) back[t.set] += part.alpha * t.weight;
      }
      if (alpha_sum != 1 || back != weight_map(p)) {
        throw std::logic_error("reconstruction");
      }
    }, why);
    if (!ok) ++recon_fail;
  }
  if (recon_fail) bad.push_back(std::to_string(recon_fail) + " reconstructions");

  int eq_mismatch = 0;
  int checked = 0;
  for (const auto& x : inst) {
    if (x.partition.m > 4) continue;
    ++checked;
    const bool mixture_equal =
        check_superadditivity(x.sets, x.partition).slack.is_zero();
    bool all_vertices_equal = true;
    for (const auto& part : decompose_to_vertices(x.partition).parts) {
      if (!check_superadditivity(x.sets, part.vertex).slack.is_zero()) {
        all_vertices_equal = false;
      }
    }
    if (mixture_equal != all_vertices_equal) ++eq_mismatch;
  }
  if (eq_mismatch) bad.push_back(std::to_string(eq_mismatch) + " equality mismatches");

  std::ostringstream d;
  d << "vertex counts 2/6, " << kMixtures << " mixtures, " << checked
    << " m<=4 instances";
  for (const auto& b : bad) d << ", " << b;
  return {bad.empty(), d.str()};
}

Result schneider(const std::vector<oracle::Instance>& inst) {
  std::vector<std::string> bad;
  int index_mismatch = 0;
  int convex_mismatch = 0;
  for (int n = 0; n < kSmallCampaign; ++n) {
    const CompactSet a = oracle::random_set(kSeedBase + n, 4, 8, 16);
    const Rational c = schneider_index(a);
    if (c != oracle::schneider_search(a)) ++index_mismatch;
    if (c.is_zero() != (classify_shape(a) != Shape::kNonConvex)) ++convex_mismatch;
  }
  if (index_mismatch) bad.push_back(std::to_string(index_mismatch) + " index mismatches");
  if (convex_mismatch) bad.push_back(std::to_string(convex_mismatch) + " convexity mismatches");

  std::mt19937_64 rng(kSeedBase + 1);
  int union_fail = 0;
  for (int n = 0; n < kSmallCampaign; ++n) {
    const auto& x = inst[n];
    const auto m = static_cast<std::uint64_t>(x.partition.m);
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const IndexSet s = IndexSet::from_bits(1 + rng() % full);
    const IndexSet t = IndexSet::from_bits(1 + rng() % full);
    std::string why;
    bool ok = no_throw([&] {
      const SchneiderUnion u = schneider_union_monotonicity(x.sets, s, t);
      const Rational c_union = schneider_index(sum_family(x.sets, s | t));
      if (!u.ok || c_union > std::max(schneider_index(sum_family(x.sets, s)),
                                      schneider_index(sum_family(x.sets, t)))) {
        throw std::logic_error("union monotonicity");
      }
    }, why);
    if (!ok) ++union_fail;
  }
  if (union_fail) bad.push_back(std::to_string(union_fail) + " union failures");

  int hypothesis = 0;
  int propagation_fail = 0;
  for (const auto& x : inst) {
    std::string why;
    bool ok = no_throw([&] {
      const ConvexityPropagation cp = convexity_propagation(x.sets, x.partition);
      if (!cp.hypothesis_met) return;
      ++hypothesis;
      if (!cp.total_convex ||
          sum_family(x.sets, IndexSet::range(x.partition.m)).size() != 1) {
        throw std::logic_error("propagation");
      }
    }, why);
    if (!ok) ++propagation_fail;
  }
  if (propagation_fail) bad.push_back(std::to_string(propagation_fail) + " propagation failures");

  std::ostringstream d;
  d << kSmallCampaign << " sets, " << kSmallCampaign << " (sets,S,T), "
    << hypothesis << " hypothesis-satisfying instances";
  for (const auto& b : bad) d << ", " << b;
  return {bad.empty(), d.str()};
}

Result three_set_decomposition() {
  int checked = 0;
  int failures = 0;
  std::string why;
  for (std::uint64_t seed = kSeedBase; checked < kSmallCampaign; ++seed) {
    const auto x = oracle::random_instance({seed, 3, 3, 8, 16});
    if (is_trivial(x.partition)) continue;
    ++checked;
    bool ok = no_throw([&] {
      const V3Decomposition v = v3_decompose(x.sets, x.partition);
      const Superadditivity s = check_superadditivity(x.sets, x.partition);
      Rational alpha_sum;
      Rational combo;
      for (int i = 0; i < 5; ++i) {
        alpha_sum += v.alpha[i];
        combo += v.alpha[i] * v.volumes[i];
      }
      if (alpha_sum != 1 || combo != s.rhs || v.total != s.lhs ||
          v.equality_equiv != s.slack.is_zero()) {
        throw std::logic_error("decomposition mismatch");
      }
    }, why);
    if (!ok) ++failures;
  }
  std::ostringstream d;
  d << checked << " m=3 instances, " << failures << " failures";
  if (failures) d << " (" << why << ")";
  return {failures == 0, d.str()};
}

Result diagnostics() {
  std::vector<std::string> bad;
  const auto fixture =
      volume_deficit(CompactSet::normalize({{0, 1}, {2, 2}}), 3);
  if (fixture.values.size() != 3 || fixture.values[0].second != 1 ||
      fixture.values[1].second != Rational(1, 2) ||
      fixture.values[2].second != Rational(1, 3)) {
    bad.push_back("deficit fixture");
  }
  int deficit_fail = 0;
  for (int n = 0; n < kSmallCampaign; ++n) {
    const CompactSet a = oracle::random_set(kSeedBase + n, 3, 8, 16);
    std::string why;
    bool ok = no_throw([&] {
      const auto series = volume_deficit(a, kDeficitKMax);
      for (std::size_t k = 1; k < series.values.size(); ++k) {
        if (series.values[k].second > series.values[k - 1].second) {
          throw std::logic_error("increase");
        }
      }
    }, why);
    if (!ok) ++deficit_fail;
  }
  if (deficit_fail) bad.push_back(std::to_string(deficit_fail) + " deficit failures");
  int supermod_fail = 0;
  for (int n = 0; n < kFuzzInstances; ++n) {
    const std::uint64_t s = kSeedBase + 3 * static_cast<std::uint64_t>(n);
    const CompactSet a = oracle::random_set(s, 3, 8, 16);
    const CompactSet b = oracle::random_set(s + 1, 3, 8, 16);
    const CompactSet c = oracle::random_set(s + 2, 3, 8, 16);
    std::string why;
    bool ok = no_throw([&] {
      if (supermod_conv(a, b, c).sign() < 0) throw std::logic_error("negative");
    }, why);
    if (!ok) ++supermod_fail;
  }
  if (supermod_fail) bad.push_back(std::to_string(supermod_fail) + " supermodularity failures");
  std::ostringstream d;
  d << "deficit fixture, " << kSmallCampaign << " deficit series, "
    << kFuzzInstances << " triples";
  for (const auto& b : bad) d << ", " << b;
  return {bad.empty(), d.str()};
}

Result oracle_agreement() {
  const auto t0 = Clock::now();
  const oracle::GridParams g{kGridStep, Rational(2)};
  int measure_fail = 0;
  std::int64_t mismatches = 0;
  std::int64_t points = 0;
  for (int n = 0; n < kGridPairs; ++n) {
    const std::uint64_t s = kSeedBase + 2 * static_cast<std::uint64_t>(n);
    const CompactSet a = oracle::random_set(s, 3, 8, 16);
    const CompactSet b = oracle::random_set(s + 1, 3, 8, 16);
    for (const auto* x : {&a, &b}) {
      const auto gm = oracle::grid_measure(*x, g);
      if (abs(gm.approx - measure(*x)) > gm.error_bound) ++measure_fail;
    }
    const auto rep = oracle::grid_minkowski(a, b, g);
    mismatches += rep.mismatches;
    points += rep.points_checked;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << kGridPairs << " pairs at h=" << kGridStep.str() << ", " << points
    << " grid points, " << mismatches << " mismatches, " << measure_fail
    << " measures outside bound, " << secs << " s";
  return {measure_fail == 0 && mismatches == 0 && secs <= kOracleBudgetSeconds,
          d.str()};
}

}  // namespace

int main() {
  int failures = 0;
  const auto inst = fuzz_instances();
  report(1, "superadditivity fuzz", superadditivity(inst), failures);
  report(2, "equality biconditional", equality_biconditional(inst), failures);
  report(3, "fixture exactness", fixtures(), failures);
  report(4, "hull identity", hull_identity(inst), failures);
  report(5, "proof machinery", proof_machinery(inst), failures);
  report(6, "vertices and mixtures", vertices_and_mixtures(inst), failures);
  report(7, "Schneider index", schneider(inst), failures);
  report(8, "three-set decomposition", three_set_decomposition(), failures);
  report(9, "deficit and supermodularity", diagnostics(), failures);
  report(10, "grid oracle agreement", oracle_agreement(), failures);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
