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

// Brute-force and randomized machinery that checks the exact algorithms
// from the outside: grid counting, grid convolution, a direct search for
// the Schneider index, seeded instance generation and an exhaustive scan of
// small three-set instances.

#ifndef FRACBML_ORACLE_HPP_
#define FRACBML_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fracbml/interval_set.hpp"
#include "fracbml/partition.hpp"
#include "fracbml/rational.hpp"
#include "fracbml/verify.hpp"

namespace fracbml::oracle {

struct GridParams {
  Rational resolution;  // cell width h > 0
  Rational bound;       // sets must lie inside [-bound, bound]
};

struct GridMeasure {
  Rational approx;
  Rational error_bound;  // 2 * #components * h
};

// Counts the cells [jh, (j+1)h] that meet A.
GridMeasure grid_measure(const CompactSet& a, const GridParams& g);

struct GridMinkowskiReport {
  std::int64_t points_checked = 0;
  std::int64_t mismatches = 0;
  // First few offending grid points, as rationals.
  std::vector<Rational> examples;
};

// Compares membership in the exact A + B with a grid convolution: x is an
// oracle member when a + b is within h of x for grid points a in A, b in B.
// Requires every endpoint of A and B to be a multiple of h.
GridMinkowskiReport grid_minkowski(const CompactSet& a, const CompactSet& b,
                                   const GridParams& g);

// Smallest lambda among {0} ∪ {gap / |conv A|} for which
// A + lambda conv(A) is a single interval, found by forming the sums.
Rational schneider_search(const CompactSet& a);

struct InstanceParams {
  std::uint64_t seed = 0;
  int m = 3;
  int max_components = 3;
  std::int64_t coordinate_denominator = 8;
  std::int64_t coordinate_range = 16;
};

struct Instance {
  std::vector<CompactSet> sets;
  FractionalPartition partition;
};

// Deterministic in the seed. The partition is either a vertex of the
// partition polytope or a rational mixture of two or three non-trivial
// vertices. Requires 2 <= m <= kMaxPolytopeDim.
Instance random_instance(const InstanceParams& p);

// A single random set with the same distribution random_instance uses.
CompactSet random_set(std::uint64_t seed, int max_components,
                      std::int64_t denominator, std::int64_t range);

struct ScanParams {
  std::int64_t denominator = 2;  // endpoints are j / denominator
  std::int64_t range = 4;        // j in [0, range]
  int max_components = 2;
  FractionalPartition partition = leave_one_out(3);
};

struct ScanRecord {
  std::vector<CompactSet> sets;
  Equality classification;
  Rational slack;
};

struct ScanSummary {
  std::int64_t instances = 0;
  std::map<Equality, std::int64_t> counts;
};

// All compact sets that are unions of at most max_components separated
// intervals with endpoints j / denominator, 0 <= j <= range.
std::vector<CompactSet> grid_sets(std::int64_t denominator, std::int64_t range,
                                  int max_components);

// Every triple of grid sets under the given partition (m = 3). Runs
// classify_equality on each, which asserts the equality biconditional.
// `sink` (optional) receives each record.
ScanSummary brute_equality_scan(
    const ScanParams& p,
    const std::function<void(const ScanRecord&)>& sink = {});

}  // namespace fracbml::oracle

#endif  // FRACBML_ORACLE_HPP_
