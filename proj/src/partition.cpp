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

#include "fracbml/partition.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace fracbml {

Rational FractionalPartition::weight_of(const IndexSet& s) const {
  for (const Term& t : terms) {
    if (t.set == s) return t.weight;
  }
  return 0;
}

std::string FractionalPartition::str() const {
  std::string out = "m=" + std::to_string(m) + " {";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += ", ";
    out += terms[i].set.str() + ":" + terms[i].weight.str();
  }
  return out + "}";
}

FractionalPartition canonical(FractionalPartition p) {
  std::sort(p.terms.begin(), p.terms.end(),
            [](const Term& a, const Term& b) { return LexLess{}(a.set, b.set); });
  return p;
}

WeightMap weight_map(const FractionalPartition& p) {
  WeightMap w;
  for (const Term& t : p.terms) w[t.set] += t.weight;
  return w;
}

FractionalPartition from_weight_map(int m, const WeightMap& w) {
  FractionalPartition p{m, {}};
  for (const auto& [set, weight] : w) {
    if (!weight.is_zero()) p.terms.push_back({set, weight});
  }
  return p;
}

std::vector<Violation> validate(const FractionalPartition& p) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  if (p.m < 1 || p.m > IndexSet::kMaxIndex) {
    out.push_back({Kind::kBadGroundSet, 0, {}, Rational(p.m),
                   "ground set size " + std::to_string(p.m) +
                       " outside [1, 64]"});
    return out;
  }
  const IndexSet full = IndexSet::range(p.m);
  for (std::size_t a = 0; a < p.terms.size(); ++a) {
    const Term& t = p.terms[a];
    if (t.set.empty()) {
      out.push_back({Kind::kEmptySubset, 0, t.set, t.weight, "empty subset"});
    } else if (!t.set.subset_of(full)) {
      out.push_back({Kind::kIndexOutOfRange, t.set.max_index(), t.set,
                     t.weight,
                     "subset " + t.set.str() + " is not inside [" +
                         std::to_string(p.m) + "]"});
    }
    if (t.weight.sign() <= 0) {
      out.push_back({Kind::kNonPositiveWeight, 0, t.set, t.weight,
                     "weight of " + t.set.str() + " is " + t.weight.str() +
                         ", must be positive"});
    } else if (t.weight > 1) {
      out.push_back({Kind::kWeightAboveOne, 0, t.set, t.weight,
                     "weight of " + t.set.str() + " exceeds 1"});
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (p.terms[b].set == t.set) {
        out.push_back({Kind::kDuplicateSubset, 0, t.set, t.weight,
                       "subset " + t.set.str() + " listed twice"});
      }
    }
  }
  for (int i = 1; i <= p.m; ++i) {
    Rational sum;
    for (const Term& t : p.terms) {
      if (t.set.contains(i)) sum += t.weight;
    }
    if (sum != 1) {
      out.push_back({Kind::kIndexSum, i, {}, sum,
                     "weights covering index " + std::to_string(i) +
                         " sum to " + sum.str()});
    }
  }
  if (p.terms.size() > 1) {
    for (const Term& t : p.terms) {
      if (t.set == full) {
        out.push_back({Kind::kFullSetInNonTrivial, 0, t.set, t.weight,
                       "non-trivial partition contains the full set"});
      }
    }
  }
  return out;
}

void require_valid(const FractionalPartition& p) {
  auto violations = validate(p);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid fractional partition: " +
                                violations.front().message);
  }
}

bool is_trivial(const FractionalPartition& p) {
  return p.terms.size() == 1 && p.terms.front().set == IndexSet::range(p.m) &&
         p.terms.front().weight == 1;
}

FractionalPartition trivial_partition(int m) {
  return {m, {{IndexSet::range(m), 1}}};
}

FractionalPartition leave_one_out(int m) {
  if (m < 3) throw std::invalid_argument("leave-one-out needs m >= 3");
  FractionalPartition p{m, {}};
  const IndexSet full = IndexSet::range(m);
  for (int i = 1; i <= m; ++i) {
    IndexSet s = full;
    s.erase(i);
    p.terms.push_back({s, Rational(1, m - 1)});
  }
  return canonical(std::move(p));
}

FractionalPartition relabel(const FractionalPartition& p,
                            std::span<const int> new_label) {
  if (static_cast<int>(new_label.size()) != p.m) {
    throw std::invalid_argument("relabel: permutation size mismatch");
  }
  FractionalPartition out{p.m, {}};
  for (const Term& t : p.terms) {
    IndexSet s;
    for (int i : t.set.members()) s.insert(new_label[i - 1]);
    out.terms.push_back({s, t.weight});
  }
  return canonical(std::move(out));
}

RationalReduction reduce_to_rational(const FractionalPartition& p) {
  require_valid(p);
  std::int64_t q = 1;
  for (const Term& t : p.terms) {
    std::int64_t g = std::gcd(q, t.weight.den());
    __int128 l = static_cast<__int128>(q / g) * t.weight.den();
    if (l > (std::int64_t{1} << 40)) {
      throw RationalOverflow("common denominator too large");
    }
    q = static_cast<std::int64_t>(l);
  }
  RationalReduction r{p.m, q, {}};
  for (const Term& t : canonical(p).terms) {
    std::int64_t n = (t.weight * q).num();
    for (std::int64_t c = 0; c < n; ++c) r.blocks.push_back(t.set);
  }
  return r;
}

ScheduleTable::ScheduleTable(const RationalReduction& r)
    : m_(r.m),
      q_(static_cast<int>(r.q)),
      s_(static_cast<int>(r.blocks.size())),
      rows_(static_cast<std::size_t>(r.m) * r.q, 0) {
  std::vector<int> filled(m_, 0);
  for (int j = 1; j <= s_; ++j) {
    for (int i : r.blocks[j - 1].members()) {
      if (i > m_ || filled[i - 1] == q_) {
        throw std::invalid_argument("reduction: index " + std::to_string(i) +
                                    " covered more than q times");
      }
      rows_[(i - 1) * q_ + filled[i - 1]++] = j;
    }
  }
  for (int i = 1; i <= m_; ++i) {
    if (filled[i - 1] != q_) {
      throw std::invalid_argument("reduction: index " + std::to_string(i) +
                                  " covered fewer than q times");
    }
  }
}

IndexSet ScheduleTable::inverse_image(int k, int j) const {
  IndexSet out;
  for (int i = 1; i <= m_; ++i) {
    if (h(k, i) <= j) out.insert(i);
  }
  return out;
}

Translation translate_partition(const FractionalPartition& p, int k) {
  require_valid(p);
  if (is_trivial(p)) {
    throw std::invalid_argument("translate_partition: trivial partition");
  }
  if (k < 1 || k > p.m) {
    throw std::out_of_range("translate_partition: k=" + std::to_string(k) +
                            " outside [1, " + std::to_string(p.m) + "]");
  }
  const IndexSet kept = IndexSet::range(k);
  Translation out;
  for (const Term& t : p.terms) {
    if ((t.set & kept) == kept) out.gamma += t.weight;
  }
  if (out.gamma == 1) return out;
  const Rational scale = Rational(1) / (Rational(1) - out.gamma);
  WeightMap w;
  for (const Term& t : p.terms) {
    IndexSet trace = t.set & kept;
    if (trace.empty() || trace == kept) continue;
    w[trace] += t.weight * scale;
  }
  out.partition = from_weight_map(k, w);
  return out;
}

// ---- polytope ----

namespace {

// Result of the covering equations restricted to a support K.
struct SupportSolution {
  bool independent = false;  // rank == |K|
  bool consistent = false;
  std::vector<Rational> x;   // valid when independent && consistent
};

SupportSolution solve_on_support(int m, std::span<const IndexSet> support) {
  const int n = static_cast<int>(support.size());
  // m x (n + 1) augmented matrix, right-hand side all ones.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < n; ++c) a[i][c] = support[c].contains(i + 1) ? 1 : 0;
    a[i][n] = 1;
  }
  std::vector<int> pivot_row(n, -1);
  int row = 0;
  for (int c = 0; c < n && row < m; ++c) {
    int piv = -1;
    for (int r = row; r < m; ++r) {
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    const Rational inv = Rational(1) / a[row][c];
    for (int cc = c; cc <= n; ++cc) a[row][cc] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const Rational f = a[r][c];
      for (int cc = c; cc <= n; ++cc) a[r][cc] -= f * a[row][cc];
    }
    pivot_row[c] = row++;
  }
  SupportSolution out;
  out.independent = (row == n);
  out.consistent = true;
  for (int r = row; r < m; ++r) {
    if (!a[r][n].is_zero()) out.consistent = false;
  }
  if (out.independent && out.consistent) {
    out.x.resize(n);
    for (int c = 0; c < n; ++c) out.x[c] = a[pivot_row[c]][n];
  }
  return out;
}

std::vector<IndexSet> sorted_support(const FractionalPartition& p) {
  std::vector<IndexSet> s;
  s.reserve(p.terms.size());
  for (const Term& t : p.terms) s.push_back(t.set);
  std::sort(s.begin(), s.end(), LexLess{});
  return s;
}

void collect_vertices(int m, const std::vector<IndexSet>& subsets,
                      std::size_t next, std::vector<IndexSet>& support,
                      std::vector<FractionalPartition>& out) {
  for (std::size_t c = next; c < subsets.size(); ++c) {
    support.push_back(subsets[c]);
    SupportSolution sol = solve_on_support(m, support);
    // A dependent column set stays dependent under any extension.
    if (sol.independent) {
      if (sol.consistent &&
          std::all_of(sol.x.begin(), sol.x.end(),
                      [](const Rational& v) { return v.sign() > 0; })) {
        FractionalPartition v{m, {}};
        for (std::size_t k = 0; k < support.size(); ++k) {
          v.terms.push_back({support[k], sol.x[k]});
        }
        out.push_back(canonical(std::move(v)));
      }
      if (static_cast<int>(support.size()) < m) {
        collect_vertices(m, subsets, c + 1, support, out);
      }
    }
    support.pop_back();
  }
}

std::vector<FractionalPartition> compute_vertices(int m) {
  std::vector<IndexSet> subsets;
  for (std::uint64_t b = 1; b < (std::uint64_t{1} << m); ++b) {
    subsets.push_back(IndexSet::from_bits(b));
  }
  std::sort(subsets.begin(), subsets.end(), LexLess{});
  std::vector<FractionalPartition> out;
  std::vector<IndexSet> support;
  collect_vertices(m, subsets, 0, support, out);
  std::sort(out.begin(), out.end(), support_less);
  return out;
}

}  // namespace

bool support_less(const FractionalPartition& a, const FractionalPartition& b) {
  auto sa = sorted_support(a);
  auto sb = sorted_support(b);
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(),
                                      sb.end(), LexLess{});
}

const std::vector<FractionalPartition>& enumerate_vertices(int m) {
  if (m < 2 || m > kMaxPolytopeDim) {
    throw std::out_of_range("vertex enumeration supports 2 <= m <= " +
                            std::to_string(kMaxPolytopeDim) + ", got " +
                            std::to_string(m));
  }
  static std::array<std::once_flag, kMaxPolytopeDim + 1> once;
  static std::array<std::vector<FractionalPartition>, kMaxPolytopeDim + 1>
      cache;
  std::call_once(once[m], [m] { cache[m] = compute_vertices(m); });
  return cache[m];
}

bool vertex_check(const FractionalPartition& p) {
  require_valid(p);
  if (static_cast<int>(p.terms.size()) > p.m) return false;
  std::vector<IndexSet> support;
  for (const Term& t : p.terms) support.push_back(t.set);
  SupportSolution sol = solve_on_support(p.m, support);
  if (!sol.independent || !sol.consistent) return false;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (sol.x[k] != p.terms[k].weight || sol.x[k].sign() <= 0) return false;
  }
  return true;
}

VertexDecomposition decompose_to_vertices(const FractionalPartition& p) {
  require_valid(p);
  const auto& vertices = enumerate_vertices(p.m);
  WeightMap residual = weight_map(p);
  VertexDecomposition out;
  Rational used;
  while (!residual.empty()) {
    const FractionalPartition* pick = nullptr;
    for (const FractionalPartition& v : vertices) {
      bool inside = std::all_of(v.terms.begin(), v.terms.end(),
                                [&](const Term& t) {
                                  return residual.count(t.set) > 0;
                                });
      if (inside) {
        pick = &v;
        break;
      }
    }
    if (pick == nullptr) {
      throw std::logic_error("decompose_to_vertices: no vertex inside support"
                             " of residual for " + p.str());
    }
    std::optional<Rational> step;
    for (const Term& t : pick->terms) {
      Rational ratio = residual.at(t.set) / t.weight;
      if (!step || ratio < *step) step = ratio;
    }
    for (const Term& t : pick->terms) {
      Rational& r = residual.at(t.set);
      r -= *step * t.weight;
      if (r.sign() < 0) {
        throw std::logic_error("decompose_to_vertices: negative residual");
      }
    }
    std::erase_if(residual, [](const auto& kv) { return kv.second.is_zero(); });
    out.parts.push_back({*pick, *step});
    used += *step;
  }
  // Exactness of the reconstruction.
  WeightMap rebuilt;
  for (const auto& part : out.parts) {
    for (const Term& t : part.vertex.terms) rebuilt[t.set] += part.alpha * t.weight;
  }
  if (used != 1 || rebuilt != weight_map(p)) {
    throw std::logic_error("decompose_to_vertices: reconstruction mismatch for " +
                           p.str());
  }
  return out;
}

}  // namespace fracbml
