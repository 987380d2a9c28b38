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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "fracbml/io.hpp"
#include "fracbml/oracle.hpp"
#include "fracbml/partition.hpp"
#include "fracbml/verify.hpp"

namespace fracbml::cli {
namespace {

using io::Json;

struct Options {
  std::string input;
  bool json = false;
  int k = 1;
  int k_max = 6;
  int m = 3;
  std::uint64_t seed = 0;
  std::int64_t count = 100;
  int max_components = 3;
  std::int64_t denominator = 8;
  std::int64_t range = 16;
};

int worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACBML_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(n);
}

// Runs body(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
  const int workers = static_cast<int>(
      std::min<std::int64_t>(worker_count(), std::max<std::int64_t>(n, 1)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

io::InstanceFile load(const Options& o) { return io::load_instance(o.input); }

FractionalPartition need_partition(const io::InstanceFile& f) {
  if (!f.partition) throw io::ParseError("partition", "missing");
  return *f.partition;
}

const std::vector<CompactSet>& need_sets(const io::InstanceFile& f) {
  if (f.sets.empty()) throw io::ParseError("sets", "missing");
  return f.sets;
}

void need_both(const io::InstanceFile& f) {
  need_sets(f);
  need_partition(f);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto f = load(o);
  need_both(f);
  const Superadditivity s = check_superadditivity(f.sets, *f.partition);
  if (o.json) {
    out << io::to_json(s).dump(2) << "\n";
  } else {
    out << "lhs " << s.lhs.str() << "\nrhs " << s.rhs.str() << "\nslack "
        << s.slack.str() << "\n";
  }
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto f = load(o);
  need_both(f);
  const EqualityReport r = classify_equality(f.sets, *f.partition);
  if (o.json) {
    out << io::to_json(r).dump(2) << "\n";
    return kExitOk;
  }
  out << "classification " << equality_name(r.classification) << "\n"
      << "lhs " << r.lhs.str() << "\nrhs " << r.rhs.str() << "\nslack "
      << r.slack.str() << "\n";
  if (r.gamma) out << "gamma " << r.gamma->str() << "\n";
  if (r.witness) out << "witness " << r.witness->str() << "\n";
  if (r.renumbered) out << "renumbered\n";
  return kExitOk;
}

int cmd_vertices(const Options& o, std::ostream& out) {
  const auto& vs = enumerate_vertices(o.m);
  if (o.json) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(io::to_json(v));
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& v : vs) out << v.str() << "\n";
  }
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const auto p = need_partition(load(o));
  const VertexDecomposition d = decompose_to_vertices(p);
  if (o.json) {
    out << io::to_json(d).dump(2) << "\n";
  } else {
    for (const auto& part : d.parts) {
      out << part.alpha.str() << "  " << part.vertex.str() << "\n";
    }
  }
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const RationalReduction r = reduce_to_rational(need_partition(load(o)));
  if (o.json) {
    out << io::to_json(r).dump(2) << "\n";
    return kExitOk;
  }
  out << "q " << r.q << "\nblocks";
  for (const auto& b : r.blocks) out << " " << b.str();
  out << "\n";
  return kExitOk;
}

int cmd_translate(const Options& o, std::ostream& out) {
  const Translation t = translate_partition(need_partition(load(o)), o.k);
  if (o.json) {
    out << io::to_json(t).dump(2) << "\n";
    return kExitOk;
  }
  out << "gamma " << t.gamma.str() << "\n";
  if (t.trivial()) {
    out << "trivial\n";
  } else {
    out << "partition " << t.partition->str() << "\n";
  }
  return kExitOk;
}

int cmd_schneider(const Options& o, std::ostream& out) {
  const auto f = load(o);
  const auto& sets = need_sets(f);
  Json arr = Json::array();
  for (const auto& a : sets) {
    const Rational c = schneider_index(a);
    if (o.json) {
      arr.push_back({{"set", io::to_json(a)}, {"c", c.str()}});
    } else {
      out << c.str() << "\n";
    }
  }
  if (o.json) out << arr.dump(2) << "\n";
  return kExitOk;
}

int cmd_deficit(const Options& o, std::ostream& out) {
  const auto f = load(o);
  const auto& sets = need_sets(f);
  Json arr = Json::array();
  for (const auto& a : sets) {
    const DeficitSeries d = volume_deficit(a, o.k_max);
    if (o.json) {
      arr.push_back(io::to_json(d));
      continue;
    }
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      out << (i ? ", " : "") << d.values[i].second.str();
    }
    out << "\n";
  }
  if (o.json) out << arr.dump(2) << "\n";
  return kExitOk;
}

int cmd_prove(const Options& o, std::ostream& out) {
  const auto f = load(o);
  need_both(f);
  std::vector<CompactSet> shifted;
  for (const auto& a : f.sets) shifted.push_back(to_origin(a));
  const ProofDecomposition d =
      proof_decomposition(shifted, reduce_to_rational(*f.partition));
  if (o.json) {
    out << io::to_json(d).dump(2) << "\n";
    return kExitOk;
  }
  out << "q " << d.q << "  s " << d.blocks.size() << "  lhs " << d.lhs.str()
      << "  total " << d.total.str() << "\n";
  out << "k\tj\tS_j\twindow\tmu_block\tmu_total\n";
  for (const ProofCell& c : d.cells) {
    out << c.k << "\t" << c.j << "\t" << d.blocks[c.j - 1].str() << "\t("
        << c.lo.str() << ", " << c.hi.str() << "]\t" << c.mu_block.str()
        << "\t" << c.mu_total.str() << (c.strict() ? "\t<" : "") << "\n";
  }
  for (std::size_t k = 0; k < d.row_sums.size(); ++k) {
    out << "row " << k + 1 << " " << d.row_sums[k].str() << "\n";
  }
  out << "all cells equal " << (d.all_cells_equal ? "yes" : "no") << "\n";
  return kExitOk;
}

struct FuzzOutcome {
  Json record;
  bool violation = false;
  std::string message;
};

FuzzOutcome fuzz_one(std::uint64_t seed, const Options& o) {
  FuzzOutcome res;
  res.record = {{"seed", seed},
                {"verdict", "ok"},
                {"slack", nullptr},
                {"classification", nullptr}};
  const oracle::Instance inst = oracle::random_instance(
      {seed, o.m, o.max_components, o.denominator, o.range});
  try {
    const Superadditivity s = check_superadditivity(inst.sets, inst.partition);
    res.record["slack"] = s.slack.str();
    if (!is_trivial(inst.partition)) {
      res.record["classification"] = equality_name(
          classify_equality(inst.sets, inst.partition).classification);
    }
  } catch (const InvariantViolation& e) {
    res.violation = true;
    res.message = e.what();
    res.record["verdict"] = "violation";
  }
  return res;
}

int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.count < 0) throw std::invalid_argument("--count must be >= 0");
  enumerate_vertices(o.m);  // validates m before any thread starts
  constexpr std::int64_t kBatch = 4096;
  for (std::int64_t start = 0; start < o.count; start += kBatch) {
    const std::int64_t n = std::min(kBatch, o.count - start);
    std::vector<FuzzOutcome> batch(n);
    parallel_for(n, [&](std::int64_t i) {
      batch[i] = fuzz_one(o.seed + static_cast<std::uint64_t>(start + i), o);
    });
    for (const auto& r : batch) {
      out << r.record.dump() << "\n";
      if (r.violation) {
        err << "invariant violation at seed " << r.record["seed"].dump()
            << ": " << r.message << "\n";
        return kExitInvariant;
      }
    }
  }
  return kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  oracle::ScanParams p;
  p.denominator = o.denominator;
  p.range = o.range;
  p.max_components = o.max_components;
  if (!o.input.empty()) p.partition = need_partition(load(o));
  Json arr = Json::array();
  const oracle::ScanSummary sum = oracle::brute_equality_scan(
      p, [&](const oracle::ScanRecord& r) { arr.push_back(io::to_json(r)); });
  out << arr.dump() << "\n";
  err << "instances " << sum.instances;
  for (const auto& [cls, n] : sum.counts) {
    err << "  " << equality_name(cls) << " " << n;
  }
  err << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact Minkowski sums and fractional superadditivity in 1-D"};
  app.require_subcommand(1);
  Options o;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "instance file")->required();
    sub->add_flag("--json", o.json, "emit JSON");
    return sub;
  };
  auto* verify = with_input(app.add_subcommand("verify", "evaluate lhs, rhs and slack"));
  auto* classify = with_input(app.add_subcommand("classify", "equality classification"));
  auto* vertices = app.add_subcommand("vertices", "vertices of the partition polytope");
  vertices->add_option("--m", o.m, "number of sets")->required();
  vertices->add_flag("--json", o.json, "emit JSON");
  auto* decompose = with_input(app.add_subcommand("decompose", "convex combination of vertices"));
  auto* reduce = with_input(app.add_subcommand("reduce", "rational reduction"));
  auto* translate = with_input(app.add_subcommand("translate", "translated partition"));
  translate->add_option("--k", o.k, "number of leading non-point sets")->required();
  auto* schneider = with_input(app.add_subcommand("schneider", "non-convexity index of each set"));
  auto* deficit = with_input(app.add_subcommand("deficit", "volume deficit of each set"));
  deficit->add_option("--k-max", o.k_max, "largest k")->required();
  auto* prove = with_input(app.add_subcommand("prove", "row decomposition table"));

  auto* fuzz = app.add_subcommand("fuzz", "random instance campaign");
  fuzz->add_option("--seed", o.seed, "first seed");
  fuzz->add_option("--count", o.count, "number of instances");
  fuzz->add_option("--m", o.m, "number of sets (2..5)");
  fuzz->add_option("--max-components", o.max_components);
  fuzz->add_option("--denominator", o.denominator);
  fuzz->add_option("--range", o.range, "numerators lie in [0, range]");

  auto* scan = app.add_subcommand("scan", "exhaustive three-set grid scan");
  o.denominator = 2;
  o.range = 4;
  o.max_components = 2;
  scan->add_option("-i,--input", o.input, "partition file (default leave-one-out)");
  scan->add_option("--max-components", o.max_components);
  scan->add_option("--denominator", o.denominator);
  scan->add_option("--range", o.range);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  // Fuzz keeps its own defaults unless overridden.
  if (fuzz->parsed()) {
    if (fuzz->count("--max-components") == 0) o.max_components = 3;
    if (fuzz->count("--denominator") == 0) o.denominator = 8;
    if (fuzz->count("--range") == 0) o.range = 16;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out);
    if (classify->parsed()) return cmd_classify(o, out);
    if (vertices->parsed()) return cmd_vertices(o, out);
    if (decompose->parsed()) return cmd_decompose(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (translate->parsed()) return cmd_translate(o, out);
    if (schneider->parsed()) return cmd_schneider(o, out);
    if (deficit->parsed()) return cmd_deficit(o, out);
    if (prove->parsed()) return cmd_prove(o, out);
    if (fuzz->parsed()) return cmd_fuzz(o, out, err);
    if (scan->parsed()) return cmd_scan(o, out, err);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const RationalOverflow& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInput;
}

}  // namespace fracbml::cli
