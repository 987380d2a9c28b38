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

#include "fracbml/io.hpp"

#include <fstream>
#include <sstream>

namespace fracbml::io {
namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string field(const std::string& path, const char* name) {
  return path.empty() ? std::string(name) : path + "." + name;
}

Json members_json(const IndexSet& s) {
  Json out = Json::array();
  for (int i : s.members()) out.push_back(i);
  return out;
}

}  // namespace

Rational parse_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) {
    throw ParseError(path, "expected an integer or a \"p/q\" string");
  }
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

CompactSet parse_set(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "set literal must be an array");
  if (j.empty()) throw ParseError(path, "empty set not representable");
  std::vector<Interval> raw;
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Json& pair = j[c];
    if (!pair.is_array() || pair.size() != 2) {
      throw ParseError(at(path, c), "expected a [lo, hi] pair");
    }
    Interval iv{parse_rational(pair[0], at(at(path, c), 0)),
                parse_rational(pair[1], at(at(path, c), 1))};
    if (iv.lo > iv.hi) throw ParseError(at(path, c), "malformed interval");
    raw.push_back(iv);
  }
  return CompactSet::normalize(std::move(raw));
}

FractionalPartition parse_partition(const Json& j, int m,
                                    const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "partition must be an object");
  if (j.contains("m")) {
    if (!j["m"].is_number_integer()) {
      throw ParseError(field(path, "m"), "expected an integer");
    }
    const int inner = j["m"].get<int>();
    if (m > 0 && inner != m) {
      throw ParseError(field(path, "m"), "partition m=" +
                                             std::to_string(inner) +
                                             " disagrees with m=" +
                                             std::to_string(m));
    }
    m = inner;
  }
  if (m < 1) throw ParseError(path, "partition needs m");
  const std::string terms_path = field(path, "terms");
  if (!j.contains("terms") || !j["terms"].is_array()) {
    throw ParseError(terms_path, "expected an array of terms");
  }
  FractionalPartition p{m, {}};
  const Json& terms = j["terms"];
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tp = at(terms_path, t);
    const Json& term = terms[t];
    if (!term.is_object() || !term.contains("S") || !term.contains("beta")) {
      throw ParseError(tp, "term needs \"S\" and \"beta\"");
    }
    if (!term["S"].is_array()) {
      throw ParseError(field(tp, "S"), "expected an array of indices");
    }
    IndexSet s;
    for (std::size_t k = 0; k < term["S"].size(); ++k) {
      const Json& idx = term["S"][k];
      if (!idx.is_number_integer() || idx.get<int>() < 1 ||
          idx.get<int>() > m) {
        throw ParseError(at(field(tp, "S"), k),
                         "index must be an integer in [1, " +
                             std::to_string(m) + "]");
      }
      s.insert(idx.get<int>());
    }
    p.terms.push_back({s, parse_rational(term["beta"], field(tp, "beta"))});
  }
  auto violations = validate(p);
  if (!violations.empty()) throw ParseError(path, violations.front().message);
  return canonical(std::move(p));
}

InstanceFile parse_instance(const Json& j) {
  if (!j.is_object()) throw ParseError("$", "instance must be a JSON object");
  InstanceFile out;
  if (j.contains("terms")) {
    out.partition = parse_partition(j, 0, "");
    out.m = out.partition->m;
    return out;
  }
  if (j.contains("m")) {
    if (!j["m"].is_number_integer() || j["m"].get<int>() < 1) {
      throw ParseError("m", "expected a positive integer");
    }
    out.m = j["m"].get<int>();
  }
  if (j.contains("sets")) {
    const Json& sets = j["sets"];
    if (!sets.is_array()) throw ParseError("sets", "expected an array");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      out.sets.push_back(parse_set(sets[i], at("sets", i)));
    }
    if (out.m == 0) out.m = static_cast<int>(out.sets.size());
    if (static_cast<int>(out.sets.size()) != out.m) {
      throw ParseError("sets", "expected " + std::to_string(out.m) +
                                   " sets, found " +
                                   std::to_string(out.sets.size()));
    }
  }
  if (j.contains("partition")) {
    out.partition = parse_partition(j["partition"], out.m, "partition");
    out.m = out.partition->m;
  }
  return out;
}

InstanceFile parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("at byte " + std::to_string(e.byte), e.what());
  }
  return parse_instance(j);
}

InstanceFile load_instance(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError(filename, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const IndexSet& s) { return members_json(s); }

Json to_json(const CompactSet& a) {
  Json out = Json::array();
  for (const Interval& iv : a.components()) {
    out.push_back(Json::array({iv.lo.str(), iv.hi.str()}));
  }
  return out;
}

Json to_json(const FractionalPartition& p) {
  Json terms = Json::array();
  for (const Term& t : p.terms) {
    terms.push_back({{"S", members_json(t.set)}, {"beta", t.weight.str()}});
  }
  return {{"m", p.m}, {"terms", terms}};
}

Json to_json(const Superadditivity& s) {
  return {{"lhs", s.lhs.str()}, {"rhs", s.rhs.str()}, {"slack", s.slack.str()}};
}

Json to_json(const EqualityReport& r) {
  Json shapes = Json::array();
  for (const SumShape& sh : r.shapes) {
    shapes.push_back({{"S", members_json(sh.set)},
                      {"shape", shape_name(sh.shape)},
                      {"measure", sh.measure.str()}});
  }
  Json out = {{"lhs", r.lhs.str()},
              {"rhs", r.rhs.str()},
              {"slack", r.slack.str()},
              {"classification", equality_name(r.classification)},
              {"shapes", shapes},
              {"witness", nullptr},
              {"k", r.k},
              {"gamma", nullptr},
              {"renumbered", r.renumbered},
              {"order", r.order}};
  if (r.witness) out["witness"] = members_json(*r.witness);
  if (r.gamma) out["gamma"] = r.gamma->str();
  return out;
}

Json to_json(const RationalReduction& r) {
  Json blocks = Json::array();
  for (const IndexSet& b : r.blocks) blocks.push_back(members_json(b));
  return {{"m", r.m},
          {"q", r.q},
          {"s", static_cast<std::int64_t>(r.blocks.size())},
          {"blocks", blocks}};
}

Json to_json(const Translation& t) {
  Json out = {{"gamma", t.gamma.str()}, {"trivial", t.trivial()}};
  out["partition"] = t.partition ? to_json(*t.partition) : Json(nullptr);
  return out;
}

Json to_json(const VertexDecomposition& d) {
  Json parts = Json::array();
  for (const auto& part : d.parts) {
    parts.push_back({{"alpha", part.alpha.str()},
                     {"vertex", to_json(part.vertex)}});
  }
  return {{"parts", parts}};
}

Json to_json(const ProofDecomposition& d) {
  Json blocks = Json::array();
  for (const IndexSet& b : d.blocks) blocks.push_back(members_json(b));
  Json measures = Json::array();
  for (const Rational& r : d.block_measures) measures.push_back(r.str());
  Json cells = Json::array();
  for (const ProofCell& c : d.cells) {
    cells.push_back({{"k", c.k},
                     {"j", c.j},
                     {"window", Json::array({c.lo.str(), c.hi.str()})},
                     {"mu_block", c.mu_block.str()},
                     {"mu_total", c.mu_total.str()},
                     {"mu_total_tile", c.mu_total_tile.str()}});
  }
  Json rows = Json::array();
  for (const Rational& r : d.row_sums) rows.push_back(r.str());
  Json strict = Json::array();
  for (const auto& [k, j] : d.strict_cells) strict.push_back({k, j});
  return {{"q", d.q},
          {"s", static_cast<std::int64_t>(d.blocks.size())},
          {"blocks", blocks},
          {"lhs", d.lhs.str()},
          {"block_measures", measures},
          {"cells", cells},
          {"row_sums", rows},
          {"total", d.total.str()},
          {"strict_cells", strict},
          {"all_cells_equal", d.all_cells_equal},
          {"all_tiles_equal", d.all_tiles_equal}};
}

Json to_json(const DeficitSeries& d) {
  Json values = Json::array();
  for (const auto& [k, delta] : d.values) {
    values.push_back({{"k", k}, {"delta", delta.str()}});
  }
  return {{"set", to_json(d.set)}, {"values", values}};
}

Json to_json(const V3Decomposition& d) {
  Json alpha = Json::array();
  Json volumes = Json::array();
  for (int i = 0; i < 5; ++i) {
    alpha.push_back(d.alpha[i].str());
    volumes.push_back(d.volumes[i].str());
  }
  return {{"order", d.order},
          {"alpha", alpha},
          {"V", volumes},
          {"total", d.total.str()},
          {"rhs", d.rhs.str()},
          {"equality_equiv", d.equality_equiv}};
}

Json to_json(const oracle::ScanRecord& r) {
  Json sets = Json::array();
  for (const CompactSet& s : r.sets) sets.push_back(to_json(s));
  return {{"sets", sets},
          {"classification", equality_name(r.classification)},
          {"slack", r.slack.str()}};
}

}  // namespace fracbml::io
