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

// Instance files and JSON reports. Every rational is written as a "p/q"
// string; on input a bound or weight may also be a JSON integer.
//
//   {"m": 3,
//    "sets": [[["0","1"]], [["0","0"],["10","10"]], [["0","1"]]],
//    "partition": {"terms": [{"S": [1,2], "beta": "1/2"}, ...]}}
//
// A bare partition literal {"m": 3, "terms": [...]} is accepted wherever
// only a partition is needed. Indices are 1-based.

#ifndef FRACBML_IO_HPP_
#define FRACBML_IO_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracbml/interval_set.hpp"
#include "fracbml/oracle.hpp"
#include "fracbml/partition.hpp"
#include "fracbml/verify.hpp"

namespace fracbml::io {

using Json = nlohmann::ordered_json;

// Malformed input. `where` is a byte offset ("at byte 17") or a JSON path
// ("sets[1][0][1]").
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct InstanceFile {
  int m = 0;
  std::vector<CompactSet> sets;
  std::optional<FractionalPartition> partition;
};

Rational parse_rational(const Json& j, const std::string& path);
CompactSet parse_set(const Json& j, const std::string& path);
// Validates the partition; violations become ParseErrors.
FractionalPartition parse_partition(const Json& j, int m,
                                    const std::string& path);

InstanceFile parse_instance(const Json& j);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile load_instance(const std::string& filename);

Json to_json(const Rational& r);
Json to_json(const IndexSet& s);
Json to_json(const CompactSet& a);
Json to_json(const FractionalPartition& p);
Json to_json(const Superadditivity& s);
Json to_json(const EqualityReport& r);
Json to_json(const RationalReduction& r);
Json to_json(const Translation& t);
Json to_json(const VertexDecomposition& d);
Json to_json(const ProofDecomposition& d);
Json to_json(const DeficitSeries& d);
Json to_json(const V3Decomposition& d);
Json to_json(const oracle::ScanRecord& r);

}  // namespace fracbml::io

#endif  // FRACBML_IO_HPP_
