// Copyright 2026 The tqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "tqsim/circuit.hpp"

namespace tqsim {

using json = nlohmann::ordered_json;

inline json complex_to_json(const cplx& z) {
  return json::array({z.real(), z.imag()});
}

inline cplx complex_from_json(const json& j) {
  return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

inline json mat2_to_json(const Mat2& m) {
  json out = json::array();
  for (const cplx& e : m) out.push_back(complex_to_json(e));
  return out;
}

inline Mat2 mat2_from_json(const json& j) {
  require(j.is_array() && j.size() == 4, "matrix must have 4 entries");
  Mat2 m;
  for (int i = 0; i < 4; ++i) m[i] = complex_from_json(j.at(i));
  return m;
}

inline json layout_to_json(const Layout& l) {
  return json{{"kind", to_string(l.kind)}, {"m", l.m}, {"n", l.n}};
}

inline Layout layout_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  if (kind == "chain") return Layout::chain(m);
  if (kind == "grid") return Layout::grid(m, n);
  if (kind == "bristlecone") return Layout::bristlecone(m, n);
  throw InvalidArgument("unknown layout kind: " + kind);
}

inline json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) {
    json jg;
    jg["kind"] = g.kind == GateKind::cz ? "cz" : "single_qubit";
    jg["targets"] = g.targets();
    jg["depth"] = g.depth_index;
    if (g.kind == GateKind::single_qubit) jg["matrix"] = mat2_to_json(g.matrix);
    gates.push_back(jg);
  }
  return json{{"layout", layout_to_json(c.layout)},
              {"depth", c.depth},
              {"seed", c.seed},
              {"gate_set", to_string(c.gate_set)},
              {"gates", gates}};
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.layout = layout_from_json(j.at("layout"));
  c.depth = j.at("depth").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("gate_set"))
    c.gate_set = j.at("gate_set").get<std::string>() == "sqrt_xyt"
                     ? GateSet::sqrt_xyt
                     : GateSet::haar;
  for (const json& jg : j.at("gates")) {
    const std::string kind = jg.at("kind").get<std::string>();
    const auto targets = jg.at("targets").get<std::vector<int>>();
    const int depth = jg.at("depth").get<int>();
    if (kind == "cz") {
      require(targets.size() == 2, "cz gate needs two targets");
      c.gates.push_back(Gate::cz(targets[0], targets[1], depth));
    } else if (kind == "single_qubit") {
      require(targets.size() == 1, "single_qubit gate needs one target");
      c.gates.push_back(
          Gate::single(targets[0], depth, mat2_from_json(jg.at("matrix"))));
    } else {
      throw InvalidArgument("unknown gate kind: " + kind);
    }
  }
  return c;
}

inline void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << circuit_to_json(c).dump(2) << "\n";
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open for reading: " + path);
  json j;
  in >> j;
  return circuit_from_json(j);
}

}  // namespace tqsim
