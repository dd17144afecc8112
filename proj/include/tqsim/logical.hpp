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
#include <vector>

#include <json.hpp>

#include "tqsim/circuit_json.hpp"
#include "tqsim/linalg.hpp"

namespace tqsim {

/// One gate of the renormalized circuit.  Most are non-unitary and
/// diagonal; diagonal gates store only their diagonal.
struct LogicalGate {
  std::vector<int> targets;  // state-vector slots; targets[0] = low bit
  bool diagonal = false;
  bool unitary = false;
  DenseMat matrix;           // dense form (diagonal gates leave it empty)
  std::vector<cplx> diag;

  int arity() const { return static_cast<int>(targets.size()); }

  static LogicalGate dense(std::vector<int> targets, DenseMat m) {
    LogicalGate g;
    g.targets = std::move(targets);
    g.matrix = std::move(m);
    g.diagonal = false;
    g.unitary = g.matrix.unitarity_defect() <= 1e-12;
    return g;
  }

  static LogicalGate make_diag(std::vector<int> targets,
                               std::vector<cplx> entries) {
    LogicalGate g;
    g.targets = std::move(targets);
    g.diag = std::move(entries);
    g.diagonal = true;
    bool unit = true;
    for (const cplx& d : g.diag)
      if (std::abs(std::abs(d) - 1.0) > 1e-12) unit = false;
    g.unitary = unit;
    return g;
  }

  /// Dense view regardless of storage.
  DenseMat to_dense() const {
    if (!diagonal) return matrix;
    DenseMat m = DenseMat::zero(arity());
    for (std::size_t i = 0; i < m.dim(); ++i) m.at(i, i) = diag[i];
    return m;
  }
};

/// Renormalized circuit over k logical qubits.  Contracting it —
/// boundary_in, the gate list in order, boundary_out — and multiplying
/// by `scalar` reproduces the source circuit's amplitude.
struct LogicalCircuit {
  int k = 0;
  std::vector<LogicalGate> gates;
  std::vector<Vec2> boundary_in;   // per-qubit input vectors, default (1,1)
  std::vector<Vec2> boundary_out;  // per-qubit output vectors, default (1,1)
  cplx scalar{1.0, 0.0};

  static LogicalCircuit make(int k) {
    LogicalCircuit lc;
    lc.k = k;
    lc.boundary_in.assign(k, Vec2{cplx(1), cplx(1)});
    lc.boundary_out.assign(k, Vec2{cplx(1), cplx(1)});
    return lc;
  }
};

inline json logical_gate_to_json(const LogicalGate& g) {
  json jg;
  jg["targets"] = g.targets;
  jg["diagonal"] = g.diagonal;
  jg["unitary"] = g.unitary;
  if (g.diagonal) {
    json d = json::array();
    for (const cplx& e : g.diag) d.push_back(complex_to_json(e));
    jg["diag"] = d;
  } else {
    json m = json::array();
    for (const cplx& e : g.matrix.data) m.push_back(complex_to_json(e));
    jg["matrix"] = m;
  }
  return jg;
}

inline LogicalGate logical_gate_from_json(const json& jg) {
  auto targets = jg.at("targets").get<std::vector<int>>();
  if (jg.at("diagonal").get<bool>()) {
    std::vector<cplx> d;
    for (const json& e : jg.at("diag")) d.push_back(complex_from_json(e));
    return LogicalGate::make_diag(std::move(targets), std::move(d));
  }
  DenseMat m;
  m.arity = static_cast<int>(targets.size());
  for (const json& e : jg.at("matrix")) m.data.push_back(complex_from_json(e));
  require(m.data.size() == m.dim() * m.dim(), "bad matrix size");
  return LogicalGate::dense(std::move(targets), std::move(m));
}

inline json logical_circuit_to_json(const LogicalCircuit& lc) {
  json boundaries;
  json bin = json::array(), bout = json::array();
  for (const Vec2& v : lc.boundary_in)
    bin.push_back(json::array({complex_to_json(v[0]), complex_to_json(v[1])}));
  for (const Vec2& v : lc.boundary_out)
    bout.push_back(json::array({complex_to_json(v[0]), complex_to_json(v[1])}));
  boundaries["input"] = bin;
  boundaries["output"] = bout;
  json gates = json::array();
  for (const LogicalGate& g : lc.gates) gates.push_back(logical_gate_to_json(g));
  return json{{"k", lc.k},
              {"scalar", complex_to_json(lc.scalar)},
              {"boundaries", boundaries},
              {"gates", gates}};
}

inline LogicalCircuit logical_circuit_from_json(const json& j) {
  LogicalCircuit lc = LogicalCircuit::make(j.at("k").get<int>());
  lc.scalar = complex_from_json(j.at("scalar"));
  const json& b = j.at("boundaries");
  for (int q = 0; q < lc.k; ++q) {
    const json& vi = b.at("input").at(q);
    const json& vo = b.at("output").at(q);
    lc.boundary_in[q] = Vec2{complex_from_json(vi.at(0)),
                             complex_from_json(vi.at(1))};
    lc.boundary_out[q] = Vec2{complex_from_json(vo.at(0)),
                              complex_from_json(vo.at(1))};
  }
  for (const json& jg : j.at("gates"))
    lc.gates.push_back(logical_gate_from_json(jg));
  return lc;
}

inline void save_logical_circuit(const LogicalCircuit& lc,
                                 const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << logical_circuit_to_json(lc).dump(2) << "\n";
}

inline LogicalCircuit load_logical_circuit(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open for reading: " + path);
  json j;
  in >> j;
  return logical_circuit_from_json(j);
}

}  // namespace tqsim
