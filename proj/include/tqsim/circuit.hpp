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

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tqsim/circuit_fwd.hpp"
#include "tqsim/gates.hpp"
#include "tqsim/layout.hpp"
#include "tqsim/schedule.hpp"

namespace tqsim {

// Gate stream convention: depth index 2*d holds the single-qubit layer
// preceding CZ layer d, depth index 2*d + 1 holds CZ layer d, and index
// 2*depth holds the closing single-qubit layer.  Circuit::depth counts
// CZ layers only.  Gates within one depth index touch disjoint qubits.

inline int sq_depth_index(int layer) { return 2 * layer; }
inline int cz_depth_index(int layer) { return 2 * layer + 1; }

/// Generate one of the three random-circuit families.
///
/// A fresh random single-qubit gate lands on every qubit before every CZ
/// layer, plus one closing single-qubit layer; CZ layers follow the
/// family schedule.  Deterministic in (layout, depth, seed, gate_set).
inline Circuit generate_circuit(const Layout& layout, int depth,
                                std::uint64_t seed,
                                GateSet gate_set = GateSet::haar) {
  require(depth >= 1, "depth must be at least 1");
  Circuit c;
  c.layout = layout;
  c.depth = depth;
  c.seed = seed;
  c.gate_set = gate_set;
  Xoshiro256 rng = make_rng(seed, RngStream::circuit_gates);
  const int nq = layout.qubit_count();
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q < nq; ++q)
      c.gates.push_back(Gate::single(q, sq_depth_index(d),
                                     random_single_qubit_gate(rng, gate_set)));
    for (auto [a, b] : cz_edges(layout, d))
      c.gates.push_back(Gate::cz(a, b, cz_depth_index(d)));
  }
  for (int q = 0; q < nq; ++q)
    c.gates.push_back(Gate::single(q, sq_depth_index(depth),
                                   random_single_qubit_gate(rng, gate_set)));
  return c;
}

inline Circuit generate_chain_circuit(int n, int depth, std::uint64_t seed,
                                      GateSet gate_set = GateSet::haar) {
  return generate_circuit(Layout::chain(n), depth, seed, gate_set);
}

inline Circuit generate_grid_circuit(int m, int n, int depth,
                                     std::uint64_t seed,
                                     GateSet gate_set = GateSet::haar) {
  return generate_circuit(Layout::grid(m, n), depth, seed, gate_set);
}

inline Circuit generate_bristlecone_circuit(int m, int n, int depth,
                                            std::uint64_t seed,
                                            GateSet gate_set = GateSet::haar) {
  return generate_circuit(Layout::bristlecone(m, n), depth, seed, gate_set);
}

/// One broken circuit invariant; violations are data, not failures.
struct Violation {
  int gate_index;
  std::string rule;
  std::string detail;
};

/// Check all circuit invariants: per-depth qubit disjointness, CZ
/// nearest-neighbor adjacency, contiguous depth indices, unitarity of
/// single-qubit matrices.
inline std::vector<Violation> validate_circuit(const Circuit& c) {
  std::vector<Violation> out;
  std::set<int> depth_indices;
  std::vector<std::set<int>> used;  // per depth index, occupied qubits
  const int nq = c.layout.qubit_count();
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    depth_indices.insert(g.depth_index);
    if (g.depth_index >= 0) {
      if (static_cast<int>(used.size()) <= g.depth_index)
        used.resize(g.depth_index + 1);
      for (int q : g.targets()) {
        if (q < 0 || q >= nq) {
          out.push_back({static_cast<int>(i), "target-range",
                         "qubit " + std::to_string(q)});
          continue;
        }
        if (!used[g.depth_index].insert(q).second)
          out.push_back({static_cast<int>(i), "disjointness",
                         "qubit " + std::to_string(q) + " reused at depth " +
                             std::to_string(g.depth_index)});
      }
    }
    if (g.kind == GateKind::cz && !c.layout.adjacent(g.a, g.b))
      out.push_back({static_cast<int>(i), "adjacency",
                     "qubits " + std::to_string(g.a) + "," +
                         std::to_string(g.b) + " are not neighbors"});
    if (g.kind == GateKind::single_qubit) {
      double defect = unitarity_defect(g.matrix);
      if (defect > 1e-12)
        out.push_back({static_cast<int>(i), "unitarity",
                       "defect " + std::to_string(defect)});
    }
  }
  int expect = 0;
  for (int d : depth_indices) {
    if (d != expect) {
      out.push_back({-1, "depth-contiguity",
                     "expected depth index " + std::to_string(expect) +
                         ", found " + std::to_string(d)});
      break;
    }
    ++expect;
  }
  return out;
}

}  // namespace tqsim
