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

#include "tqsim/rewrite.hpp"

#include <gtest/gtest.h>

#include "tqsim/contract.hpp"
#include "tqsim/statevector.hpp"

namespace tqsim {
namespace {

std::string zeros(int n) { return std::string(n, '0'); }

void expect_equivalent(const Circuit& c, const std::string& outcome,
                       double tol = 1e-10) {
  const cplx direct = amplitude_direct(c, outcome, 20).value;
  RenormalizeOptions opts;
  opts.memory_cap_qubits = 22;
  const LogicalCircuit lc = renormalize(c, outcome, opts);
  const cplx trans = amplitude_transversal(lc, 22).value;
  EXPECT_NEAR(std::abs(direct - trans), 0.0, tol)
      << "layout=" << to_string(c.layout.kind) << " m=" << c.layout.m
      << " n=" << c.layout.n << " depth=" << c.depth << " seed=" << c.seed
      << " outcome=" << outcome << " direct=" << direct
      << " transversal=" << trans;
}

TEST(Renormalize, SingleCzChainMatchesTruth) {
  // identity single-qubit gates: amplitude of |00> -> <00| through CZ is 1
  Circuit c;
  c.layout = Layout::chain(2);
  c.depth = 1;
  c.gates.push_back(Gate::cz(0, 1, 1));
  const LogicalCircuit lc = renormalize(c, "00");
  EXPECT_EQ(lc.k, 1);
  const cplx amp = amplitude_transversal(lc).value;
  EXPECT_NEAR(std::abs(amp - cplx(1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(amplitude_transversal(renormalize(c, "11")).value),
              0.0, 1e-12);
}

TEST(Renormalize, ChainDepth4MatchesOracle) {
  Circuit c = generate_chain_circuit(8, 4, 11);
  const LogicalCircuit lc = renormalize(c, zeros(8));
  EXPECT_EQ(lc.k, 4);
  expect_equivalent(c, zeros(8));
  expect_equivalent(c, "10110010");
}

TEST(Renormalize, ChainVariousShapes) {
  for (int n : {2, 3, 5, 9}) {
    for (int depth : {1, 2, 3, 6}) {
      Circuit c = generate_chain_circuit(n, depth, 100 + n * depth);
      std::string outcome = zeros(n);
      outcome[n - 1] = '1';
      expect_equivalent(c, outcome);
    }
  }
}

TEST(Renormalize, GridDepth8MatchesOracle) {
  Circuit c = generate_grid_circuit(4, 4, 8, 5);
  const LogicalCircuit lc = renormalize(c, zeros(16));
  EXPECT_EQ(lc.k, 4);
  expect_equivalent(c, zeros(16));
  expect_equivalent(c, "0110100101101001");
}

TEST(Renormalize, GridVariousShapes) {
  for (auto [m, n] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
    for (int depth : {1, 3, 5, 8, 11}) {
      Circuit c = generate_grid_circuit(m, n, depth, 17 * m + depth);
      expect_equivalent(c, zeros(m * n));
    }
  }
}

TEST(Renormalize, BristleconeVariousShapes) {
  for (auto [m, n] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
    for (int depth : {1, 4, 8, 13}) {
      Circuit c = generate_bristlecone_circuit(m, n, depth, 23 * m + depth);
      expect_equivalent(c, zeros(m * n));
    }
  }
}

TEST(Renormalize, SliceWithoutEntanglersIsPureScalar) {
  // depth-1 chain over 2 qubits: slices of qubits 0 and 1 carry the CZ;
  // a 1-layer 3-qubit chain leaves qubit 2 idle at odd layers
  Circuit c = generate_chain_circuit(3, 1, 7);
  TensorNetwork net = circuit_to_network(c, "000");
  SlicePlan plan = build_slice_plan(net, c.layout);
  auto r = build_slice_gate(net, plan, 2);  // qubit 2: no CZ at layer 0
  EXPECT_TRUE(r.gates.empty());
  EXPECT_GT(std::abs(r.scalar), 0.0);
}

TEST(Renormalize, CapRejectsOversizedPlans) {
  Circuit c;
  c.layout = Layout::chain(1000);
  c.depth = 50;
  // no gates needed: the cap check precedes network construction
  RenormalizeOptions opts;
  opts.memory_cap_qubits = 48;
  try {
    for (int d = 0; d < 50; ++d)
      for (auto [a, b] : cz_edges(c.layout, d))
        c.gates.push_back(Gate::cz(a, b, cz_depth_index(d)));
    renormalize(c, zeros(1000), opts);
    FAIL() << "expected ResourceLimit";
  } catch (const ResourceLimit& e) {
    EXPECT_NE(std::string(e.what()).find("k=50"), std::string::npos);
  }
}

TEST(Renormalize, MostGatesAreDiagonal) {
  Circuit c = generate_grid_circuit(4, 4, 8, 3);
  const LogicalCircuit lc = renormalize(c, zeros(16));
  int diag = 0, dense = 0, nonunitary = 0;
  for (const LogicalGate& g : lc.gates) {
    (g.diagonal ? diag : dense)++;
    if (!g.unitary) ++nonunitary;
  }
  EXPECT_GT(diag, dense);
  EXPECT_GT(nonunitary, 0);
}

TEST(Teleport, RewriteUsesOneLogicalQubit) {
  const Mat2 h{cplx(M_SQRT1_2), cplx(M_SQRT1_2), cplx(M_SQRT1_2),
               cplx(-M_SQRT1_2)};
  for (const Mat2& prep : {kIdentity2, h}) {
    Circuit c = make_teleport_circuit(prep);
    for (int bits = 0; bits < 8; ++bits) {
      std::string outcome = {bits & 1 ? '1' : '0', bits & 2 ? '1' : '0',
                             bits & 4 ? '1' : '0'};
      const cplx direct = amplitude_direct(c, outcome).value;
      const LogicalCircuit lc = teleport_rewrite(prep, outcome);
      EXPECT_EQ(lc.k, 1);
      for (const LogicalGate& g : lc.gates) EXPECT_EQ(g.arity(), 1);
      const cplx trans = amplitude_transversal(lc).value;
      EXPECT_NEAR(std::abs(direct - trans), 0.0, 1e-12)
          << "outcome " << outcome;
    }
  }
}

TEST(Renormalize, SliceGateReplacementPreservesContraction) {
  // every produced gate, applied in order on the logical state, must
  // reproduce the brute-force contraction of the full network
  Circuit c = generate_chain_circuit(4, 2, 9);
  const std::string outcome = "0010";
  TensorNetwork net = circuit_to_network(c, outcome);
  const cplx whole = contract_pairwise(net);
  const LogicalCircuit lc = renormalize(c, outcome);
  const cplx trans = amplitude_transversal(lc).value;
  EXPECT_NEAR(std::abs(whole - trans), 0.0, 1e-10);
}

}  // namespace
}  // namespace tqsim
