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

#include <sstream>
#include <string>
#include <vector>

#include "tqsim/rewrite.hpp"
#include "tqsim/statevector.hpp"

namespace tqsim {

/// One randomized equivalence trial: the same amplitude along the
/// direct (Schrodinger) and transversal (renormalized) paths.
struct FuzzCase {
  int trial = 0;
  LayoutKind kind = LayoutKind::chain;
  int m = 0;
  int n = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::string outcome;
  cplx expected{0, 0};  // direct oracle
  cplx actual{0, 0};    // transversal
  double error = 0;
  bool pass = false;
};

struct FuzzBounds {
  int chain_max_n = 12;
  int chain_max_depth = 8;
  int grid_max_mn = 4;
  int grid_max_depth = 16;
  int bris_max_mn = 4;
  int bris_max_depth = 16;
  int physical_cap = 16;  // direct path memory guard
  int logical_cap = 20;   // transversal path memory guard
  double tolerance = 1e-10;
};

struct FuzzReport {
  std::vector<FuzzCase> cases;
  int failures = 0;
};

/// Run randomized direct-vs-transversal amplitude comparisons across all
/// three circuit families.  `inject_fault` corrupts one logical gate per
/// trial to prove the harness can see a broken rewrite.
inline FuzzReport fuzz_equivalence(int trials, const FuzzBounds& bounds,
                                   std::uint64_t seed,
                                   bool inject_fault = false) {
  FuzzReport report;
  Xoshiro256 rng = make_rng(seed, RngStream::fuzz_cases);
  for (int trial = 0; trial < trials; ++trial) {
    FuzzCase fc;
    fc.trial = trial;
    for (int attempt = 0;; ++attempt) {
      require(attempt < 64, "could not draw a case within the bounds");
      switch (trial % 3) {
        case 0: {
          fc.kind = LayoutKind::chain;
          fc.m = 2 + static_cast<int>(rng.next_below(bounds.chain_max_n - 1));
          fc.n = 1;
          fc.depth =
              1 + static_cast<int>(rng.next_below(bounds.chain_max_depth));
          break;
        }
        case 1: {
          fc.kind = LayoutKind::grid;
          fc.n = 2 + static_cast<int>(rng.next_below(bounds.grid_max_mn - 1));
          fc.m = fc.n +
                 static_cast<int>(rng.next_below(bounds.grid_max_mn - fc.n + 1));
          fc.depth =
              1 + static_cast<int>(rng.next_below(bounds.grid_max_depth));
          break;
        }
        default: {
          fc.kind = LayoutKind::bristlecone;
          fc.n = 2 + static_cast<int>(rng.next_below(bounds.bris_max_mn - 1));
          fc.m = fc.n +
                 static_cast<int>(rng.next_below(bounds.bris_max_mn - fc.n + 1));
          fc.depth =
              1 + static_cast<int>(rng.next_below(bounds.bris_max_depth));
          break;
        }
      }
      Layout layout = fc.kind == LayoutKind::chain
                          ? Layout::chain(fc.m)
                          : fc.kind == LayoutKind::grid
                                ? Layout::grid(fc.m, fc.n)
                                : Layout::bristlecone(fc.m, fc.n);
      if (layout.qubit_count() > bounds.physical_cap) continue;
      if (plan_logical_qubits(layout, fc.depth).k > bounds.logical_cap)
        continue;
      fc.seed = rng.next_u64();
      fc.outcome.clear();
      for (int q = 0; q < layout.qubit_count(); ++q)
        fc.outcome.push_back(rng.next_below(2) ? '1' : '0');

      Circuit circuit = generate_circuit(layout, fc.depth, fc.seed);
      fc.expected =
          amplitude_direct(circuit, fc.outcome, bounds.physical_cap).value;
      RenormalizeOptions opts;
      opts.memory_cap_qubits = bounds.logical_cap;
      LogicalCircuit lc = renormalize(circuit, fc.outcome, opts);
      if (inject_fault && !lc.gates.empty()) {
        LogicalGate& g = lc.gates[lc.gates.size() / 2];
        if (g.diagonal)
          g.diag[0] += 0.25;
        else
          g.matrix.data[0] += 0.25;
      }
      fc.actual = amplitude_transversal(lc, bounds.logical_cap).value;
      fc.error = std::abs(fc.expected - fc.actual);
      fc.pass = fc.error < bounds.tolerance;
      break;
    }
    if (!fc.pass) ++report.failures;
    report.cases.push_back(fc);
  }
  return report;
}

/// One JSON object per case, failures and passes alike.
inline std::string fuzz_report_to_jsonl(const FuzzReport& report,
                                        bool failures_only = true) {
  std::ostringstream out;
  for (const FuzzCase& fc : report.cases) {
    if (failures_only && fc.pass) continue;
    json j{{"trial", fc.trial},
           {"layout", to_string(fc.kind)},
           {"m", fc.m},
           {"n", fc.n},
           {"depth", fc.depth},
           {"seed", fc.seed},
           {"outcome", fc.outcome},
           {"expected", complex_to_json(fc.expected)},
           {"actual", complex_to_json(fc.actual)},
           {"error", fc.error},
           {"pass", fc.pass}};
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace tqsim
