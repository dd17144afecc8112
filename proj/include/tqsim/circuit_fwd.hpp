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
#include <vector>

#include "tqsim/gates.hpp"
#include "tqsim/layout.hpp"
#include "tqsim/linalg.hpp"

namespace tqsim {

enum class GateKind { single_qubit, cz };

struct Gate {
  GateKind kind = GateKind::single_qubit;
  int a = 0;           // target (single) or low qubit (cz)
  int b = -1;          // high qubit (cz only)
  int depth_index = 0;
  Mat2 matrix = kIdentity2;  // single-qubit only

  static Gate single(int q, int depth_index, const Mat2& m) {
    Gate g;
    g.kind = GateKind::single_qubit;
    g.a = q;
    g.depth_index = depth_index;
    g.matrix = m;
    return g;
  }

  static Gate cz(int a, int b, int depth_index) {
    Gate g;
    g.kind = GateKind::cz;
    g.a = a < b ? a : b;
    g.b = a < b ? b : a;
    g.depth_index = depth_index;
    return g;
  }

  std::vector<int> targets() const {
    return kind == GateKind::cz ? std::vector<int>{a, b}
                                : std::vector<int>{a};
  }
};

/// Ordered gate list over a physical layout.  depth counts CZ layers.
struct Circuit {
  Layout layout;
  int depth = 0;
  std::uint64_t seed = 0;
  GateSet gate_set = GateSet::haar;
  std::vector<Gate> gates;

  int qubit_count() const { return layout.qubit_count(); }
};

}  // namespace tqsim
