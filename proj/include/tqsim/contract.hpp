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

#include "tqsim/tensor_network.hpp"

namespace tqsim {

/// Brute-force oracle: contract a closed network by explicit summation
/// over every internal index, wires enumerated in ascending id order.
/// Exponential in the wire count; guarded by `max_terms`.
inline cplx brute_force_contract(const TensorNetwork& net,
                                 std::uint64_t max_terms = (1ull << 26)) {
  require(net.open_leg_count() == 0,
          "network has open legs; close it with boundary caps first");

  std::vector<int> live_wires;
  for (const TWire& w : net.wires)
    if (w.ends.size() == 2) live_wires.push_back(w.id);
  const std::size_t n_wires = live_wires.size();
  if (n_wires >= 63 || (std::uint64_t{1} << n_wires) > max_terms)
    throw ResourceLimit("brute-force contraction needs 2^" +
                        std::to_string(n_wires) +
                        " terms, above the configured bound");

  // Wire id -> position in the assignment word.
  std::vector<int> pos(net.wires.size(), -1);
  for (std::size_t i = 0; i < n_wires; ++i) pos[live_wires[i]] = static_cast<int>(i);

  std::vector<const TNode*> alive;
  for (const TNode& n : net.nodes)
    if (n.alive) alive.push_back(&n);

  cplx total(0);
  const std::uint64_t n_assign = std::uint64_t{1} << n_wires;
  for (std::uint64_t a = 0; a < n_assign; ++a) {
    cplx term(1);
    for (const TNode* n : alive) {
      unsigned idx = 0;
      for (int leg = 0; leg < n->rank(); ++leg)
        idx |= static_cast<unsigned>((a >> pos[n->wires[leg]]) & 1u) << leg;
      term *= n->entry(idx);
      if (term == cplx(0)) break;
    }
    total += term;
  }
  return total;
}

namespace detail {

/// Trace out wires that appear on two legs of the same node.
inline void trace_self_loops(TensorNetwork& net, int id) {
  for (;;) {
    TNode& n = net.nodes[id];
    int loop_wire = -1;
    for (int i = 0; i < n.rank() && loop_wire < 0; ++i)
      for (int j = i + 1; j < n.rank(); ++j)
        if (n.wires[i] == n.wires[j]) {
          loop_wire = n.wires[i];
          break;
        }
    if (loop_wire < 0) return;

    std::vector<int> keep;
    for (int i = 0; i < n.rank(); ++i)
      if (n.wires[i] != loop_wire) keep.push_back(i);
    TNode traced;
    traced.kind = NodeKind::generic;
    traced.qubit = n.qubit;
    for (int i : keep) traced.wires.push_back(n.wires[i]);
    traced.dense.assign(std::size_t{1} << keep.size(), cplx(0));
    for (unsigned out = 0; out < traced.dense.size(); ++out) {
      for (unsigned b = 0; b < 2; ++b) {
        unsigned idx = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
          idx |= ((out >> i) & 1u) << keep[i];
        for (int i = 0; i < n.rank(); ++i)
          if (n.wires[i] == loop_wire) idx |= b << i;
        traced.dense[out] += n.entry(idx);
      }
    }
    for (std::size_t leg = 0; leg < n.wires.size(); ++leg) {
      TWire& w = net.wires[n.wires[leg]];
      w.ends.erase(std::remove(w.ends.begin(), w.ends.end(),
                               std::make_pair(id, static_cast<int>(leg))),
                   w.ends.end());
    }
    n.alive = false;
    id = net.add_node(traced);
  }
}

}  // namespace detail

/// Second, independent contraction route: eliminate wires pairwise in
/// ascending wire-id order.  Agrees with brute_force_contract within
/// accumulated rounding; used for order-independence checks and for
/// networks too large to enumerate.
inline cplx contract_pairwise(TensorNetwork net) {
  for (;;) {
    int wire = -1;
    for (const TWire& w : net.wires)
      if (w.ends.size() == 2) {
        wire = w.id;
        break;
      }
    if (wire < 0) break;
    const auto& ends = net.wires[wire].ends;
    if (ends[0].first == ends[1].first) {
      detail::trace_self_loops(net, ends[0].first);
    } else {
      int merged = merge_nodes(net, ends[0].first, ends[1].first);
      detail::trace_self_loops(net, merged);
    }
  }
  require(net.open_leg_count() == 0, "network has open legs");
  cplx total(1);
  for (const TNode& n : net.nodes)
    if (n.alive) {
      require(n.rank() == 0, "contraction left a non-scalar node");
      total *= n.entry(0);
    }
  return total;
}

}  // namespace tqsim
