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

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tqsim/schedule.hpp"
#include "tqsim/tensor_network.hpp"

namespace tqsim {

/// Logical-qubit budget of a layout/depth pair, computed from the CZ
/// schedule alone (no tensors, no simulation).
///
/// Entangling layers are grouped into blocks (each layer on a chain,
/// 8-layer windows in 2D); a block contributes the largest number of
/// slice-crossing bonds it places on any single slice boundary.  Blocks
/// whose layers produce no crossing bonds (e.g. a trailing window that
/// only contains row-internal patterns) contribute nothing.
struct PlanSummary {
  int k = 0;
  int slices = 0;
  std::vector<int> block_width;  // per block contribution
  std::vector<int> block_base;   // first slot of each block

  /// State memory for 2^k complex doubles.
  double state_bytes() const { return 16.0 * std::pow(2.0, k); }
};

inline PlanSummary plan_logical_qubits(const Layout& layout, int depth) {
  require(depth >= 1, "depth must be at least 1");
  PlanSummary out;
  out.slices = layout.slice_count();
  const int n_blocks = block_of_layer(layout, depth - 1) + 1;
  out.block_width.assign(n_blocks, 0);

  // crossing counts per (block, boundary)
  std::vector<std::map<int, int>> counts(n_blocks);
  for (int layer = 0; layer < depth; ++layer) {
    const int block = block_of_layer(layout, layer);
    for (auto [a, b] : cz_edges(layout, layer)) {
      const int sa = layout.slice_of(a), sb = layout.slice_of(b);
      if (sa == sb) continue;
      require(std::abs(sa - sb) == 1, "schedule produced a non-adjacent CZ");
      ++counts[block][std::min(sa, sb)];
    }
  }
  for (int b = 0; b < n_blocks; ++b) {
    int width = 0;
    for (auto [boundary, cnt] : counts[b]) width = std::max(width, cnt);
    out.block_width[b] = width;
    out.block_base.push_back(out.k);
    out.k += width;
  }
  return out;
}

/// How state-vector slots are handed out to crossing wires.
///
/// per_identity matches the logical-qubit accounting above (one slot per
/// (block, intra-block position), fixed for the whole run).  greedy_reuse
/// frees a slot as soon as its wire is consumed and lets a directly
/// connected continuation inherit it; it realizes the minimal width and
/// is what the single-logical-qubit teleportation rewrite uses.
enum class SlotPolicy { per_identity, greedy_reuse };

/// One entangling line crossing a slice boundary.
struct PlanWire {
  int id = -1;
  int layer = -1;
  int block = -1;
  int boundary = -1;   // crosses between slices (boundary, boundary+1)
  int slot = -1;
  int out_node = -1;   // copy node on the creating (lower) slice
  int in_node = -1;    // copy node on the consuming slice
};

struct SlicePlan {
  Layout layout;
  int depth = 0;
  int k = 0;
  int slices = 0;
  std::vector<PlanWire> wires;
  std::vector<std::vector<int>> out_wires_of_slice;  // created by slice s
  std::vector<std::vector<int>> in_wires_of_slice;   // consumed by slice s
  std::vector<int> wire_of_copy_node;  // node id -> wire id, -1 if internal
  std::vector<int> slice_of_node;      // every node's slice

  /// Largest number of wires crossing any single boundary — the realized
  /// simultaneous logical-wire demand.
  int max_boundary_crossing() const {
    std::map<int, int> per_boundary;
    int best = 0;
    for (const PlanWire& w : wires)
      best = std::max(best, ++per_boundary[w.boundary]);
    return best;
  }
};

/// Assign every tensor to a slice and every crossing entangling line to
/// a state-vector slot.  Fails (plan-failure) if a CZ spans non-adjacent
/// slices.
inline SlicePlan build_slice_plan(const TensorNetwork& net,
                                  const Layout& layout,
                                  SlotPolicy policy = SlotPolicy::per_identity) {
  SlicePlan plan;
  plan.layout = layout;
  plan.slices = layout.slice_count();
  plan.slice_of_node.assign(net.nodes.size(), -1);
  plan.wire_of_copy_node.assign(net.nodes.size(), -1);
  plan.out_wires_of_slice.resize(plan.slices);
  plan.in_wires_of_slice.resize(plan.slices);

  int max_layer = -1;
  for (const TNode& n : net.nodes) {
    if (!n.alive) continue;
    if (n.qubit >= 0) plan.slice_of_node[n.id] = layout.slice_of(n.qubit);
    if (n.kind == NodeKind::copy) max_layer = std::max(max_layer, n.layer);
  }
  plan.depth = max_layer + 1;

  // Collect crossing CZs: (block, boundary) -> [(sort key, out node, in node, layer)]
  struct Raw {
    int sort_key;
    int out_node;
    int in_node;
    int layer;
  };
  std::map<std::pair<int, int>, std::vector<Raw>> groups;
  for (const TNode& n : net.nodes) {
    if (!n.alive || n.kind != NodeKind::copy || n.partner < n.id) continue;
    const TNode& pn = net.nodes[n.partner];
    const int sa = layout.slice_of(n.qubit), sb = layout.slice_of(pn.qubit);
    if (sa == sb) continue;  // slice-internal entangler
    if (std::abs(sa - sb) != 1)
      throw PlanFailure("CZ node " + std::to_string(n.id) +
                        " spans non-adjacent slices " + std::to_string(sa) +
                        " and " + std::to_string(sb));
    const TNode& out_copy = sa < sb ? n : pn;
    const TNode& in_copy = sa < sb ? pn : n;
    const int boundary = std::min(sa, sb);
    const int block = block_of_layer(layout, n.layer);
    const int key = std::min(layout.position(n.qubit).first,
                             layout.position(pn.qubit).first);
    groups[{block, boundary}].push_back(
        {key, out_copy.id, in_copy.id, n.layer});
  }

  if (policy == SlotPolicy::per_identity) {
    // Block widths from the realized crossings, block slots in
    // (block, intra-block position) lexicographic order.
    int n_blocks = 0;
    for (const auto& [bk, raws] : groups)
      n_blocks = std::max(n_blocks, bk.first + 1);
    std::vector<int> width(n_blocks, 0), base(n_blocks, 0);
    for (const auto& [bk, raws] : groups)
      width[bk.first] = std::max(width[bk.first],
                                 static_cast<int>(raws.size()));
    for (int b = 0; b < n_blocks; ++b) {
      base[b] = plan.k;
      plan.k += width[b];
    }
    for (auto& [bk, raws] : groups) {
      auto [block, boundary] = bk;
      std::sort(raws.begin(), raws.end(), [](const Raw& x, const Raw& y) {
        return std::pair(x.sort_key, x.layer) < std::pair(y.sort_key, y.layer);
      });
      for (std::size_t p = 0; p < raws.size(); ++p) {
        PlanWire w;
        w.id = static_cast<int>(plan.wires.size());
        w.layer = raws[p].layer;
        w.block = block;
        w.boundary = boundary;
        w.slot = base[block] + static_cast<int>(p);
        w.out_node = raws[p].out_node;
        w.in_node = raws[p].in_node;
        plan.wires.push_back(w);
      }
    }
  } else {
    // Greedy reuse, walking boundaries left to right.  An outgoing wire
    // inherits the slot of an incoming wire consumed by the same slice
    // when the two copy tensors sit adjacent on one world line (the
    // compiler fuses such pairs into a single-slot matrix); otherwise it
    // takes the lowest slot not in use on either side of the slice.
    std::map<int, std::vector<std::pair<int, Raw>>> by_boundary;
    for (auto& [bk, raws] : groups) {
      auto sorted = raws;
      std::sort(sorted.begin(), sorted.end(), [](const Raw& x, const Raw& y) {
        return std::pair(x.sort_key, x.layer) < std::pair(y.sort_key, y.layer);
      });
      for (const Raw& r : sorted)
        by_boundary[bk.second].push_back({bk.first, r});
    }
    int k_needed = 0;
    for (auto& [boundary, raws] : by_boundary) {
      std::map<int, int> inherit;  // consuming copy node -> releasable slot
      std::vector<bool> blocked(256, false);  // held through this slice
      if (boundary > 0) {
        for (const PlanWire& w : plan.wires)
          if (w.boundary == boundary - 1) {
            blocked[w.slot] = true;
            inherit[w.in_node] = w.slot;
          }
      }
      std::vector<bool> taken(256, false);  // assigned on this boundary
      for (auto& [block, raw] : raws) {
        int slot = -1;
        // neighboring copy on the out-copy's world line, skipping
        // single-qubit nodes
        const TNode& out_copy = net.nodes[raw.out_node];
        const auto& wl = net.world_lines[out_copy.qubit];
        auto it = std::find(wl.begin(), wl.end(), out_copy.id);
        const std::size_t i = static_cast<std::size_t>(it - wl.begin());
        for (int dir : {1, -1}) {
          for (std::size_t j = i + dir; j < wl.size();
               j = static_cast<std::size_t>(j + dir)) {
            const TNode& nb = net.nodes[wl[j]];
            if (nb.kind == NodeKind::single_q) continue;
            auto found = inherit.find(nb.id);
            if (found != inherit.end() && !taken[found->second])
              slot = found->second;
            break;
          }
          if (slot >= 0) break;
        }
        if (slot < 0) {
          slot = 0;
          while (blocked[slot] || taken[slot]) ++slot;
        }
        taken[slot] = true;
        PlanWire w;
        w.id = static_cast<int>(plan.wires.size());
        w.layer = raw.layer;
        w.block = block;
        w.boundary = boundary;
        w.slot = slot;
        w.out_node = raw.out_node;
        w.in_node = raw.in_node;
        plan.wires.push_back(w);
        k_needed = std::max(k_needed, slot + 1);
      }
    }
    plan.k = k_needed;
  }

  for (const PlanWire& w : plan.wires) {
    plan.wire_of_copy_node[w.out_node] = w.id;
    plan.wire_of_copy_node[w.in_node] = w.id;
    plan.out_wires_of_slice[w.boundary].push_back(w.id);
    plan.in_wires_of_slice[w.boundary + 1].push_back(w.id);
  }
  return plan;
}

}  // namespace tqsim
