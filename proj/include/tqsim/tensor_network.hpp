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
#include <array>
#include <string>
#include <vector>

#include "tqsim/circuit.hpp"

namespace tqsim {

enum class WireKind { world_line, entangling_line, boundary };

enum class NodeKind { single_q, copy, phase, cap_in, cap_out, generic };

/// All wires carry dimension-2 indices.  A wire normally joins two legs;
/// one endpoint means a dangling (open) leg.
struct TWire {
  int id = -1;
  WireKind kind = WireKind::world_line;
  // (node id, leg position) endpoints; size 1 or 2
  std::vector<std::pair<int, int>> ends;
};

struct TNode {
  int id = -1;
  NodeKind kind = NodeKind::generic;
  int qubit = -1;      // world-line owner; -1 for phase/generic
  int layer = -1;      // CZ layer for copy nodes
  int partner = -1;    // the other copy node of the same CZ
  bool alive = true;
  std::vector<int> wires;       // legs, in order
  Mat2 mat = kIdentity2;        // single_q / phase
  Vec2 vec{cplx(1), cplx(0)};   // caps
  std::vector<cplx> dense;      // generic: 2^rank entries, leg 0 = bit 0

  int rank() const { return static_cast<int>(wires.size()); }

  /// Tensor entry for a full assignment of this node's legs
  /// (bit i of `idx` = value on leg i).
  cplx entry(unsigned idx) const {
    switch (kind) {
      case NodeKind::single_q: {
        // legs: (in, out); matrix element <out|M|in>
        unsigned in = idx & 1u, out = (idx >> 1) & 1u;
        return mat[2 * out + in];
      }
      case NodeKind::copy: {
        unsigned a = idx & 1u, b = (idx >> 1) & 1u, c = (idx >> 2) & 1u;
        return (a == b && b == c) ? cplx(1) : cplx(0);
      }
      case NodeKind::phase: {
        unsigned a = idx & 1u, b = (idx >> 1) & 1u;
        return mat[2 * a + b];
      }
      case NodeKind::cap_in:
      case NodeKind::cap_out:
        return vec[idx & 1u];
      case NodeKind::generic:
        return dense[idx];
    }
    return cplx(0);
  }
};

struct TensorNetwork {
  std::vector<TNode> nodes;
  std::vector<TWire> wires;
  int qubit_count = 0;
  std::string outcome;
  // node ids along each qubit's time line, caps included
  std::vector<std::vector<int>> world_lines;

  int add_wire(WireKind kind) {
    TWire w;
    w.id = static_cast<int>(wires.size());
    w.kind = kind;
    wires.push_back(w);
    return w.id;
  }

  int add_node(TNode n) {
    n.id = static_cast<int>(nodes.size());
    for (std::size_t leg = 0; leg < n.wires.size(); ++leg)
      wires[n.wires[leg]].ends.emplace_back(n.id, static_cast<int>(leg));
    nodes.push_back(std::move(n));
    return nodes.back().id;
  }

  int open_leg_count() const {
    int open = 0;
    for (const TWire& w : wires)
      if (!w.ends.empty() && w.ends.size() < 2) ++open;
    return open;
  }
};

/// The exact CZ factorization: two 3-leg copy tensors joined through the
/// phase matrix P, P[a][b] = (-1)^(a*b).  Recombining the three pieces
/// over the internal pair of indices gives back diag(1,1,1,-1).
struct CzPieces {
  std::array<cplx, 8> copy_left;   // delta_{abc}, index bits (a,b,c)
  Mat2 p;
  std::array<cplx, 8> copy_right;
};

inline CzPieces cz_decompose() {
  CzPieces out;
  out.copy_left.fill(cplx(0));
  out.copy_left[0b000] = 1.0;
  out.copy_left[0b111] = 1.0;
  out.copy_right = out.copy_left;
  out.p = kPhaseP;
  return out;
}

/// Translate a circuit plus a measured outcome into its closed tensor
/// network: |0> caps, one node per single-qubit gate, CZs in
/// copy-P-copy form, <bit| caps fixed by `outcome` (qubit q = outcome[q]).
inline TensorNetwork circuit_to_network(const Circuit& c,
                                        const std::string& outcome) {
  const int nq = c.qubit_count();
  require(static_cast<int>(outcome.size()) == nq,
          "outcome length must equal qubit count");
  for (char ch : outcome)
    require(ch == '0' || ch == '1', "outcome must be a bitstring");

  TensorNetwork net;
  net.qubit_count = nq;
  net.outcome = outcome;
  net.world_lines.resize(nq);

  std::vector<int> cur(nq);  // current open world-line wire per qubit
  for (int q = 0; q < nq; ++q) {
    cur[q] = net.add_wire(WireKind::boundary);
    TNode cap;
    cap.kind = NodeKind::cap_in;
    cap.qubit = q;
    cap.vec = Vec2{cplx(1), cplx(0)};
    cap.wires = {cur[q]};
    net.world_lines[q].push_back(net.add_node(cap));
  }

  std::vector<Gate> ordered = c.gates;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Gate& x, const Gate& y) {
                     return x.depth_index < y.depth_index;
                   });

  for (const Gate& g : ordered) {
    if (g.kind == GateKind::single_qubit) {
      int w_out = net.add_wire(WireKind::world_line);
      TNode n;
      n.kind = NodeKind::single_q;
      n.qubit = g.a;
      n.mat = g.matrix;
      n.wires = {cur[g.a], w_out};
      net.world_lines[g.a].push_back(net.add_node(n));
      cur[g.a] = w_out;
    } else {
      const int layer = (g.depth_index - 1) / 2;
      int out_a = net.add_wire(WireKind::world_line);
      int out_b = net.add_wire(WireKind::world_line);
      int ent_a = net.add_wire(WireKind::entangling_line);
      int ent_b = net.add_wire(WireKind::entangling_line);
      TNode ca;
      ca.kind = NodeKind::copy;
      ca.qubit = g.a;
      ca.layer = layer;
      ca.wires = {cur[g.a], out_a, ent_a};
      int ca_id = net.add_node(ca);
      TNode cb;
      cb.kind = NodeKind::copy;
      cb.qubit = g.b;
      cb.layer = layer;
      cb.wires = {cur[g.b], out_b, ent_b};
      int cb_id = net.add_node(cb);
      net.nodes[ca_id].partner = cb_id;
      net.nodes[cb_id].partner = ca_id;
      TNode p;
      p.kind = NodeKind::phase;
      p.mat = kPhaseP;
      p.wires = {ent_a, ent_b};
      net.add_node(p);
      net.world_lines[g.a].push_back(ca_id);
      net.world_lines[g.b].push_back(cb_id);
      cur[g.a] = out_a;
      cur[g.b] = out_b;
    }
  }

  for (int q = 0; q < nq; ++q) {
    TNode cap;
    cap.kind = NodeKind::cap_out;
    cap.qubit = q;
    cap.vec = outcome[q] == '0' ? Vec2{cplx(1), cplx(0)}
                                : Vec2{cplx(0), cplx(1)};
    cap.wires = {cur[q]};
    net.wires[cur[q]].kind = WireKind::boundary;
    net.world_lines[q].push_back(net.add_node(cap));
  }
  return net;
}

namespace detail {

/// Dense data of a node, leg i = bit i of the index.
inline std::vector<cplx> node_dense(const TNode& n) {
  std::vector<cplx> out(std::size_t{1} << n.rank());
  for (unsigned idx = 0; idx < out.size(); ++idx) out[idx] = n.entry(idx);
  return out;
}

}  // namespace detail

/// Split one node exactly across a leg partition: the two halves join
/// over a fresh dimension-2 wire and recombine to the original tensor.
/// Requires the tensor to have rank at most 2 across the partition
/// (products, copy tensors and CZ-like tensors all do).
///
/// Returns (left node id, right node id).
inline std::pair<int, int> split_node(TensorNetwork& net, int node_id,
                                      const std::vector<int>& left_legs) {
  TNode& src = net.nodes[node_id];
  require(src.alive, "node already removed");
  const int rank = src.rank();
  std::vector<int> right_legs;
  {
    std::vector<bool> is_left(rank, false);
    for (int leg : left_legs) {
      require(leg >= 0 && leg < rank, "leg out of range");
      is_left[leg] = true;
    }
    for (int i = 0; i < rank; ++i)
      if (!is_left[i]) right_legs.push_back(i);
  }
  require(!left_legs.empty() && !right_legs.empty(),
          "both sides of the partition must be nonempty");

  const std::vector<cplx> data = detail::node_dense(src);
  const std::size_t rows = std::size_t{1} << left_legs.size();
  const std::size_t cols = std::size_t{1} << right_legs.size();

  // Matricize: row bits follow left_legs order, column bits right_legs.
  std::vector<cplx> mtx(rows * cols);
  for (unsigned idx = 0; idx < data.size(); ++idx) {
    std::size_t r = 0, cc = 0;
    for (std::size_t i = 0; i < left_legs.size(); ++i)
      r |= ((idx >> left_legs[i]) & 1u) << i;
    for (std::size_t i = 0; i < right_legs.size(); ++i)
      cc |= ((idx >> right_legs[i]) & 1u) << i;
    mtx[r * cols + cc] = data[idx];
  }

  // Exact rank-<=2 factorization: pick up to two pivot columns, then
  // express every column in their span.
  constexpr double kTol = 1e-12;
  std::vector<std::size_t> pivots;
  std::vector<cplx> u;  // rows x rank, column-major
  for (std::size_t c = 0; c < cols && pivots.size() < 2; ++c) {
    std::vector<cplx> col(rows);
    for (std::size_t r = 0; r < rows; ++r) col[r] = mtx[r * cols + c];
    std::vector<cplx> resid = col;
    if (pivots.size() == 1) {
      // subtract the projection-free exact solve below instead; here we
      // only need independence, test via 2x2 minors against pivot 0
      bool indep = false;
      for (std::size_t r1 = 0; r1 < rows && !indep; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < rows && !indep; ++r2) {
          cplx det = u[r1] * col[r2] - u[r2] * col[r1];
          if (std::abs(det) > kTol) indep = true;
        }
      if (!indep) continue;
    } else {
      double norm = 0;
      for (const cplx& e : resid) norm = std::max(norm, std::abs(e));
      if (norm <= kTol) continue;
    }
    pivots.push_back(c);
    u.resize(rows * pivots.size());
    for (std::size_t r = 0; r < rows; ++r)
      u[(pivots.size() - 1) * rows + r] = col[r];
  }

  // Verify the remaining columns lie in the pivot span and solve for V.
  const std::size_t rk = pivots.size();
  std::vector<cplx> v(2 * cols, cplx(0));  // wire dim is always 2
  if (rk == 1) {
    // find anchor row with the largest pivot entry
    std::size_t anchor = 0;
    for (std::size_t r = 1; r < rows; ++r)
      if (std::abs(u[r]) > std::abs(u[anchor])) anchor = r;
    for (std::size_t c = 0; c < cols; ++c)
      v[c] = mtx[anchor * cols + c] / u[anchor];
  } else if (rk == 2) {
    // anchor rows giving the best-conditioned 2x2 system
    std::size_t r1 = 0, r2 = 1;
    double best = -1;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < rows; ++j) {
        cplx det = u[i] * u[rows + j] - u[j] * u[rows + i];
        if (std::abs(det) > best) {
          best = std::abs(det);
          r1 = i;
          r2 = j;
        }
      }
    require(best > kTol, "tensor does not factor over a 2-dim wire");
    const cplx a = u[r1], b = u[rows + r1], cc2 = u[r2], d = u[rows + r2];
    const cplx det = a * d - b * cc2;
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx y1 = mtx[r1 * cols + c], y2 = mtx[r2 * cols + c];
      v[c] = (d * y1 - b * y2) / det;
      v[cols + c] = (a * y2 - cc2 * y1) / det;
    }
  }

  // residual check: U*V must reproduce the matricization
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      cplx rec(0);
      for (std::size_t t = 0; t < rk; ++t) rec += u[t * rows + r] * v[t * cols + c];
      require(std::abs(rec - mtx[r * cols + c]) <= 1e-9,
              "tensor does not factor over a 2-dim wire");
    }

  const int bond = net.add_wire(WireKind::entangling_line);

  TNode left;
  left.kind = NodeKind::generic;
  left.qubit = src.qubit;
  left.dense.assign(rows * 2, cplx(0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t t = 0; t < rk; ++t)
      left.dense[(t << left_legs.size()) | r] = u[t * rows + r];
  for (int leg : left_legs) left.wires.push_back(src.wires[leg]);
  left.wires.push_back(bond);

  TNode right;
  right.kind = NodeKind::generic;
  right.qubit = src.qubit;
  right.dense.assign(2 * cols, cplx(0));
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t t = 0; t < rk; ++t)
      right.dense[(c << 1) | t] = v[t * cols + c];
  right.wires.push_back(bond);
  for (int leg : right_legs) right.wires.push_back(src.wires[leg]);

  // Detach the source and splice in the halves.
  for (std::size_t leg = 0; leg < src.wires.size(); ++leg) {
    TWire& w = net.wires[src.wires[leg]];
    w.ends.erase(std::remove(w.ends.begin(), w.ends.end(),
                             std::make_pair(node_id, static_cast<int>(leg))),
                 w.ends.end());
  }
  src.alive = false;
  int left_id = net.add_node(left);
  int right_id = net.add_node(right);
  return {left_id, right_id};
}

/// Join two dangling legs through a 2x2 bridge matrix on a fresh wire.
/// `dim` must be 2 (the wire dimension of this network family).
/// Bridge entry convention: T(a_side_bit, b_side_bit) = m[2*a + b].
inline int connect_nodes(TensorNetwork& net, int wire_a, int wire_b,
                         const Mat2& m, int dim = 2) {
  require(dim == 2, "bridge dimension must be 2");
  require(wire_a >= 0 && wire_a < static_cast<int>(net.wires.size()) &&
              wire_b >= 0 && wire_b < static_cast<int>(net.wires.size()),
          "bridge wires out of range");
  require(net.wires[wire_a].ends.size() == 1 &&
              net.wires[wire_b].ends.size() == 1,
          "connect_nodes needs one dangling leg on each side");
  TNode bridge;
  bridge.kind = NodeKind::phase;
  bridge.mat = m;
  bridge.wires = {wire_a, wire_b};
  return net.add_node(bridge);
}

/// Contract two nodes over every wire they share, replacing them with a
/// single generic node.  Used to undo split_node in round-trip checks.
inline int merge_nodes(TensorNetwork& net, int id_a, int id_b) {
  const TNode a = net.nodes[id_a];
  const TNode b = net.nodes[id_b];
  require(a.alive && b.alive, "node already removed");

  std::vector<int> shared;
  for (int wa : a.wires)
    for (int wb : b.wires)
      if (wa == wb && std::find(shared.begin(), shared.end(), wa) ==
                          shared.end())
        shared.push_back(wa);
  require(!shared.empty(), "nodes share no wire");

  std::vector<int> a_keep, b_keep;  // leg positions kept
  for (int i = 0; i < a.rank(); ++i)
    if (std::find(shared.begin(), shared.end(), a.wires[i]) == shared.end())
      a_keep.push_back(i);
  for (int i = 0; i < b.rank(); ++i)
    if (std::find(shared.begin(), shared.end(), b.wires[i]) == shared.end())
      b_keep.push_back(i);

  TNode merged;
  merged.kind = NodeKind::generic;
  merged.qubit = a.qubit;
  for (int i : a_keep) merged.wires.push_back(a.wires[i]);
  for (int i : b_keep) merged.wires.push_back(b.wires[i]);
  merged.dense.assign(std::size_t{1} << merged.wires.size(), cplx(0));

  const std::size_t n_shared = shared.size();
  for (unsigned keep = 0; keep < merged.dense.size(); ++keep) {
    cplx acc(0);
    for (unsigned s = 0; s < (1u << n_shared); ++s) {
      unsigned ia = 0, ib = 0;
      for (std::size_t i = 0; i < a_keep.size(); ++i)
        ia |= ((keep >> i) & 1u) << a_keep[i];
      for (std::size_t i = 0; i < b_keep.size(); ++i)
        ib |= ((keep >> (a_keep.size() + i)) & 1u) << b_keep[i];
      for (std::size_t i = 0; i < n_shared; ++i) {
        unsigned bit = (s >> i) & 1u;
        for (int leg = 0; leg < a.rank(); ++leg)
          if (a.wires[leg] == shared[i]) ia |= bit << leg;
        for (int leg = 0; leg < b.rank(); ++leg)
          if (b.wires[leg] == shared[i]) ib |= bit << leg;
      }
      acc += a.entry(ia) * b.entry(ib);
    }
    merged.dense[keep] = acc;
  }

  for (int id : {id_a, id_b}) {
    TNode& n = net.nodes[id];
    for (std::size_t leg = 0; leg < n.wires.size(); ++leg) {
      TWire& w = net.wires[n.wires[leg]];
      w.ends.erase(std::remove(w.ends.begin(), w.ends.end(),
                               std::make_pair(id, static_cast<int>(leg))),
                   w.ends.end());
    }
    n.alive = false;
  }
  return net.add_node(merged);
}

}  // namespace tqsim
