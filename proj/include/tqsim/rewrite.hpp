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

#include "tqsim/logical.hpp"
#include "tqsim/plan.hpp"

namespace tqsim {

// Slice compilation.
//
// Within one slice the contraction reduces to a factor graph over binary
// variables, one per copy tensor: world-line stretches between copies
// become 2x2 edge factors, the |0> / <bit| ends become vector factors,
// and each slice-internal CZ contributes its P matrix between two
// variables.  Variables on crossing entangling lines live in
// state-vector slots; the rest are summed out locally.  Gates emitted
// per slice are therefore 2x2 matrices (slot hand-offs), small diagonal
// factors (mostly non-unitary), and the intro/terminate pair that opens
// and closes a slot.  A slot that is closed holds the running sum in
// its |0> component, so terminated slots read as 1 under the final
// all-ones boundary projection.

struct CompileOptions {
  int max_arity = 6;
};

namespace detail {

enum class VarRole { incoming, outgoing, internal };

struct SliceVar {
  int id = -1;
  int node = -1;
  VarRole role = VarRole::internal;
  int slot = -1;      // designated (incoming/outgoing)
  int cur_slot = -1;  // actual while resident
  bool resident = false;
  bool consumed = false;
  int pending = 0;
  std::vector<int> factors;
};

enum class FactorKind { vec_cap, row_cap, segment, p_link };

struct SliceFactor {
  int id = -1;
  FactorKind kind = FactorKind::segment;
  int var_a = -1;  // caps: the var; segment: earlier copy; p_link: side a
  int var_b = -1;  // segment: later copy; p_link: side b
  Vec2 vec{cplx(0), cplx(0)};
  Mat2 mat = kIdentity2;  // segment: M[x_later][x_earlier]
  bool emitted = false;
  bool cluster_owned = false;
};

struct SliceResult {
  std::vector<LogicalGate> gates;
  cplx scalar{1.0, 0.0};
};

inline constexpr Mat2 kIntroGate{cplx(1), cplx(0), cplx(1), cplx(0)};
inline constexpr Mat2 kTermGate{cplx(1), cplx(1), cplx(0), cplx(0)};

class SliceCompiler {
 public:
  SliceCompiler(const TensorNetwork& net, const SlicePlan& plan,
                int slice, const CompileOptions& opts)
      : net_(net), plan_(plan), slice_(slice), opts_(opts) {}

  SliceResult run() {
    build_factor_graph();
    build_clusters();
    occupant_.assign(plan_.k, -1);
    consume_incoming_wires();
    emit_until_fixpoint();
    route_outgoing_wires();
    return std::move(result_);
  }

 private:
  // ---- factor graph construction ----

  void build_factor_graph() {
    for (int q = 0; q < net_.qubit_count; ++q) {
      if (plan_.layout.slice_of(q) != slice_) continue;
      walk_world_line(q);
    }
    // slice-internal entangling links
    for (const TNode& n : net_.nodes) {
      if (!n.alive || n.kind != NodeKind::copy || n.partner < n.id) continue;
      if (plan_.slice_of_node[n.id] != slice_ ||
          plan_.slice_of_node[n.partner] != slice_)
        continue;
      SliceFactor f;
      f.kind = FactorKind::p_link;
      f.var_a = var_of_node_.at(n.id);
      f.var_b = var_of_node_.at(n.partner);
      f.mat = kPhaseP;
      add_factor(f);
    }
  }

  void walk_world_line(int q) {
    Vec2 vec{cplx(1), cplx(0)};
    Mat2 seg = kIdentity2;
    int prev_var = -1;
    bool leading = true;
    for (int node_id : net_.world_lines[q]) {
      const TNode& n = net_.nodes[node_id];
      switch (n.kind) {
        case NodeKind::cap_in:
          vec = n.vec;
          break;
        case NodeKind::single_q:
          if (leading)
            vec = matvec(n.mat, vec);
          else
            seg = matmul(n.mat, seg);
          break;
        case NodeKind::copy: {
          const int v = add_var(node_id);
          if (leading) {
            SliceFactor f;
            f.kind = FactorKind::vec_cap;
            f.var_a = v;
            f.vec = vec;
            add_factor(f);
            leading = false;
          } else {
            SliceFactor f;
            f.kind = FactorKind::segment;
            f.var_a = prev_var;
            f.var_b = v;
            f.mat = seg;
            add_factor(f);
          }
          prev_var = v;
          seg = kIdentity2;
          break;
        }
        case NodeKind::cap_out: {
          if (leading) {
            // no entangler ever touched this world line
            const Vec2 row = n.vec;
            result_.scalar *= row[0] * vec[0] + row[1] * vec[1];
          } else {
            SliceFactor f;
            f.kind = FactorKind::row_cap;
            f.var_a = prev_var;
            f.vec = vecmat(n.vec, seg);
            add_factor(f);
          }
          break;
        }
        case NodeKind::phase:
        case NodeKind::generic:
          throw PlanFailure("unexpected node on a world line");
      }
    }
  }

  int add_var(int node_id) {
    SliceVar v;
    v.id = static_cast<int>(vars_.size());
    v.node = node_id;
    const int wire_id = plan_.wire_of_copy_node[node_id];
    if (wire_id >= 0) {
      const PlanWire& w = plan_.wires[wire_id];
      v.role = w.in_node == node_id ? VarRole::incoming : VarRole::outgoing;
      v.slot = w.slot;
    } else {
      v.role = VarRole::internal;
    }
    vars_.push_back(v);
    var_of_node_[node_id] = v.id;
    return v.id;
  }

  void add_factor(SliceFactor f) {
    f.id = static_cast<int>(factors_.size());
    for (int v : {f.var_a, f.var_b})
      if (v >= 0) {
        vars_[v].factors.push_back(f.id);
        ++vars_[v].pending;
      }
    factors_.push_back(std::move(f));
  }

  // Connected components of internal variables; each eliminates into one
  // diagonal factor over the adjacent slot variables.
  struct Cluster {
    std::vector<int> internal_vars;
    std::vector<int> boundary_vars;
    std::vector<int> factor_ids;
    bool emitted = false;
  };

  void build_clusters() {
    std::vector<int> comp(vars_.size(), -1);
    for (std::size_t seed = 0; seed < vars_.size(); ++seed) {
      if (vars_[seed].role != VarRole::internal || comp[seed] >= 0) continue;
      const int cid = static_cast<int>(clusters_.size());
      clusters_.emplace_back();
      std::vector<int> stack{static_cast<int>(seed)};
      comp[seed] = cid;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        clusters_[cid].internal_vars.push_back(v);
        for (int fid : vars_[v].factors) {
          SliceFactor& f = factors_[fid];
          if (f.cluster_owned) continue;
          f.cluster_owned = true;
          clusters_[cid].factor_ids.push_back(fid);
          for (int other : {f.var_a, f.var_b}) {
            if (other < 0 || other == v) continue;
            if (vars_[other].role == VarRole::internal) {
              if (comp[other] < 0) {
                comp[other] = cid;
                stack.push_back(other);
              }
            } else {
              clusters_[cid].boundary_vars.push_back(other);
            }
          }
        }
      }
      auto& b = clusters_[cid].boundary_vars;
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }
  }

  // ---- emission ----

  void consume_incoming_wires() {
    for (int wire_id : plan_.in_wires_of_slice[slice_]) {
      const PlanWire& w = plan_.wires[wire_id];
      const int v = var_of_node_.at(w.in_node);
      emit_matrix(w.slot, kPhaseP);  // the CZ link crosses here
      vars_[v].resident = true;
      vars_[v].cur_slot = w.slot;
      occupant_[w.slot] = v;
    }
  }

  void emit_until_fixpoint() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (SliceFactor& f : factors_) {
        if (f.emitted || f.cluster_owned) continue;
        progress |= try_emit_factor(f);
      }
      for (Cluster& c : clusters_) {
        if (c.emitted) continue;
        progress |= try_emit_cluster(c);
      }
      for (SliceVar& v : vars_) {
        if (!v.resident || v.pending > 0 || v.role == VarRole::outgoing)
          continue;
        emit_matrix(v.cur_slot, kTermGate);
        occupant_[v.cur_slot] = -1;
        v.resident = false;
        v.consumed = true;
        progress = true;
      }
    }
    for (const SliceFactor& f : factors_)
      if (!f.emitted)
        throw PlanFailure("slice " + std::to_string(slice_) +
                          ": compiler could not schedule factor " +
                          std::to_string(f.id));
    for (const Cluster& c : clusters_)
      if (!c.emitted)
        throw PlanFailure("slice " + std::to_string(slice_) +
                          ": compiler could not schedule a cluster");
  }

  bool try_emit_factor(SliceFactor& f) {
    if (f.kind == FactorKind::vec_cap || f.kind == FactorKind::row_cap) {
      SliceVar& v = vars_[f.var_a];
      if (!v.resident && (v.consumed || !introduce(v))) return false;
      emit_diag({v.cur_slot}, {f.vec[0], f.vec[1]});
      finish_factor(f);
      return true;
    }
    // segment between two copies (p_link between slot vars cannot occur:
    // slice-internal CZ endpoints are always internal variables)
    SliceVar& a = vars_[f.var_a];
    SliceVar& b = vars_[f.var_b];
    if (a.resident && b.resident) {
      // diagonal in both: D[(xb, xa)] = M[xb][xa]
      emit_diag({a.cur_slot, b.cur_slot},
                {f.mat[0], f.mat[1], f.mat[2], f.mat[3]});
      finish_factor(f);
      return true;
    }
    if (a.resident && fresh(b)) {
      if (a.pending == 1 && a.role == VarRole::incoming) {
        emit_matrix(a.cur_slot, f.mat);  // sums a, hands the slot to b
        hand_over(a, b);
        finish_factor(f);
        return true;
      }
      return introduce(b);
    }
    if (b.resident && fresh(a)) {
      if (b.pending == 1 && b.role == VarRole::incoming) {
        Mat2 t{f.mat[0], f.mat[2], f.mat[1], f.mat[3]};
        emit_matrix(b.cur_slot, t);  // walk the segment backwards
        hand_over(b, a);
        finish_factor(f);
        return true;
      }
      return introduce(a);
    }
    if (fresh(a)) return introduce(a);
    if (fresh(b)) return introduce(b);
    return false;
  }

  bool try_emit_cluster(Cluster& c) {
    for (int bv : c.boundary_vars) {
      SliceVar& v = vars_[bv];
      if (!v.resident && (v.consumed || !introduce(v))) return false;
    }
    const int arity = static_cast<int>(c.boundary_vars.size());
    if (arity > opts_.max_arity)
      throw ArityOverflow("slice " + std::to_string(slice_) +
                          " needs a logical gate on " + std::to_string(arity) +
                          " qubits, above the configured maximum of " +
                          std::to_string(opts_.max_arity));
    const std::size_t n_internal = c.internal_vars.size();
    std::vector<int> bit_of_var(vars_.size(), -1);
    for (int i = 0; i < arity; ++i) bit_of_var[c.boundary_vars[i]] = i;
    for (std::size_t i = 0; i < n_internal; ++i)
      bit_of_var[c.internal_vars[i]] = arity + static_cast<int>(i);

    auto value_of = [&](int var, std::uint64_t assign) -> unsigned {
      return static_cast<unsigned>((assign >> bit_of_var[var]) & 1u);
    };

    std::vector<cplx> entries(std::size_t{1} << arity, cplx(0));
    for (std::uint64_t outer = 0; outer < entries.size(); ++outer) {
      cplx sum(0);
      for (std::uint64_t inner = 0; inner < (std::uint64_t{1} << n_internal);
           ++inner) {
        const std::uint64_t assign = outer | (inner << arity);
        cplx prod(1);
        for (int fid : c.factor_ids) {
          const SliceFactor& f = factors_[fid];
          switch (f.kind) {
            case FactorKind::vec_cap:
            case FactorKind::row_cap:
              prod *= f.vec[value_of(f.var_a, assign)];
              break;
            case FactorKind::segment:
              prod *= f.mat[2 * value_of(f.var_b, assign) +
                            value_of(f.var_a, assign)];
              break;
            case FactorKind::p_link:
              prod *= f.mat[2 * value_of(f.var_a, assign) +
                            value_of(f.var_b, assign)];
              break;
          }
          if (prod == cplx(0)) break;
        }
        sum += prod;
      }
      entries[outer] = sum;
    }

    if (arity == 0) {
      result_.scalar *= entries[0];
    } else {
      std::vector<int> targets;
      for (int bv : c.boundary_vars) targets.push_back(vars_[bv].cur_slot);
      emit_diag(targets, std::move(entries));
    }
    for (int fid : c.factor_ids) {
      const SliceFactor& f = factors_[fid];
      for (int v : {f.var_a, f.var_b})
        if (v >= 0) --vars_[v].pending;
      factors_[fid].emitted = true;
    }
    for (int iv : c.internal_vars) vars_[iv].consumed = true;
    c.emitted = true;
    return true;
  }

  bool fresh(const SliceVar& v) const { return !v.resident && !v.consumed; }

  /// Open a slot for a variable that is not yet represented.  Prefers
  /// the designated slot; falls back to any parked slot (the closing
  /// routing pass will put outgoing wires where the plan promised).
  bool introduce(SliceVar& v) {
    int slot = -1;
    if (v.slot >= 0 && occupant_[v.slot] < 0) {
      slot = v.slot;
    } else {
      for (int s = 0; s < plan_.k; ++s)
        if (occupant_[s] < 0) {
          slot = s;
          break;
        }
    }
    if (slot < 0) return false;
    emit_matrix(slot, kIntroGate);
    v.resident = true;
    v.cur_slot = slot;
    occupant_[slot] = v.id;
    return true;
  }

  void hand_over(SliceVar& from, SliceVar& to) {
    to.resident = true;
    to.cur_slot = from.cur_slot;
    occupant_[from.cur_slot] = to.id;
    from.resident = false;
    from.consumed = true;
  }

  void finish_factor(SliceFactor& f) {
    f.emitted = true;
    for (int v : {f.var_a, f.var_b})
      if (v >= 0) --vars_[v].pending;
  }

  // ---- routing ----

  void route_outgoing_wires() {
    for (SliceVar& v : vars_) {
      if (v.role != VarRole::outgoing) continue;
      if (!v.resident)
        throw PlanFailure("outgoing wire lost its variable");
      while (v.cur_slot != v.slot) {
        if (occupant_[v.slot] < 0) {
          emit_move(v.cur_slot, v.slot);
          occupant_[v.slot] = v.id;
          occupant_[v.cur_slot] = -1;
          v.cur_slot = v.slot;
        } else {
          SliceVar& other = vars_[occupant_[v.slot]];
          emit_swap(v.cur_slot, v.slot);
          std::swap(occupant_[v.cur_slot], occupant_[v.slot]);
          other.cur_slot = v.cur_slot;
          v.cur_slot = v.slot;
        }
      }
    }
  }

  // ---- gate emission ----

  void emit_matrix(int slot, const Mat2& m) {
    result_.gates.push_back(
        LogicalGate::dense({slot}, DenseMat::from_mat2(m)));
  }

  void emit_diag(std::vector<int> targets, std::vector<cplx> entries) {
    result_.gates.push_back(
        LogicalGate::make_diag(std::move(targets), std::move(entries)));
  }

  /// Relocate a slot's contents onto a parked slot.
  void emit_move(int from, int to) {
    DenseMat g = DenseMat::zero(2);
    // targets {from, to}: bit 0 = from, bit 1 = to
    for (unsigned xf = 0; xf < 2; ++xf) {
      // row: from' = 0, to' = xf; column: from = xf, to = 0
      g.at(xf << 1, xf) = 1.0;
    }
    result_.gates.push_back(LogicalGate::dense({from, to}, std::move(g)));
  }

  void emit_swap(int a, int b) {
    DenseMat g = DenseMat::zero(2);
    g.at(0b00, 0b00) = 1.0;
    g.at(0b01, 0b10) = 1.0;
    g.at(0b10, 0b01) = 1.0;
    g.at(0b11, 0b11) = 1.0;
    result_.gates.push_back(LogicalGate::dense({a, b}, std::move(g)));
  }

  const TensorNetwork& net_;
  const SlicePlan& plan_;
  const int slice_;
  const CompileOptions opts_;

  std::vector<SliceVar> vars_;
  std::vector<SliceFactor> factors_;
  std::vector<Cluster> clusters_;
  std::map<int, int> var_of_node_;
  std::vector<int> occupant_;
  SliceResult result_;
};

}  // namespace detail

/// Contract one slice of the network into logical gates on the crossing
/// wires (plus this slice's scalar contribution).
inline detail::SliceResult build_slice_gate(const TensorNetwork& net,
                                            const SlicePlan& plan, int slice,
                                            const CompileOptions& opts = {}) {
  return detail::SliceCompiler(net, plan, slice, opts).run();
}

struct RenormalizeOptions {
  int memory_cap_qubits = 30;
  CompileOptions compile;
  SlotPolicy policy = SlotPolicy::per_identity;
};

/// Rewrite a circuit into its renormalized logical form: translate to a
/// tensor network, slice it transversally, and contract every slice into
/// logical gates, so that contracting the result against the all-ones
/// boundaries reproduces <outcome|U|0...0>.
inline LogicalCircuit renormalize(const Circuit& c, const std::string& outcome,
                                  const RenormalizeOptions& opts = {}) {
  PlanSummary summary = plan_logical_qubits(c.layout, c.depth);
  if (summary.k > opts.memory_cap_qubits)
    throw ResourceLimit("renormalization needs k=" +
                        std::to_string(summary.k) +
                        " logical qubits, above the memory cap of " +
                        std::to_string(opts.memory_cap_qubits));
  TensorNetwork net = circuit_to_network(c, outcome);
  SlicePlan plan = build_slice_plan(net, c.layout, opts.policy);
  LogicalCircuit lc = LogicalCircuit::make(plan.k);
  for (int s = 0; s < plan.slices; ++s) {
    detail::SliceResult r = build_slice_gate(net, plan, s, opts.compile);
    for (LogicalGate& g : r.gates) lc.gates.push_back(std::move(g));
    lc.scalar *= r.scalar;
  }
  return lc;
}

/// The three-qubit teleportation circuit: prepare `input` on qubit 0,
/// share a Bell pair on qubits 1 and 2, entangle and read out in the
/// teleportation basis.  Single-qubit + CZ gates only.
inline Circuit make_teleport_circuit(const Mat2& input_prep) {
  const Mat2 h{cplx(M_SQRT1_2), cplx(M_SQRT1_2), cplx(M_SQRT1_2),
               cplx(-M_SQRT1_2)};
  Circuit c;
  c.layout = Layout::chain(3);
  c.depth = 2;
  c.seed = 0;
  c.gates.push_back(Gate::single(0, 0, input_prep));
  c.gates.push_back(Gate::single(1, 0, h));
  c.gates.push_back(Gate::single(2, 0, h));
  c.gates.push_back(Gate::cz(1, 2, 1));
  c.gates.push_back(Gate::single(1, 2, h));
  c.gates.push_back(Gate::single(2, 2, h));
  c.gates.push_back(Gate::cz(0, 1, 3));
  c.gates.push_back(Gate::single(0, 4, h));
  c.gates.push_back(Gate::single(1, 4, h));
  return c;
}

/// Rewrite the teleportation circuit onto a single logical qubit whose
/// slot is reused as the quantum information hops from world line to
/// world line.  Reproduces every <outcome|U|0> of the source circuit.
inline LogicalCircuit teleport_rewrite(const Mat2& input_prep,
                                       const std::string& outcome) {
  Circuit c = make_teleport_circuit(input_prep);
  RenormalizeOptions opts;
  opts.policy = SlotPolicy::greedy_reuse;
  return renormalize(c, outcome, opts);
}

}  // namespace tqsim
