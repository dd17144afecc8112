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
#include <chrono>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "tqsim/circuit.hpp"
#include "tqsim/logical.hpp"

namespace tqsim {

/// Dense complex state over k qubits; qubit 0 is the least significant
/// bit of the basis index.  No implicit renormalization anywhere.
struct StateVector {
  int k = 0;
  std::vector<cplx> amp;

  std::size_t dim() const { return amp.size(); }
};

enum class InitMode { physical, logical };

inline void check_state_cap(int k, int cap_qubits) {
  if (k > cap_qubits)
    throw ResourceLimit("state of " + std::to_string(k) +
                        " qubits exceeds the memory cap of " +
                        std::to_string(cap_qubits) + " qubits");
}

/// |0...0> in physical mode; the unnormalized all-ones product state
/// (1,1)^k in logical mode.
inline StateVector init_state(int k, InitMode mode, int cap_qubits = 30) {
  require(k >= 0, "qubit count must be non-negative");
  check_state_cap(k, cap_qubits);
  StateVector s;
  s.k = k;
  s.amp.assign(std::size_t{1} << k,
               mode == InitMode::logical ? cplx(1) : cplx(0));
  if (mode == InitMode::physical) s.amp[0] = 1.0;
  return s;
}

/// Product state with one 2-vector per qubit.
inline StateVector init_state_from_boundary(const std::vector<Vec2>& b,
                                            int cap_qubits = 30) {
  const int k = static_cast<int>(b.size());
  check_state_cap(k, cap_qubits);
  StateVector s;
  s.k = k;
  s.amp.resize(std::size_t{1} << k);
  for (std::size_t i = 0; i < s.amp.size(); ++i) {
    cplx v(1);
    for (int q = 0; q < k; ++q) v *= b[q][(i >> q) & 1u];
    s.amp[i] = v;
  }
  return s;
}

namespace detail {

inline void check_targets(const StateVector& s, const std::vector<int>& t) {
  require(!t.empty() && t.size() <= 12, "gate arity out of range");
  for (std::size_t i = 0; i < t.size(); ++i) {
    require(t[i] >= 0 && t[i] < s.k, "gate target out of range");
    for (std::size_t j = i + 1; j < t.size(); ++j)
      require(t[i] != t[j], "duplicate gate target");
  }
}

/// Insert zero bits at the (ascending) positions in `bits`.
inline std::size_t expand_index(std::size_t g, const std::vector<int>& bits) {
  for (int p : bits)
    g = ((g >> p) << (p + 1)) | (g & ((std::size_t{1} << p) - 1));
  return g;
}

/// Run fn(begin, end) over [0, total) split across `threads` workers.
/// Workers write disjoint state blocks, so results are independent of
/// the thread count.
template <typename Fn>
inline void parallel_ranges(std::size_t total, int threads, Fn&& fn) {
  if (threads <= 1 || total < 4096) {
    fn(std::size_t{0}, total);
    return;
  }
  const std::size_t n = static_cast<std::size_t>(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = total * t / n;
    const std::size_t hi = total * (t + 1) / n;
    if (lo < hi) pool.emplace_back([&, lo, hi] { fn(lo, hi); });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace detail

/// Apply a 2^j x 2^j matrix on j target qubits (targets[0] = low bit of
/// the gate's index).  The matrix may be non-unitary.
inline void apply_gate(StateVector& s, const DenseMat& g,
                       const std::vector<int>& targets, int threads = 1) {
  detail::check_targets(s, targets);
  require(static_cast<int>(targets.size()) == g.arity,
          "matrix arity does not match target count");
  const int j = g.arity;

  if (j == 1) {
    const int t = targets[0];
    const std::size_t mask = std::size_t{1} << t;
    const cplx m00 = g.data[0], m01 = g.data[1], m10 = g.data[2],
               m11 = g.data[3];
    detail::parallel_ranges(s.dim() >> 1, threads, [&](std::size_t lo,
                                                       std::size_t hi) {
      std::vector<int> bits{t};
      for (std::size_t grp = lo; grp < hi; ++grp) {
        const std::size_t i0 = detail::expand_index(grp, bits);
        const std::size_t i1 = i0 | mask;
        const cplx a0 = s.amp[i0], a1 = s.amp[i1];
        s.amp[i0] = m00 * a0 + m01 * a1;
        s.amp[i1] = m10 * a0 + m11 * a1;
      }
    });
    return;
  }

  std::vector<int> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t dim_g = std::size_t{1} << j;
  std::vector<std::size_t> offset(dim_g, 0);
  for (std::size_t b = 0; b < dim_g; ++b)
    for (int i = 0; i < j; ++i)
      if ((b >> i) & 1u) offset[b] |= std::size_t{1} << targets[i];

  detail::parallel_ranges(
      s.dim() >> j, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<cplx> local(dim_g);
        for (std::size_t grp = lo; grp < hi; ++grp) {
          const std::size_t base = detail::expand_index(grp, sorted);
          for (std::size_t b = 0; b < dim_g; ++b)
            local[b] = s.amp[base | offset[b]];
          for (std::size_t r = 0; r < dim_g; ++r) {
            cplx acc(0);
            const cplx* row = &g.data[r * dim_g];
            for (std::size_t c = 0; c < dim_g; ++c) acc += row[c] * local[c];
            s.amp[base | offset[r]] = acc;
          }
        }
      });
}

/// Fast path for diagonal gates: amp[i] *= d[sub-index of i on targets].
/// Must agree with apply_gate on diag(d) exactly.
inline void apply_diagonal(StateVector& s, const std::vector<cplx>& d,
                           const std::vector<int>& targets, int threads = 1) {
  detail::check_targets(s, targets);
  require(d.size() == (std::size_t{1} << targets.size()),
          "diagonal length does not match target count");
  const int j = static_cast<int>(targets.size());
  detail::parallel_ranges(s.dim(), threads, [&](std::size_t lo,
                                                std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t sub = 0;
      for (int b = 0; b < j; ++b) sub |= ((i >> targets[b]) & 1u) << b;
      s.amp[i] *= d[sub];
    }
  });
}

namespace detail {

inline cplx project_range(const StateVector& s, const std::vector<Vec2>& b,
                          std::size_t lo, std::size_t hi) {
  // fixed-shape pairwise reduction, independent of thread count
  if (hi - lo <= 512) {
    cplx acc(0);
    for (std::size_t i = lo; i < hi; ++i) {
      cplx w(1);
      for (int q = 0; q < s.k; ++q) w *= std::conj(b[q][(i >> q) & 1u]);
      acc += w * s.amp[i];
    }
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return project_range(s, b, lo, mid) + project_range(s, b, mid, hi);
}

}  // namespace detail

/// Full inner product <boundary|state> with a per-qubit product boundary.
inline cplx project(const StateVector& s, const std::vector<Vec2>& boundary) {
  require(static_cast<int>(boundary.size()) == s.k,
          "boundary must provide one vector per qubit");
  return detail::project_range(s, boundary, 0, s.dim());
}

enum class AmplitudeMethod { direct, transversal };

struct AmplitudeResult {
  cplx value{0, 0};
  AmplitudeMethod method = AmplitudeMethod::direct;
  std::uint64_t gate_count = 0;
  int peak_state_qubits = 0;
  double wall_seconds = 0;
};

/// Schrodinger oracle: evolve the full 2^n state and read one amplitude.
inline AmplitudeResult amplitude_direct(const Circuit& c,
                                        const std::string& outcome,
                                        int cap_qubits = 30, int threads = 1) {
  const int n = c.qubit_count();
  require(static_cast<int>(outcome.size()) == n,
          "outcome length must equal qubit count");
  const auto t0 = std::chrono::steady_clock::now();
  StateVector s = init_state(n, InitMode::physical, cap_qubits);
  AmplitudeResult res;
  res.method = AmplitudeMethod::direct;
  res.peak_state_qubits = n;

  std::vector<Gate> ordered = c.gates;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Gate& x, const Gate& y) {
                     return x.depth_index < y.depth_index;
                   });
  static const std::vector<cplx> cz_diag{cplx(1), cplx(1), cplx(1), cplx(-1)};
  for (const Gate& g : ordered) {
    if (g.kind == GateKind::single_qubit)
      apply_gate(s, DenseMat::from_mat2(g.matrix), {g.a}, threads);
    else
      apply_diagonal(s, cz_diag, {g.a, g.b}, threads);
    ++res.gate_count;
  }
  std::size_t idx = 0;
  for (int q = 0; q < n; ++q)
    if (outcome[q] == '1') idx |= std::size_t{1} << q;
  res.value = s.amp[idx];
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

/// Evolve all 2^n output amplitudes at once (enumeration oracle for the
/// sampling experiments).
inline std::vector<cplx> all_amplitudes(const Circuit& c, int cap_qubits = 30,
                                        int threads = 1) {
  StateVector s =
      init_state(c.qubit_count(), InitMode::physical, cap_qubits);
  std::vector<Gate> ordered = c.gates;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Gate& x, const Gate& y) {
                     return x.depth_index < y.depth_index;
                   });
  static const std::vector<cplx> cz_diag{cplx(1), cplx(1), cplx(1), cplx(-1)};
  for (const Gate& g : ordered) {
    if (g.kind == GateKind::single_qubit)
      apply_gate(s, DenseMat::from_mat2(g.matrix), {g.a}, threads);
    else
      apply_diagonal(s, cz_diag, {g.a, g.b}, threads);
  }
  return std::move(s.amp);
}

/// Run the renormalized circuit: logical boundary in, gates in order,
/// boundary projection, times the accumulated scalar.
inline AmplitudeResult amplitude_transversal(const LogicalCircuit& lc,
                                             int cap_qubits = 30,
                                             int threads = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  check_state_cap(lc.k, cap_qubits);
  StateVector s = init_state_from_boundary(lc.boundary_in, cap_qubits);
  AmplitudeResult res;
  res.method = AmplitudeMethod::transversal;
  res.peak_state_qubits = lc.k;
  for (const LogicalGate& g : lc.gates) {
    if (g.diagonal)
      apply_diagonal(s, g.diag, g.targets, threads);
    else
      apply_gate(s, g.matrix, g.targets, threads);
    ++res.gate_count;
  }
  res.value = project(s, lc.boundary_out) * lc.scalar;
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

// ---- binary state dump ----
// 16-byte header: magic "TQSVEC01", little-endian uint64 qubit count,
// then 2^k (float64 re, float64 im) pairs.

inline void dump_state(const StateVector& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open for writing: " + path);
  const char magic[8] = {'T', 'Q', 'S', 'V', 'E', 'C', '0', '1'};
  out.write(magic, 8);
  const std::uint64_t k = static_cast<std::uint64_t>(s.k);
  out.write(reinterpret_cast<const char*>(&k), 8);
  for (const cplx& a : s.amp) {
    const double re = a.real(), im = a.imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
}

inline StateVector load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open for reading: " + path);
  char magic[8];
  in.read(magic, 8);
  require(in.gcount() == 8 && std::memcmp(magic, "TQSVEC01", 8) == 0,
          "bad state file magic");
  std::uint64_t k = 0;
  in.read(reinterpret_cast<char*>(&k), 8);
  require(in.good() && k <= 48, "bad state file header");
  StateVector s;
  s.k = static_cast<int>(k);
  s.amp.resize(std::size_t{1} << k);
  for (cplx& a : s.amp) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    require(in.good(), "truncated state file");
    a = cplx(re, im);
  }
  return s;
}

}  // namespace tqsim
