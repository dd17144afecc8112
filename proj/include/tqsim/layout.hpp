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

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "tqsim/common.hpp"

namespace tqsim {

enum class LayoutKind { chain, grid, bristlecone };

inline const char* to_string(LayoutKind k) {
  switch (k) {
    case LayoutKind::chain: return "chain";
    case LayoutKind::grid: return "grid";
    case LayoutKind::bristlecone: return "bristlecone";
  }
  return "?";
}

/// Physical qubit layout.
///
/// chain(n):        qubits 0..n-1 on a line, neighbors (i, i+1).
/// grid(m, n):      m >= n, qubit (row, col) at every lattice point,
///                  neighbors differ by one in exactly one coordinate.
/// bristlecone(m,n): m >= n, the grid rotated 45 degrees: m rows of n
///                  qubits on a diamond lattice, odd rows shifted half a
///                  cell, so all nearest-neighbor bonds are diagonal and
///                  each pair of adjacent rows is joined by 2n-1 bonds.
struct Layout {
  LayoutKind kind = LayoutKind::chain;
  int m = 0;  // rows (chain: qubit count)
  int n = 0;  // cols (chain: 1)

  static Layout chain(int qubits) {
    require(qubits >= 2, "chain layout needs at least 2 qubits");
    return Layout{LayoutKind::chain, qubits, 1};
  }
  static Layout grid(int rows, int cols) {
    require(cols >= 2 && rows >= cols,
            "grid layout needs m >= n >= 2 (paper assumes M >= N)");
    return Layout{LayoutKind::grid, rows, cols};
  }
  static Layout bristlecone(int rows, int cols) {
    require(cols >= 2 && rows >= cols,
            "bristlecone layout needs m >= n >= 2");
    return Layout{LayoutKind::bristlecone, rows, cols};
  }

  int qubit_count() const {
    return kind == LayoutKind::chain ? m : m * n;
  }

  int row_of(int q) const {
    return kind == LayoutKind::chain ? q : q / n;
  }
  int col_of(int q) const {
    return kind == LayoutKind::chain ? 0 : q % n;
  }
  int qubit_at(int row, int col) const {
    return kind == LayoutKind::chain ? row : row * n + col;
  }

  /// Integer lattice position of a qubit.  For bristlecone this is the
  /// diamond-lattice frame: x = 2*col + (row & 1), y = row, so nearest
  /// neighbors are at |dx| == 1, |dy| == 1.
  std::pair<int, int> position(int q) const {
    switch (kind) {
      case LayoutKind::chain: return {q, 0};
      case LayoutKind::grid: return {col_of(q), row_of(q)};
      case LayoutKind::bristlecone:
        return {2 * col_of(q) + (row_of(q) & 1), row_of(q)};
    }
    return {0, 0};
  }

  bool adjacent(int a, int b) const {
    auto [ax, ay] = position(a);
    auto [bx, by] = position(b);
    int dx = std::abs(ax - bx), dy = std::abs(ay - by);
    switch (kind) {
      case LayoutKind::chain: return dy == 0 && dx == 1;
      case LayoutKind::grid: return dx + dy == 1;
      case LayoutKind::bristlecone: return dx == 1 && dy == 1;
    }
    return false;
  }

  /// All nearest-neighbor pairs, each once, (low qubit, high qubit).
  std::vector<std::pair<int, int>> nn_pairs() const {
    std::vector<std::pair<int, int>> out;
    const int q_count = qubit_count();
    for (int a = 0; a < q_count; ++a)
      for (int b = a + 1; b < q_count; ++b)
        if (adjacent(a, b)) out.emplace_back(a, b);
    return out;
  }

  /// Transversal slice index: qubit index on a chain, row in 2D.
  int slice_of(int q) const {
    return kind == LayoutKind::chain ? q : row_of(q);
  }
  int slice_count() const { return m; }
};

}  // namespace tqsim
