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

#include <utility>
#include <vector>

#include "tqsim/layout.hpp"

namespace tqsim {

// Entangling-gate schedules.
//
// chain: alternating brick layers; even layers pair (0,1),(2,3),...,
// odd layers pair (1,2),(3,4),...
//
// grid / bristlecone: the layer cycles through 8 edge classes, one class
// per depth, so that every nearest-neighbor pair is entangled exactly
// once per aligned 8-depth window and the edges of one depth are always
// disjoint.  Classes are keyed by edge orientation and the parities of
// the edge's anchor coordinates.  The grid order starts and ends each
// window with row-internal (horizontal) classes, so windows truncated
// after two depths add no row-crossing bonds; the two vertical classes
// of each column parity sit back to back, upward bond first.

namespace detail {

// Grid class per window position: {horizontal?, anchor row parity,
// anchor col parity}.  Horizontal edge (r,c)-(r,c+1) anchored at (r,c);
// vertical edge (r,c)-(r+1,c) anchored at its upper qubit (r,c).
struct GridClass {
  bool horizontal;
  int row_parity;
  int col_parity;
};

inline constexpr GridClass kGridWindow[8] = {
    {true, 0, 0},   // 0
    {true, 1, 0},   // 1
    {false, 1, 0},  // 2
    {false, 0, 0},  // 3
    {false, 1, 1},  // 4
    {false, 0, 1},  // 5
    {true, 0, 1},   // 6
    {true, 1, 1},   // 7
};

// Bristlecone class: {upper row parity, direction (0 = x-1, 1 = x+1),
// upper col parity}.  All bonds join adjacent rows.
struct BrisClass {
  int row_parity;
  int dir;
  int col_parity;
};

inline constexpr BrisClass kBrisWindow[8] = {
    {1, 0, 0},  // 0
    {0, 0, 0},  // 1
    {1, 1, 0},  // 2
    {0, 1, 0},  // 3
    {1, 0, 1},  // 4
    {0, 0, 1},  // 5
    {1, 1, 1},  // 6
    {0, 1, 1},  // 7
};

}  // namespace detail

/// CZ edges of one depth layer, each pair (low qubit, high qubit),
/// sorted by low qubit.  Layer indices count CZ layers from 0.
inline std::vector<std::pair<int, int>> cz_edges(const Layout& layout,
                                                 int layer) {
  require(layer >= 0, "layer must be non-negative");
  std::vector<std::pair<int, int>> edges;
  switch (layout.kind) {
    case LayoutKind::chain: {
      for (int a = layer % 2; a + 1 < layout.qubit_count(); a += 2)
        edges.emplace_back(a, a + 1);
      break;
    }
    case LayoutKind::grid: {
      const auto& cls = detail::kGridWindow[layer % 8];
      for (int r = 0; r < layout.m; ++r) {
        if ((r & 1) != cls.row_parity) continue;
        for (int c = cls.col_parity; c < layout.n; c += 2) {
          if (cls.horizontal) {
            if (c + 1 < layout.n)
              edges.emplace_back(layout.qubit_at(r, c),
                                 layout.qubit_at(r, c + 1));
          } else {
            if (r + 1 < layout.m)
              edges.emplace_back(layout.qubit_at(r, c),
                                 layout.qubit_at(r + 1, c));
          }
        }
      }
      break;
    }
    case LayoutKind::bristlecone: {
      const auto& cls = detail::kBrisWindow[layer % 8];
      for (int r = 0; r + 1 < layout.m; ++r) {
        if ((r & 1) != cls.row_parity) continue;
        for (int c = cls.col_parity; c < layout.n; c += 2) {
          int x = 2 * c + (r & 1);
          int x_low = x + (cls.dir == 0 ? -1 : 1);
          int p_low = (r + 1) & 1;
          if ((x_low - p_low) % 2 != 0) continue;  // not a lattice site
          int c_low = (x_low - p_low) / 2;
          if (c_low < 0 || c_low >= layout.n) continue;
          edges.emplace_back(layout.qubit_at(r, c),
                             layout.qubit_at(r + 1, c_low));
        }
      }
      break;
    }
  }
  return edges;
}

/// Depth-window size used to group entangling layers into blocks of
/// logical qubits: every layer is its own block on a chain; 2D families
/// cycle their pattern window.
inline int block_span(const Layout& layout) {
  return layout.kind == LayoutKind::chain ? 1 : 8;
}

inline int block_of_layer(const Layout& layout, int layer) {
  return layer / block_span(layout);
}

}  // namespace tqsim
