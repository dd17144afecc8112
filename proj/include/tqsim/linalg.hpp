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

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tqsim/common.hpp"

namespace tqsim {

/// 2x2 complex matrix, row-major: m[2*row + col].
using Mat2 = std::array<cplx, 4>;

/// Column 2-vector.
using Vec2 = std::array<cplx, 2>;

inline constexpr Mat2 kIdentity2{cplx(1), cplx(0), cplx(0), cplx(1)};

/// The non-unitary phase matrix linking the two copy tensors of a CZ:
/// P[a][b] = (-1)^(a*b), rows (1,1),(1,-1).  P†P = 2I.
inline constexpr Mat2 kPhaseP{cplx(1), cplx(1), cplx(1), cplx(-1)};

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
              a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Vec2 matvec(const Mat2& a, const Vec2& v) {
  return Vec2{a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
}

/// Row-vector times matrix: (r^T A)^T.
inline Vec2 vecmat(const Vec2& r, const Mat2& a) {
  return Vec2{r[0] * a[0] + r[1] * a[2], r[0] * a[1] + r[1] * a[3]};
}

inline Mat2 adjoint(const Mat2& a) {
  return Mat2{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]),
              std::conj(a[3])};
}

/// max |(U†U - I)_ij|
inline double unitarity_defect(const Mat2& u) {
  Mat2 g = matmul(adjoint(u), u);
  g[0] -= 1.0;
  g[3] -= 1.0;
  double worst = 0;
  for (const cplx& e : g) worst = std::max(worst, std::abs(e));
  return worst;
}

/// Dense square matrix on j qubits, row-major, dimension 2^j.
struct DenseMat {
  int arity = 0;
  std::vector<cplx> data;  // (1<<arity) * (1<<arity) entries

  std::size_t dim() const { return std::size_t{1} << arity; }
  cplx& at(std::size_t r, std::size_t c) { return data[r * dim() + c]; }
  const cplx& at(std::size_t r, std::size_t c) const {
    return data[r * dim() + c];
  }

  static DenseMat zero(int arity) {
    DenseMat m;
    m.arity = arity;
    m.data.assign((std::size_t{1} << arity) * (std::size_t{1} << arity),
                  cplx(0));
    return m;
  }

  static DenseMat identity(int arity) {
    DenseMat m = zero(arity);
    for (std::size_t i = 0; i < m.dim(); ++i) m.at(i, i) = 1.0;
    return m;
  }

  static DenseMat from_mat2(const Mat2& a) {
    DenseMat m = zero(1);
    m.data = {a[0], a[1], a[2], a[3]};
    return m;
  }

  bool is_diagonal(double tol = 0.0) const {
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        if (r != c && std::abs(at(r, c)) > tol) return false;
    return true;
  }

  double unitarity_defect() const {
    const std::size_t d = dim();
    double worst = 0;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        cplx g(0);
        for (std::size_t k = 0; k < d; ++k)
          g += std::conj(at(k, r)) * at(k, c);
        if (r == c) g -= 1.0;
        worst = std::max(worst, std::abs(g));
      }
    }
    return worst;
  }
};

}  // namespace tqsim
