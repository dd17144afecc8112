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

#include <cmath>

#include "tqsim/linalg.hpp"
#include "tqsim/rng.hpp"

namespace tqsim {

/// Single-qubit gate families selectable for circuit generation.
enum class GateSet { haar, sqrt_xyt };

inline const char* to_string(GateSet g) {
  return g == GateSet::haar ? "haar" : "sqrt_xyt";
}

/// SU(2) element from three angles.  (0,0,0) gives the identity.
inline Mat2 su2_from_angles(double phi, double psi, double chi) {
  const double c = std::cos(chi), s = std::sin(chi);
  const cplx e_phi = std::polar(1.0, phi);
  const cplx e_psi = std::polar(1.0, psi);
  return Mat2{e_phi * c, e_psi * s, -std::conj(e_psi) * s,
              std::conj(e_phi) * c};
}

/// Haar-distributed SU(2) matrix: uniform point on S^3 via the standard
/// (phi, psi, chi) parametrization with chi = asin(sqrt(u)).
inline Mat2 haar_su2(Xoshiro256& rng) {
  const double u1 = rng.next_double();
  const double u2 = rng.next_double();
  const double u3 = rng.next_double();
  const double two_pi = 2.0 * M_PI;
  return su2_from_angles(two_pi * u1, two_pi * u2,
                         std::asin(std::sqrt(u3)));
}

inline Mat2 sqrt_x() {
  return Mat2{cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5),
              cplx(0.5, 0.5)};
}

inline Mat2 sqrt_y() {
  return Mat2{cplx(0.5, 0.5), cplx(-0.5, -0.5), cplx(0.5, 0.5),
              cplx(0.5, 0.5)};
}

inline Mat2 t_gate() {
  return Mat2{cplx(1), cplx(0), cplx(0), std::polar(1.0, M_PI / 4)};
}

/// Draw one single-qubit gate from the configured set.
inline Mat2 random_single_qubit_gate(Xoshiro256& rng,
                                     GateSet set = GateSet::haar) {
  if (set == GateSet::haar) return haar_su2(rng);
  switch (rng.next_below(3)) {
    case 0: return sqrt_x();
    case 1: return sqrt_y();
    default: return t_gate();
  }
}

}  // namespace tqsim
