// Copyright 2026 The simopo Authors
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

// Hermite-Gaussian mode mathematics.
//
// A mode HG_mn with waist w is
//
//   psi_mn(x, y) = h_m(x; w) h_n(y; w),
//   h_m(x; w)    = (2/pi)^{1/4} / sqrt(w 2^m m!) H_m(sqrt(2) x / w) exp(-x^2/w^2),
//
// normalized to unit L2 norm over the plane.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "simopo/mode_basis.hpp"

namespace simopo {

struct HGMode {
  ModeIndex index;
  double waist = 1.0;
};

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite(int n, double x);

/// Values h_0(x; w) ... h_{max_order}(x; w) of the normalized 1D HG functions.
/// Evaluated through the normalized recurrence, so high orders do not
/// overflow the way H_n(x) / sqrt(2^n n!) would.
std::vector<double> hermite_functions(int max_order, double x, double waist);

/// In-place variant for hot loops; `out` must have size max_order + 1.
void hermite_functions(int max_order, double x, double waist, double* out);

double hg_amplitude(const HGMode& mode, double x, double y);

/// Overlap integral of two centred HG modes, by tensor-product Gauss-Hermite
/// quadrature. Starts at 2*max_order + 32 nodes per axis and doubles until
/// the result moves by less than 1e-10; throws QuadratureError otherwise.
double overlap(const HGMode& a, const HGMode& b);

/// 1D overlap  integral h_m(x; w_a) h_k(x; w_b) dx  by the same quadrature.
double overlap_1d(int m, double waist_a, int k, double waist_b);

/// Closed-form 1D overlap between h_m(x; w_c) and h_k(x; w_h).
double basis_change_1d(int m, int k, double w_c, double w_h);

/// Matrix U with U(mn, m'n') = <psi_mn(w_c) | psi^H_m'n'(w_h)>, so that
/// psi_mn = sum U(mn, m'n') psi^H_m'n'. Rows run over `cavity`, columns
/// over `hamiltonian`.
///
/// Each 1D factor is taken from the closed form and checked against the
/// quadrature oracle; entries that disagree by more than 1e-9 fall back to
/// the oracle value.
struct BasisChangeMatrix {
  double w_c = 1.0;
  double w_h = 1.0;
  Eigen::MatrixXd entries;
};

BasisChangeMatrix basis_change(double w_c, double w_h, const ModeBasis& basis);
BasisChangeMatrix basis_change(double w_c, double w_h, const ModeBasis& cavity,
                               const ModeBasis& hamiltonian);

}  // namespace simopo
