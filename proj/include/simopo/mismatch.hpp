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

// Coupling of the OPO output into a mismatched HG00 target mode.
//
// The mismatched target is expanded in HG modes of the ideal target,
// phi_mis = sum beta_mn phi_mn, and the relay optics to the target plane
// contribute a per-mode phase. Mismatch is applied along x only.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "simopo/mode_basis.hpp"
#include "simopo/opo.hpp"

namespace simopo {

enum class MismatchKind { displacement, tilt, size };
enum class Plane { image, fourier };

std::string to_string(MismatchKind kind);
std::string to_string(Plane plane);
/// Accepts "disp"/"displacement", "tilt", "size"; throws ConfigError.
MismatchKind parse_mismatch_kind(const std::string& s);
/// Accepts "image", "fourier"; throws ConfigError.
Plane parse_plane(const std::string& s);

struct MismatchSpec {
  MismatchKind kind = MismatchKind::displacement;
  /// d/w_t for displacement, pi w_t sin(phi)/lambda0 for tilt, w/w_t for size.
  double parameter = 0.0;
  Plane plane = Plane::image;
  /// Extra local-oscillator phase. Unset means 0 in the image plane and
  /// pi/2 in the Fourier plane.
  std::optional<double> lo_phase;

  double effective_lo_phase() const;
  void validate() const;
};

/// Expansion coefficients beta_mn of the mismatched target over `basis`.
std::vector<std::complex<double>> beta(const MismatchSpec& spec, const ModeBasis& basis);

/// (-1)^{m+n+1} in the image plane, (-i)^{m+n+1} in the Fourier plane.
std::complex<double> plane_factor(const ModeIndex& mode, Plane plane);

struct AbcdMatrix {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
};

struct AbcdModeTransform {
  /// (w_1 / (A w_in + 2 i B / (k w_in)))^{m+n+1}
  std::complex<double> factor;
  /// Output complex beam parameter.
  std::complex<double> q;
  /// Output spot size w_1.
  double waist = 0.0;
};

/// Huygens-Fresnel transform of an HG mode of waist w_in (at its focus)
/// through ABCD optics at wavenumber k. Throws DomainError when AD - BC != 1
/// or A w_in + 2 i B / (k w_in) vanishes.
AbcdModeTransform abcd_mode_transform(const ModeIndex& mode, const AbcdMatrix& m, double w_in,
                                      double k);

struct CouplingVector {
  int n_max = 0;
  /// beta_mn * plane_factor * exp(i lo_phase), per basis mode.
  std::vector<std::complex<double>> coefficients;
  /// [Re(c_00), Re(c_01), ..., Im(c_00), Im(c_01), ...]
  Eigen::VectorXd realified;

  /// sum |c_mn|^2
  double weight() const;
};

CouplingVector coupling_vector(const MismatchSpec& spec, const ModeBasis& basis);

/// r^T V r + (1 - sum |c|^2); the truncated remainder couples vacuum.
/// Throws BasisMismatchError when V and c have different sizes.
double target_variance(const QuadratureCovariance& v, const CouplingVector& c);

struct ReferenceVariances {
  double single_mode = 1.0;
  double infinite_squeezing = 1.0;
};

/// Single-mode source with S00 in HG00 and vacuum elsewhere, and the same
/// with perfect squeezing.
ReferenceVariances reference_variances(double beta00_sq, double s00);

/// -10 log10(var_multi / var_single)
double enhancement_factor(double var_multi, double var_single);

/// Mismatch parameter at which |beta_00|^2 equals `overlap`.
double parameter_for_overlap(MismatchKind kind, double overlap);

}  // namespace simopo
