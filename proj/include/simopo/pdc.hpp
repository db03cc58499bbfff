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

// Parametric down-conversion kernels and parametric gain matrices.
//
// All gains are normalized by the total cavity decay rate, so a gain matrix
// with spectral norm below one describes an OPO below threshold.

#pragma once

#include <Eigen/Dense>
#include <array>

#include "simopo/mode_basis.hpp"

namespace simopo {

/// Real symmetric matrix of normalized parametric gains over a ModeBasis.
struct GainMatrix {
  int n_max = 0;
  Eigen::MatrixXd entries;

  bool is_diagonal(double tol = 0.0) const;
  /// Eigenvalue of largest magnitude (signed).
  double dominant_eigenvalue() const;
  double spectral_norm() const;
};

/// Gaussian-approximation kernel parameters.
struct GaussianKernelParams {
  double xi = 1.0;
  double pump_waist = 1.0;

  double mu() const;
  /// w_H = sqrt(2) xi^{1/4} w_p
  double hamiltonian_waist() const;
};

/// Focusing parameter from the crystal geometry: xi = alpha l_c / (2 z_p),
/// z_p = k_p w_p^2 / 2.
double focusing_parameter(double alpha, double crystal_length, double pump_wavenumber,
                          double pump_waist);

struct SincKernelParams {
  double xi = 1.0;
  double alpha = 1.0;
  double pump_waist = 1.0;
};

/// Phase-matching factor of the kernel. `gaussian_surrogate` replaces
/// sinc(x) by exp(-surrogate_alpha x) so the Gaussian decomposition is
/// recovered exactly; it is the built-in oracle for the numerical paths.
struct PhaseMatching {
  enum class Kind { sinc, gaussian_surrogate };
  Kind kind = Kind::sinc;
  double surrogate_alpha = 1.0;

  double operator()(double x) const;
  static PhaseMatching sinc() { return {}; }
  static PhaseMatching gaussian(double alpha) { return {Kind::gaussian_surrogate, alpha}; }
};

/// sin(x)/x with a Taylor branch for |x| < 1e-4.
double sinc(double x);

/// mu = (1 - sqrt(xi)) / (1 + sqrt(xi)), 0 < xi <= 1.
double mu_from_xi(double xi);

/// Schmidt number of the Gaussian kernel, (sqrt(xi) + 1/sqrt(xi))^2 / 4.
double schmidt_number(double xi);

/// Schmidt number (sum lambda)^2 / sum lambda^2 of the Gaussian kernel's
/// squared spectrum mu^{2(m+n)} restricted to `basis`.
double truncated_schmidt_number(double xi, const ModeBasis& basis);

/// Diagonal gain g00 mu^{m+n}. Throws ThresholdError for g00 >= 1.
GainMatrix gaussian_gain(double g00, double xi, const ModeBasis& basis);

/// Gain in the cavity basis when the Hamiltonian eigenmodes have waist w_h
/// but the cavity has waist w_c: G' = U G U^T, with the Hamiltonian basis
/// extended by `extra_orders` beyond the cavity cutoff before truncation.
/// The result is rescaled so its dominant eigenvalue equals g00.
GainMatrix waist_mismatch_gain(double g00, double xi, double w_c, double w_h,
                               const ModeBasis& basis, int extra_orders = 30);

using Vec2 = std::array<double, 2>;

/// exp(-(w_p^2/4)|q_s+q_i|^2) * phase_matching((w_p^2/4)(xi/alpha)|q_s-q_i|^2)
double sinc_kernel(const Vec2& q_s, const Vec2& q_i, const SincKernelParams& p,
                   const PhaseMatching& pm = PhaseMatching::sinc());

enum class GainNormalization { dominant_eigenvalue, fundamental_entry, none };

struct SincGainOptions {
  PhaseMatching phase_matching = PhaseMatching::sinc();
  GainNormalization normalization = GainNormalization::dominant_eigenvalue;
  /// Gauss-Hermite nodes per difference-coordinate axis before doubling.
  /// Zero picks 2 n_max + 64.
  int difference_nodes = 0;
  double tolerance = 1e-9;
};

/// Gain matrix from projecting the momentum-space kernel onto pairs of
/// cavity modes (Fourier-domain HG modes, waist 2/w_c in q-space, phase
/// i^{m+n} per mode).
///
/// The four-dimensional integral runs in sum/difference coordinates
/// Sigma = u_s + u_i, Delta = u_s - u_i (u = w_p q / 2), where the pump
/// factor and the mode Gaussians separate: the Sigma integral is exact on a
/// Gauss-Hermite grid and the Delta integral carries the phase matching.
/// The Delta grid is doubled until the entries move by less than
/// `tolerance` relative to the largest entry.
GainMatrix sinc_gain(const SincKernelParams& p, double cavity_waist, const ModeBasis& basis,
                     double g_scale, const SincGainOptions& options = {});

/// Radial/azimuthal discretization used by the Schmidt solver.
struct SchmidtGrid {
  int radial_nodes = 0;
  int angular_nodes = 0;
  double radius = 0.0;
};

struct SchmidtResult {
  double schmidt_number = 0.0;
  /// Level of grid refinement that met the convergence criterion.
  int level = 0;
  SchmidtGrid grid;
};

/// Schmidt number of the kernel exp(-|Sigma|^2) f(c |Delta|^2) with
/// c = xi/alpha (dimensionless momenta u = w_p q / 2).
///
/// The kernel is rotationally invariant, so it is split into azimuthal
/// orders l; each order is a symmetric radial kernel on a Gauss-Legendre
/// grid. The grid is refined (radial and angular node counts doubled, radius
/// grown by half) until the Schmidt number changes by less than 0.5%.
/// A fixed `level` >= 0 skips the refinement loop.
SchmidtResult sinc_schmidt_number(double xi_over_alpha,
                                  const PhaseMatching& pm = PhaseMatching::sinc(),
                                  int level = -1);

/// Grid used at a refinement level for a given xi/alpha.
SchmidtGrid schmidt_grid(double xi_over_alpha, int level);

struct AlphaFit {
  double alpha = 0.0;
  double schmidt_number = 0.0;
  double target = 0.0;
  int level = 0;
};

/// alpha such that the numerically decomposed kernel at xi/alpha has the
/// Gaussian Schmidt number of xi. Bracketing root search on [0.1, 1.0] to
/// relative tolerance 1e-3; throws BracketError without a sign change.
AlphaFit fit_alpha(double xi, const PhaseMatching& pm = PhaseMatching::sinc());

struct PumpWaistFit {
  double pump_waist = 0.0;
  /// |<first Schmidt mode | HG00(cavity_waist)>|^2 at the optimum.
  double overlap = 0.0;
};

/// Squared overlap of the kernel's first Schmidt mode with a cavity HG00 at
/// the ratio w_p / w_c.
double first_mode_overlap(const SincKernelParams& p, double cavity_waist,
                          const PhaseMatching& pm = PhaseMatching::sinc(), int level = 0);

/// Pump waist maximizing first_mode_overlap over w_p/w_c in [0.1, 10].
PumpWaistFit fit_pump_waist(const SincKernelParams& p, double cavity_waist,
                            const PhaseMatching& pm = PhaseMatching::sinc(), int level = 0);

}  // namespace simopo
