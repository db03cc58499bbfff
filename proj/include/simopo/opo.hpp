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

// Self-imaging OPO below threshold in the frequency domain.
//
// Rates, detunings, gains and sideband frequencies are all divided by the
// total cavity decay rate gamma_i + gamma_l, so the round-trip time drops
// out. Quadratures are X = A + A^dag, P = (A - A^dag)/i; vacuum has unit
// variance.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "simopo/mode_basis.hpp"
#include "simopo/pdc.hpp"

namespace simopo {

/// Round-trip Gouy phase of the two-mirror-plus-lens self-imaging cavity
/// with detunings dl1/R, dl2/R. nullopt when the cavity is unstable.
std::optional<double> gouy_phase(double dl1_over_r, double dl2_over_r);

/// sqrt(R lambda0 / 2 pi)
double cavity_waist(double radius, double wavelength);

struct CavityGeometry {
  double radius = 0.1;         // R = f, metres
  double dl1 = 0.0;            // metres
  double dl2 = 0.0;            // metres
  double wavelength = 1.064e-6;

  std::optional<double> gouy() const { return gouy_phase(dl1 / radius, dl2 / radius); }
  bool stable() const { return gouy().has_value(); }
  double waist() const { return cavity_waist(radius, wavelength); }
};

struct OpoConfig {
  ModeBasis basis{0};
  GainMatrix gain;       // normalized gains over `basis`
  double t_i = 0.1;      // input-coupler transmittance
  double t_l = 0.0;      // intracavity loss transmittance
  double theta_g = 0.0;  // round-trip Gouy phase, radians

  /// Escape efficiency T_i / (T_i + T_l).
  double eta() const;
  /// 2 theta_G (m + n) / (T_i + T_l)
  double detuning(const ModeIndex& mode) const;
  /// Throws DomainError on out-of-range transmittances or a gain matrix that
  /// does not fit `basis`, ThresholdError when the gain reaches 0.999.
  void validate() const;
};

/// Rotated-quadrature variances of one mode.
struct SqueezingResult {
  double s_x = 1.0;
  double s_p = 1.0;
  double theta = 0.0;  // in (-pi/2, pi/2]
};

/// Closed-form squeezing of a single mode with gain g, detuning delta at
/// sideband omega and escape efficiency eta. Throws ThresholdError when
/// 2|g| >= sqrt((omega^2 - delta^2 + g^2 + 1)^2 + 4 delta^2).
SqueezingResult analytic_squeezing(double g, double delta, double omega, double eta);

/// [[(1 - i omega) I + G, D], [-D, (1 - i omega) I - G]]
Eigen::MatrixXcd system_matrix(const OpoConfig& cfg, double omega);

/// Real symmetric covariance over [X_00, X_01, ..., P_00, P_01, ...].
struct QuadratureCovariance {
  int n_max = 0;
  Eigen::MatrixXd entries;

  std::size_t modes() const { return static_cast<std::size_t>(entries.rows() / 2); }
  double x_variance(std::size_t mode) const { return entries(mode, mode); }
  double p_variance(std::size_t mode) const {
    const auto k = static_cast<Eigen::Index>(modes());
    return entries(k + mode, k + mode);
  }
  /// Covariance of one mode's (X, P) pair.
  Eigen::Matrix2d block(std::size_t mode) const;
};

struct CovarianceOptions {
  /// Solve the full 2K x 2K system even when the gain is diagonal.
  bool force_dense = false;
};

/// Output covariance
///   V = 4 eta (1 - eta) M^-1(w) M^-1(-w)^T + (2 eta M^-1(w) - I)(2 eta M^-1(-w) - I)^T.
/// Diagonal gains go through independent 2x2 solves per mode; anything else
/// uses a dense LU. The result is symmetrized as (V + V^T)/2, which must be
/// real to 1e-9 (i.e. V Hermitian), otherwise std::logic_error.
QuadratureCovariance covariance(const OpoConfig& cfg, double omega,
                                const CovarianceOptions& options = {});

/// eta V + (1 - eta) I
QuadratureCovariance apply_loss(const QuadratureCovariance& v, double eta_extra);

/// Symplectic eigenvalues of V in ascending order.
Eigen::VectorXd symplectic_eigenvalues(const QuadratureCovariance& v);

/// Squeezing in dB with vacuum at 0: -10 log10(variance).
double db(double variance);

}  // namespace simopo
