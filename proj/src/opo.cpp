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

#include "simopo/opo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "simopo/errors.hpp"

namespace simopo {

namespace {

using cd = std::complex<double>;

constexpr double kThresholdNorm = 0.999;
constexpr double kImaginaryTolerance = 1e-9;

// V from the sideband response A = M^-1(omega); M^-1(-omega) = conj(A)
// because every entry of M except -i omega is real.
Eigen::MatrixXcd output_covariance(const Eigen::MatrixXcd& a, double eta) {
  const auto n = a.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd reflected = 2.0 * eta * a - id;
  return 4.0 * eta * (1.0 - eta) * a * a.adjoint() + reflected * reflected.adjoint();
}

// Symmetrized quadrature moments: (V + V^T)/2. V is Hermitian, so the
// imaginary part left after this is rounding only; a large one means V was
// not Hermitian and is reported rather than dropped. The antisymmetric
// imaginary part of V itself (nonzero for coupled, detuned modes) does not
// enter any r^T V r with real r.
Eigen::MatrixXd realify(const Eigen::MatrixXcd& v) {
  const Eigen::MatrixXcd h = 0.5 * (v + v.transpose());
  const double residue = h.imag().cwiseAbs().maxCoeff();
  if (residue > kImaginaryTolerance) {
    throw std::logic_error("covariance has imaginary residue " + std::to_string(residue));
  }
  return h.real();
}

}  // namespace

std::optional<double> gouy_phase(double dl1_over_r, double dl2_over_r) {
  if (!(std::abs(dl1_over_r) < 1.0 && std::abs(dl2_over_r) < 1.0)) {
    throw DomainError("detunings must satisfy |dl/R| < 1");
  }
  const double arg =
      1.0 + 2.0 * dl2_over_r * (dl1_over_r + dl2_over_r - dl1_over_r * dl2_over_r);
  if (arg < -1.0 || arg > 1.0) return std::nullopt;
  return std::acos(arg);
}

double cavity_waist(double radius, double wavelength) {
  if (!(radius > 0.0 && wavelength > 0.0)) {
    throw DomainError("mirror radius and wavelength must be positive");
  }
  return std::sqrt(radius * wavelength / (2.0 * std::numbers::pi));
}

double OpoConfig::eta() const { return t_i / (t_i + t_l); }

double OpoConfig::detuning(const ModeIndex& mode) const {
  return 2.0 * theta_g * mode.order() / (t_i + t_l);
}

void OpoConfig::validate() const {
  if (!(t_i > 0.0 && t_i <= 1.0)) throw DomainError("T_i must lie in (0, 1]");
  if (!(t_l >= 0.0 && t_l < 1.0)) throw DomainError("T_l must lie in [0, 1)");
  if (!std::isfinite(theta_g)) throw DomainError("Gouy phase must be finite");
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (gain.entries.rows() != k || gain.entries.cols() != k) {
    throw BasisMismatchError("gain matrix is " + std::to_string(gain.entries.rows()) + "x" +
                             std::to_string(gain.entries.cols()) + " but the basis has " +
                             std::to_string(k) + " modes");
  }
  const double norm = gain.spectral_norm();
  if (norm >= kThresholdNorm) {
    throw ThresholdError("gain spectral norm " + std::to_string(norm) +
                         " is at or above threshold (limit 0.999)");
  }
}

SqueezingResult analytic_squeezing(double g, double delta, double omega, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  const double a = omega * omega - delta * delta + g * g + 1.0;
  const double s = std::sqrt(a * a + 4.0 * delta * delta);
  const double abs_g = std::abs(g);
  if (2.0 * abs_g >= s) throw ThresholdError("mode is at or above threshold");
  SqueezingResult r;
  r.s_x = 1.0 - eta * 4.0 * abs_g / (2.0 * abs_g + s);
  r.s_p = 1.0 - eta * 4.0 * abs_g / (2.0 * abs_g - s);
  const double den = a + (g < 0.0 ? -s : s);
  r.theta = den == 0.0 ? std::numbers::pi / 2.0 : std::atan(2.0 * delta / den);
  if (r.theta <= -std::numbers::pi / 2.0) r.theta += std::numbers::pi;
  return r;
}

Eigen::MatrixXcd system_matrix(const OpoConfig& cfg, double omega) {
  cfg.validate();
  const auto k = static_cast<Eigen::Index>(cfg.basis.size());
  const cd diag(1.0, -omega);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  m.topLeftCorner(k, k) = cfg.gain.entries.cast<cd>();
  m.bottomRightCorner(k, k) = -cfg.gain.entries.cast<cd>();
  for (Eigen::Index i = 0; i < k; ++i) {
    m(i, i) += diag;
    m(k + i, k + i) += diag;
    const double d = cfg.detuning(cfg.basis[i]);
    m(i, k + i) = d;
    m(k + i, i) = -d;
  }
  return m;
}

Eigen::Matrix2d QuadratureCovariance::block(std::size_t mode) const {
  const auto k = static_cast<Eigen::Index>(modes());
  const auto i = static_cast<Eigen::Index>(mode);
  Eigen::Matrix2d b;
  b << entries(i, i), entries(i, k + i), entries(k + i, i), entries(k + i, k + i);
  return b;
}

QuadratureCovariance covariance(const OpoConfig& cfg, double omega,
                                const CovarianceOptions& options) {
  cfg.validate();
  const double eta = cfg.eta();
  const auto k = static_cast<Eigen::Index>(cfg.basis.size());
  QuadratureCovariance out{cfg.basis.n_max(), Eigen::MatrixXd::Zero(2 * k, 2 * k)};

  if (!options.force_dense && cfg.gain.is_diagonal()) {
    const cd c(1.0, -omega);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double g = cfg.gain.entries(i, i);
      const double d = cfg.detuning(cfg.basis[i]);
      const cd det = c * c - g * g + d * d;
      Eigen::Matrix2cd a;
      a << c - g, -d, d, c + g;
      a /= det;
      const Eigen::MatrixXd v = realify(output_covariance(a, eta));
      out.entries(i, i) = v(0, 0);
      out.entries(i, k + i) = v(0, 1);
      out.entries(k + i, i) = v(1, 0);
      out.entries(k + i, k + i) = v(1, 1);
    }
    return out;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system_matrix(cfg, omega));
  if (!(lu.rcond() > 1e-13)) {
    throw ThresholdError("system matrix is numerically singular");
  }
  const Eigen::MatrixXcd a = lu.inverse();
  out.entries = realify(output_covariance(a, eta));
  return out;
}

QuadratureCovariance apply_loss(const QuadratureCovariance& v, double eta_extra) {
  if (!(eta_extra >= 0.0 && eta_extra <= 1.0)) {
    throw DomainError("extra efficiency must lie in [0, 1]");
  }
  QuadratureCovariance out = v;
  out.entries *= eta_extra;
  out.entries.diagonal().array() += 1.0 - eta_extra;
  return out;
}

Eigen::VectorXd symplectic_eigenvalues(const QuadratureCovariance& v) {
  const auto n = v.entries.rows();
  const auto k = n / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  omega.topRightCorner(k, k).setIdentity();
  omega.bottomLeftCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);

  const Eigen::LLT<Eigen::MatrixXd> llt(v.entries);
  if (llt.info() != Eigen::Success) throw DomainError("covariance is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  // L^T Omega L is antisymmetric with eigenvalues +-i nu; -(L^T Omega L)^2
  // is symmetric with each nu^2 twice.
  const Eigen::MatrixXd a = l.transpose() * omega * l;
  const Eigen::MatrixXd sq = -(a * a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (sq + sq.transpose()),
                                                        Eigen::EigenvaluesOnly);
  Eigen::VectorXd nu(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double pair = 0.5 * (solver.eigenvalues()(2 * i) + solver.eigenvalues()(2 * i + 1));
    nu(i) = std::sqrt(std::max(pair, 0.0));
  }
  return nu;
}

double db(double variance) {
  if (!(variance > 0.0)) throw DomainError("variance must be positive");
  return -10.0 * std::log10(variance);
}

}  // namespace simopo
