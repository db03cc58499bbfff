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

#include "simopo/pdc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simopo/errors.hpp"
#include "simopo/modes.hpp"
#include "simopo/quadrature.hpp"

namespace simopo {

namespace {

void require_xi(double xi) {
  if (!(xi > 0.0)) throw DomainError("focusing parameter xi must be positive, got " + std::to_string(xi));
}

void require_below_threshold(double g00) {
  if (g00 < 0.0) throw DomainError("normalized gain must be non-negative");
  if (g00 >= 1.0) {
    throw ThresholdError("normalized gain g00=" + std::to_string(g00) +
                         " is at or above the oscillation threshold");
  }
}

GainMatrix normalized(Eigen::MatrixXd raw, int n_max, double g_scale, GainNormalization mode) {
  GainMatrix gain{n_max, std::move(raw)};
  double reference = 1.0;
  switch (mode) {
    case GainNormalization::dominant_eigenvalue:
      reference = gain.dominant_eigenvalue();
      break;
    case GainNormalization::fundamental_entry:
      reference = gain.entries(0, 0);
      break;
    case GainNormalization::none:
      break;
  }
  if (reference == 0.0) throw DomainError("cannot normalize a gain matrix with zero reference");
  gain.entries *= g_scale / reference;
  return gain;
}

}  // namespace

bool GainMatrix::is_diagonal(double tol) const {
  for (Eigen::Index j = 0; j < entries.cols(); ++j) {
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      if (i != j && std::abs(entries(i, j)) > tol) return false;
    }
  }
  return true;
}

double GainMatrix::dominant_eigenvalue() const {
  if (entries.size() == 0) return 0.0;
  if (is_diagonal()) {
    Eigen::Index i = 0;
    entries.diagonal().cwiseAbs().maxCoeff(&i);
    return entries(i, i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::abs(ev(0)) > std::abs(ev(ev.size() - 1)) ? ev(0) : ev(ev.size() - 1);
}

double GainMatrix::spectral_norm() const { return std::abs(dominant_eigenvalue()); }

double GaussianKernelParams::mu() const { return mu_from_xi(xi); }

double GaussianKernelParams::hamiltonian_waist() const {
  require_xi(xi);
  return std::numbers::sqrt2 * std::pow(xi, 0.25) * pump_waist;
}

double focusing_parameter(double alpha, double crystal_length, double pump_wavenumber,
                          double pump_waist) {
  const double rayleigh = pump_wavenumber * pump_waist * pump_waist / 2.0;
  return alpha * crystal_length / (2.0 * rayleigh);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double PhaseMatching::operator()(double x) const {
  return kind == Kind::sinc ? simopo::sinc(x) : std::exp(-surrogate_alpha * x);
}

double mu_from_xi(double xi) {
  require_xi(xi);
  if (xi > 1.0) throw DomainError("focusing parameter xi must not exceed 1");
  const double s = std::sqrt(xi);
  return (1.0 - s) / (1.0 + s);
}

double schmidt_number(double xi) {
  require_xi(xi);
  const double s = std::sqrt(xi);
  const double t = s + 1.0 / s;
  return t * t / 4.0;
}

double truncated_schmidt_number(double xi, const ModeBasis& basis) {
  const double mu2 = std::pow(mu_from_xi(xi), 2);
  double s1 = 0.0;
  double s2 = 0.0;
  for (const auto& mode : basis) {
    const double lambda = std::pow(mu2, mode.order());
    s1 += lambda;
    s2 += lambda * lambda;
  }
  return s1 * s1 / s2;
}

GainMatrix gaussian_gain(double g00, double xi, const ModeBasis& basis) {
  require_below_threshold(g00);
  const double mu = mu_from_xi(xi);
  GainMatrix gain{basis.n_max(), Eigen::MatrixXd::Zero(basis.size(), basis.size())};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    gain.entries(i, i) = g00 * std::pow(mu, basis[i].order());
  }
  return gain;
}

GainMatrix waist_mismatch_gain(double g00, double xi, double w_c, double w_h,
                               const ModeBasis& basis, int extra_orders) {
  require_below_threshold(g00);
  const ModeBasis extended(basis.n_max() + std::max(0, extra_orders));
  const GainMatrix hamiltonian = gaussian_gain(g00, xi, extended);
  const BasisChangeMatrix u = basis_change(w_c, w_h, basis, extended);
  Eigen::MatrixXd raw = u.entries * hamiltonian.entries.diagonal().asDiagonal() * u.entries.transpose();
  raw = 0.5 * (raw + raw.transpose()).eval();
  return normalized(std::move(raw), basis.n_max(), g00, GainNormalization::dominant_eigenvalue);
}

double sinc_kernel(const Vec2& q_s, const Vec2& q_i, const SincKernelParams& p,
                   const PhaseMatching& pm) {
  const double sx = q_s[0] + q_i[0];
  const double sy = q_s[1] + q_i[1];
  const double dx = q_s[0] - q_i[0];
  const double dy = q_s[1] - q_i[1];
  const double quarter_wp2 = p.pump_waist * p.pump_waist / 4.0;
  return std::exp(-quarter_wp2 * (sx * sx + sy * sy)) *
         pm(quarter_wp2 * (p.xi / p.alpha) * (dx * dx + dy * dy));
}

namespace {

// Projection of the kernel onto cavity-mode pairs at a fixed difference grid.
// Rows of `b` are difference nodes; column m*(N+1)+k holds the Sigma integral
// of h_m(u_s) h_k(u_i) e^{-Sigma^2} for one axis.
Eigen::MatrixXd project_kernel(int n_max, double mode_waist, double c, const PhaseMatching& pm,
                               int difference_nodes) {
  const int dim = n_max + 1;
  const GaussHermiteRule sum_rule = gauss_hermite(n_max + 16);
  const GaussHermiteRule diff_rule = gauss_hermite(difference_nodes);
  const double sum_scale = 1.0 / std::sqrt(1.0 + 1.0 / (2.0 * mode_waist * mode_waist));
  const double diff_scale = std::numbers::sqrt2 * mode_waist;

  const auto nd = static_cast<Eigen::Index>(diff_rule.nodes.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nd, dim * dim);
  std::vector<double> hs(dim);
  std::vector<double> hi(dim);
  for (Eigen::Index j = 0; j < nd; ++j) {
    const double delta = diff_rule.nodes[j] * diff_scale;
    for (std::size_t i = 0; i < sum_rule.nodes.size(); ++i) {
      const double sigma = sum_rule.nodes[i] * sum_scale;
      hermite_functions(n_max, 0.5 * (sigma + delta), mode_waist, hs.data());
      hermite_functions(n_max, 0.5 * (sigma - delta), mode_waist, hi.data());
      const double w = sum_rule.scaled_weights[i] * sum_scale * std::exp(-sigma * sigma);
      for (int m = 0; m < dim; ++m) {
        const double wm = w * hs[m];
        for (int k = 0; k < dim; ++k) b(j, m * dim + k) += wm * hi[k];
      }
    }
  }

  Eigen::MatrixXd f(nd, nd);
  for (Eigen::Index jx = 0; jx < nd; ++jx) {
    const double dx = diff_rule.nodes[jx] * diff_scale;
    for (Eigen::Index jy = 0; jy < nd; ++jy) {
      const double dy = diff_rule.nodes[jy] * diff_scale;
      f(jx, jy) = diff_rule.scaled_weights[jx] * diff_rule.scaled_weights[jy] * diff_scale *
                  diff_scale * pm(c * (dx * dx + dy * dy));
    }
  }
  // Jacobian of (u_s, u_i) -> (Sigma, Delta) is 1/2 per axis.
  return 0.25 * b.transpose() * (f * b);
}

Eigen::MatrixXd assemble_gain(const Eigen::MatrixXd& axis_pairs, const ModeBasis& basis) {
  const int dim = basis.n_max() + 1;
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    const auto& ma = basis[a];
    for (Eigen::Index b = 0; b < k; ++b) {
      const auto& mb = basis[b];
      if ((ma.m + mb.m) % 2 != 0 || (ma.n + mb.n) % 2 != 0) continue;
      // i^{m+n} from each Fourier-domain mode.
      const int quarter_turns = (ma.order() + mb.order()) / 2;
      const double phase = quarter_turns % 2 == 0 ? 1.0 : -1.0;
      g(a, b) = phase * axis_pairs(ma.m * dim + mb.m, ma.n * dim + mb.n);
    }
  }
  return 0.5 * (g + g.transpose());
}

}  // namespace

GainMatrix sinc_gain(const SincKernelParams& p, double cavity_waist, const ModeBasis& basis,
                     double g_scale, const SincGainOptions& options) {
  if (!(p.xi > 0.0 && p.alpha > 0.0 && p.pump_waist > 0.0 && cavity_waist > 0.0)) {
    throw DomainError("sinc kernel parameters and cavity waist must be positive");
  }
  require_below_threshold(g_scale);
  const double mode_waist = p.pump_waist / cavity_waist;  // in u = w_p q / 2
  const double c = p.xi / p.alpha;
  int nodes = options.difference_nodes > 0 ? options.difference_nodes : 2 * basis.n_max() + 64;

  Eigen::MatrixXd previous = assemble_gain(
      project_kernel(basis.n_max(), mode_waist, c, options.phase_matching, nodes), basis);
  while (2 * nodes <= 600) {
    nodes *= 2;
    Eigen::MatrixXd current = assemble_gain(
        project_kernel(basis.n_max(), mode_waist, c, options.phase_matching, nodes), basis);
    const double scale = current.cwiseAbs().maxCoeff();
    const double change = (current - previous).cwiseAbs().maxCoeff();
    if (change <= options.tolerance * scale) {
      return normalized(std::move(current), basis.n_max(), g_scale, options.normalization);
    }
    previous = std::move(current);
  }
  throw QuadratureError("sinc gain quadrature did not converge under node doubling");
}

}  // namespace simopo
