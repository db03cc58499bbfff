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

#include "simopo/mismatch.hpp"

#include <cmath>
#include <numbers>

#include "simopo/errors.hpp"

namespace simopo {

namespace {

using cd = std::complex<double>;

cd i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

// p^m / sqrt(m!) e^{-p^2/2} in log space so large m cannot overflow.
double poisson_amplitude(int m, double p) {
  if (p == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(m * std::log(p) - 0.5 * std::lgamma(m + 1.0) - 0.5 * p * p);
}

// 1D factor of the size coefficient; the 2D coefficient is the product.
double size_amplitude(int m, double ratio) {
  if (m % 2 != 0) return 0.0;
  const double r = std::log(ratio);
  const double half_tanh = 0.5 * std::tanh(r);
  const int h = m / 2;
  const double magnitude = std::exp(0.5 * std::lgamma(m + 1.0) - std::lgamma(h + 1.0)) *
                           std::pow(std::abs(half_tanh), h) / std::sqrt(std::cosh(r));
  return (half_tanh < 0.0 && h % 2 != 0) ? -magnitude : magnitude;
}

}  // namespace

std::string to_string(MismatchKind kind) {
  switch (kind) {
    case MismatchKind::displacement:
      return "disp";
    case MismatchKind::tilt:
      return "tilt";
    case MismatchKind::size:
      return "size";
  }
  return "?";
}

std::string to_string(Plane plane) { return plane == Plane::image ? "image" : "fourier"; }

MismatchKind parse_mismatch_kind(const std::string& s) {
  if (s == "disp" || s == "displacement") return MismatchKind::displacement;
  if (s == "tilt") return MismatchKind::tilt;
  if (s == "size") return MismatchKind::size;
  throw ConfigError("unknown mismatch kind '" + s + "' (expected disp, tilt or size)");
}

Plane parse_plane(const std::string& s) {
  if (s == "image") return Plane::image;
  if (s == "fourier") return Plane::fourier;
  throw ConfigError("unknown plane '" + s + "' (expected image or fourier)");
}

double MismatchSpec::effective_lo_phase() const {
  if (lo_phase) return *lo_phase;
  return plane == Plane::image ? 0.0 : std::numbers::pi / 2.0;
}

void MismatchSpec::validate() const {
  if (kind == MismatchKind::size) {
    if (!(parameter > 0.0)) throw DomainError("size ratio w/w_t must be positive");
  } else if (!(parameter >= 0.0)) {
    throw DomainError("displacement and tilt parameters must be non-negative");
  }
  if (lo_phase && !std::isfinite(*lo_phase)) throw DomainError("LO phase must be finite");
}

std::vector<cd> beta(const MismatchSpec& spec, const ModeBasis& basis) {
  spec.validate();
  std::vector<cd> out(basis.size(), cd{});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ModeIndex& mode = basis[i];
    switch (spec.kind) {
      case MismatchKind::displacement:
        if (mode.n == 0) out[i] = poisson_amplitude(mode.m, spec.parameter);
        break;
      case MismatchKind::tilt:
        if (mode.n == 0) out[i] = i_power(mode.m) * poisson_amplitude(mode.m, spec.parameter);
        break;
      case MismatchKind::size:
        out[i] = size_amplitude(mode.m, spec.parameter) * size_amplitude(mode.n, spec.parameter);
        break;
    }
  }
  return out;
}

cd plane_factor(const ModeIndex& mode, Plane plane) {
  const int power = mode.order() + 1;
  if (plane == Plane::image) return power % 2 == 0 ? cd{1.0, 0.0} : cd{-1.0, 0.0};
  return i_power(-power);
}

AbcdModeTransform abcd_mode_transform(const ModeIndex& mode, const AbcdMatrix& m, double w_in,
                                      double k) {
  if (!(w_in > 0.0 && k > 0.0)) throw DomainError("waist and wavenumber must be positive");
  if (std::abs(m.a * m.d - m.b * m.c - 1.0) > 1e-9) {
    throw DomainError("ABCD matrix must have unit determinant");
  }
  const cd denominator(m.a * w_in, 2.0 * m.b / (k * w_in));
  if (std::abs(denominator) == 0.0) throw DomainError("degenerate optics: A w + 2iB/(k w) = 0");
  AbcdModeTransform t;
  t.waist = std::abs(denominator);  // w_1^2 = A^2 w^2 + (2B/kw)^2
  t.factor = std::pow(t.waist / denominator, mode.order() + 1);
  const cd q_in(0.0, k * w_in * w_in / 2.0);
  t.q = (-m.a * q_in + m.b) / (-m.c * q_in + m.d);
  return t;
}

double CouplingVector::weight() const {
  double w = 0.0;
  for (const cd& c : coefficients) w += std::norm(c);
  return w;
}

CouplingVector coupling_vector(const MismatchSpec& spec, const ModeBasis& basis) {
  const std::vector<cd> b = beta(spec, basis);
  const cd lo = std::polar(1.0, spec.effective_lo_phase());
  const auto k = static_cast<Eigen::Index>(basis.size());
  CouplingVector c{basis.n_max(), std::vector<cd>(basis.size()), Eigen::VectorXd::Zero(2 * k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    const cd value = b[i] * plane_factor(basis[i], spec.plane) * lo;
    c.coefficients[i] = value;
    c.realified(i) = value.real();
    c.realified(k + i) = value.imag();
  }
  return c;
}

double target_variance(const QuadratureCovariance& v, const CouplingVector& c) {
  if (v.entries.rows() != c.realified.size() || v.n_max != c.n_max) {
    throw BasisMismatchError("covariance (n_max " + std::to_string(v.n_max) +
                             ") and coupling vector (n_max " + std::to_string(c.n_max) +
                             ") use different bases");
  }
  const double missing = std::max(0.0, 1.0 - c.weight());
  return c.realified.dot(v.entries * c.realified) + missing;
}

ReferenceVariances reference_variances(double beta00_sq, double s00) {
  if (!(beta00_sq >= 0.0 && beta00_sq <= 1.0)) throw DomainError("beta00^2 must lie in [0, 1]");
  if (!(s00 >= 0.0 && s00 <= 1.0)) throw DomainError("S00 must lie in [0, 1]");
  return {beta00_sq * s00 + (1.0 - beta00_sq), 1.0 - beta00_sq};
}

double enhancement_factor(double var_multi, double var_single) {
  if (!(var_multi > 0.0 && var_single > 0.0)) throw DomainError("variances must be positive");
  return -10.0 * std::log10(var_multi / var_single);
}

double parameter_for_overlap(MismatchKind kind, double overlap) {
  if (!(overlap > 0.0 && overlap <= 1.0)) throw DomainError("overlap must lie in (0, 1]");
  if (kind == MismatchKind::size) {
    // |beta_00|^2 = 1/cosh^2(ln r), taking the root with r >= 1.
    return std::exp(std::acosh(1.0 / std::sqrt(overlap)));
  }
  // |beta_00|^2 = exp(-p^2)
  return std::sqrt(-std::log(overlap));
}

}  // namespace simopo
