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

#include "simopo/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simopo/errors.hpp"
#include "simopo/quadrature.hpp"

namespace simopo {

namespace {

constexpr double kOverlapTolerance = 1e-10;
constexpr double kBasisChangeTolerance = 1e-9;
constexpr int kMaxHermiteNodes = 600;

void require_positive_waist(double w) {
  if (!(w > 0.0)) throw DomainError("mode waist must be positive");
}

double overlap_1d_with_nodes(int m, double wa, int k, double wb, const GaussHermiteRule& rule) {
  const double scale = 1.0 / std::sqrt(1.0 / (wa * wa) + 1.0 / (wb * wb));
  std::vector<double> ha(m + 1);
  std::vector<double> hb(k + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i] * scale;
    hermite_functions(m, x, wa, ha.data());
    hermite_functions(k, x, wb, hb.data());
    sum += rule.scaled_weights[i] * ha[m] * hb[k];
  }
  return sum * scale;
}

}  // namespace

double hermite(int n, double x) {
  if (n < 0) throw DomainError("Hermite degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_functions(int max_order, double x, double waist, double* out) {
  const double xi = std::numbers::sqrt2 * x / waist;
  out[0] = std::pow(2.0 / std::numbers::pi, 0.25) / std::sqrt(waist) * std::exp(-x * x / (waist * waist));
  if (max_order == 0) return;
  out[1] = std::numbers::sqrt2 * xi * out[0];
  for (int k = 1; k < max_order; ++k) {
    out[k + 1] = std::sqrt(2.0 / (k + 1)) * xi * out[k] -
                 std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
  }
}

std::vector<double> hermite_functions(int max_order, double x, double waist) {
  if (max_order < 0) throw DomainError("mode order must be non-negative");
  require_positive_waist(waist);
  std::vector<double> out(max_order + 1);
  hermite_functions(max_order, x, waist, out.data());
  return out;
}

double hg_amplitude(const HGMode& mode, double x, double y) {
  require_positive_waist(mode.waist);
  const auto hx = hermite_functions(mode.index.m, x, mode.waist);
  const auto hy = hermite_functions(mode.index.n, y, mode.waist);
  return hx.back() * hy.back();
}

double overlap_1d(int m, double waist_a, int k, double waist_b) {
  require_positive_waist(waist_a);
  require_positive_waist(waist_b);
  if (m < 0 || k < 0) throw DomainError("mode order must be non-negative");
  int nodes = 2 * std::max(m, k) + 32;
  double previous = overlap_1d_with_nodes(m, waist_a, k, waist_b, gauss_hermite(nodes));
  while (2 * nodes <= kMaxHermiteNodes) {
    nodes *= 2;
    const double current = overlap_1d_with_nodes(m, waist_a, k, waist_b, gauss_hermite(nodes));
    if (std::abs(current - previous) < kOverlapTolerance) return current;
    previous = current;
  }
  throw QuadratureError("overlap of orders " + std::to_string(m) + " and " + std::to_string(k) +
                        " did not converge under node doubling");
}

double overlap(const HGMode& a, const HGMode& b) {
  return overlap_1d(a.index.m, a.waist, b.index.m, b.waist) *
         overlap_1d(a.index.n, a.waist, b.index.n, b.waist);
}

double basis_change_1d(int m, int k, double w_c, double w_h) {
  require_positive_waist(w_c);
  require_positive_waist(w_h);
  if ((m - k) % 2 != 0) return 0.0;
  const double r = std::log(w_c / w_h);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const int d = (k - m) / 2;
  const double log_prefactor = 0.5 * (std::lgamma(m + 1.0) + std::lgamma(k + 1.0));
  double sum = 0.0;
  for (int j = std::max(0, -d); 2 * j <= m; ++j) {
    const int sinh_power = 2 * j + d;
    const double log_den = std::lgamma(j + 1.0) + std::lgamma(m - 2.0 * j + 1.0) +
                           std::lgamma(j + d + 1.0) + sinh_power * std::numbers::ln2;
    const double term = std::pow(sh, sinh_power) * std::pow(ch, -d) *
                        std::exp(log_prefactor - log_den);
    sum += (j % 2 == 0) ? term : -term;
  }
  return sum / std::pow(ch, m + 0.5);
}

BasisChangeMatrix basis_change(double w_c, double w_h, const ModeBasis& basis) {
  return basis_change(w_c, w_h, basis, basis);
}

BasisChangeMatrix basis_change(double w_c, double w_h, const ModeBasis& cavity,
                               const ModeBasis& hamiltonian) {
  require_positive_waist(w_c);
  require_positive_waist(w_h);
  const int nc = cavity.n_max();
  const int nh = hamiltonian.n_max();

  Eigen::MatrixXd axis(nc + 1, nh + 1);
  for (int m = 0; m <= nc; ++m) {
    for (int k = 0; k <= nh; ++k) {
      if ((m - k) % 2 != 0) {
        axis(m, k) = 0.0;
        continue;
      }
      const double closed = basis_change_1d(m, k, w_c, w_h);
      const double oracle = overlap_1d(m, w_c, k, w_h);
      axis(m, k) = std::abs(closed - oracle) <= kBasisChangeTolerance ? closed : oracle;
    }
  }

  BasisChangeMatrix u{w_c, w_h, Eigen::MatrixXd(cavity.size(), hamiltonian.size())};
  for (std::size_t a = 0; a < cavity.size(); ++a) {
    for (std::size_t b = 0; b < hamiltonian.size(); ++b) {
      u.entries(a, b) = axis(cavity[a].m, hamiltonian[b].m) * axis(cavity[a].n, hamiltonian[b].n);
    }
  }
  return u;
}

}  // namespace simopo
