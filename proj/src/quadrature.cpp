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

#include "simopo/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simopo/errors.hpp"

namespace simopo {

namespace {

constexpr int kMaxNewton = 100;

// Orthonormal Hermite *function* of degree n at t and of degree n-1, i.e. the
// polynomial recurrence seeded with pi^{-1/4} e^{-t^2/2}. Keeping the Gaussian
// inside the recurrence avoids overflow of e^{t^2} for large n.
void hermite_functions(int n, double t, double& pn, double& pn_minus_1) {
  double p1 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
  double p2 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = t * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
  }
  pn = p1;
  pn_minus_1 = p2;
}

}  // namespace

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1 || n > 600) {
    throw DomainError("Gauss-Hermite node count must be in [1, 600], got " + std::to_string(n));
  }
  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  rule.scaled_weights.assign(n, 0.0);

  // Eigenvalues of the Jacobi matrix seed Newton; the polish on the
  // recurrence gives full accuracy and the overflow-free scaled weights.
  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi;
  jacobi.computeFromTridiagonal(diagonal, off, Eigen::EigenvaluesOnly);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Largest roots first; eigenvalues come out ascending.
    double z = jacobi.eigenvalues()(n - 1 - i);
    double pn = 0.0;
    double pn1 = 0.0;
    double deriv = 0.0;
    int it = 0;
    for (; it < kMaxNewton; ++it) {
      hermite_functions(n, z, pn, pn1);
      // d/dt of the polynomial part; the Gaussian factor cancels in pn/deriv.
      deriv = std::sqrt(2.0 * n) * pn1;
      const double z1 = z;
      z = z1 - pn / deriv;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (it == kMaxNewton) {
      throw QuadratureError("Gauss-Hermite Newton iteration failed for n=" + std::to_string(n));
    }
    hermite_functions(n, z, pn, pn1);
    deriv = std::sqrt(2.0 * n) * pn1;
    const double scaled = 2.0 / (deriv * deriv);
    const double plain = scaled * std::exp(-z * z);
    rule.nodes[n - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.scaled_weights[i] = rule.scaled_weights[n - 1 - i] = scaled;
    rule.weights[i] = rule.weights[n - 1 - i] = plain;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre node count must be positive");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < kMaxNewton; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

}  // namespace simopo
