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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "simopo/errors.hpp"

using namespace simopo;

namespace {

constexpr double kXi = 1.0 / 81.0;

double matched_pump_waist(double xi) { return 1.0 / (std::numbers::sqrt2 * std::pow(xi, 0.25)); }

}  // namespace

TEST(pdc, mu_and_schmidt_number_closed_forms) {
  EXPECT_DOUBLE_EQ(mu_from_xi(1.0), 0.0);
  EXPECT_NEAR(mu_from_xi(kXi), 0.8, 1e-15);
  EXPECT_NEAR(mu_from_xi(1.0 / 9.0), 0.5, 1e-15);
  EXPECT_NEAR(schmidt_number(kXi), (1.0 / 9.0 + 9.0) * (1.0 / 9.0 + 9.0) / 4.0, 1e-12);
  EXPECT_NEAR(schmidt_number(kXi), 20.7531, 1e-4);
  EXPECT_NEAR(schmidt_number(1.0 / 9.0), 2.7778, 1e-4);
  EXPECT_DOUBLE_EQ(schmidt_number(1.0), 1.0);
  EXPECT_THROW(mu_from_xi(0.0), DomainError);
  EXPECT_THROW(mu_from_xi(1.5), DomainError);
}

TEST(pdc, schmidt_number_equals_squared_spectrum_sum) {
  // K = 1 / sum lambda^2 over modes, lambda_mn = (1 - mu^2)^2 mu^{2(m+n)}, with
  // k + 1 modes at order k.
  for (double xi : {0.05, kXi, 0.3}) {
    const double mu2 = mu_from_xi(xi) * mu_from_xi(xi);
    double purity = 0.0;
    for (int k = 0; k < 4000; ++k) {
      const double lambda = (1.0 - mu2) * (1.0 - mu2) * std::pow(mu2, k);
      purity += (k + 1) * lambda * lambda;
    }
    EXPECT_NEAR(1.0 / purity, schmidt_number(xi), 1e-9 * schmidt_number(xi));
  }
}

TEST(pdc, truncated_schmidt_number_is_monotone_and_converges) {
  double previous = 0.0;
  for (int n = 0; n <= 120; n += 5) {
    const double k = truncated_schmidt_number(kXi, ModeBasis(n));
    EXPECT_GE(k, previous);
    EXPECT_LE(k, schmidt_number(kXi) * (1.0 + 1e-12));
    previous = k;
  }
  EXPECT_NEAR(previous, schmidt_number(kXi), 1e-6);
  EXPECT_NEAR(truncated_schmidt_number(kXi, ModeBasis(20)), schmidt_number(kXi),
              0.05 * schmidt_number(kXi));
  EXPECT_DOUBLE_EQ(truncated_schmidt_number(kXi, ModeBasis(0)), 1.0);
}

TEST(pdc, gaussian_gain_is_geometric_in_order) {
  const ModeBasis b(10);
  const auto g = gaussian_gain(0.5, kXi, b);
  ASSERT_TRUE(g.is_diagonal());
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_NEAR(g.entries(i, i), 0.5 * std::pow(0.8, b[i].order()), 1e-15);
  }
  EXPECT_NEAR(g.dominant_eigenvalue(), 0.5, 1e-15);
  EXPECT_NEAR(g.spectral_norm(), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(gaussian_gain(0.0, kXi, b).spectral_norm(), 0.0);
}

TEST(pdc, gaussian_gain_rejects_threshold) {
  EXPECT_THROW(gaussian_gain(1.0, kXi, ModeBasis(2)), ThresholdError);
  EXPECT_THROW(gaussian_gain(-0.1, kXi, ModeBasis(2)), DomainError);
}

TEST(pdc, gaussian_kernel_hamiltonian_waist) {
  GaussianKernelParams p{kXi, 2.0};
  EXPECT_NEAR(p.hamiltonian_waist(), std::numbers::sqrt2 * std::pow(kXi, 0.25) * 2.0, 1e-15);
  EXPECT_NEAR(p.mu(), 0.8, 1e-15);
}

TEST(pdc, sinc_function) {
  EXPECT_DOUBLE_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(1e-5), std::sin(1e-5) / 1e-5, 2e-16);
  EXPECT_NEAR(sinc(std::numbers::pi), 0.0, 1e-16);
  EXPECT_NEAR(sinc(-2.0), std::sin(2.0) / 2.0, 1e-16);
}

TEST(pdc, waist_mismatch_gain_reduces_to_gaussian_when_matched) {
  const ModeBasis b(6);
  const auto g = waist_mismatch_gain(0.5, kXi, 1.0, 1.0, b);
  const auto ref = gaussian_gain(0.5, kXi, b);
  EXPECT_LT((g.entries - ref.entries).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(pdc, waist_mismatch_gain_is_symmetric_and_normalized) {
  const ModeBasis b(8);
  const auto g = waist_mismatch_gain(0.5, kXi, 1.0, 1.4, b);
  EXPECT_LT((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(g.dominant_eigenvalue(), 0.5, 1e-12);
  EXPECT_FALSE(g.is_diagonal(1e-6));
  // Odd-parity couplings vanish.
  EXPECT_EQ(g.entries(b.index_of({0, 0}), b.index_of({0, 1})), 0.0);
  EXPECT_NE(g.entries(b.index_of({0, 0}), b.index_of({0, 2})), 0.0);
}

TEST(pdc, sinc_kernel_is_symmetric_under_exchange) {
  const SincKernelParams p{kXi, 0.46, 2.0};
  const Vec2 a{0.3, -0.1};
  const Vec2 b{-0.2, 0.4};
  EXPECT_DOUBLE_EQ(sinc_kernel(a, b, p), sinc_kernel(b, a, p));
  EXPECT_DOUBLE_EQ(sinc_kernel({0, 0}, {0, 0}, p), 1.0);
}

TEST(pdc, sinc_gain_with_gaussian_surrogate_matches_gaussian_gain) {
  const ModeBasis b(8);
  SincGainOptions o;
  o.phase_matching = PhaseMatching::gaussian(0.5);
  const auto g = sinc_gain({kXi, 0.5, matched_pump_waist(kXi)}, 1.0, b, 0.5, o);
  const auto ref = gaussian_gain(0.5, kXi, b);
  EXPECT_LT((g.entries - ref.entries).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(pdc, sinc_gain_normalizations) {
  const ModeBasis b(4);
  const SincKernelParams p{kXi, 0.46, 2.5};
  SincGainOptions o;
  o.normalization = GainNormalization::dominant_eigenvalue;
  EXPECT_NEAR(sinc_gain(p, 1.0, b, 0.5, o).dominant_eigenvalue(), 0.5, 1e-12);
  o.normalization = GainNormalization::fundamental_entry;
  EXPECT_NEAR(sinc_gain(p, 1.0, b, 0.5, o).entries(0, 0), 0.5, 1e-12);
  o.normalization = GainNormalization::none;
  const auto raw = sinc_gain(p, 1.0, b, 0.5, o);
  EXPECT_LT((raw.entries - raw.entries.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(pdc, sinc_gain_has_negative_order_four_couplings) {
  const ModeBasis b(6);
  const auto g = sinc_gain({kXi, 0.46, 2.57}, 1.0, b, 0.5);
  EXPECT_LT(g.entries(0, b.index_of({0, 4})), 0.0);
  EXPECT_LT(g.entries(0, b.index_of({2, 2})), 0.0);
  EXPECT_EQ(g.entries(0, b.index_of({0, 1})), 0.0);
}

TEST(pdc, sinc_gain_rejects_bad_parameters) {
  EXPECT_THROW(sinc_gain({kXi, 0.46, 0.0}, 1.0, ModeBasis(2), 0.5), DomainError);
  EXPECT_THROW(sinc_gain({kXi, 0.46, 1.0}, -1.0, ModeBasis(2), 0.5), DomainError);
}

TEST(schmidt, gaussian_surrogate_reproduces_closed_form) {
  for (double alpha : {0.5, 1.0}) {
    const auto r = sinc_schmidt_number(kXi / alpha, PhaseMatching::gaussian(alpha), 0);
    EXPECT_NEAR(r.schmidt_number, schmidt_number(kXi), 1e-6 * schmidt_number(kXi)) << alpha;
  }
}

TEST(schmidt, sinc_value_grows_with_alpha) {
  const double k1 = sinc_schmidt_number(kXi / 0.4, PhaseMatching::sinc(), 0).schmidt_number;
  const double k2 = sinc_schmidt_number(kXi / 0.5, PhaseMatching::sinc(), 0).schmidt_number;
  EXPECT_LT(k1, k2);
  EXPECT_GT(k1, 15.0);
}

TEST(schmidt, grids_refine_with_level) {
  const auto g0 = schmidt_grid(kXi / 0.46, 0);
  const auto g1 = schmidt_grid(kXi / 0.46, 1);
  EXPECT_EQ(g1.radial_nodes, 2 * g0.radial_nodes);
  EXPECT_EQ(g1.angular_nodes, 2 * g0.angular_nodes);
  EXPECT_GT(g1.radius, g0.radius);
}

TEST(schmidt, surrogate_pump_waist_fit) {
  const auto fit = fit_pump_waist({kXi, 0.5, 1.0}, 1.0, PhaseMatching::gaussian(0.5));
  EXPECT_NEAR(fit.pump_waist, matched_pump_waist(kXi), 1e-3);
  EXPECT_NEAR(fit.overlap, 1.0, 1e-6);
}

TEST(schmidt, fit_alpha_recovers_surrogate_parameter) {
  // exp(-a x) at x = (xi/alpha)|Delta|^2 is the Gaussian kernel exactly when alpha = a.
  const auto fit = fit_alpha(kXi, PhaseMatching::gaussian(0.5));
  EXPECT_NEAR(fit.alpha, 0.5, 1e-3);
  EXPECT_NEAR(fit.target, schmidt_number(kXi), 1e-12);
}
