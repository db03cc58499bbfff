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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "simopo/errors.hpp"
#include "simopo/scenarios.hpp"

using namespace simopo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kXi = 1.0 / 81.0;

OpoConfig sinc_like_opo(double theta_g) {
  // Non-diagonal gain with the structure of a mismatched kernel.
  OpoConfig cfg;
  cfg.basis = ModeBasis(4);
  cfg.gain = waist_mismatch_gain(0.5, kXi, 1.0, 1.4, cfg.basis);
  cfg.theta_g = theta_g;
  return cfg;
}

}  // namespace

TEST(analytic_squeezing, fundamental_mode_at_half_threshold) {
  const auto r = analytic_squeezing(0.5, 0.0, 0.0, 1.0);
  EXPECT_NEAR(r.s_x, 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(r.s_p, 9.0, 1e-13);
  EXPECT_NEAR(db(r.s_x), 9.5424, 1e-4);
  EXPECT_EQ(r.theta, 0.0);
}

TEST(analytic_squeezing, vacuum_without_gain) {
  const auto r = analytic_squeezing(0.0, 0.7, 0.3, 1.0);
  EXPECT_NEAR(r.s_x, 1.0, 1e-15);
  EXPECT_NEAR(r.s_p, 1.0, 1e-15);
}

TEST(analytic_squeezing, purity_at_unit_efficiency) {
  for (double g : {0.05, 0.3, 0.5, 0.9, 0.98}) {
    for (double delta : {0.0, 0.01, 0.3, 1.0, 5.0}) {
      for (double omega : {0.0, 0.1, 1.0, 3.0}) {
        const auto r = analytic_squeezing(g, delta, omega, 1.0);
        EXPECT_NEAR(r.s_x * r.s_p, 1.0, 1e-12) << g << " " << delta << " " << omega;
      }
    }
  }
}

TEST(analytic_squeezing, efficiency_mixes_with_vacuum) {
  const auto full = analytic_squeezing(0.5, 0.2, 0.1, 1.0);
  const auto half = analytic_squeezing(0.5, 0.2, 0.1, 0.5);
  EXPECT_NEAR(half.s_x, 0.5 * full.s_x + 0.5, 1e-14);
  EXPECT_NEAR(half.s_p, 0.5 * full.s_p + 0.5, 1e-14);
  EXPECT_DOUBLE_EQ(half.theta, full.theta);
}

TEST(analytic_squeezing, angle_limits) {
  EXPECT_NEAR(analytic_squeezing(0.5, 1e-9, 0.0, 1.0).theta, 0.0, 1e-8);
  EXPECT_NEAR(analytic_squeezing(0.5, 1e4, 0.0, 1.0).theta, std::numbers::pi / 2.0, 1e-3);
  double previous = 0.0;
  for (double delta = 0.0; delta < 50.0; delta += 0.5) {
    const double theta = analytic_squeezing(0.5, delta, 0.0, 1.0).theta;
    EXPECT_GE(theta, previous - 1e-15);
    previous = theta;
  }
}

TEST(analytic_squeezing, degrades_monotonically_with_detuning) {
  double previous = 0.0;
  for (double delta = 0.0; delta < 20.0; delta += 0.1) {
    const double s = analytic_squeezing(0.5, delta, 0.0, 1.0).s_x;
    EXPECT_GE(s, previous - 1e-15);
    previous = s;
  }
  EXPECT_GT(previous, 0.99);
}

TEST(analytic_squeezing, negative_gain_squeezes_p) {
  const auto r = analytic_squeezing(-0.5, 0.0, 0.0, 1.0);
  EXPECT_NEAR(r.s_x, 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(std::abs(r.theta), std::numbers::pi / 2.0, 1e-15);
}

TEST(analytic_squeezing, threshold_and_domain) {
  EXPECT_THROW(analytic_squeezing(1.0, 0.0, 0.0, 1.0), ThresholdError);
  EXPECT_THROW(analytic_squeezing(0.5, 0.0, 0.0, 1.5), DomainError);
  // Detuning shifts the threshold above g = 1.
  EXPECT_NO_THROW(analytic_squeezing(1.2, 2.0, 0.0, 1.0));
}

TEST(analytic_squeezing, sideband_minimum_for_large_detuning) {
  const double g = 0.5;
  const double delta = 3.0;
  const double expected = std::sqrt(delta * delta - g * g - 1.0);
  double best = 1e9;
  double at = 0.0;
  for (int i = 0; i <= 60000; ++i) {
    const double w = 1e-4 * i;
    const double s = analytic_squeezing(g, delta, w, 1.0).s_x;
    if (s < best) {
      best = s;
      at = w;
    }
  }
  EXPECT_NEAR(at, expected, 1e-4);
}

TEST(gouy_phase, zero_at_self_imaging) {
  EXPECT_EQ(gouy_phase(0.0, 0.0).value(), 0.0);
  EXPECT_EQ(gouy_phase(0.005, 0.0).value(), 0.0);
}

TEST(gouy_phase, stability_follows_cosine_argument) {
  for (double a = -0.0095; a < 0.01; a += 0.001) {
    for (double b = -0.0095; b < 0.01; b += 0.001) {
      const double arg = 1.0 + 2.0 * b * (a + b - a * b);
      EXPECT_EQ(gouy_phase(a, b).has_value(), arg >= -1.0 && arg <= 1.0) << a << " " << b;
    }
  }
  EXPECT_FALSE(gouy_phase(0.0, 0.005).has_value());
  EXPECT_FALSE(gouy_phase(0.0, -0.005).has_value());
  EXPECT_TRUE(gouy_phase(0.005, -0.002).has_value());
  EXPECT_THROW(gouy_phase(1.0, 0.0), DomainError);
}

TEST(cavity, waist_and_geometry) {
  EXPECT_NEAR(cavity_waist(0.1, 1.064e-6), std::sqrt(0.1 * 1.064e-6 / kTwoPi), 1e-18);
  CavityGeometry geo;
  geo.dl1 = 5e-4;
  geo.dl2 = -2e-4;
  ASSERT_TRUE(geo.stable());
  EXPECT_GT(*geo.gouy(), 0.0);
  EXPECT_THROW(cavity_waist(0.0, 1.0), DomainError);
}

TEST(opo_config, validation) {
  OpoConfig cfg = gaussian_opo(kXi, 0.5, 0.1, 0.0, 0.0, 3);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.eta(), 1.0);
  cfg.t_l = 0.1;
  EXPECT_DOUBLE_EQ(cfg.eta(), 0.5);
  cfg.basis = ModeBasis(4);
  EXPECT_THROW(cfg.validate(), BasisMismatchError);
  cfg = gaussian_opo(kXi, 0.5, 0.1, 0.0, 0.0, 3);
  cfg.gain.entries(0, 0) = 0.9995;
  EXPECT_THROW(cfg.validate(), ThresholdError);
  cfg = gaussian_opo(kXi, 0.5, 0.0, 0.0, 0.0, 3);
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(opo_config, detuning_scales_with_order) {
  const auto cfg = gaussian_opo(kXi, 0.5, 0.1, 0.0, kTwoPi * 0.002, 3);
  EXPECT_DOUBLE_EQ(cfg.detuning({0, 0}), 0.0);
  EXPECT_NEAR(cfg.detuning({1, 2}), 2.0 * kTwoPi * 0.002 * 3 / 0.1, 1e-14);
}

TEST(covariance, zero_gain_is_vacuum) {
  auto cfg = gaussian_opo(kXi, 0.0, 0.1, 0.05, 0.3, 3);
  for (bool dense : {false, true}) {
    const auto v = covariance(cfg, 0.2, {dense});
    EXPECT_LT((v.entries - Eigen::MatrixXd::Identity(v.entries.rows(), v.entries.rows()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-14);
  }
}

TEST(covariance, diagonal_gain_matches_analytic) {
  for (double g00 : {0.1, 0.5, 0.9}) {
    for (double gouy : {0.0, 0.002, 0.006}) {
      for (double omega : {0.0, std::numbers::pi / 25.0, 1.0}) {
        for (double t_l : {0.0, 0.05}) {
          const auto cfg = gaussian_opo(kXi, g00, 0.1, t_l, kTwoPi * gouy, 6);
          for (bool dense : {false, true}) {
            const auto v = covariance(cfg, omega, {dense});
            for (std::size_t i = 0; i < cfg.basis.size(); ++i) {
              const auto ref = analytic_squeezing(cfg.gain.entries(i, i),
                                                  cfg.detuning(cfg.basis[i]), omega, cfg.eta());
              const auto got = block_squeezing(v.block(i));
              EXPECT_NEAR(got.s_x, ref.s_x, 1e-9);
              EXPECT_NEAR(got.s_p, ref.s_p, 1e-9 * std::max(1.0, ref.s_p));
              EXPECT_NEAR(got.theta, ref.theta, 1e-9);
            }
          }
        }
      }
    }
  }
}

TEST(covariance, fast_path_equals_dense_solve) {
  const auto cfg = gaussian_opo(kXi, 0.7, 0.1, 0.02, kTwoPi * 0.004, 8);
  const auto fast = covariance(cfg, 0.3);
  const auto dense = covariance(cfg, 0.3, {true});
  EXPECT_LT((fast.entries - dense.entries).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(covariance, fundamental_block_is_gouy_independent) {
  const auto v0 = covariance(gaussian_opo(kXi, 0.5, 0.1, 0.0, 0.0, 5), 0.1);
  const auto v1 = covariance(gaussian_opo(kXi, 0.5, 0.1, 0.0, kTwoPi * 0.006, 5), 0.1);
  const auto k = static_cast<Eigen::Index>(v0.modes());
  for (Eigen::Index j = 0; j < 2 * k; ++j) {
    EXPECT_NEAR(v0.entries(0, j), v1.entries(0, j), 1e-14);
    EXPECT_NEAR(v0.entries(k, j), v1.entries(k, j), 1e-14);
  }
}

TEST(covariance, pure_state_symplectic_spectrum) {
  for (double theta : {0.0, kTwoPi * 0.002}) {
    const auto v = covariance(sinc_like_opo(theta), 0.0);
    EXPECT_LT((v.entries - v.entries.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    const auto nu = symplectic_eigenvalues(v);
    for (Eigen::Index i = 0; i < nu.size(); ++i) EXPECT_NEAR(nu(i), 1.0, 1e-9);
  }
}

TEST(covariance, sideband_moments_are_physical) {
  // Away from omega = 0 coupled modes carry cross-spectra in Im V, which the
  // real moments drop, so the spectrum sits at or above 1.
  for (double theta : {0.0, kTwoPi * 0.002}) {
    const auto nu = symplectic_eigenvalues(covariance(sinc_like_opo(theta), 0.3));
    for (Eigen::Index i = 0; i < nu.size(); ++i) EXPECT_GE(nu(i), 1.0 - 1e-9);
  }
}

TEST(covariance, lossy_state_is_physical) {
  auto cfg = sinc_like_opo(kTwoPi * 0.004);
  cfg.t_l = 0.03;
  const auto v = covariance(cfg, 0.5);
  const auto nu = symplectic_eigenvalues(v);
  for (Eigen::Index i = 0; i < nu.size(); ++i) EXPECT_GE(nu(i), 1.0 - 1e-9);
  EXPECT_GT(nu.maxCoeff(), 1.0 + 1e-3);
}

TEST(apply_loss, convex_combination_with_vacuum) {
  const auto v = covariance(gaussian_opo(kXi, 0.5, 0.1, 0.0, 0.0, 2), 0.0);
  EXPECT_EQ(apply_loss(v, 1.0).entries, v.entries);
  const auto id = apply_loss(v, 0.0);
  EXPECT_EQ(id.entries, Eigen::MatrixXd::Identity(v.entries.rows(), v.entries.rows()));
  EXPECT_NEAR(apply_loss(v, 0.9).x_variance(0), 0.2, 1e-15);
  EXPECT_THROW(apply_loss(v, 1.1), DomainError);
}

TEST(db, decibels) {
  EXPECT_DOUBLE_EQ(db(1.0), 0.0);
  EXPECT_NEAR(db(0.1), 10.0, 1e-14);
  EXPECT_THROW(db(0.0), DomainError);
}
