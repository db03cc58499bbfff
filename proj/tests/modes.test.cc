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

#include <boost/math/special_functions/hermite.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "simopo/errors.hpp"
#include "simopo/quadrature.hpp"

using namespace simopo;

TEST(hermite, matches_boost) {
  for (int n = 0; n <= 30; ++n) {
    for (double x : {-3.0, -0.7, 0.0, 0.4, 1.9, 5.0}) {
      const double ref = boost::math::hermite(n, x);
      EXPECT_NEAR(hermite(n, x), ref, 1e-12 * std::max(1.0, std::abs(ref))) << n << " " << x;
    }
  }
  EXPECT_THROW(hermite(-1, 0.0), DomainError);
}

TEST(hermite_functions, match_explicit_normalization) {
  const double w = 1.3;
  for (double x : {-2.0, -0.3, 0.0, 0.8, 2.5}) {
    const auto h = hermite_functions(20, x, w);
    for (int m = 0; m <= 20; ++m) {
      const double ref = std::pow(2.0 / std::numbers::pi, 0.25) /
                         std::sqrt(w * std::pow(2.0, m) * std::tgamma(m + 1.0)) *
                         boost::math::hermite(m, std::numbers::sqrt2 * x / w) *
                         std::exp(-x * x / (w * w));
      EXPECT_NEAR(h[m], ref, 1e-12) << m << " " << x;
    }
  }
}

TEST(hermite_functions, high_orders_stay_finite) {
  const auto h = hermite_functions(150, 4.0, 1.0);
  for (double v : h) EXPECT_TRUE(std::isfinite(v));
}

TEST(overlap, orthonormal_at_equal_waists) {
  for (int m = 0; m <= 12; ++m) {
    for (int k = 0; k <= 12; ++k) {
      EXPECT_NEAR(overlap_1d(m, 0.9, k, 0.9), m == k ? 1.0 : 0.0, 1e-12) << m << " " << k;
    }
  }
  EXPECT_NEAR(overlap({{2, 3}, 1.1}, {{2, 3}, 1.1}), 1.0, 1e-12);
  EXPECT_NEAR(overlap({{2, 3}, 1.1}, {{3, 2}, 1.1}), 0.0, 1e-12);
}

TEST(overlap, fundamental_modes_closed_form) {
  // <h0(a)|h0(b)> = sqrt(2ab/(a^2+b^2)) per axis
  const double a = 1.0;
  const double b = 1.7;
  EXPECT_NEAR(overlap_1d(0, a, 0, b), std::sqrt(2.0 * a * b / (a * a + b * b)), 1e-13);
}

TEST(basis_change, closed_form_matches_quadrature_oracle) {
  for (double ratio : {0.5, 0.8, 1.0, 1.4, 2.2}) {
    for (int m = 0; m <= 16; ++m) {
      for (int k = 0; k <= 16; ++k) {
        EXPECT_NEAR(basis_change_1d(m, k, 1.0, ratio), overlap_1d(m, 1.0, k, ratio), 1e-11)
            << "ratio " << ratio << " m " << m << " k " << k;
      }
    }
  }
}

TEST(basis_change, identity_at_equal_waists) {
  const ModeBasis b(6);
  const auto u = basis_change(1.3, 1.3, b);
  EXPECT_LT((u.entries - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(basis_change, parity_selection) {
  EXPECT_EQ(basis_change_1d(3, 0, 1.0, 1.4), 0.0);
  EXPECT_EQ(basis_change_1d(2, 5, 1.0, 1.4), 0.0);
  const ModeBasis b(4);
  const auto u = basis_change(1.0, 1.4, b);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if ((b[i].m - b[j].m) % 2 != 0 || (b[i].n - b[j].n) % 2 != 0) {
        EXPECT_EQ(u.entries(i, j), 0.0);
      }
    }
  }
}

TEST(basis_change, unitary_in_the_limit_of_a_large_hamiltonian_basis) {
  // Rows of U over a much larger column basis are unit vectors.
  const ModeBasis cavity(6);
  const ModeBasis hamiltonian(60);
  const auto u = basis_change(1.0, 1.4, cavity, hamiltonian);
  const Eigen::MatrixXd gram = u.entries * u.entries.transpose();
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(cavity.size(), cavity.size())).cwiseAbs().maxCoeff(),
            1e-9);
}

TEST(basis_change, inverse_ratio_gives_transpose) {
  // <h_m(a)|h_k(b)> = <h_k(b)|h_m(a)>
  for (int m = 0; m <= 10; ++m) {
    for (int k = 0; k <= 10; ++k) {
      EXPECT_NEAR(basis_change_1d(m, k, 1.0, 1.6), basis_change_1d(k, m, 1.6, 1.0), 1e-13);
    }
  }
}

TEST(modes, rejects_nonpositive_waist) {
  EXPECT_THROW(hermite_functions(3, 0.0, 0.0), DomainError);
  EXPECT_THROW(overlap_1d(0, -1.0, 0, 1.0), DomainError);
  EXPECT_THROW(basis_change_1d(0, 0, 1.0, 0.0), DomainError);
}
