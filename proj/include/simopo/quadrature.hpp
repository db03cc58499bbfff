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

#pragma once

#include <vector>

namespace simopo {

/// Gauss-Hermite rule with n nodes.
///
/// `weights` integrate f(t) e^{-t^2}. `scaled_weights` are w_i e^{t_i^2} and
/// integrate a function that already carries its own Gaussian decay; they are
/// computed without forming e^{t^2}, so they stay finite for large n.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Jacobi-matrix eigenvalues polished by Newton on the orthonormal Hermite
/// recurrence. n in [1, 600]; nodes ascending.
GaussHermiteRule gauss_hermite(int n);

/// Nodes ascending.
GaussLegendreRule gauss_legendre(int n);

}  // namespace simopo
