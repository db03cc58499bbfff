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

// Numerical Schmidt decomposition of the rotationally invariant PDC kernel.
//
// In dimensionless momenta u = w_p q / 2 the kernel is
//
//   K(u_s, u_i) = exp(-|u_s + u_i|^2) f(c |u_s - u_i|^2),   c = xi / alpha.
//
// It depends on the radii and on the relative angle only, so it splits into
// azimuthal orders l with radial kernels
//
//   K_l(r_s, r_i) = int_0^{2pi} K(r_s, r_i, phi) e^{-i l phi} dphi,
//
// each acting on L^2(r dr). Orders +-l share a spectrum.

#include <fftw3.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "simopo/errors.hpp"
#include "simopo/pdc.hpp"
#include "simopo/quadrature.hpp"

namespace simopo {

namespace {

constexpr double kSchmidtRelTolerance = 5e-3;
constexpr int kMaxSchmidtLevel = 3;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFftPlan {
 public:
  explicit RealFftPlan(int n) : n_(n) {
    std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
    std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(n / 2 + 1));
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
  }
  ~RealFftPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealFftPlan(const RealFftPlan&) = delete;
  RealFftPlan& operator=(const RealFftPlan&) = delete;

  // Buffers must come from fftw_alloc_* so their alignment matches the plan.
  void execute(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(plan_, in, out); }
  int size() const { return n_; }

 private:
  int n_;
  fftw_plan plan_;
};

struct RadialNodes {
  std::vector<double> r;
  std::vector<double> sqrt_measure;  // sqrt(w r) for the symmetric L^2(r dr) form
};

RadialNodes radial_nodes(const SchmidtGrid& grid) {
  const GaussLegendreRule rule = gauss_legendre(grid.radial_nodes);
  RadialNodes nodes;
  for (int j = 0; j < grid.radial_nodes; ++j) {
    const double r = 0.5 * grid.radius * (rule.nodes[j] + 1.0);
    const double w = 0.5 * grid.radius * rule.weights[j];
    nodes.r.push_back(r);
    nodes.sqrt_measure.push_back(std::sqrt(w * r));
  }
  return nodes;
}

// Packed lower triangles of the symmetrized radial kernels, one per
// azimuthal order 0 ... angular_nodes/2.
struct AzimuthalKernels {
  int n = 0;
  int orders = 0;
  std::vector<double> packed;  // [order][j*(j+1)/2 + k], k <= j

  Eigen::MatrixXd matrix(int l) const {
    Eigen::MatrixXd a(n, n);
    const double* base = packed.data() + static_cast<std::size_t>(l) * n * (n + 1) / 2;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k <= j; ++k) {
        a(j, k) = a(k, j) = base[static_cast<std::size_t>(j) * (j + 1) / 2 + k];
      }
    }
    return a;
  }
};

AzimuthalKernels azimuthal_kernels(double c, const PhaseMatching& pm, const SchmidtGrid& grid,
                                   int max_orders) {
  const RadialNodes nodes = radial_nodes(grid);
  const int n = grid.radial_nodes;
  const int nphi = grid.angular_nodes;
  const int orders = std::min(nphi / 2 + 1, max_orders);
  const std::size_t pairs = static_cast<std::size_t>(n) * (n + 1) / 2;

  AzimuthalKernels out;
  out.n = n;
  out.orders = orders;
  out.packed.assign(pairs * orders, 0.0);

  std::vector<double> cosines(nphi);
  for (int p = 0; p < nphi; ++p) cosines[p] = std::cos(2.0 * std::numbers::pi * p / nphi);
  const RealFftPlan plan(nphi);
  const double dphi = 2.0 * std::numbers::pi / nphi;

  tbb::parallel_for(0, n, [&](int j) {
    std::unique_ptr<double, FftwFree> samples(fftw_alloc_real(nphi));
    std::unique_ptr<fftw_complex, FftwFree> spectrum(fftw_alloc_complex(nphi / 2 + 1));
    const double rj = nodes.r[j];
    for (int k = 0; k <= j; ++k) {
      const double rk = nodes.r[k];
      const double radial = rj * rj + rk * rk;
      const double cross = 2.0 * rj * rk;
      for (int p = 0; p < nphi; ++p) {
        const double cp = cross * cosines[p];
        samples.get()[p] = std::exp(-(radial + cp)) * pm(c * (radial - cp));
      }
      plan.execute(samples.get(), spectrum.get());
      const double measure = nodes.sqrt_measure[j] * nodes.sqrt_measure[k] * dphi;
      const std::size_t pair = static_cast<std::size_t>(j) * (j + 1) / 2 + k;
      for (int l = 0; l < orders; ++l) {
        out.packed[static_cast<std::size_t>(l) * pairs + pair] = spectrum.get()[l][0] * measure;
      }
    }
  });
  return out;
}

double schmidt_at_grid(double c, const PhaseMatching& pm, const SchmidtGrid& grid) {
  const AzimuthalKernels kernels = azimuthal_kernels(c, pm, grid, grid.angular_nodes / 2 + 1);
  std::vector<double> first(kernels.orders, 0.0);
  std::vector<double> second(kernels.orders, 0.0);
  tbb::parallel_for(0, kernels.orders, [&](int l) {
    const Eigen::MatrixXd a = kernels.matrix(l);
    first[l] = a.squaredNorm();  // sum of squared eigenvalues
    if (first[l] > 0.0) {
      const Eigen::MatrixXd a2 = a * a;
      second[l] = a2.squaredNorm();  // sum of fourth powers
    }
  });
  double s1 = 0.0;
  double s2 = 0.0;
  for (int l = 0; l < kernels.orders; ++l) {
    const double multiplicity = (l == 0 || 2 * l == grid.angular_nodes) ? 1.0 : 2.0;
    s1 += multiplicity * first[l];
    s2 += multiplicity * second[l];
  }
  return s1 * s1 / s2;
}

}  // namespace

SchmidtGrid schmidt_grid(double xi_over_alpha, int level) {
  if (!(xi_over_alpha > 0.0)) throw DomainError("xi/alpha must be positive");
  // First zero of the phase matching sits at |Delta| = sqrt(pi/c); the
  // radius covers several of its lobes.
  const double base_radius = 3.0 + 4.0 * std::sqrt(std::numbers::pi / xi_over_alpha);
  const int base_nodes = static_cast<int>(std::ceil(2.5 * base_radius)) + 24;
  SchmidtGrid grid;
  grid.radius = base_radius * (1.0 + 0.5 * level);
  grid.radial_nodes = base_nodes << level;
  grid.angular_nodes = 256 << level;
  return grid;
}

SchmidtResult sinc_schmidt_number(double xi_over_alpha, const PhaseMatching& pm, int level) {
  if (level >= 0) {
    const SchmidtGrid grid = schmidt_grid(xi_over_alpha, level);
    return {schmidt_at_grid(xi_over_alpha, pm, grid), level, grid};
  }
  SchmidtGrid grid = schmidt_grid(xi_over_alpha, 0);
  double previous = schmidt_at_grid(xi_over_alpha, pm, grid);
  for (int l = 1; l <= kMaxSchmidtLevel; ++l) {
    grid = schmidt_grid(xi_over_alpha, l);
    const double current = schmidt_at_grid(xi_over_alpha, pm, grid);
    if (std::abs(current - previous) < kSchmidtRelTolerance * current) {
      return {current, l, grid};
    }
    previous = current;
  }
  throw QuadratureError("Schmidt number did not converge under grid refinement");
}

AlphaFit fit_alpha(double xi, const PhaseMatching& pm) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("fit_alpha needs 0 < xi < 1");
  constexpr double lo = 0.1;
  constexpr double hi = 1.0;
  const double target = schmidt_number(xi);

  // The widest phase-matching lobe (largest alpha) is the hardest grid; the
  // level converged there is used for the whole search.
  const int level = sinc_schmidt_number(xi / hi, pm).level;
  auto residual = [&](double alpha) {
    return sinc_schmidt_number(xi / alpha, pm, level).schmidt_number - target;
  };
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw BracketError("Schmidt-number residual has no sign change for alpha in [0.1, 1.0]");
  }
  std::uintmax_t max_iter = 60;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-3 * std::min(a, b); };
  const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi, tol, max_iter);
  AlphaFit fit;
  fit.alpha = 0.5 * (a + b);
  fit.target = target;
  fit.level = level;
  fit.schmidt_number = sinc_schmidt_number(xi / fit.alpha, pm, level).schmidt_number;
  return fit;
}

namespace {

struct FirstMode {
  std::vector<double> r;
  std::vector<double> weighted;  // sqrt(w r) v_j for the unit-norm radial eigenvector
};

FirstMode first_schmidt_mode(double c, const PhaseMatching& pm, int level) {
  const SchmidtGrid grid = schmidt_grid(c, level);
  const AzimuthalKernels kernels = azimuthal_kernels(c, pm, grid, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernels.matrix(0));
  const auto& ev = solver.eigenvalues();
  const Eigen::Index top = std::abs(ev(0)) > std::abs(ev(ev.size() - 1)) ? 0 : ev.size() - 1;
  const Eigen::VectorXd v = solver.eigenvectors().col(top);
  const RadialNodes nodes = radial_nodes(grid);
  FirstMode mode;
  mode.r = nodes.r;
  for (int j = 0; j < grid.radial_nodes; ++j) mode.weighted.push_back(nodes.sqrt_measure[j] * v(j));
  return mode;
}

// |<mode | HG00 of waist a>|^2 with the mode e^{i0phi}/sqrt(2pi) g(r).
double overlap_with_fundamental(const FirstMode& mode, double a) {
  const double norm = std::sqrt(2.0 / std::numbers::pi) / a;
  double sum = 0.0;
  for (std::size_t j = 0; j < mode.r.size(); ++j) {
    sum += mode.weighted[j] * norm * std::exp(-mode.r[j] * mode.r[j] / (a * a));
  }
  const double amplitude = std::sqrt(2.0 * std::numbers::pi) * sum;
  return amplitude * amplitude;
}

}  // namespace

double first_mode_overlap(const SincKernelParams& p, double cavity_waist, const PhaseMatching& pm,
                          int level) {
  const FirstMode mode = first_schmidt_mode(p.xi / p.alpha, pm, level);
  return overlap_with_fundamental(mode, p.pump_waist / cavity_waist);
}

PumpWaistFit fit_pump_waist(const SincKernelParams& p, double cavity_waist, const PhaseMatching& pm,
                            int level) {
  if (!(cavity_waist > 0.0)) throw DomainError("cavity waist must be positive");
  const FirstMode mode = first_schmidt_mode(p.xi / p.alpha, pm, level);
  auto negative_overlap = [&](double log_ratio) {
    return -overlap_with_fundamental(mode, std::exp(log_ratio));
  };
  // 20 bits of the log ratio resolve w_p/w_c to ~1e-6 relative.
  const auto [log_ratio, value] =
      boost::math::tools::brent_find_minima(negative_overlap, std::log(0.1), std::log(10.0), 20);
  return {std::exp(log_ratio) * cavity_waist, -value};
}

}  // namespace simopo
