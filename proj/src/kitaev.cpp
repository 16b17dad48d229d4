/*
 * Copyright 2026 The windstat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "windstat/kitaev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "windstat/errors.hpp"

namespace windstat::kitaev {

using cd = std::complex<double>;

double DVector::norm() const { return std::sqrt(dx * dx + dy * dy + dz * dz); }

DVector d_vector(const Params& params, double k) {
  return {0.0, params.delta * std::sin(k), params.mu + 2.0 * params.t * std::cos(k)};
}

Eigen::Matrix2cd pauli(int axis) {
  Eigen::Matrix2cd s;
  switch (axis) {
    case 0:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case 1:
      s << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
      break;
    case 2:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      throw DomainError("pauli: axis must be 0, 1 or 2");
  }
  return s;
}

Eigen::Matrix2cd bloch_hamiltonian(const Params& params, double k) {
  const DVector d = d_vector(params, k);
  return d.dx * pauli(0) + d.dy * pauli(1) + d.dz * pauli(2);
}

Eigen::Matrix2cd chiral_basis_rotation() {
  Eigen::Matrix2cd u;
  u << 1.0, 1.0, 1.0, -1.0;
  return u / std::numbers::sqrt2;
}

Eigen::Matrix2cd chiral_basis_hamiltonian(const Params& params, double k) {
  const Eigen::Matrix2cd u = chiral_basis_rotation();
  return u * bloch_hamiltonian(params, k) * u.adjoint();
}

namespace {

double half_gap_at(const Params& params, double k) { return d_vector(params, k).norm(); }

// Golden-section search for the minimum of |d(k)| on [lo, hi].
double refine_minimum(const Params& params, double lo, double hi, double& k_best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = half_gap_at(params, x1);
  double f2 = half_gap_at(params, x2);
  for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = half_gap_at(params, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = half_gap_at(params, x2);
    }
  }
  k_best = f1 < f2 ? x1 : x2;
  return std::min(f1, f2);
}

}  // namespace

Dispersion dispersion_and_gap(const Params& params, int grid) {
  if (grid < 2) throw DomainError("dispersion grid needs at least 2 points");
  const double two_pi = 2.0 * std::numbers::pi;
  Dispersion out;
  out.k.resize(grid);
  out.e_plus.resize(grid);
  out.e_minus.resize(grid);
  int best = 0;
  for (int j = 0; j < grid; ++j) {
    const double k = two_pi * j / grid;
    const double e = half_gap_at(params, k);
    out.k[j] = k;
    out.e_plus[j] = e;
    out.e_minus[j] = -e;
    if (e < out.e_plus[best]) best = j;
  }
  const double step = two_pi / grid;
  double k_best = out.k[best];
  double min_half = refine_minimum(params, out.k[best] - step, out.k[best] + step, k_best);
  if (out.e_plus[best] <= min_half) {
    min_half = out.e_plus[best];
    k_best = out.k[best];
  }
  out.gap = 2.0 * min_half;
  out.k_min_gap = std::fmod(k_best + two_pi, two_pi);
  return out;
}

double gap(const Params& params, int grid) { return dispersion_and_gap(params, grid).gap; }

int kitaev_winding(const Params& params, int grid) {
  const double g = gap(params, grid);
  if (g <= kTransitionGap) {
    throw PhaseTransitionError("gap " + std::to_string(g) + " closes at mu=" +
                               std::to_string(params.mu) + ", t=" + std::to_string(params.t));
  }
  const double two_pi = 2.0 * std::numbers::pi;
  // Steps larger than pi/4 could alias; the grid doubles until every step is small.
  for (int n = std::max(grid, 8); n <= (1 << 24); n *= 2) {
    double total = 0.0;
    double largest = 0.0;
    DVector prev = d_vector(params, 0.0);
    for (int j = 1; j <= n; ++j) {
      const DVector cur = d_vector(params, two_pi * j / n);
      // Signed angle from prev to cur in the (y, z) plane.
      const double step =
          std::atan2(prev.dy * cur.dz - prev.dz * cur.dy, prev.dy * cur.dy + prev.dz * cur.dz);
      total += step;
      largest = std::max(largest, std::abs(step));
      prev = cur;
    }
    if (largest <= std::numbers::pi / 4) return static_cast<int>(std::lround(total / two_pi));
  }
  throw PhaseTransitionError("winding angle not resolved; parameters too close to the transition");
}

}  // namespace windstat::kitaev
