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

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace windstat::kitaev {

struct Params {
  double t = 1.0;      // hopping
  double mu = 1.0;     // chemical potential
  double delta = 1.0;  // pairing
};

struct DVector {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  double norm() const;
};

/// d(k) = (0, delta sin k, mu + 2 t cos k).
DVector d_vector(const Params& params, double k);

/// H(k) = d(k) . sigma in the d-vector basis, where it anticommutes with sigma_x.
Eigen::Matrix2cd bloch_hamiltonian(const Params& params, double k);

/// Pauli matrices sigma_x, sigma_y, sigma_z.
Eigen::Matrix2cd pauli(int axis);

/// Unitary U with U sigma_x U^dagger = sigma_z (the Hadamard rotation).
Eigen::Matrix2cd chiral_basis_rotation();

/// U H(k) U^dagger: block off-diagonal, anticommutes with diag(1, -1).
Eigen::Matrix2cd chiral_basis_hamiltonian(const Params& params, double k);

struct Dispersion {
  std::vector<double> k;
  std::vector<double> e_plus;
  std::vector<double> e_minus;
  double gap = 0.0;        // 2 min_k |d(k)|
  double k_min_gap = 0.0;  // where the minimum sits
};

/// E(k) = +-|d(k)| on a uniform grid of `grid` points in [0, 2 pi), and the
/// gap from a golden-section refinement around the grid minimum.
Dispersion dispersion_and_gap(const Params& params, int grid = 1024);

/// Minimal gap only.
double gap(const Params& params, int grid = 1024);

inline constexpr double kTransitionGap = 1e-9;

/// Winding of (d_y(k), d_z(k)) around the origin: accumulated angle over a
/// uniform k-grid divided by 2 pi. Throws PhaseTransitionError if the gap is
/// at most kTransitionGap.
int kitaev_winding(const Params& params, int grid = 1024);

}  // namespace windstat::kitaev
