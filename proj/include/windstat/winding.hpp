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

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "windstat/ensembles.hpp"

namespace windstat {

/// a(p) = c_0 + sum_k (c_k cos kp + s_k sin kp), real coefficients.
struct FourierSeries {
  std::vector<double> cos_coeffs;  // c_0, c_1, ...
  std::vector<double> sin_coeffs;  // s_1, s_2, ... (index 0 is the k = 1 term)

  double value(double p) const;
  double derivative(double p) const;
};

/// The coefficient functions of K(p) = a(p) K1 + b(p) K2.
struct LoopFunctions {
  std::function<cdouble(double)> a;
  std::function<cdouble(double)> b;
  std::function<cdouble(double)> da;
  std::function<cdouble(double)> db;
  bool trig = false;  // a = cos, b = sin
  std::string name;

  static LoopFunctions trig_loop();
  static LoopFunctions fourier(FourierSeries a, FourierSeries b);
};

/// True if conj(v(p)) == v(-p) holds on a uniform grid (CII requirement).
bool satisfies_time_reversal(const LoopFunctions& loop, int grid = 257, double tol = 1e-12);

/// kappa(p) = a(p)/b(p). Throws PoleError where b vanishes.
cdouble kappa(const LoopFunctions& loop, double p);

/// Winding density from the spectrum of Y = K1^{-1} K2:
///   w(p) = n b'(p)/b(p) + kappa'(p) sum_j 1/(kappa(p) + z_j),  n = beta N / 2.
/// Throws PoleError where b(p) = 0 or kappa(p) + z_j is within pole_guard of 0.
cdouble winding_density_spectral(const SphericalSpectrum& spec, const LoopFunctions& loop, double p,
                                 double pole_guard = 1e-12);

/// Winding density tr(K'(p) K(p)^{-1}) from one LU factorization of K(p).
/// Regular wherever K(p) is invertible; throws DegenerateLoopError otherwise.
cdouble winding_density_trace(const ChiralSample& s, const LoopFunctions& loop, double p);

struct WindingRecord {
  int W = 0;
  cdouble contour_value;  // (1/2 pi i) * trapezoid sum, before rounding
  int m_inside = -1;      // count-route m (see winding_number_count), -1 if not computed
  int grid_size = 0;
  double residual = 0.0;  // |contour_value - W|
};

struct ContourOptions {
  int grid_size = 4096;
  int max_grid_size = 1 << 22;
  double tolerance = 1e-6;
};

/// Trapezoid rule for (1/2 pi i) int_0^{2 pi} w(p) dp on a uniform grid,
/// doubling the grid until the value is within `tolerance` of an integer.
/// Throws NonQuantizedError if max_grid_size is reached first.
WindingRecord winding_number_contour(const ChiralSample& s, const LoopFunctions& loop,
                                     const ContourOptions& opts = {});

/// Orientation sign s in W = s (2m - n). Fixed once by calibrate_orientation_sign().
inline constexpr int kOrientationSign = +1;

/// Number of eigenvalues on the side of the trig loop that winds positively:
/// count_inside applied to the Cayley image (z - i)/(z + i), i.e. Im z > 0.
/// Counts individual eigenvalues (both members of a CII pair).
int count_winding_side(const SphericalSpectrum& spec);

/// True when some eigenvalue is within `guard` of the boundary used by
/// count_winding_side (|Cayley image| = 1); such draws are resampled.
bool near_winding_boundary(const SphericalSpectrum& spec, double guard = 1e-9);

/// W = s (2m - n) for the trig loop, m = count_winding_side, n = beta N / 2.
/// Throws DomainError for non-trig loops and ResampleSignal near the boundary.
int winding_number_count(const SphericalSpectrum& spec, const LoopFunctions& loop);

/// Both routes on one draw; throws RouteMismatchError if they disagree.
WindingRecord winding_both_routes(const ChiralSample& s, const SphericalSpectrum& spec,
                                  const LoopFunctions& loop, const ContourOptions& opts = {});

/// Re-derives the orientation sign from N = 1 draws (contour vs. count).
int calibrate_orientation_sign(std::uint64_t seed, int draws = 8);

}  // namespace windstat
