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
#include <cstdint>
#include <span>
#include <vector>

#include "windstat/ensembles.hpp"
#include "windstat/parallel.hpp"
#include "windstat/winding.hpp"

namespace windstat {

/// Plain: average of prod_j w(p_j) per draw.
/// RotationAverage: per draw, the exact average of prod_j w(p_j + t) over t,
/// which equals the average over the rotations (K1, K2) -> (cos t K1 - sin t K2,
/// sin t K1 + cos t K2). Same mean, much smaller variance. Trig loop, k <= 2.
enum class CorrelatorEstimator { Plain, RotationAverage };

/// Settings shared by the Monte Carlo estimators.
struct McOptions {
  StreamPlan plan;
  SymmetryClass cls = SymmetryClass::AIII;
  LoopFunctions loop = LoopFunctions::trig_loop();
  double pole_guard = 1e-9;      // |kappa(p) + z| below this skips the draw
  double point_margin = 1e-3;    // required |b(p)| at every evaluation point
  double skip_warning = 1e-3;    // skipped/trials above this sets `warning`
  SpectrumOptions spectrum;
  CorrelatorEstimator estimator = CorrelatorEstimator::Plain;
};

/// Mean of prod_j w(p_j) over ensemble draws.
struct CorrelatorEstimate {
  std::vector<double> points;
  cdouble mean;
  double stderr = 0.0;  // of the complex mean
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  cdouble median_of_means;  // median over per-stream means, componentwise
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  std::uint64_t resampled = 0;
  bool warning = false;
};

/// k-point correlator <w(p_1) ... w(p_k)> estimated from `trials` draws.
CorrelatorEstimate mc_correlator(int k, std::span<const double> points, int N, std::uint64_t trials,
                                 const McOptions& opts);

/// Several point sets evaluated on the same draws.
std::vector<CorrelatorEstimate> mc_correlator_batch(const std::vector<std::vector<double>>& point_sets,
                                                    int N, std::uint64_t trials,
                                                    const McOptions& opts);

/// Trig-loop density sum_j (z_j cos p - sin p) / (cos p + z_j sin p).
cdouble winding_density_trig(const SphericalSpectrum& spec, double p);

/// Rotation average of w(p_1)...w(p_k) for one draw, k in {1, 2}, trig loop.
/// With c = -(1 + i z)/(1 - i z): k = 1 gives i (2 m - n), m = #{|c| < 1};
/// k = 2 is a finite residue sum over eigenvalue pairs on opposite sides.
/// Returns false when an eigenvalue sits within `guard` of |c| = 1 or a pair
/// hits a pole of the residue sum.
bool rotation_averaged_product(const SphericalSpectrum& spec, std::span<const double> points,
                               double guard, cdouble& out);

struct AnalyticValue {
  double value = 0.0;
  bool diagonal_limit = false;  // p1 = p2 (mod pi): the limit -N was returned
};

/// C_2(p1, p2) = -(1 - cos^{2N}(p1 - p2)) / (1 - cos^2(p1 - p2)) for the
/// AIII ensemble with the trig loop.
AnalyticValue analytic_C2_flagged(int N, double p1, double p2);
double analytic_C2(int N, double p1, double p2);

/// L_{nm}(q) = (-1)^{m-n} pi / q^{m-n+1} B(m, N-m+1) * (u_m(N,q^2) if m >= n, else -v_m(N,q^2)).
double L_entry(int n, int m, int N, double q);

/// C_2(psi1/N^alpha, psi2/N^alpha) / N^{2 alpha}.
double unfolded_C2(int N, double alpha, double psi1, double psi2);

/// Large-N limit of unfolded_C2: -1/d^2 (alpha < 1/2), -(1 - e^{-d^2})/d^2
/// (alpha = 1/2), 0 (alpha > 1/2), with d = psi1 - psi2.
double f2_limit(double alpha, double psi1, double psi2);

/// max over d in [d_lo, d_hi] (uniform grid) of |unfolded_C2(N, alpha, d, 0) - f2_limit(alpha, d, 0)|.
double unfolding_sup_distance(int N, double alpha, double d_lo = 0.5, double d_hi = 5.0,
                              int samples = 901);

}  // namespace windstat
