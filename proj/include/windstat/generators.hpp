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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "windstat/correlators.hpp"

namespace windstat {

enum class GeneratorRoute { MonteCarlo, Analytic };

/// Z_{k|k}(q, p) = < prod_j det K(p_j) / det K(q_j) >.
struct GeneratorValue {
  std::vector<double> q;
  std::vector<double> p;
  cdouble value;
  GeneratorRoute route = GeneratorRoute::Analytic;
  std::uint64_t trials = 0;
  double stderr = 0.0;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  cdouble median_of_means;
  std::uint64_t skipped = 0;
  std::uint64_t resampled = 0;
};

/// One draw's ratio prod_j det K(p_j) / det K(q_j) from the spectrum of Y:
/// det K(x) / det K1 = b(x)^n det(kappa(x) + Y) = prod_l (a(x) + z_l b(x)),
/// n = beta N / 2, accumulated in log-magnitude/phase form.
/// Returns false when the denominator falls below 1e-280 in magnitude.
bool generator_ratio_spectral(const SphericalSpectrum& spec, const LoopFunctions& loop,
                              std::span<const double> q, std::span<const double> p, cdouble& out);

/// Same ratio from LU log-determinants of K(p_j) and K(q_j).
cdouble generator_ratio_direct(const ChiralSample& s, const LoopFunctions& loop,
                               std::span<const double> q, std::span<const double> p);

GeneratorValue mc_generator(std::span<const double> q, std::span<const double> p, int N,
                            std::uint64_t trials, const McOptions& opts);

/// v(p) = (a(p), b(p)).
std::array<cdouble, 2> loop_vector(const LoopFunctions& loop, double p);

/// v^T(q) sigma_2 v(p) = i (b(q) a(p) - a(q) b(p)).
cdouble pairing_form(const LoopFunctions& loop, double q, double p);

/// Closed-form AIII generator
///   det[ (1/v^T(q_m) s2 v(p_n)) (v^dag(q_m) v(p_n) / v^dag(q_m) v(q_m))^N ] / det[ 1/v^T(q_m) s2 v(p_n) ].
/// Throws NearCoincidentError when a pairing form vanishes (q_m = p_n mod pi for trig).
cdouble analytic_Z_AIII(std::span<const double> q, std::span<const double> p, int N,
                        const LoopFunctions& loop = LoopFunctions::trig_loop());

/// analytic_Z_AIII, but coincident points are handled by shifting all q by
/// +-shift and +-2 shift and Richardson-extrapolating the symmetric means.
cdouble analytic_Z_AIII_regularized(std::span<const double> q, std::span<const double> p, int N,
                                    const LoopFunctions& loop = LoopFunctions::trig_loop(),
                                    double shift = 1e-6);

/// cos^N(p - q): the k = 1 trig-loop generator.
double trig_Z11(int N, double q, double p);

/// C_k(points) = d^k/dp_1..dp_k Z_{k|k}(q, p) at q = p = points, k in {1, 2},
/// by central differences with one Richardson level. Throws StepSizeError
/// when successive Richardson values disagree by more than `agreement`.
cdouble fd_correlator_from_Z(std::span<const double> points, int N, double step = 1e-2,
                             const LoopFunctions& loop = LoopFunctions::trig_loop(),
                             double agreement = 1e-6);

/// Pfaffian of an even-dimensional complex antisymmetric matrix by Householder
/// tridiagonalization (Pf(A)^2 = det A). Odd dimension gives 0, empty gives 1.
/// Throws DomainError if A^T != -A within 1e-12 (relative to max |A_ij|).
cdouble pfaffian(const CMatrix& a);

}  // namespace windstat
