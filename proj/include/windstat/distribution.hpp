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

#include <cstdint>
#include <span>
#include <vector>

#include "windstat/correlators.hpp"

namespace windstat {

/// Exact P(W) on W = -N, -N+2, ..., N for the AIII ensemble with the trig loop.
struct WindingPMF {
  int N = 0;
  std::vector<int> support;
  std::vector<double> probs;
  double mean = 0.0;
  double variance = 0.0;

  /// P(W); zero off the support (including W of the wrong parity).
  double prob(int W) const;
};

/// u_m(N, 1) for m = 1..N.
std::vector<double> inside_probabilities(int N);

/// r(m) = (1/N!) sum over permutations w of prod_{i<=m} u_{w(i)} prod_{i>m} v_{w(i)},
/// evaluated literally. Refuses N > 8.
double r_direct(int m, int N);

/// Coefficients of prod_j ((1 - p_j) + p_j x): the Poisson-binomial PMF.
std::vector<double> poisson_binomial(std::span<const double> p);

/// P(W = 2j - N) = [x^j] prod_m (v_m(N,1) + u_m(N,1) x).
WindingPMF winding_pmf(int N);

struct GaussianLimitRow {
  int N = 0;
  double variance = 0.0;
  double predicted = 0.0;     // 2 sqrt(N / pi)
  double ratio = 0.0;         // variance / predicted
  double sup_distance = 0.0;  // max_W |P(W) sigma/2 - phi(W/sigma)|
};

std::vector<GaussianLimitRow> gaussian_limit_report(std::span<const int> Ns);

/// Monte Carlo histogram of W (count route) for AIII with the trig loop.
struct WindingHistogram {
  int N = 0;
  std::vector<int> support;
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;
  std::uint64_t resampled = 0;

  double frequency(int W) const;
  /// Binomial standard error of frequency(W).
  double frequency_stderr(int W) const;
};

WindingHistogram mc_winding_histogram(int N, std::uint64_t trials, const StreamPlan& plan);

/// (1/2) sum_W |P_exact(W) - frequency(W)|.
double total_variation(const WindingPMF& pmf, const WindingHistogram& hist);

}  // namespace windstat
