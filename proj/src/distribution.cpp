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

#include "windstat/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "windstat/errors.hpp"
#include "windstat/specfun.hpp"

namespace windstat {

double WindingPMF::prob(int W) const {
  if (std::abs(W) > N || (W + N) % 2 != 0) return 0.0;
  return probs[(W + N) / 2];
}

std::vector<double> inside_probabilities(int N) {
  if (N < 1) throw DomainError("inside_probabilities: N must be at least 1");
  std::vector<double> u(N);
  for (int m = 1; m <= N; ++m) u[m - 1] = specfun::u_fn(m, N, 1.0);
  return u;
}

double r_direct(int m, int N) {
  if (N < 1 || N > 8) throw DomainError("r_direct is an oracle for 1 <= N <= 8 only");
  if (m < 0 || m > N) throw DomainError("r_direct: m outside 0..N");
  std::vector<double> u(N), v(N);
  for (int j = 1; j <= N; ++j) {
    const specfun::BetaPair bp = specfun::beta_pair(j, N, 1.0);
    u[j - 1] = bp.u;
    v[j - 1] = bp.v;
  }
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  double factorial = 0.0;
  do {
    double term = 1.0;
    for (int i = 0; i < m; ++i) term *= u[perm[i]];
    for (int i = m; i < N; ++i) term *= v[perm[i]];
    total += term;
    factorial += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / factorial;
}

std::vector<double> poisson_binomial(std::span<const double> p) {
  std::vector<double> coeff(p.size() + 1, 0.0);
  coeff[0] = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t i = j + 1; i > 0; --i) {
      coeff[i] = coeff[i] * (1.0 - p[j]) + coeff[i - 1] * p[j];
    }
    coeff[0] *= 1.0 - p[j];
  }
  return coeff;
}

WindingPMF winding_pmf(int N) {
  if (N < 1) throw DomainError("winding_pmf: N must be at least 1");
  std::vector<double> coeff(N + 1, 0.0);
  coeff[0] = 1.0;
  for (int m = 1; m <= N; ++m) {
    const specfun::BetaPair bp = specfun::beta_pair(m, N, 1.0);
    for (int i = m; i > 0; --i) coeff[i] = coeff[i] * bp.v + coeff[i - 1] * bp.u;
    coeff[0] *= bp.v;
  }
  const double total = std::accumulate(coeff.begin(), coeff.end(), 0.0);
  if (std::abs(total - 1.0) < 1e-9) {
    for (double& c : coeff) c /= total;
  }

  WindingPMF pmf;
  pmf.N = N;
  pmf.probs = std::move(coeff);
  pmf.support.resize(N + 1);
  for (int j = 0; j <= N; ++j) pmf.support[j] = 2 * j - N;
  for (int j = 0; j <= N; ++j) pmf.mean += pmf.support[j] * pmf.probs[j];
  for (int j = 0; j <= N; ++j) {
    const double d = pmf.support[j] - pmf.mean;
    pmf.variance += d * d * pmf.probs[j];
  }
  return pmf;
}

std::vector<GaussianLimitRow> gaussian_limit_report(std::span<const int> Ns) {
  std::vector<GaussianLimitRow> rows;
  for (int N : Ns) {
    if (N < 2) throw DomainError("gaussian_limit_report: N must be at least 2");
    const WindingPMF pmf = winding_pmf(N);
    GaussianLimitRow row;
    row.N = N;
    row.variance = pmf.variance;
    row.predicted = 2.0 * std::sqrt(N / std::numbers::pi);
    row.ratio = row.variance / row.predicted;
    const double sigma = std::sqrt(pmf.variance);
    for (std::size_t j = 0; j < pmf.probs.size(); ++j) {
      const double x = pmf.support[j] / sigma;
      const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
      row.sup_distance = std::max(row.sup_distance, std::abs(pmf.probs[j] * sigma / 2.0 - phi));
    }
    rows.push_back(row);
  }
  return rows;
}

double WindingHistogram::frequency(int W) const {
  if (std::abs(W) > N || (W + N) % 2 != 0 || trials == 0) return 0.0;
  return static_cast<double>(counts[(W + N) / 2]) / static_cast<double>(trials);
}

double WindingHistogram::frequency_stderr(int W) const {
  const double f = frequency(W);
  return trials == 0 ? 0.0 : std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
}

WindingHistogram mc_winding_histogram(int N, std::uint64_t trials, const StreamPlan& plan) {
  if (N < 1) throw DomainError("mc_winding_histogram: N must be at least 1");
  struct Tally {
    std::vector<std::uint64_t> counts;
    std::uint64_t resampled = 0;
  };
  const LoopFunctions loop = LoopFunctions::trig_loop();
  const auto tallies = run_streams<Tally>(trials, plan, [&](std::uint32_t stream, std::uint64_t draws) {
    Tally t;
    t.counts.assign(N + 1, 0);
    for (std::uint64_t d = 0; d < draws; ++d) {
      const DrawKey key{plan.seed, stream, static_cast<std::uint32_t>(d), 0};
      const SpectrumDraw draw =
          draw_spectrum(N, SymmetryClass::AIII, key, {},
                        [](const SphericalSpectrum& s) { return !near_winding_boundary(s); });
      t.resampled += draw.resamples;
      const int W = winding_number_count(draw.spectrum, loop);
      ++t.counts[(W + N) / 2];
    }
    return t;
  });
  WindingHistogram hist;
  hist.N = N;
  hist.trials = trials;
  hist.counts.assign(N + 1, 0);
  hist.support.resize(N + 1);
  for (int j = 0; j <= N; ++j) hist.support[j] = 2 * j - N;
  for (const Tally& t : tallies) {
    for (int j = 0; j <= N; ++j) hist.counts[j] += t.counts[j];
    hist.resampled += t.resampled;
  }
  return hist;
}

double total_variation(const WindingPMF& pmf, const WindingHistogram& hist) {
  if (pmf.N != hist.N) throw DomainError("total_variation: N mismatch");
  double tv = 0.0;
  for (int W : pmf.support) tv += std::abs(pmf.prob(W) - hist.frequency(W));
  return 0.5 * tv;
}

}  // namespace windstat
