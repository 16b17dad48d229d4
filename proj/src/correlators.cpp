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

#include "windstat/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "windstat/accumulator.hpp"
#include "windstat/errors.hpp"
#include "windstat/specfun.hpp"

namespace windstat {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

struct StreamTally {
  std::vector<ComplexAccumulator> acc;
  std::vector<std::uint64_t> skipped;
  std::uint64_t resampled = 0;
};

void check_points(const std::vector<std::vector<double>>& sets, const McOptions& opts) {
  for (const auto& pts : sets) {
    if (pts.empty()) throw DomainError("correlator needs at least one point");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(opts.loop.b(pts[i])) < opts.point_margin) {
        throw DomainError("point p=" + std::to_string(pts[i]) +
                          " is within the margin of a zero of b(p)");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (pts[i] == pts[j]) throw DomainError("correlator points must be pairwise distinct");
      }
    }
  }
}

}  // namespace

cdouble winding_density_trig(const SphericalSpectrum& spec, double p) {
  const double c = std::cos(p);
  const double s = std::sin(p);
  cdouble acc = 0.0;
  for (const cdouble& z : spec.z) acc += (z * c - s) / (c + z * s);
  return acc;
}

bool rotation_averaged_product(const SphericalSpectrum& spec, std::span<const double> points,
                               double guard, cdouble& out) {
  const cdouble I(0.0, 1.0);
  const std::size_t n = spec.z.size();
  std::vector<cdouble> c(n);
  std::vector<bool> inside(n);
  int m = 0;
  for (std::size_t l = 0; l < n; ++l) {
    // w(p) = i sum_l (e^{2ip} + c_l) / (e^{2ip} - c_l)
    c[l] = -(1.0 + I * spec.z[l]) / (1.0 - I * spec.z[l]);
    const double r = std::abs(c[l]);
    if (!std::isfinite(r) || std::abs(r - 1.0) < guard) return false;
    inside[l] = r < 1.0;
    m += inside[l];
  }
  const double nn = static_cast<double>(n);
  if (points.size() == 1) {
    out = I * (2.0 * m - nn);
    return true;
  }
  if (points.size() != 2) throw DomainError("rotation average supports k = 1 or 2");
  const cdouble a = std::exp(2.0 * I * points[0]);
  const cdouble b = std::exp(2.0 * I * points[1]);
  cdouble sum = nn * nn;
  for (std::size_t l = 0; l < n; ++l) {
    const cdouble al = c[l] / a;
    for (std::size_t j = 0; j < n; ++j) {
      if (inside[l] == inside[j]) continue;
      const cdouble bj = c[j] / b;
      const cdouble diff = al - bj;
      if (std::abs(diff) < guard) return false;
      const cdouble term = 2.0 * (al + bj) / diff;
      sum += inside[l] ? term : -term;
    }
  }
  out = -sum;
  return true;
}

std::vector<CorrelatorEstimate> mc_correlator_batch(const std::vector<std::vector<double>>& point_sets,
                                                    int N, std::uint64_t trials,
                                                    const McOptions& opts) {
  check_points(point_sets, opts);
  const bool rotation = opts.estimator == CorrelatorEstimator::RotationAverage;
  if (rotation) {
    if (!opts.loop.trig) throw DomainError("rotation-averaged estimator needs the trig loop");
    for (const auto& pts : point_sets) {
      if (pts.size() > 2) throw DomainError("rotation-averaged estimator supports k = 1 or 2");
    }
  }
  // Every distinct point is evaluated once per draw.
  std::vector<double> unique;
  for (const auto& pts : point_sets) unique.insert(unique.end(), pts.begin(), pts.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<std::vector<std::size_t>> index(point_sets.size());
  for (std::size_t s = 0; s < point_sets.size(); ++s) {
    for (double p : point_sets[s]) {
      index[s].push_back(std::lower_bound(unique.begin(), unique.end(), p) - unique.begin());
    }
  }

  const auto tallies = run_streams<StreamTally>(
      trials, opts.plan, [&](std::uint32_t stream, std::uint64_t draws) {
        StreamTally t;
        t.acc.resize(point_sets.size());
        t.skipped.assign(point_sets.size(), 0);
        std::vector<cdouble> w(unique.size());
        std::vector<bool> ok(unique.size());
        for (std::uint64_t d = 0; d < draws; ++d) {
          const DrawKey key{opts.plan.seed, stream, static_cast<std::uint32_t>(d), 0};
          const SpectrumDraw draw = draw_spectrum(N, opts.cls, key, opts.spectrum);
          t.resampled += draw.resamples;
          if (rotation) {
            for (std::size_t s = 0; s < point_sets.size(); ++s) {
              cdouble v;
              if (rotation_averaged_product(draw.spectrum, point_sets[s], opts.pole_guard, v)) {
                t.acc[s].push(v);
              } else {
                ++t.skipped[s];
              }
            }
            continue;
          }
          for (std::size_t u = 0; u < unique.size(); ++u) {
            try {
              w[u] = winding_density_spectral(draw.spectrum, opts.loop, unique[u], opts.pole_guard);
              ok[u] = true;
            } catch (const PoleError&) {
              ok[u] = false;
            }
          }
          for (std::size_t s = 0; s < point_sets.size(); ++s) {
            cdouble product = 1.0;
            bool usable = true;
            for (std::size_t u : index[s]) {
              usable = usable && ok[u];
              product *= w[u];
            }
            if (usable) {
              t.acc[s].push(product);
            } else {
              ++t.skipped[s];
            }
          }
        }
        return t;
      });

  std::vector<CorrelatorEstimate> out(point_sets.size());
  for (std::size_t s = 0; s < point_sets.size(); ++s) {
    ComplexAccumulator total;
    std::vector<double> means_re, means_im;
    CorrelatorEstimate& e = out[s];
    for (const StreamTally& t : tallies) {
      total.merge(t.acc[s]);
      e.skipped += t.skipped[s];
      if (t.acc[s].count() > 0) {
        means_re.push_back(t.acc[s].mean().real());
        means_im.push_back(t.acc[s].mean().imag());
      }
    }
    for (const StreamTally& t : tallies) e.resampled += t.resampled;
    e.points = point_sets[s];
    e.trials = trials;
    e.mean = total.mean();
    e.stderr = total.stderr();
    e.stderr_re = total.stderr_re();
    e.stderr_im = total.stderr_im();
    e.median_of_means = {median(means_re), median(means_im)};
    e.warning = trials > 0 && static_cast<double>(e.skipped) / trials > opts.skip_warning;
  }
  return out;
}

CorrelatorEstimate mc_correlator(int k, std::span<const double> points, int N, std::uint64_t trials,
                                 const McOptions& opts) {
  if (k < 1 || static_cast<std::size_t>(k) != points.size()) {
    throw DomainError("mc_correlator: k must equal the number of points");
  }
  return mc_correlator_batch({std::vector<double>(points.begin(), points.end())}, N, trials, opts)
      .front();
}

AnalyticValue analytic_C2_flagged(int N, double p1, double p2) {
  if (N < 1) throw DomainError("analytic_C2: N must be at least 1");
  const double s = std::sin(p1 - p2);
  const double eps = s * s;  // 1 - cos^2
  if (eps == 0.0) return {-static_cast<double>(N), true};
  if (eps < 1e-8) {
    // (1 - (1-e)^N)/e = N - C(N,2) e + C(N,3) e^2 - C(N,4) e^3 + ...
    const double n = N;
    const double c2 = n * (n - 1) / 2.0;
    const double c3 = c2 * (n - 2) / 3.0;
    const double c4 = c3 * (n - 3) / 4.0;
    return {-(n - c2 * eps + c3 * eps * eps - c4 * eps * eps * eps), false};
  }
  // 1 - cos^{2N} = -expm1(N log(1 - sin^2)).
  return {std::expm1(N * std::log1p(-eps)) / eps, false};
}

double analytic_C2(int N, double p1, double p2) { return analytic_C2_flagged(N, p1, p2).value; }

double L_entry(int n, int m, int N, double q) {
  if (N < 1 || m < 1 || m > N || n < 1 || n > N) {
    throw DomainError("L_entry: indices must satisfy 1 <= n, m <= N");
  }
  if (!(q > 0.0)) throw DomainError("L_entry: q must be positive");
  const specfun::BetaPair bp = specfun::beta_pair(m, N, q * q);
  const int shift = m - n;
  const double sign = (shift % 2 == 0) ? 1.0 : -1.0;
  const double weight = (m >= n) ? bp.u : -bp.v;
  return sign * std::numbers::pi * std::pow(q, -(shift + 1)) * specfun::euler_beta(m, N - m + 1) *
         weight;
}

double unfolded_C2(int N, double alpha, double psi1, double psi2) {
  const double scale = std::pow(static_cast<double>(N), alpha);
  return analytic_C2(N, psi1 / scale, psi2 / scale) / (scale * scale);
}

double f2_limit(double alpha, double psi1, double psi2) {
  if (!(alpha > 0.0)) throw DomainError("f2_limit: alpha must be positive");
  const double d = psi1 - psi2;
  if (d == 0.0) throw DomainError("f2_limit: psi1 and psi2 must differ");
  const double d2 = d * d;
  if (std::abs(alpha - 0.5) < 1e-12) return std::expm1(-d2) / d2;
  if (alpha < 0.5) return -1.0 / d2;
  return 0.0;
}

double unfolding_sup_distance(int N, double alpha, double d_lo, double d_hi, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double d = d_lo + (d_hi - d_lo) * i / std::max(samples - 1, 1);
    worst = std::max(worst, std::abs(unfolded_C2(N, alpha, d, 0.0) - f2_limit(alpha, d, 0.0)));
  }
  return worst;
}

}  // namespace windstat
