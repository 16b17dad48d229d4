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

#include "windstat/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "windstat/accumulator.hpp"
#include "windstat/errors.hpp"

namespace windstat {

namespace {

constexpr double kLogTinyDenominator = -644.72;  // log(1e-280)

void check_sets(std::span<const double> q, std::span<const double> p) {
  if (q.empty() || q.size() != p.size()) {
    throw DomainError("generator needs equally many (at least one) q and p points");
  }
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// log det of a square matrix as (log|det|, phase) packed in a complex number.
cdouble log_det(const CMatrix& m) {
  const Eigen::PartialPivLU<CMatrix> lu(m);
  const CMatrix& f = lu.matrixLU();
  cdouble acc = 0.0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) acc += std::log(f(i, i));
  if (lu.permutationP().determinant() < 0) acc += cdouble(0.0, std::numbers::pi);
  return acc;
}

}  // namespace

bool generator_ratio_spectral(const SphericalSpectrum& spec, const LoopFunctions& loop,
                              std::span<const double> q, std::span<const double> p, cdouble& out) {
  check_sets(q, p);
  cdouble log_num = 0.0;
  cdouble log_den = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const cdouble bp = loop.b(p[j]);
    const cdouble bq = loop.b(q[j]);
    // det K(x) / det K1 = prod_l (a(x) + z_l b(x)); also valid where b(x) = 0.
    const cdouble ap = loop.a(p[j]);
    const cdouble aq = loop.a(q[j]);
    for (const cdouble& z : spec.z) {
      log_num += std::log(ap + z * bp);
      log_den += std::log(aq + z * bq);
    }
  }
  if (!(log_den.real() > kLogTinyDenominator)) return false;
  out = std::exp(log_num - log_den);
  return true;
}

cdouble generator_ratio_direct(const ChiralSample& s, const LoopFunctions& loop,
                               std::span<const double> q, std::span<const double> p) {
  check_sets(q, p);
  cdouble acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    acc += log_det(loop.a(p[j]) * s.k1 + loop.b(p[j]) * s.k2);
    acc -= log_det(loop.a(q[j]) * s.k1 + loop.b(q[j]) * s.k2);
  }
  return std::exp(acc);
}

GeneratorValue mc_generator(std::span<const double> q, std::span<const double> p, int N,
                            std::uint64_t trials, const McOptions& opts) {
  check_sets(q, p);
  struct Tally {
    ComplexAccumulator acc;
    std::uint64_t skipped = 0;
    std::uint64_t resampled = 0;
  };
  const auto tallies = run_streams<Tally>(trials, opts.plan, [&](std::uint32_t stream,
                                                                 std::uint64_t draws) {
    Tally t;
    for (std::uint64_t d = 0; d < draws; ++d) {
      const DrawKey key{opts.plan.seed, stream, static_cast<std::uint32_t>(d), 0};
      const SpectrumDraw draw = draw_spectrum(N, opts.cls, key, opts.spectrum);
      t.resampled += draw.resamples;
      cdouble ratio;
      if (generator_ratio_spectral(draw.spectrum, opts.loop, q, p, ratio)) {
        t.acc.push(ratio);
      } else {
        ++t.skipped;
      }
    }
    return t;
  });

  GeneratorValue out;
  out.q.assign(q.begin(), q.end());
  out.p.assign(p.begin(), p.end());
  out.route = GeneratorRoute::MonteCarlo;
  out.trials = trials;
  ComplexAccumulator total;
  std::vector<double> re, im;
  for (const Tally& t : tallies) {
    total.merge(t.acc);
    out.skipped += t.skipped;
    out.resampled += t.resampled;
    if (t.acc.count() > 0) {
      re.push_back(t.acc.mean().real());
      im.push_back(t.acc.mean().imag());
    }
  }
  out.value = total.mean();
  out.stderr = total.stderr();
  out.stderr_re = total.stderr_re();
  out.stderr_im = total.stderr_im();
  out.median_of_means = {median(re), median(im)};
  return out;
}

std::array<cdouble, 2> loop_vector(const LoopFunctions& loop, double p) {
  return {loop.a(p), loop.b(p)};
}

cdouble pairing_form(const LoopFunctions& loop, double q, double p) {
  return cdouble(0.0, 1.0) * (loop.b(q) * loop.a(p) - loop.a(q) * loop.b(p));
}

cdouble analytic_Z_AIII(std::span<const double> q, std::span<const double> p, int N,
                        const LoopFunctions& loop) {
  check_sets(q, p);
  if (N < 0) throw DomainError("analytic_Z_AIII: N must be nonnegative");
  const Eigen::Index k = static_cast<Eigen::Index>(q.size());
  CMatrix num(k, k), den(k, k);
  for (Eigen::Index m = 0; m < k; ++m) {
    const auto vq = loop_vector(loop, q[m]);
    const cdouble norm_q = std::conj(vq[0]) * vq[0] + std::conj(vq[1]) * vq[1];
    for (Eigen::Index n = 0; n < k; ++n) {
      const auto vp = loop_vector(loop, p[n]);
      const cdouble form = pairing_form(loop, q[m], p[n]);
      const double scale = std::sqrt(std::norm(vq[0]) + std::norm(vq[1])) *
                           std::sqrt(std::norm(vp[0]) + std::norm(vp[1]));
      if (std::abs(form) < 1e-12 * scale) {
        throw NearCoincidentError("pairing form vanishes for q=" + std::to_string(q[m]) +
                                  ", p=" + std::to_string(p[n]) +
                                  "; perturb the points or use analytic_Z_AIII_regularized");
      }
      const cdouble overlap = (std::conj(vq[0]) * vp[0] + std::conj(vq[1]) * vp[1]) / norm_q;
      den(m, n) = 1.0 / form;
      num(m, n) = den(m, n) * std::pow(overlap, N);
    }
  }
  if (k == 1) return num(0, 0) / den(0, 0);
  return std::exp(log_det(num) - log_det(den));
}

cdouble analytic_Z_AIII_regularized(std::span<const double> q, std::span<const double> p, int N,
                                    const LoopFunctions& loop, double shift) {
  try {
    return analytic_Z_AIII(q, p, N, loop);
  } catch (const NearCoincidentError&) {
  }
  auto shifted_mean = [&](double h) {
    std::vector<double> plus(q.begin(), q.end()), minus(q.begin(), q.end());
    for (double& x : plus) x += h;
    for (double& x : minus) x -= h;
    return 0.5 * (analytic_Z_AIII(plus, p, N, loop) + analytic_Z_AIII(minus, p, N, loop));
  };
  // The symmetric mean has an O(h^2) error; one Richardson step removes it.
  return (4.0 * shifted_mean(shift) - shifted_mean(2.0 * shift)) / 3.0;
}

double trig_Z11(int N, double q, double p) { return std::pow(std::cos(p - q), N); }

cdouble fd_correlator_from_Z(std::span<const double> points, int N, double step,
                             const LoopFunctions& loop, double agreement) {
  const std::size_t k = points.size();
  if (k != 1 && k != 2) throw DomainError("fd_correlator_from_Z supports k = 1 or 2");
  if (!(step > 0.0)) throw DomainError("fd_correlator_from_Z: step must be positive");
  const std::vector<double> q(points.begin(), points.end());

  auto central = [&](double h) -> cdouble {
    if (k == 1) {
      const double plus[1] = {points[0] + h};
      const double minus[1] = {points[0] - h};
      return (analytic_Z_AIII(q, plus, N, loop) - analytic_Z_AIII(q, minus, N, loop)) / (2.0 * h);
    }
    auto z = [&](double s1, double s2) {
      const double pp[2] = {points[0] + s1 * h, points[1] + s2 * h};
      return analytic_Z_AIII(q, pp, N, loop);
    };
    return (z(1, 1) - z(1, -1) - z(-1, 1) + z(-1, -1)) / (4.0 * h * h);
  };

  const cdouble d1 = central(step);
  const cdouble d2 = central(step / 2.0);
  const cdouble d3 = central(step / 4.0);
  const cdouble r1 = (4.0 * d2 - d1) / 3.0;
  const cdouble r2 = (4.0 * d3 - d2) / 3.0;
  if (std::abs(r1 - r2) > agreement * std::max(1.0, std::abs(r2))) {
    throw StepSizeError("Richardson levels disagree: " + std::to_string(std::abs(r1 - r2)) +
                        " at step " + std::to_string(step));
  }
  return r2;
}

cdouble pfaffian(const CMatrix& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw DomainError("pfaffian: matrix must be square");
  if (n == 0) return 1.0;
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if ((input + input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("pfaffian: matrix is not antisymmetric");
  }
  if (n % 2 == 1) return 0.0;

  CMatrix a = input;
  cdouble pf = 1.0;
  for (Eigen::Index i = 0; i + 2 < n; ++i) {
    const Eigen::Index len = n - i - 1;
    Eigen::VectorXcd x = a.col(i).segment(i + 1, len);
    const double sigma = x.tail(len - 1).squaredNorm();
    cdouble alpha = x(0);
    if (sigma != 0.0) {
      // Householder reflector P = I - 2 v v^dag with P x = alpha e_1.
      const double norm_x = std::sqrt(std::norm(x(0)) + sigma);
      const cdouble phase = std::abs(x(0)) == 0.0 ? cdouble(1.0) : x(0) / std::abs(x(0));
      Eigen::VectorXcd v = x;
      v(0) += phase * norm_x;
      v.normalize();
      alpha = -phase * norm_x;
      auto trailing = a.block(i + 1, i + 1, len, len);
      const Eigen::VectorXcd w = 2.0 * (trailing * v.conjugate());
      trailing += v * w.transpose() - w * v.transpose();
      pf = -pf;  // det P = -1
    }
    a(i + 1, i) = alpha;
    a(i, i + 1) = -alpha;
    a.col(i).tail(len - 1).setZero();
    a.row(i).tail(len - 1).setZero();
    if (i % 2 == 0) pf *= -alpha;
  }
  return pf * a(n - 2, n - 1);
}

}  // namespace windstat
