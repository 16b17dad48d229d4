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

#include "windstat/winding.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "windstat/errors.hpp"

namespace windstat {

double FourierSeries::value(double p) const {
  double out = 0.0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) out += cos_coeffs[k] * std::cos(k * p);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) out += sin_coeffs[k] * std::sin((k + 1) * p);
  return out;
}

double FourierSeries::derivative(double p) const {
  double out = 0.0;
  for (std::size_t k = 1; k < cos_coeffs.size(); ++k) out -= cos_coeffs[k] * k * std::sin(k * p);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
    out += sin_coeffs[k] * (k + 1) * std::cos((k + 1) * p);
  return out;
}

LoopFunctions LoopFunctions::trig_loop() {
  LoopFunctions loop;
  loop.a = [](double p) { return cdouble(std::cos(p)); };
  loop.b = [](double p) { return cdouble(std::sin(p)); };
  loop.da = [](double p) { return cdouble(-std::sin(p)); };
  loop.db = [](double p) { return cdouble(std::cos(p)); };
  loop.trig = true;
  loop.name = "trig";
  return loop;
}

LoopFunctions LoopFunctions::fourier(FourierSeries a, FourierSeries b) {
  LoopFunctions loop;
  loop.a = [a](double p) { return cdouble(a.value(p)); };
  loop.b = [b](double p) { return cdouble(b.value(p)); };
  loop.da = [a](double p) { return cdouble(a.derivative(p)); };
  loop.db = [b](double p) { return cdouble(b.derivative(p)); };
  loop.name = "fourier";
  return loop;
}

bool satisfies_time_reversal(const LoopFunctions& loop, int grid, double tol) {
  for (int j = 0; j < grid; ++j) {
    const double p = 2.0 * std::numbers::pi * j / grid;
    if (std::abs(std::conj(loop.a(p)) - loop.a(-p)) > tol) return false;
    if (std::abs(std::conj(loop.b(p)) - loop.b(-p)) > tol) return false;
  }
  return true;
}

cdouble kappa(const LoopFunctions& loop, double p) {
  const cdouble b = loop.b(p);
  if (std::abs(b) < 1e-14) {
    throw PoleError("kappa: b(p) vanishes at p=" + std::to_string(p));
  }
  return loop.a(p) / b;
}

cdouble winding_density_spectral(const SphericalSpectrum& spec, const LoopFunctions& loop, double p,
                                 double pole_guard) {
  const cdouble a = loop.a(p);
  const cdouble b = loop.b(p);
  if (std::abs(b) < 1e-14) {
    throw PoleError("spectral density: b(p) vanishes at p=" + std::to_string(p));
  }
  const cdouble k = a / b;
  const cdouble dk = (loop.da(p) * b - a * loop.db(p)) / (b * b);
  cdouble sum = 0.0;
  for (const cdouble& z : spec.z) {
    const cdouble d = k + z;
    if (std::abs(d) < pole_guard) {
      throw PoleError("spectral density: kappa(p) + z within pole guard at p=" +
                      std::to_string(p));
    }
    sum += 1.0 / d;
  }
  const double n = static_cast<double>(spec.z.size());
  return n * loop.db(p) / b + dk * sum;
}

cdouble winding_density_trace(const ChiralSample& s, const LoopFunctions& loop, double p) {
  const CMatrix k = loop.a(p) * s.k1 + loop.b(p) * s.k2;
  const CMatrix dk = loop.da(p) * s.k1 + loop.db(p) * s.k2;
  const Eigen::PartialPivLU<CMatrix> lu(k);
  if (!(lu.rcond() > 1e-14)) {
    throw DegenerateLoopError("K(p) is singular at p=" + std::to_string(p));
  }
  return lu.solve(dk).trace();
}

WindingRecord winding_number_contour(const ChiralSample& s, const LoopFunctions& loop,
                                     const ContourOptions& opts) {
  const double two_pi = 2.0 * std::numbers::pi;
  int m = std::max(opts.grid_size, 2);
  cdouble sum = 0.0;
  for (int j = 0; j < m; ++j) sum += winding_density_trace(s, loop, two_pi * j / m);

  WindingRecord rec;
  for (;;) {
    const cdouble value = sum / (cdouble(0.0, 1.0) * static_cast<double>(m));
    const double rounded = std::round(value.real());
    rec.contour_value = value;
    rec.W = static_cast<int>(rounded);
    rec.grid_size = m;
    rec.residual = std::abs(value - rounded);
    if (rec.residual <= opts.tolerance) return rec;
    if (2 * m > opts.max_grid_size) break;
    // Refine: the new grid interleaves midpoints with the old nodes.
    for (int j = 0; j < m; ++j) sum += winding_density_trace(s, loop, two_pi * (j + 0.5) / m);
    m *= 2;
  }
  throw NonQuantizedError("contour integral not quantized: value " +
                          std::to_string(rec.contour_value.real()) + "+" +
                          std::to_string(rec.contour_value.imag()) + "i at grid " +
                          std::to_string(m) + " (near-singular loop)");
}

namespace {

cdouble cayley(cdouble z) { return (z - cdouble(0.0, 1.0)) / (z + cdouble(0.0, 1.0)); }

}  // namespace

int count_winding_side(const SphericalSpectrum& spec) {
  int m = 0;
  for (const cdouble& z : spec.z)
    if (std::abs(cayley(z)) < 1.0) ++m;
  return m;
}

bool near_winding_boundary(const SphericalSpectrum& spec, double guard) {
  for (const cdouble& z : spec.z)
    if (std::abs(std::abs(cayley(z)) - 1.0) < guard) return true;
  return false;
}

int winding_number_count(const SphericalSpectrum& spec, const LoopFunctions& loop) {
  if (!loop.trig) throw DomainError("winding_number_count is defined for the trig loop only");
  if (near_winding_boundary(spec)) {
    throw ResampleSignal("eigenvalue within 1e-9 of the winding boundary");
  }
  const int n = static_cast<int>(spec.z.size());
  return kOrientationSign * (2 * count_winding_side(spec) - n);
}

WindingRecord winding_both_routes(const ChiralSample& s, const SphericalSpectrum& spec,
                                  const LoopFunctions& loop, const ContourOptions& opts) {
  WindingRecord rec = winding_number_contour(s, loop, opts);
  rec.m_inside = count_winding_side(spec);
  const int counted = winding_number_count(spec, loop);
  if (counted != rec.W) {
    throw RouteMismatchError("draw " + std::to_string(s.key.draw_index) + " (stream " +
                             std::to_string(s.key.stream_id) + "): contour W=" +
                             std::to_string(rec.W) + " but count W=" + std::to_string(counted));
  }
  return rec;
}

int calibrate_orientation_sign(std::uint64_t seed, int draws) {
  const LoopFunctions loop = LoopFunctions::trig_loop();
  int sign = 0;
  for (int d = 0; d < draws; ++d) {
    const SpectrumDraw draw =
        draw_spectrum(1, SymmetryClass::AIII, DrawKey{seed, 0, static_cast<std::uint32_t>(d), 0}, {},
                      [](const SphericalSpectrum& sp) { return !near_winding_boundary(sp, 1e-6); });
    const WindingRecord rec = winding_number_contour(draw.sample, loop);
    const int unsigned_count = 2 * count_winding_side(draw.spectrum) - 1;
    const int s = rec.W * unsigned_count;  // both are +-1 at N = 1
    if (sign != 0 && s != sign) throw RouteMismatchError("orientation sign is not constant");
    sign = s;
  }
  return sign;
}

}  // namespace windstat
