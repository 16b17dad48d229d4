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

#include "windstat/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "windstat/errors.hpp"

extern "C" {
void zggev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
            const int* lda, std::complex<double>* b, const int* ldb, std::complex<double>* alpha,
            std::complex<double>* beta, std::complex<double>* vl, const int* ldvl,
            std::complex<double>* vr, const int* ldvr, std::complex<double>* work,
            const int* lwork, double* rwork, int* info);
}

namespace windstat {

int dyson_beta(SymmetryClass cls) noexcept { return cls == SymmetryClass::AIII ? 2 : 4; }

std::string_view class_label(SymmetryClass cls) noexcept {
  return cls == SymmetryClass::AIII ? "AIII" : "CII";
}

SymmetryClass parse_class(std::string_view label) {
  if (label == "AIII" || label == "aiii" || label == "2") return SymmetryClass::AIII;
  if (label == "CII" || label == "cii" || label == "4") return SymmetryClass::CII;
  throw DomainError("unknown symmetry class '" + std::string(label) + "' (expected AIII or CII)");
}

namespace {

CMatrix gaussian_block(int N, SymmetryClass cls, DrawRng& rng) {
  if (cls == SymmetryClass::AIII) {
    CMatrix k(N, N);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) k(i, j) = rng.complex_normal();
    return k;
  }
  CMatrix k(2 * N, 2 * N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const cdouble a = rng.complex_normal();
      const cdouble b = rng.complex_normal();
      k(2 * i, 2 * j) = a;
      k(2 * i, 2 * j + 1) = b;
      k(2 * i + 1, 2 * j) = -std::conj(b);
      k(2 * i + 1, 2 * j + 1) = std::conj(a);
    }
  }
  return k;
}

// Pairs each eigenvalue with its nearest conjugate and symmetrizes the pair.
std::vector<cdouble> pair_conjugates(const std::vector<cdouble>& raw, double tolerance,
                                     double& worst) {
  const std::size_t n = raw.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a].imag() > raw[b].imag(); });
  std::vector<bool> used(n, false);
  std::vector<cdouble> paired;
  paired.reserve(n);
  worst = 0.0;
  for (std::size_t i : order) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = n;
    double best_dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(raw[j] - std::conj(raw[i]));
      if (best == n || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best == n) throw SolverError("CII spectrum has an odd number of eigenvalues");
    used[best] = true;
    const double residual = best_dist / (1.0 + std::abs(raw[i]));
    worst = std::max(worst, residual);
    if (residual > tolerance) {
      throw SolverError("CII eigenvalue " + std::to_string(raw[i].real()) + "+" +
                        std::to_string(raw[i].imag()) + "i has no conjugate partner (residual " +
                        std::to_string(residual) + ")");
    }
    cdouble rep = 0.5 * (raw[i] + std::conj(raw[best]));
    if (rep.imag() < 0.0) rep = std::conj(rep);
    paired.push_back(rep);
    paired.push_back(std::conj(rep));
  }
  return paired;
}

}  // namespace

ChiralSample sample_chiral_pair(int N, SymmetryClass cls, const DrawKey& key) {
  if (N < 1) throw DomainError("sample_chiral_pair: N must be at least 1");
  DrawRng rng(key);
  ChiralSample s;
  s.N = N;
  s.cls = cls;
  s.key = key;
  s.k1 = gaussian_block(N, cls, rng);
  s.k2 = gaussian_block(N, cls, rng);
  return s;
}

SphericalSpectrum spherical_spectrum(const ChiralSample& s, const SpectrumOptions& opts) {
  const int n = static_cast<int>(s.k1.rows());
  SphericalSpectrum spec;
  spec.cls = s.cls;
  spec.N = s.N;
  if (n == 0) return spec;

  const Eigen::PartialPivLU<CMatrix> lu(s.k1);
  const double rcond = lu.rcond();
  if (!(rcond * opts.max_condition >= 1.0)) {
    throw ResampleSignal("K1 condition estimate " + std::to_string(1.0 / rcond) +
                         " exceeds threshold");
  }

  CMatrix a = s.k2;
  CMatrix b = s.k1;
  std::vector<cdouble> alpha(n), beta(n), work(1);
  std::vector<double> rwork(8 * static_cast<std::size_t>(n));
  const char no = 'N';
  const int one = 1;
  int info = 0;
  int lwork = -1;
  cdouble dummy;
  zggev_(&no, &no, &n, a.data(), &n, b.data(), &n, alpha.data(), beta.data(), &dummy, &one, &dummy,
         &one, work.data(), &lwork, rwork.data(), &info);
  lwork = std::max(1, static_cast<int>(work[0].real()));
  work.resize(lwork);
  zggev_(&no, &no, &n, a.data(), &n, b.data(), &n, alpha.data(), beta.data(), &dummy, &one, &dummy,
         &one, work.data(), &lwork, rwork.data(), &info);
  if (info != 0) throw SolverError("zggev failed with info=" + std::to_string(info));

  std::vector<cdouble> raw(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(beta[i]) == 0.0) throw ResampleSignal("infinite generalized eigenvalue");
    raw[i] = alpha[i] / beta[i];
    if (!std::isfinite(raw[i].real()) || !std::isfinite(raw[i].imag())) {
      throw ResampleSignal("non-finite generalized eigenvalue");
    }
  }

  if (s.cls == SymmetryClass::CII) {
    spec.z = pair_conjugates(raw, opts.pairing_tolerance, spec.pairing_residual);
  } else {
    spec.z = std::move(raw);
  }
  return spec;
}

int count_inside(const SphericalSpectrum& spec) noexcept {
  int inside = 0;
  for (const cdouble& z : spec.z)
    if (std::abs(z) <= 1.0) ++inside;
  return spec.cls == SymmetryClass::CII ? inside / 2 : inside;
}

double quaternion_real_defect(const CMatrix& k) {
  const Eigen::Index n = k.rows();
  if (n % 2 != 0 || k.cols() != n) throw DomainError("quaternion-real check needs even square size");
  CMatrix j = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; i += 2) {
    j(i, i + 1) = 1.0;
    j(i + 1, i) = -1.0;
  }
  const CMatrix image = j * k.conjugate() * j.transpose();
  return (image - k).cwiseAbs().maxCoeff();
}

SpectrumDraw draw_spectrum(int N, SymmetryClass cls, DrawKey key, const SpectrumOptions& opts,
                           const std::function<bool(const SphericalSpectrum&)>& accept,
                           std::uint32_t max_attempts) {
  SpectrumDraw out;
  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    key.attempt = attempt;
    out.sample = sample_chiral_pair(N, cls, key);
    try {
      out.spectrum = spherical_spectrum(out.sample, opts);
    } catch (const ResampleSignal&) {
      ++out.resamples;
      continue;
    }
    if (accept && !accept(out.spectrum)) {
      ++out.resamples;
      continue;
    }
    return out;
  }
  throw SolverError("draw " + std::to_string(key.draw_index) + " of stream " +
                    std::to_string(key.stream_id) + " could not be completed after " +
                    std::to_string(max_attempts) + " attempts");
}

}  // namespace windstat
