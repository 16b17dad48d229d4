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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "windstat/rng.hpp"

namespace windstat {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Chiral unitary (AIII, beta = 2) or chiral symplectic (CII, beta = 4).
enum class SymmetryClass { AIII, CII };

int dyson_beta(SymmetryClass cls) noexcept;
std::string_view class_label(SymmetryClass cls) noexcept;
SymmetryClass parse_class(std::string_view label);

/// Side length beta*N/2 of the blocks K1, K2.
inline int block_size(int N, SymmetryClass cls) noexcept {
  return cls == SymmetryClass::AIII ? N : 2 * N;
}

/// One draw of the two chiral blocks.
///
/// For CII the blocks are 2N x 2N complex matrices built from N x N
/// quaternion-real entries [[a, b], [-conj(b), conj(a)]], so that
/// J conj(K) J^T = K with J = diag(N copies of [[0, 1], [-1, 0]]).
struct ChiralSample {
  CMatrix k1;
  CMatrix k2;
  SymmetryClass cls = SymmetryClass::AIII;
  int N = 0;
  DrawKey key;
};

/// Eigenvalues of Y = K1^{-1} K2. For CII they are stored as exact
/// conjugate pairs (z_1, conj z_1, z_2, conj z_2, ...).
struct SphericalSpectrum {
  std::vector<cdouble> z;
  SymmetryClass cls = SymmetryClass::AIII;
  int N = 0;
  double pairing_residual = 0.0;  // CII: largest raw |z_j - conj z_k| / (1 + |z_j|)
};

struct SpectrumOptions {
  double max_condition = 1e12;       // K1 with a larger condition estimate is redrawn
  double pairing_tolerance = 1e-6;   // CII raw pairing residual beyond this is a solver error
};

ChiralSample sample_chiral_pair(int N, SymmetryClass cls, const DrawKey& key);

/// Solves K2 x = z K1 x as a generalized eigenproblem (no inverse of K1 is
/// formed). Throws ResampleSignal for ill-conditioned K1 and SolverError when
/// the solver fails or CII eigenvalues cannot be paired.
SphericalSpectrum spherical_spectrum(const ChiralSample& s, const SpectrumOptions& opts = {});

/// Number of eigenvalues with |z| <= 1. CII counts conjugate pairs once.
int count_inside(const SphericalSpectrum& spec) noexcept;

/// Max deviation from J conj(K) J^T = K.
double quaternion_real_defect(const CMatrix& k);

/// A sample together with its spectrum and the number of redraws it took.
struct SpectrumDraw {
  ChiralSample sample;
  SphericalSpectrum spectrum;
  std::uint32_t resamples = 0;
};

/// Draws until spherical_spectrum succeeds and `accept` (if given) holds.
/// Redraws reuse the key with an incremented attempt counter.
SpectrumDraw draw_spectrum(int N, SymmetryClass cls, DrawKey key, const SpectrumOptions& opts = {},
                           const std::function<bool(const SphericalSpectrum&)>& accept = {},
                           std::uint32_t max_attempts = 64);

}  // namespace windstat
