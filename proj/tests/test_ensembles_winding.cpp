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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "windstat/errors.hpp"
#include "windstat/studies.hpp"
#include "windstat/winding.hpp"

using namespace windstat;

TEST_CASE("class labels") {
  CHECK(parse_class("AIII") == SymmetryClass::AIII);
  CHECK(parse_class("cii") == SymmetryClass::CII);
  CHECK(parse_class("4") == SymmetryClass::CII);
  CHECK_THROWS(parse_class("BDI"));
  CHECK(dyson_beta(SymmetryClass::CII) == 4);
  CHECK(block_size(3, SymmetryClass::CII) == 6);
}

TEST_CASE("CII samples are quaternion real with paired spectra") {
  for (std::uint32_t d = 0; d < 20; ++d) {
    const SpectrumDraw draw = draw_spectrum(3, SymmetryClass::CII, DrawKey{5, 0, d, 0});
    CHECK(quaternion_real_defect(draw.sample.k1) < 1e-14);
    CHECK(quaternion_real_defect(draw.sample.k2) < 1e-14);
    REQUIRE(draw.spectrum.z.size() == 6);
    for (const cdouble& z : draw.spectrum.z) {
      bool found = false;
      for (const cdouble& w : draw.spectrum.z) found = found || std::abs(w - std::conj(z)) < 1e-10;
      CHECK(found);
    }
  }
}

TEST_CASE("N = 1 spectrum is the ratio of the entries") {
  const ChiralSample s = sample_chiral_pair(1, SymmetryClass::AIII, DrawKey{9, 0, 0, 0});
  const SphericalSpectrum spec = spherical_spectrum(s);
  REQUIRE(spec.z.size() == 1);
  const cdouble expect = s.k2(0, 0) / s.k1(0, 0);
  CHECK(std::abs(spec.z[0] - expect) < 1e-14 * std::abs(expect));
}

TEST_CASE("spectrum is invariant under a common rescaling") {
  ChiralSample s = sample_chiral_pair(4, SymmetryClass::AIII, DrawKey{9, 0, 1, 0});
  const SphericalSpectrum a = spherical_spectrum(s);
  s.k1 *= cdouble(3.0, -1.0);
  s.k2 *= cdouble(3.0, -1.0);
  const SphericalSpectrum b = spherical_spectrum(s);
  for (const cdouble& z : a.z) {
    double best = INFINITY;
    for (const cdouble& w : b.z) best = std::min(best, std::abs(w - z));
    CHECK(best < 1e-10 * (1 + std::abs(z)));
  }
}

TEST_CASE("on average half of the eigenvalues are inside the unit circle") {
  double inside = 0.0;
  const int draws = 4000;
  for (std::uint32_t d = 0; d < draws; ++d) {
    inside += count_inside(draw_spectrum(5, SymmetryClass::AIII, DrawKey{2, 0, d, 0}).spectrum);
  }
  CHECK(inside / draws == doctest::Approx(2.5).epsilon(0.03));
}

TEST_CASE("trig loop winding on hand-built samples") {
  const LoopFunctions loop = LoopFunctions::trig_loop();
  // K1 = 1, K2 = z: det K(p) = cos p + z sin p winds +1 iff Im z > 0.
  for (auto [z, expect] : {std::pair{cdouble(0.3, 0.8), 1}, std::pair{cdouble(-2.0, -0.1), -1}}) {
    ChiralSample s;
    s.N = 1;
    s.k1 = CMatrix::Identity(1, 1);
    s.k2 = CMatrix::Constant(1, 1, z);
    const WindingRecord rec = winding_number_contour(s, loop);
    CHECK(rec.W == expect);
    SphericalSpectrum spec;
    spec.N = 1;
    spec.z = {z};
    CHECK(winding_number_count(spec, loop) == expect);
  }
}

TEST_CASE("density routes agree and the density is pi periodic") {
  const LoopFunctions loop = LoopFunctions::trig_loop();
  const SpectrumDraw draw = draw_spectrum(4, SymmetryClass::AIII, DrawKey{4, 0, 0, 0});
  for (double p : {0.3, 1.2, 2.0, 2.9}) {
    const cdouble a = winding_density_spectral(draw.spectrum, loop, p);
    const cdouble b = winding_density_trace(draw.sample, loop, p);
    CHECK(std::abs(a - b) < 1e-9 * (1 + std::abs(a)));
    const cdouble c = winding_density_spectral(draw.spectrum, loop, p + std::numbers::pi);
    CHECK(std::abs(a - c) < 1e-9 * (1 + std::abs(a)));
  }
  CHECK_THROWS_AS(kappa(loop, 0.0), PoleError);
}

TEST_CASE("contour and count agree for a Fourier loop equal to the trig loop") {
  const LoopFunctions fl = LoopFunctions::fourier(FourierSeries{{0.0, 1.0}, {0.0}},
                                                  FourierSeries{{0.0}, {1.0}});
  // Real a, b with b odd break v*(p) = v(-p); b = i sin p restores it.
  CHECK_FALSE(satisfies_time_reversal(fl));
  LoopFunctions tr = LoopFunctions::trig_loop();
  tr.b = [](double p) { return cdouble(0.0, std::sin(p)); };
  tr.db = [](double p) { return cdouble(0.0, std::cos(p)); };
  tr.trig = false;
  CHECK(satisfies_time_reversal(tr));
  const SpectrumDraw draw = draw_spectrum(3, SymmetryClass::AIII, DrawKey{4, 0, 3, 0});
  const WindingRecord a = winding_number_contour(draw.sample, fl);
  const WindingRecord b = winding_number_contour(draw.sample, LoopFunctions::trig_loop());
  CHECK(a.W == b.W);
  CHECK_THROWS_AS(winding_number_count(draw.spectrum, fl), DomainError);
}

TEST_CASE("contour value converges with the grid") {
  const SpectrumDraw draw = draw_spectrum(4, SymmetryClass::AIII, DrawKey{8, 0, 0, 0});
  const WindingRecord coarse = winding_number_contour(draw.sample, LoopFunctions::trig_loop(),
                                                      ContourOptions{64, 1 << 22, 0.5});
  const WindingRecord fine = winding_number_contour(draw.sample, LoopFunctions::trig_loop());
  CHECK(coarse.W == fine.W);
  CHECK(fine.residual < 1e-6);
}

TEST_CASE("orientation sign and CII winding") {
  CHECK(calibrate_orientation_sign(20220101) == kOrientationSign);
  // A real-coefficient loop through quaternion-real matrices has det K(p) >= 0.
  StreamPlan plan;
  plan.streams = 2;
  const WindingStudy st = winding_study(2, SymmetryClass::CII, 20, plan);
  for (const WindingDraw& d : st.draws) CHECK(d.W == 0);
  CHECK(st.mismatches == 0);
}

TEST_CASE("winding study is independent of the thread count") {
  StreamPlan a;
  a.streams = 4;
  a.threads = 1;
  StreamPlan b = a;
  b.threads = 4;
  const WindingStudy x = winding_study(3, SymmetryClass::AIII, 40, a);
  const WindingStudy y = winding_study(3, SymmetryClass::AIII, 40, b);
  REQUIRE(x.draws.size() == y.draws.size());
  for (std::size_t i = 0; i < x.draws.size(); ++i) {
    CHECK(x.draws[i].W == y.draws[i].W);
    CHECK(x.draws[i].residual == y.draws[i].residual);
  }
}
