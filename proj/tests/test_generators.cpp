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
#include "windstat/generators.hpp"
#include "windstat/rng.hpp"

using namespace windstat;

namespace {

CMatrix random_antisymmetric(int n, std::uint32_t tag) {
  DrawRng rng(DrawKey{17, 3, tag, 0});
  CMatrix a = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = rng.complex_normal();
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("pfaffian of small matrices") {
  CMatrix a(2, 2);
  a << 0.0, cdouble(2.0, 1.0), -cdouble(2.0, 1.0), 0.0;
  CHECK(std::abs(pfaffian(a) - cdouble(2.0, 1.0)) < 1e-15);

  const CMatrix b = random_antisymmetric(4, 1);
  const cdouble expect = b(0, 1) * b(2, 3) - b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2);
  CHECK(std::abs(pfaffian(b) - expect) < 1e-13);

  CHECK(pfaffian(CMatrix(0, 0)) == cdouble(1.0));
  CHECK(pfaffian(random_antisymmetric(5, 2)) == cdouble(0.0));
  CMatrix bad = random_antisymmetric(4, 3);
  bad(0, 1) += 1.0;
  CHECK_THROWS_AS(pfaffian(bad), DomainError);
}

TEST_CASE("pfaffian identities") {
  for (int n : {2, 6, 10}) {
    const CMatrix a = random_antisymmetric(n, 10 + n);
    const cdouble pf = pfaffian(a);
    CHECK(std::abs(pf * pf - a.determinant()) < 1e-10 * std::max(1.0, std::abs(a.determinant())));
    DrawRng rng(DrawKey{23, 0, static_cast<std::uint32_t>(n), 0});
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
    const cdouble lhs = pfaffian(m.transpose() * a * m);
    CHECK(std::abs(lhs - m.determinant() * pf) < 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("analytic generator") {
  for (int N : {1, 4, 7}) {
    const double q[1] = {0.3};
    const double p[1] = {1.4};
    const cdouble z = analytic_Z_AIII(q, p, N);
    CHECK(std::abs(z - trig_Z11(N, 0.3, 1.4)) < 1e-13);
  }
  // Normalization Z(p, p) = 1 through the regularized evaluation.
  const std::vector<double> pts = {0.4, 1.9};
  CHECK(std::abs(analytic_Z_AIII_regularized(pts, pts, 5) - 1.0) < 1e-6);
  CHECK_THROWS_AS(analytic_Z_AIII(pts, pts, 5), NearCoincidentError);
  CHECK(std::abs(pairing_form(LoopFunctions::trig_loop(), 0.2, 0.2)) < 1e-15);
}

TEST_CASE("generator ratio routes agree") {
  const SpectrumDraw draw = draw_spectrum(4, SymmetryClass::AIII, DrawKey{8, 0, 0, 0});
  const LoopFunctions loop = LoopFunctions::trig_loop();
  const std::vector<double> q = {0.5, 2.0};
  const std::vector<double> p = {0.9, 2.7};
  cdouble spectral;
  REQUIRE(generator_ratio_spectral(draw.spectrum, loop, q, p, spectral));
  const cdouble direct = generator_ratio_direct(draw.sample, loop, q, p);
  CHECK(std::abs(spectral - direct) < 1e-9 * std::abs(direct));
}

TEST_CASE("Monte Carlo generator") {
  McOptions opts;
  opts.plan.streams = 4;
  const double q[1] = {0.2};
  const double p[1] = {1.0};
  const GeneratorValue g = mc_generator(q, p, 3, 20000, opts);
  CHECK(std::abs(g.value - trig_Z11(3, 0.2, 1.0)) < 4.5 * g.stderr);
  CHECK(g.route == GeneratorRoute::MonteCarlo);
}

TEST_CASE("finite-difference bridge") {
  for (int N : {1, 3}) {
    const double pts[2] = {0.3, 1.7};
    CHECK(std::abs(fd_correlator_from_Z(pts, N) - analytic_C2(N, 0.3, 1.7)) < 1e-7);
    // The one-point function vanishes.
    const double one[1] = {0.8};
    CHECK(std::abs(fd_correlator_from_Z(one, N)) < 1e-8);
  }
}
