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

#include "windstat/correlators.hpp"
#include "windstat/errors.hpp"

using namespace windstat;

TEST_CASE("closed form two-point values") {
  CHECK(analytic_C2(1, 0.3, 1.4) == doctest::Approx(-1.0).epsilon(1e-14));
  // N = 2: -(1 + cos^2).
  CHECK(analytic_C2(2, 0.0, 1.0) == doctest::Approx(-(1 + std::pow(std::cos(1.0), 2))).epsilon(1e-14));
  const AnalyticValue diag = analytic_C2_flagged(5, 0.7, 0.7);
  CHECK(diag.diagonal_limit);
  CHECK(diag.value == -5.0);
  // The series branch joins the direct branch continuously.
  const double near = analytic_C2(6, 1.0, 1.0 + 1e-5);
  CHECK(near == doctest::Approx(-6.0 + 15.0 * 1e-10).epsilon(1e-12));
  CHECK(analytic_C2(4, 0.2, 1.1) == doctest::Approx(analytic_C2(4, 1.1 + std::numbers::pi, 0.2)).epsilon(1e-12));
}

TEST_CASE("unfolding limits") {
  CHECK(f2_limit(0.5, 2.0, 0.0) == doctest::Approx(-0.24542109027781644).epsilon(1e-12));
  CHECK(f2_limit(1.0 / 6.0, 2.0, 0.0) == doctest::Approx(-0.25));
  CHECK(f2_limit(0.8, 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(f2_limit(0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(f2_limit(0.0, 1.0, 2.0), DomainError);
  CHECK(unfolding_sup_distance(1000, 0.5) < 5e-3);
  CHECK(unfolded_C2(100, 0.5, 1.0, 0.0) == doctest::Approx(analytic_C2(100, 0.1, 0.0) / 100.0));
}

TEST_CASE("L entries") {
  // Diagonal entries at N = 1: pi B(1,1) u_1(1, q^2) / q = pi q / (1 + q^2).
  CHECK(L_entry(1, 1, 1, 2.0) == doctest::Approx(std::numbers::pi * 2.0 / 5.0).epsilon(1e-13));
  // Below the diagonal: -pi B(1, 2) (-v_1(2, 1)) = pi / 8.
  CHECK(L_entry(2, 1, 2, 1.0) == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-13));
  CHECK_THROWS_AS(L_entry(0, 1, 2, 1.0), DomainError);
  CHECK_THROWS_AS(L_entry(1, 1, 2, 0.0), DomainError);
}

TEST_CASE("rotation average for one draw") {
  const SpectrumDraw draw = draw_spectrum(3, SymmetryClass::AIII, DrawKey{6, 0, 0, 0});
  const double pts[2] = {0.4, 1.5};
  cdouble exact;
  REQUIRE(rotation_averaged_product(draw.spectrum, pts, 1e-12, exact));
  cdouble numeric = 0.0;
  const int M = 1 << 14;
  for (int j = 0; j < M; ++j) {
    const double t = std::numbers::pi * j / M;
    numeric += winding_density_trig(draw.spectrum, pts[0] + t) *
               winding_density_trig(draw.spectrum, pts[1] + t);
  }
  numeric /= static_cast<double>(M);
  CHECK(std::abs(numeric - exact) < 1e-6 * (1 + std::abs(exact)));

  const double one[1] = {0.9};
  cdouble w1;
  REQUIRE(rotation_averaged_product(draw.spectrum, one, 1e-12, w1));
  const int m = count_winding_side(draw.spectrum);
  CHECK(w1 == cdouble(0.0, 2.0 * m - 3.0));
  const LoopFunctions loop = LoopFunctions::trig_loop();
  CHECK(std::abs(winding_density_trig(draw.spectrum, 0.9) -
                 winding_density_spectral(draw.spectrum, loop, 0.9)) < 1e-10);
}

TEST_CASE("Monte Carlo two-point function") {
  McOptions opts;
  opts.plan.streams = 4;
  const std::vector<std::vector<double>> sets = {{0.5, 1.6}, {0.5, 2.4}};
  for (auto est : {CorrelatorEstimator::Plain, CorrelatorEstimator::RotationAverage}) {
    opts.estimator = est;
    const auto out = mc_correlator_batch(sets, 3, 20000, opts);
    for (const CorrelatorEstimate& e : out) {
      const double exact = analytic_C2(3, e.points[0], e.points[1]);
      CHECK(std::abs(e.mean - exact) < 4.5 * e.stderr);
      CHECK(e.trials == 20000);
      CHECK_FALSE(e.warning);
    }
  }
  CHECK_THROWS_AS(mc_correlator(2, std::vector<double>{0.5}, 2, 10, opts), DomainError);
  CHECK_THROWS_AS(mc_correlator(1, std::vector<double>{0.0}, 2, 10, opts), DomainError);
  opts.estimator = CorrelatorEstimator::RotationAverage;
  CHECK_THROWS_AS(mc_correlator(3, std::vector<double>{0.5, 1.0, 2.0}, 2, 10, opts), DomainError);
}

TEST_CASE("estimates do not depend on the thread count") {
  McOptions a;
  a.plan.streams = 8;
  a.plan.threads = 1;
  McOptions b = a;
  b.plan.threads = 3;
  const double pts[2] = {0.7, 2.0};
  const CorrelatorEstimate x = mc_correlator(2, pts, 2, 4000, a);
  const CorrelatorEstimate y = mc_correlator(2, pts, 2, 4000, b);
  CHECK(x.mean == y.mean);
  CHECK(x.stderr == y.stderr);
  CHECK(x.median_of_means == y.median_of_means);
}
