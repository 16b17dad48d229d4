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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "windstat/errors.hpp"
#include "windstat/specfun.hpp"

using namespace windstat::specfun;

namespace {

// Radial integral of the weight, by adaptive Gauss-Kronrod on [lo, hi].
double radial(int m, int N, double lo, double hi) {
  auto f = [&](double r) { return std::pow(r, 2 * m - 1) / std::pow(1 + r * r, N + 1); };
  return 2.0 / euler_beta(m, N - m + 1) *
         boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14);
}

}  // namespace

TEST_CASE("beta function values") {
  CHECK(euler_beta(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(euler_beta(2, 3) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(euler_beta(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK_THROWS_AS(euler_beta(0.0, 1.0), windstat::DomainError);
}

TEST_CASE("incomplete beta against boost") {
  for (double a : {0.5, 1.0, 3.0, 17.0, 120.0}) {
    for (double b : {0.5, 2.0, 9.0, 80.0}) {
      for (double x : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999}) {
        const double ref = boost::math::ibeta(a, b, x);
        CHECK(incomplete_beta(a, b, x) == doctest::Approx(ref).epsilon(1e-12).scale(1e-300));
      }
    }
  }
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("u and v at q = 1") {
  // N = 1: half the mass lies inside the unit circle.
  CHECK(u_fn(1, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  // u_m(N, 1) + u_{N+1-m}(N, 1) = 1 by the inversion z -> 1/z.
  for (int N : {2, 5, 12, 40}) {
    for (int m = 1; m <= N; ++m) {
      CHECK(u_fn(m, N, 1.0) + u_fn(N + 1 - m, N, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  CHECK(u_fn(1, 2, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("u and v against quadrature") {
  for (int N : {1, 3, 8}) {
    for (int m = 1; m <= N; ++m) {
      for (double q : {0.3, 1.0, 2.5}) {
        const BetaPair bp = beta_pair(m, N, q * q);
        CHECK(bp.u == doctest::Approx(radial(m, N, 0.0, q)).epsilon(1e-10));
        CHECK(bp.v == doctest::Approx(radial(m, N, q, INFINITY)).epsilon(1e-10));
        CHECK(bp.u + bp.v == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("small complements are computed directly") {
  // For large q the outside weight is tiny; 1 - u would lose it entirely.
  const BetaPair bp = beta_pair(1, 10, 1e6);
  CHECK(bp.v > 0.0);
  CHECK(bp.v == doctest::Approx(std::pow(1.0 / (1.0 + 1e6), 10)).epsilon(1e-10));
}

TEST_CASE("u is monotone in q and the ends are exact") {
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double u = u_fn(3, 7, 0.1 * i);
    CHECK(u > prev);
    prev = u;
  }
  CHECK(u_fn(3, 7, 0.0) == 0.0);
  CHECK(v_fn(3, 7, INFINITY) == 0.0);
  CHECK_THROWS_AS(u_fn(0, 3, 1.0), windstat::DomainError);
  CHECK_THROWS_AS(u_fn(4, 3, 1.0), windstat::DomainError);
  CHECK_THROWS_AS(u_fn(1, 3, -1.0), windstat::DomainError);
}
