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

#include "windstat/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "windstat/errors.hpp"

namespace windstat::specfun {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw SolverError("incomplete_beta: continued fraction did not converge for a=" +
                    std::to_string(a) + " b=" + std::to_string(b) + " x=" + std::to_string(x));
}

// x^a (1-x)^b / (a B(a,b)), the prefactor of the continued fraction.
double cf_prefactor(double a, double b, double x) {
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b) - std::log(a);
  return std::exp(log_front);
}

void check_mode(int m, int N, double q2) {
  if (N < 1 || m < 1 || m > N) {
    throw DomainError("mode index m=" + std::to_string(m) + " outside 1..N with N=" +
                      std::to_string(N));
  }
  if (!(q2 >= 0.0)) throw DomainError("squared radius must be nonnegative");
}

}  // namespace

double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError("Beta function needs positive arguments");
  }
  using boost::math::lgamma;
  return lgamma(x) + lgamma(y) - lgamma(x + y);
}

double euler_beta(double x, double y) { return std::exp(log_beta(x, y)); }

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return cf_prefactor(a, b, x) * beta_continued_fraction(a, b, x);
  }
  return 1.0 - cf_prefactor(b, a, 1.0 - x) * beta_continued_fraction(b, a, 1.0 - x);
}

BetaPair beta_pair(int m, int N, double q2) {
  check_mode(m, N, q2);
  BetaPair out{m, N, q2, 0.0, 1.0};
  if (q2 == 0.0) return out;
  if (std::isinf(q2)) {
    out.u = 1.0;
    out.v = 0.0;
    return out;
  }
  // s = q2/(1+q2) and 1-s = 1/(1+q2), both without cancellation.
  const double s = q2 / (1.0 + q2);
  const double one_minus_s = 1.0 / (1.0 + q2);
  const double a = m;
  const double b = N - m + 1;
  if (s < (a + 1.0) / (a + b + 2.0)) {
    out.u = incomplete_beta(a, b, s);
    out.v = 1.0 - out.u;
  } else {
    out.v = incomplete_beta(b, a, one_minus_s);
    out.u = 1.0 - out.v;
  }
  return out;
}

double u_fn(int m, int N, double q2) { return beta_pair(m, N, q2).u; }

double v_fn(int m, int N, double q2) { return beta_pair(m, N, q2).v; }

}  // namespace windstat::specfun
