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

// Special functions behind the closed forms: Euler Beta, the regularized
// incomplete Beta, and the normalized inside/outside weights u_m, v_m of the
// complex spherical ensemble.
//
//   u_m(N, q^2) = 2/B(m, N-m+1) * int_0^q  rho^(2m-1) / (1+rho^2)^(N+1) drho
//   v_m(N, q^2) = 2/B(m, N-m+1) * int_q^oo rho^(2m-1) / (1+rho^2)^(N+1) drho
//
// The substitution s = rho^2 / (1 + rho^2) turns u_m into I_s(m, N-m+1).

namespace windstat::specfun {

struct BetaPair {
  int m = 0;
  int N = 0;
  double q2 = 0.0;
  double u = 0.0;
  double v = 1.0;
};

/// log B(x, y); x, y > 0.
double log_beta(double x, double y);

/// B(x, y) evaluated through log_beta. Throws DomainError for x <= 0 or y <= 0.
double euler_beta(double x, double y);

/// Regularized incomplete Beta I_x(a, b) by Lentz continued fraction, using
/// I_x(a,b) = 1 - I_{1-x}(b,a) when x > (a+1)/(a+b+2).
double incomplete_beta(double a, double b, double x);

double u_fn(int m, int N, double q2);
double v_fn(int m, int N, double q2);

/// u and v evaluated together; v is computed directly rather than as 1 - u.
BetaPair beta_pair(int m, int N, double q2);

}  // namespace windstat::specfun
