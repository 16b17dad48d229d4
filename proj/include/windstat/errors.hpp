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

#include <stdexcept>
#include <string>

namespace windstat {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point sits on (or numerically next to) a pole.
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The draw is unusable (measure-zero degeneracy); the caller redraws.
class ResampleSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An eigen- or linear solver failed or returned an inconsistent result.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K(p) is singular somewhere the loop is evaluated.
class DegenerateLoopError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The contour integral did not settle on an integer.
class NonQuantizedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes disagree on a quantity that must be identical.
class RouteMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Gapless Kitaev parameters: the winding number is undefined.
class PhaseTransitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference step produced inconsistent Richardson levels.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pairing form v^T(q) sigma_2 v(p) vanishes; points must be perturbed.
class NearCoincidentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace windstat
