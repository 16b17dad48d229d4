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
#include <set>

#include "windstat/accumulator.hpp"
#include "windstat/rng.hpp"

using namespace windstat;

TEST_CASE("philox known answers") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::apply(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::apply(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("draws are pure functions of their key") {
  DrawRng a(DrawKey{7, 1, 2, 0});
  DrawRng b(DrawKey{7, 1, 2, 0});
  DrawRng c(DrawKey{7, 1, 2, 1});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    differs = differs || x != c.next_u32();
  }
  CHECK(differs);
}

TEST_CASE("uniform and normal moments") {
  DrawRng rng(DrawKey{11, 0, 0, 0});
  ComplexAccumulator u, z;
  double min_u = 1.0, max_u = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform();
    min_u = std::min(min_u, x);
    max_u = std::max(max_u, x);
    u.push(x);
    z.push(rng.complex_normal());
  }
  CHECK(min_u > 0.0);
  CHECK(max_u < 1.0);
  CHECK(u.mean().real() == doctest::Approx(0.5).epsilon(0.01));
  CHECK(u.variance_re() == doctest::Approx(1.0 / 12.0).epsilon(0.01));
  CHECK(std::abs(z.mean()) < 0.01);
  CHECK(z.variance_re() + z.variance_im() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(z.covariance_re_im()) < 0.01);
}

TEST_CASE("accumulator merge matches a single pass") {
  DrawRng rng(DrawKey{3, 0, 0, 0});
  ComplexAccumulator all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const auto x = rng.complex_normal() * 3.0 + std::complex<double>(1.0, -2.0);
    all.push(x);
    (i < 317 ? left : right).push(x);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  CHECK(left.mean().real() == doctest::Approx(all.mean().real()).epsilon(1e-12));
  CHECK(left.mean().imag() == doctest::Approx(all.mean().imag()).epsilon(1e-12));
  CHECK(left.variance_re() == doctest::Approx(all.variance_re()).epsilon(1e-12));
  CHECK(left.covariance_re_im() == doctest::Approx(all.covariance_re_im()).epsilon(1e-10));
  ComplexAccumulator empty;
  empty.merge(all);
  CHECK(empty.count() == all.count());
}
