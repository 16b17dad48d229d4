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

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace windstat {

/// Streaming mean and (co)variance of a complex observable.
///
/// Welford updates per sample; merge() uses the pairwise update of the
/// centered sums, so partial accumulators built by separate workers combine
/// into the same moments as a single pass (up to rounding).
class ComplexAccumulator {
 public:
  void push(std::complex<double> x) noexcept {
    ++n_;
    const double n = static_cast<double>(n_);
    const double dr = x.real() - mean_re_;
    const double di = x.imag() - mean_im_;
    mean_re_ += dr / n;
    mean_im_ += di / n;
    m2_re_ += dr * (x.real() - mean_re_);
    m2_im_ += di * (x.imag() - mean_im_);
    c_ri_ += dr * (x.imag() - mean_im_);
  }

  void merge(const ComplexAccumulator& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double dr = other.mean_re_ - mean_re_;
    const double di = other.mean_im_ - mean_im_;
    mean_re_ += dr * nb / n;
    mean_im_ += di * nb / n;
    m2_re_ += other.m2_re_ + dr * dr * na * nb / n;
    m2_im_ += other.m2_im_ + di * di * na * nb / n;
    c_ri_ += other.c_ri_ + dr * di * na * nb / n;
    n_ += other.n_;
  }

  std::uint64_t count() const noexcept { return n_; }
  std::complex<double> mean() const noexcept { return {mean_re_, mean_im_}; }

  double variance_re() const noexcept { return sample_moment(m2_re_); }
  double variance_im() const noexcept { return sample_moment(m2_im_); }
  double covariance_re_im() const noexcept { return sample_moment(c_ri_); }

  double stderr_re() const noexcept { return std::sqrt(variance_re() / static_cast<double>(n_)); }
  double stderr_im() const noexcept { return std::sqrt(variance_im() / static_cast<double>(n_)); }

  /// Standard error of the complex mean, sqrt(E|x - mean|^2 / n).
  double stderr() const noexcept {
    return std::sqrt((variance_re() + variance_im()) / static_cast<double>(n_));
  }

 private:
  double sample_moment(double m2) const noexcept {
    if (n_ < 2) return std::numeric_limits<double>::quiet_NaN();
    return m2 / static_cast<double>(n_ - 1);
  }

  std::uint64_t n_ = 0;
  double mean_re_ = 0.0;
  double mean_im_ = 0.0;
  double m2_re_ = 0.0;
  double m2_im_ = 0.0;
  double c_ri_ = 0.0;
};

}  // namespace windstat
