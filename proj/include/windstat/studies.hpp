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

#include <cstdint>
#include <vector>

#include "windstat/ensembles.hpp"
#include "windstat/parallel.hpp"
#include "windstat/winding.hpp"

namespace windstat {

struct WindingDraw {
  std::uint32_t stream = 0;
  std::uint32_t index = 0;
  int W = 0;            // contour route
  int W_count = 0;      // count route (trig loop only)
  bool has_count = false;
  int m = -1;           // eigenvalues on the positively winding side
  int grid = 0;
  double residual = 0.0;
  bool quantized = true;
  int resamples = 0;
};

struct WindingStudy {
  int N = 0;
  SymmetryClass cls = SymmetryClass::AIII;
  std::vector<WindingDraw> draws;  // stream order, then draw order
  double max_residual = 0.0;
  std::uint64_t mismatches = 0;
  std::uint64_t non_quantized = 0;
};

/// Contour winding number of every draw, plus the count route for the trig loop.
/// Draws with an eigenvalue on the count-route boundary are redrawn. Mismatches
/// and non-quantized draws are tallied, not thrown.
WindingStudy winding_study(int N, SymmetryClass cls, std::uint64_t draws, const StreamPlan& plan,
                           const LoopFunctions& loop = LoopFunctions::trig_loop(),
                           const ContourOptions& opts = {});

}  // namespace windstat
