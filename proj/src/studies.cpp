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

#include "windstat/studies.hpp"

#include <algorithm>
#include <cmath>

#include "windstat/errors.hpp"

namespace windstat {

WindingStudy winding_study(int N, SymmetryClass cls, std::uint64_t draws, const StreamPlan& plan,
                           const LoopFunctions& loop, const ContourOptions& opts) {
  const auto per_stream = run_streams<std::vector<WindingDraw>>(
      draws, plan, [&](std::uint32_t stream, std::uint64_t count) {
        std::vector<WindingDraw> rows;
        rows.reserve(count);
        for (std::uint64_t d = 0; d < count; ++d) {
          const DrawKey key{plan.seed, stream, static_cast<std::uint32_t>(d), 0};
          std::function<bool(const SphericalSpectrum&)> accept;
          if (loop.trig) accept = [](const SphericalSpectrum& sp) { return !near_winding_boundary(sp); };
          const SpectrumDraw draw = draw_spectrum(N, cls, key, {}, accept);
          WindingDraw row;
          row.stream = stream;
          row.index = static_cast<std::uint32_t>(d);
          row.resamples = draw.resamples;
          try {
            const WindingRecord rec = winding_number_contour(draw.sample, loop, opts);
            row.W = rec.W;
            row.grid = rec.grid_size;
            row.residual = rec.residual;
          } catch (const NonQuantizedError&) {
            ContourOptions capped = opts;
            capped.tolerance = 0.5;
            const WindingRecord rec = winding_number_contour(draw.sample, loop, capped);
            row.W = rec.W;
            row.grid = rec.grid_size;
            row.residual = rec.residual;
            row.quantized = false;
          }
          if (loop.trig) {
            row.has_count = true;
            row.m = count_winding_side(draw.spectrum);
            row.W_count = winding_number_count(draw.spectrum, loop);
          }
          rows.push_back(row);
        }
        return rows;
      });

  WindingStudy out;
  out.N = N;
  out.cls = cls;
  for (const auto& rows : per_stream) {
    for (const WindingDraw& r : rows) {
      out.max_residual = std::max(out.max_residual, r.residual);
      if (!r.quantized) ++out.non_quantized;
      if (r.has_count && r.W_count != r.W) ++out.mismatches;
      out.draws.push_back(r);
    }
  }
  return out;
}

}  // namespace windstat
