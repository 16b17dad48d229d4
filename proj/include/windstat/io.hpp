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
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "windstat/ensembles.hpp"

namespace windstat::io {

/// `git describe` of the source tree at configure time.
std::string_view git_describe() noexcept;

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes) noexcept;

/// Hex FNV-1a of the compact JSON dump (keys sorted by nlohmann::json).
std::string config_hash(const nlohmann::json& config);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// CSV file with `#` metadata lines (title, config hash, config, build),
/// then one header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view title, const nlohmann::json& config,
            const std::vector<std::string>& columns);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(std::uint64_t x) { return cell(static_cast<long long>(x)); }
  void end_row();

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t filled_ = 0;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// One row per eigenvalue: draw_id, re, im.
void write_spectra_csv(const std::filesystem::path& path, const nlohmann::json& config,
                       const std::vector<std::uint64_t>& draw_ids,
                       const std::vector<SphericalSpectrum>& spectra);

/// Run metadata for spectrum dumps: seed, N, class, solver tolerances.
nlohmann::json spectrum_metadata(std::uint64_t seed, int N, SymmetryClass cls,
                                 const SpectrumOptions& opts);

}  // namespace windstat::io
