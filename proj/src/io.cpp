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

#include "windstat/io.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

#ifndef WINDSTAT_GIT_DESCRIBE
#define WINDSTAT_GIT_DESCRIBE "unknown"
#endif

namespace windstat::io {

std::string_view git_describe() noexcept { return WINDSTAT_GIT_DESCRIBE; }

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const nlohmann::json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view title,
                     const nlohmann::json& config, const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out_ << "# windstat " << title << '\n';
  out_ << "# config_hash: " << config_hash(config) << '\n';
  out_ << "# config: " << config.dump() << '\n';
  out_ << "# build: " << git_describe() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (filled_++) out_ << ',';
  out_ << text;
  return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(std::string_view(format_double(x))); }

CsvWriter& CsvWriter::cell(long long x) { return cell(std::string_view(std::to_string(x))); }

void CsvWriter::end_row() {
  if (filled_ != columns_) {
    throw std::logic_error("CSV row in " + path_.string() + " has " + std::to_string(filled_) +
                           " cells, expected " + std::to_string(columns_));
  }
  out_ << '\n';
  filled_ = 0;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

void write_spectra_csv(const std::filesystem::path& path, const nlohmann::json& config,
                       const std::vector<std::uint64_t>& draw_ids,
                       const std::vector<SphericalSpectrum>& spectra) {
  if (draw_ids.size() != spectra.size()) {
    throw std::invalid_argument("write_spectra_csv: one draw id per spectrum required");
  }
  CsvWriter csv(path, "spectra", config, {"draw_id", "re", "im"});
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    for (const cdouble& z : spectra[i].z) {
      csv.cell(draw_ids[i]).cell(z.real()).cell(z.imag());
      csv.end_row();
    }
  }
}

nlohmann::json spectrum_metadata(std::uint64_t seed, int N, SymmetryClass cls,
                                 const SpectrumOptions& opts) {
  return {{"seed", seed},
          {"N", N},
          {"class", std::string(class_label(cls))},
          {"max_condition", opts.max_condition},
          {"pairing_tolerance", opts.pairing_tolerance},
          {"solver", "zggev"}};
}

}  // namespace windstat::io
