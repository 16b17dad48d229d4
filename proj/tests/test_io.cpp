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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "windstat/io.hpp"

using namespace windstat;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config hash is stable and key-order independent") {
  const nlohmann::json a = {{"n", 4}, {"seed", 1}};
  const nlohmann::json b = nlohmann::json::parse(R"({"seed": 1, "n": 4})");
  CHECK(io::config_hash(a) == io::config_hash(b));
  CHECK(io::config_hash(a).size() == 16);
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("doubles round trip") {
  for (double x : {0.1, -1e-300, 3.0, 1.0 / 3.0}) CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("CSV writer") {
  const auto dir = std::filesystem::temp_directory_path() / "windstat_io_test";
  std::filesystem::create_directories(dir);
  const nlohmann::json cfg = {{"n", 2}};
  for (const char* name : {"a.csv", "b.csv"}) {
    io::CsvWriter csv(dir / name, "demo", cfg, {"x", "y"});
    csv.cell(1).cell(0.5);
    csv.end_row();
    CHECK_THROWS(csv.cell(1).end_row());
  }
  const std::string text = slurp(dir / "a.csv");
  CHECK(text == slurp(dir / "b.csv"));
  CHECK(text.find("# config_hash: " + io::config_hash(cfg)) != std::string::npos);
  CHECK(text.find("x,y\n1,0.5\n") != std::string::npos);
  std::filesystem::remove_all(dir);
}
