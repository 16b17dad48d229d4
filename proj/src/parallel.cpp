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

#include "windstat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace windstat {

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("WINDSTAT_THREADS"); cap != nullptr && *cap != '\0') {
    try {
      const long limit = std::stol(cap);
      if (limit >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(limit));
    } catch (const std::exception&) {
      // malformed cap: ignored
    }
  }
  return std::max(1u, n);
}

}  // namespace windstat
