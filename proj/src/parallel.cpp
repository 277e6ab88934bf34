// Copyright 2026 The Riskhorizon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskhorizon/parallel.hpp"

#include <cstdlib>
#include <string>

namespace riskhorizon
{

std::size_t worker_count()
{
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char * env = std::getenv("RISKHORIZON_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value >= 1) workers = std::min<std::size_t>(workers, static_cast<std::size_t>(value));
    } catch (...) {
      // ignore malformed values, keep the hardware default
    }
  }
  return workers;
}

}  // namespace riskhorizon
