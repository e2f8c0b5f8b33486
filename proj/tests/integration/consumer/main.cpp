// Copyright 2026 The twinsieve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "twinsieve/pipeline.hpp"
#include "twinsieve/tuples.hpp"

int main() {
  const auto t = twinsieve::tuples::build_twin_tuple(2);
  const auto r = twinsieve::pipeline::derive_constants(10, twinsieve::pipeline::preset("baker-irving"));
  std::cout << twinsieve::tuples::width(t) << ' ' << r.omega_bound << '\n';
  return twinsieve::tuples::width(t) == 8 && r.omega_bound == 144 ? 0 : 1;
}
