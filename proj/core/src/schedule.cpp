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

#include "twinsieve/variational/schedule.hpp"

#include <cmath>
#include <limits>

#include "twinsieve/errors.hpp"

namespace twinsieve::variational {

Schedule make_schedule(double k0) {
  if (!std::isfinite(k0) || k0 < 1.0) throw DomainError("make_schedule: k0 must be >= 1");
  Schedule s;
  s.k0 = k0;
  const double l2k = std::log(2.0 * k0);
  s.a = l2k - 2.0 * std::log(l2k);
  s.t = std::expm1(s.a) / s.a;
  // 1 + A T = e^A, so 1 - 1/(1 + A T) = -expm1(-A).
  s.gamma = -std::expm1(-s.a) / s.a;
  const double lk = std::log(k0);
  if (lk == 0.0) {
    s.degenerate = true;
    s.delta1 = std::numeric_limits<double>::infinity();
    s.delta2 = std::numeric_limits<double>::infinity();
  } else {
    s.delta1 = 1.0 / (4.5 * k0 * lk);
    s.delta2 = s.delta1 * s.t / 10.0;
  }
  return s;
}

double identity_residual(const Schedule& s) {
  const double l2k = std::log(2.0 * s.k0);
  const double rhs = 2.0 * s.k0 / (l2k * l2k);
  return std::abs(1.0 + s.a * s.t - rhs) / rhs;
}

double log_box_self_integral(const Schedule& s) {
  const double n = 2.0 * s.k0;
  return n * (std::log(s.gamma) - std::log(n));
}

double box_self_integral(const Schedule& s) { return std::exp(log_box_self_integral(s)); }

bool large_a_flag(const Schedule& s) { return s.a > 0.99 * std::log(s.k0); }

bool delta2_floor_flag(const Schedule& s) {
  const double lk = std::log(s.k0);
  return !s.degenerate && s.delta2 >= 1.0 / (23.0 * lk * lk * lk * lk);
}

LogSchedule make_log_schedule(double log_k0) {
  if (!(log_k0 > 0.0) || !std::isfinite(log_k0)) {
    throw DomainError("make_log_schedule: log k0 must be positive and finite");
  }
  LogSchedule s;
  s.log_k0 = log_k0;
  s.log_2k0 = log_k0 + std::log(2.0);
  s.a = s.log_2k0 - 2.0 * std::log(s.log_2k0);
  // T = (e^A - 1) / A  ->  log T = A + log(1 - e^{-A}) - log A
  s.log_t = s.a + std::log(-std::expm1(-s.a)) - std::log(s.a);
  s.gamma = -std::expm1(-s.a) / s.a;
  s.log_gamma = std::log(s.gamma);
  s.log_delta1 = -std::log(4.5) - log_k0 - std::log(log_k0);
  s.log_delta2 = s.log_delta1 + s.log_t - std::log(10.0);
  return s;
}

}  // namespace twinsieve::variational
