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

#pragma once

// Scalar schedule of the explicit sieve weight: A, T, gamma, delta1,
// delta2 as functions of k0, plus a log-domain variant for k0 far beyond
// double range.

namespace twinsieve::variational {

struct Schedule {
  double k0 = 0.0;
  double a = 0.0;       // log(2k0) - 2 log log(2k0)
  double t = 0.0;       // (e^A - 1) / A
  double gamma = 0.0;   // (1/A)(1 - 1/(1 + A T))
  double delta1 = 0.0;  // 1 / (4.5 k0 log k0); +inf at k0 = 1
  double delta2 = 0.0;  // delta1 T / 10
  bool degenerate = false;  // k0 == 1: log k0 = 0, so the deltas are infinite

  double two_k0() const { return 2.0 * k0; }
  // Per-coordinate support edge T / (2 k0).
  double coordinate_cap() const { return t / (2.0 * k0); }
};

// Throws DomainError for k0 < 1 (and non-finite k0).
Schedule make_schedule(double k0);

// |1 + A T - 2k0 / (log 2k0)^2| / (2k0 / (log 2k0)^2).
double identity_residual(const Schedule& s);

// log of gamma^{2k0} / (2k0)^{2k0}.
double log_box_self_integral(const Schedule& s);
double box_self_integral(const Schedule& s);

// A > 0.99 log k0 and delta2 >= 1 / (23 (log k0)^4); both are claimed only
// for large k0.
bool large_a_flag(const Schedule& s);
bool delta2_floor_flag(const Schedule& s);

// Schedule evaluated from log k0 alone, using e^A = 2k0 / (log 2k0)^2 so
// nothing of size k0 is ever formed.
struct LogSchedule {
  double log_k0 = 0.0;
  double log_2k0 = 0.0;
  double a = 0.0;
  double log_t = 0.0;
  double gamma = 0.0;
  double log_gamma = 0.0;
  double log_delta1 = 0.0;
  double log_delta2 = 0.0;
};

// Requires log_k0 > 0 (DomainError otherwise).
LogSchedule make_log_schedule(double log_k0);

}  // namespace twinsieve::variational
