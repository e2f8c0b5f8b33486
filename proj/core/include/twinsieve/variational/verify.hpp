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

// Numerical checks of the simplex inequalities behind the weight.
// Non-asymptotic bounds carry a pass flag; bounds the argument only
// establishes for large k0 are reported as ratios.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twinsieve/variational/quadrature.hpp"

namespace twinsieve::variational {

struct VerificationRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double error = 0.0;  // 3 sigma of the Monte Carlo side, or quadrature residual
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<bool> pass;
  std::optional<double> ratio;
  std::string note;
};

nlohmann::json to_json(const VerificationRecord& r);

// int over Delta_{2k0}(1) of F°^2 against gamma^{2k0} / (2k0)^{2k0};
// passes when lhs <= rhs + 3 sigma. Requires 1 <= k0 <= 4.
VerificationRecord verify_mwu(unsigned k0, const McOptions& options);

// int over Delta_{2k0-1}(1) of (int_0^1 F° dt_{2k0})^2 against
// (A - 2) / (2k0) * gamma^{2k0} / (2k0)^{2k0}. Ratio only; the note flags
// the vacuous case A <= 2. Requires 1 <= k0 <= 4.
VerificationRecord verify_mwl(unsigned k0, const McOptions& options);

struct ScalarChfRow {
  double k0 = 0.0;
  double lhs = 0.0;  // 1 - 2.24 k0 delta1
  double rhs = 0.0;  // (A - 2.5) / (A - 2)
  bool applicable = false;  // A - 2 > 0
  bool holds = false;
};

// The elementary inequality 1 - 2.24 k0 delta1 >= (A - 2.5) / (A - 2).
ScalarChfRow scalar_chf(double k0);

struct ChfReport {
  // Smoothed-weight side against (1 - 2.24 k0 delta1) times the F° side,
  // both from one Monte Carlo pass. Not applicable at k0 = 1.
  VerificationRecord mc;
  std::vector<ScalarChfRow> scalar;
  bool scalar_pass = false;  // every applicable row holds
};

// Requires 1 <= k0 <= 3; the scalar grid is the given k0 list.
ChfReport verify_chf(unsigned k0, const McOptions& options, std::span<const double> scalar_grid);

struct IBoundsReport {
  unsigned k0 = 0;
  double theta0 = 0.0;
  double cap = 0.0;
  QuadratureEstimate i1, i2, i3;
  double scale = 0.0;     // gamma^{2k0-2} / (2k0)^{2k0}
  double i3_bound = 0.0;  // scale / (6 (cap - 1))
  bool i3_pass = false;
  double i2_bound = 0.0;  // last displayed bound before the o() claim
  double i1_bound = 0.0;  // two-term bound I_{1,1} + I_{1,2}
  std::vector<VerificationRecord> records() const;
};

// I_1, I_2, I_3 for the smooth weight, by Monte Carlo over
// Delta_{2k0-1}(1), which carries the integrands. delta1 > 0 overrides the
// schedule (required in effect at k0 = 1). Requires 1 <= k0 <= 3 and
// 1/2 < theta0 < 2/3.
IBoundsReport verify_i_bounds(unsigned k0, double theta0, const McOptions& options,
                              double delta1 = 0.0);

struct AlphaBetaReport {
  unsigned k0 = 0;
  double theta0 = 0.0;
  double delta_prime = 0.0;
  QuadratureEstimate alpha, beta1, beta2;
  double alpha_cap = 0.0;  // 0.167 / (cap - 1) * gamma^{2k0-2} / (2k0)^{2k0}
  double alpha_ratio = 0.0;
  double s2_factor = 0.0;  // 0.168 / (cap - 1) * gamma^{2k0-2} / (2k0)^{2k0}
  std::vector<VerificationRecord> records() const;
};

// alpha, beta_1, beta_2 of the smoothed extremizer built on the smooth
// weight's boundary data. Requires 1 <= k0 <= 2.
AlphaBetaReport alpha_beta_report(unsigned k0, double theta0, double delta_prime,
                                  const McOptions& options, double delta1 = 0.0);

// One row per k0: k0,A,T,gamma,delta1,delta2,log_box,identity_residual.
void write_schedule_csv(std::ostream& out, std::span<const double> k0s);

}  // namespace twinsieve::variational
