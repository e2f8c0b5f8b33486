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

// The constants chain m -> k0 -> C -> Omega bound, evaluated from log k0 so
// nothing of size e^m is ever formed.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace twinsieve::pipeline {

struct DistributionPreset {
  std::string name;
  double theta0 = 0.5;  // effective exponent; epsilon already absorbed
  double c1 = 0.0;      // minorant deficit
  // Metadata only.
  std::optional<double> theta;
  std::optional<double> eta;
  std::optional<double> xi;

  // 4 / (theta0 (1 - c1)), the growth rate of log k0 in m.
  double slope() const;
};

// "bombieri-vinogradov", "baker-irving" or "stadlmann"; DomainError otherwise.
DistributionPreset preset(const std::string& name);
std::vector<std::string> preset_names();
// DomainError unless 0 < theta0 < 2/3 and 0 <= c1 < 1.
DistributionPreset custom_preset(double theta0, double c1);
void validate(const DistributionPreset& p);

struct ConstantsReport {
  unsigned long long m = 0;
  std::string preset;
  double theta0 = 0.0;
  double c1 = 0.0;
  double log_k0 = 0.0;
  double a = 0.0;
  double log_t = 0.0;
  double gamma = 0.0;
  double log_gamma = 0.0;
  double log_c = 0.0;
  std::uint64_t omega_bound = 0;  // floor(log C / log 2)
  double rhs_763 = 0.0;           // 7.63 m + 4 log m + 21 log 2
  double rhs_736 = 0.0;           // 7.36 m + 4 log m + 21 log 2
  double width_constant = 1.0;
  double log_gap = 0.0;           // log c + log k0 + 2 log log k0
};

// DomainError for m = 0 or an invalid preset.
ConstantsReport derive_constants(unsigned long long m, const DistributionPreset& preset,
                                 double width_constant = 1.0);

// floor(x / log 2), tolerant to rounding just below an integer.
std::uint64_t omega_bound_from_log(double log_c);

struct HeadlineRow {
  unsigned long long m = 0;
  double log_k0 = 0.0;
  double log_c = 0.0;
  std::uint64_t omega_bound = 0;
  double rhs_763 = 0.0;
  double rhs_736 = 0.0;
  bool holds_763 = false;
  bool holds_736 = false;
};

struct HeadlineTable {
  std::string preset;
  std::vector<HeadlineRow> rows;
  // Smallest m from which the inequality holds through the end of the range.
  std::optional<unsigned long long> from_763;
  std::optional<unsigned long long> from_736;
};

// DomainError for an empty range.
HeadlineTable check_headline(std::span<const unsigned long long> ms,
                             const DistributionPreset& preset);
HeadlineTable check_headline(unsigned long long m_lo, unsigned long long m_hi,
                             const DistributionPreset& preset);

struct GapEstimate {
  double log_gap = 0.0;
  double linear_763 = 0.0;  // 7.63 m, for comparison
  double log_k0 = 0.0;
};

// log(c k0 (log k0)^2). DomainError unless c > 0.
GapEstimate gap_bound(unsigned long long m, const DistributionPreset& preset,
                      double width_constant);

nlohmann::json to_json(const DistributionPreset& p);
nlohmann::json to_json(const ConstantsReport& r);
nlohmann::json to_json(const HeadlineTable& t);
void write_headline_csv(std::ostream& out, const HeadlineTable& t);

}  // namespace twinsieve::pipeline
