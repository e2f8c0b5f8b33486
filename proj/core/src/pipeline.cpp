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

#include "twinsieve/pipeline.hpp"

#include <cmath>
#include <ostream>

#include "twinsieve/errors.hpp"
#include "twinsieve/report.hpp"
#include "twinsieve/variational/schedule.hpp"

namespace twinsieve::pipeline {

namespace {

constexpr double kLog2 = 0.69314718055994530942;
constexpr double kBakerIrvingProduct = 0.52427;  // (1 - c1) theta0
constexpr double kBakerIrvingC1 = 8e-6;
constexpr double kBakerIrvingUpper = 691.0 / 1318.0;
constexpr double kBakerIrvingEta = 22.0 / 3295.0;

double headline_rhs(double coefficient, double m) {
  return coefficient * m + 4.0 * std::log(m) + 21.0 * kLog2;
}

}  // namespace

double DistributionPreset::slope() const { return 4.0 / (theta0 * (1.0 - c1)); }

void validate(const DistributionPreset& p) {
  if (!(p.theta0 > 0.0 && p.theta0 < 2.0 / 3.0)) {
    throw DomainError("preset " + p.name + ": theta0 must lie in (0, 2/3)");
  }
  if (!(p.c1 >= 0.0 && p.c1 < 1.0)) {
    throw DomainError("preset " + p.name + ": c1 must lie in [0, 1)");
  }
  if (p.name == "baker-irving" && !(p.theta0 > 0.5 && p.theta0 < kBakerIrvingUpper)) {
    throw DomainError("preset baker-irving: theta0 must lie in (1/2, 691/1318)");
  }
}

DistributionPreset preset(const std::string& name) {
  DistributionPreset p;
  p.name = name;
  if (name == "bombieri-vinogradov") {
    p.theta0 = 0.5;
    p.c1 = 0.0;
    p.theta = 0.5;
  } else if (name == "baker-irving") {
    p.c1 = kBakerIrvingC1;
    p.theta0 = kBakerIrvingProduct / (1.0 - kBakerIrvingC1);
    p.eta = kBakerIrvingEta;
    p.theta = 0.5 + 7.0 / 300.0 + 17.0 * kBakerIrvingEta / 120.0;
  } else if (name == "stadlmann") {
    p.theta0 = 0.5253;
    p.c1 = 0.0;
  } else {
    throw DomainError("unknown preset: " + name);
  }
  validate(p);
  return p;
}

std::vector<std::string> preset_names() {
  return {"bombieri-vinogradov", "baker-irving", "stadlmann"};
}

DistributionPreset custom_preset(double theta0, double c1) {
  DistributionPreset p;
  p.name = "custom";
  p.theta0 = theta0;
  p.c1 = c1;
  validate(p);
  return p;
}

std::uint64_t omega_bound_from_log(double log_c) {
  if (!(log_c >= 0.0) || !std::isfinite(log_c)) {
    throw DomainError("omega bound needs a finite log C >= 0");
  }
  const double q = log_c / kLog2;
  return static_cast<std::uint64_t>(std::floor(q + 1e-12 * (1.0 + q)));
}

ConstantsReport derive_constants(unsigned long long m, const DistributionPreset& p,
                                  double width_constant) {
  if (m == 0) throw DomainError("m must be >= 1");
  validate(p);
  const double md = static_cast<double>(m);
  ConstantsReport r;
  r.m = m;
  r.preset = p.name;
  r.theta0 = p.theta0;
  r.c1 = p.c1;
  r.log_k0 = 2.0 * std::log(md) + p.slope() * md + 8.0;
  const variational::LogSchedule s = variational::make_log_schedule(r.log_k0);
  r.a = s.a;
  r.log_t = s.log_t;
  r.gamma = s.gamma;
  r.log_gamma = s.log_gamma;
  const double r_exponent = p.theta0 / 2.0 - 1.0 / (100000.0 * md);
  r.log_c = r.log_k0 - 2.0 * s.log_gamma + std::log(0.168) - std::log(1.063 * (1.0 - p.c1)) -
            2.0 * std::log(r_exponent) - std::log(2.0 / (3.0 * p.theta0) - 1.0);
  r.omega_bound = omega_bound_from_log(r.log_c);
  r.rhs_763 = headline_rhs(7.63, md);
  r.rhs_736 = headline_rhs(7.36, md);
  const GapEstimate g = gap_bound(m, p, width_constant);
  r.width_constant = width_constant;
  r.log_gap = g.log_gap;
  return r;
}

HeadlineTable check_headline(std::span<const unsigned long long> ms,
                             const DistributionPreset& p) {
  if (ms.empty()) throw DomainError("check_headline: empty m range");
  HeadlineTable t;
  t.preset = p.name;
  for (const unsigned long long m : ms) {
    const ConstantsReport c = derive_constants(m, p);
    t.rows.push_back({m, c.log_k0, c.log_c, c.omega_bound, c.rhs_763, c.rhs_736,
                      c.log_c <= c.rhs_763, c.log_c <= c.rhs_736});
  }
  for (auto it = t.rows.rbegin(); it != t.rows.rend() && it->holds_763; ++it) t.from_763 = it->m;
  for (auto it = t.rows.rbegin(); it != t.rows.rend() && it->holds_736; ++it) t.from_736 = it->m;
  return t;
}

HeadlineTable check_headline(unsigned long long m_lo, unsigned long long m_hi,
                             const DistributionPreset& p) {
  if (m_lo == 0 || m_hi < m_lo) throw DomainError("check_headline: need 1 <= m_lo <= m_hi");
  std::vector<unsigned long long> ms;
  for (unsigned long long m = m_lo; m <= m_hi; ++m) ms.push_back(m);
  return check_headline(ms, p);
}

GapEstimate gap_bound(unsigned long long m, const DistributionPreset& p,
                      double width_constant) {
  if (!(width_constant > 0.0) || !std::isfinite(width_constant)) {
    throw DomainError("gap_bound: width constant must be positive");
  }
  if (m == 0) throw DomainError("m must be >= 1");
  validate(p);
  const double md = static_cast<double>(m);
  GapEstimate g;
  g.log_k0 = 2.0 * std::log(md) + p.slope() * md + 8.0;
  g.log_gap = std::log(width_constant) + g.log_k0 + 2.0 * std::log(g.log_k0);
  g.linear_763 = 7.63 * md;
  return g;
}

nlohmann::json to_json(const DistributionPreset& p) {
  nlohmann::json j = {{"name", p.name}, {"theta0", p.theta0}, {"c1", p.c1},
                      {"slope", p.slope()}};
  if (p.theta) j["theta"] = *p.theta;
  if (p.eta) j["eta"] = *p.eta;
  if (p.xi) j["xi"] = *p.xi;
  return j;
}

nlohmann::json to_json(const ConstantsReport& r) {
  return {{"m", r.m},
          {"preset", r.preset},
          {"theta0", r.theta0},
          {"c1", r.c1},
          {"log_k0", r.log_k0},
          {"A", r.a},
          {"log_T", r.log_t},
          {"gamma", r.gamma},
          {"log_gamma", r.log_gamma},
          {"log_C", r.log_c},
          {"omega_bound", r.omega_bound},
          {"headline_rhs", r.rhs_763},
          {"rhs_736", r.rhs_736},
          {"holds_763", r.log_c <= r.rhs_763},
          {"holds_736", r.log_c <= r.rhs_736},
          {"width_constant", r.width_constant},
          {"log_gap", r.log_gap}};
}

nlohmann::json to_json(const HeadlineTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const HeadlineRow& r : t.rows) {
    rows.push_back({{"m", r.m},
                    {"log_k0", r.log_k0},
                    {"log_C", r.log_c},
                    {"omega_bound", r.omega_bound},
                    {"rhs_763", r.rhs_763},
                    {"rhs_736", r.rhs_736},
                    {"holds_763", r.holds_763},
                    {"holds_736", r.holds_736}});
  }
  nlohmann::json j = {{"preset", t.preset}, {"rows", rows}};
  j["holds_763_from"] = t.from_763 ? nlohmann::json(*t.from_763) : nlohmann::json(nullptr);
  j["holds_736_from"] = t.from_736 ? nlohmann::json(*t.from_736) : nlohmann::json(nullptr);
  return j;
}

void write_headline_csv(std::ostream& out, const HeadlineTable& t) {
  out << "m,log_k0,log_C,omega_bound,rhs_763,rhs_736,holds_763,holds_736\n";
  for (const HeadlineRow& r : t.rows) {
    out << r.m << ',' << report::format_double(r.log_k0) << ','
        << report::format_double(r.log_c) << ',' << r.omega_bound << ','
        << report::format_double(r.rhs_763) << ',' << report::format_double(r.rhs_736) << ','
        << (r.holds_763 ? "true" : "false") << ',' << (r.holds_736 ? "true" : "false") << '\n';
  }
}

}  // namespace twinsieve::pipeline
