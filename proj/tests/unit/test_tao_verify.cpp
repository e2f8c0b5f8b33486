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

#include <gtest/gtest.h>

#include <algorithm>

#include <cmath>
#include <sstream>

#include "twinsieve/errors.hpp"
#include "twinsieve/variational/tao.hpp"
#include "twinsieve/variational/verify.hpp"

namespace v = twinsieve::variational;

namespace {

constexpr double kCcsClosedForm = 0.84839248149318749;  // (4/3) log 4 - 1

v::TaoBoundary unit_simplex_boundary(unsigned dim, double cap) {
  v::TaoBoundary b;
  b.dim = dim;
  b.cap = cap;
  b.g = [](std::span<const double> t) {
    double s = 0.0;
    for (const double x : t) s += x;
    return s <= 1.0 ? 1.0 : 0.0;
  };
  b.knots.sum = {1.0};
  b.label = "simplex-indicator";
  return b;
}

v::McOptions mc(std::uint64_t samples, std::uint64_t seed = 1) {
  v::McOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(TaoL, Examples) {
  const auto b = unit_simplex_boundary(3, 2.0);
  const std::vector<double> t = {0.5, 0.5, 0.0};
  EXPECT_NEAR(v::tao_L(t, b), 2.0 / 3.0, 1e-15);
  const std::vector<double> t1zero = {0.0, 0.3, 0.2};
  EXPECT_EQ(v::tao_L(t1zero, b), 1.0);
  const std::vector<double> on_cap = {1.0, 0.6, 0.4};
  EXPECT_EQ(v::tao_L(on_cap, b), 0.0);
  auto wide = b;
  wide.support = 2.5;
  wide.g = [](std::span<const double>) { return 1.0; };
  const std::vector<double> singular = {0.0, 1.5, 0.5};
  EXPECT_EQ(v::tao_L(singular, wide), 0.0);
}

TEST(TaoCap, Values) {
  EXPECT_DOUBLE_EQ(v::tao_cap(0.5), 4.0 / 3.0);
  EXPECT_GT(v::tao_cap(0.65), 1.0);
  EXPECT_THROW(v::tao_cap(0.0), twinsieve::DomainError);
}

TEST(Ccs, ZeroAndIndicator) {
  EXPECT_EQ(v::ccs_lower_bound(v::zero_boundary(2, 4.0 / 3.0), mc(10000)).value, 0.0);
  const auto ind = v::indicator_boundary(4.0 / 3.0);
  const auto q = v::ccs_lower_bound_quadrature(ind, {});
  EXPECT_NEAR(q.value, kCcsClosedForm, 1e-9);
  const auto m = v::ccs_lower_bound(ind, mc(400000, 5));
  EXPECT_NEAR(m.value, kCcsClosedForm, m.error_bound);
  EXPECT_THROW(v::ccs_lower_bound(v::indicator_boundary(1.0), mc(10000)),
               twinsieve::DomainError);
}

TEST(Ccs, WeightBoundaryPositive) {
  const auto b = v::weight_boundary(v::make_smooth_weight(1), v::tao_cap(0.5243));
  EXPECT_GT(v::ccs_lower_bound(b, mc(100000)).value, 0.0);
  EXPECT_GT(v::ccs_lower_bound_quadrature(b, {}).value, 0.0);
}

TEST(TaoStep, ZeroBoundary) {
  const double dps[] = {0.1};
  const auto r = v::verify_tao_step(v::zero_boundary(2, 4.0 / 3.0), dps, {});
  EXPECT_EQ(r.ccs_bound.value, 0.0);
  ASSERT_EQ(r.rows.size(), 1U);
  EXPECT_EQ(r.rows[0].alpha.value, 0.0);
}

TEST(TaoStep, IndicatorAboveAndShrinking) {
  const auto ind = v::indicator_boundary(4.0 / 3.0);
  const double dps[] = {0.1, 0.05, 0.025};
  const auto r = v::verify_tao_step(ind, dps, {});
  EXPECT_TRUE(r.pass());
  EXPECT_NEAR(r.alpha_extremal.value, kCcsClosedForm, 1e-8);
  ASSERT_EQ(r.rows.size(), 3U);
  const double a05 = r.rows[1].alpha.value;
  EXPECT_GT(a05, kCcsClosedForm);
  EXPECT_LT(a05, 1.1 * kCcsClosedForm);
  // The excess is close to linear in delta'.
  EXPECT_NEAR(r.rows[0].excess / r.rows[1].excess, 2.0, 0.1);
  const double bad[] = {0.5};
  EXPECT_THROW(v::verify_tao_step(ind, bad, {}), twinsieve::DomainError);
}

TEST(TaoStep, AlphaSmoothedDominatesCcsForWeightBoundary) {
  const auto b = v::weight_boundary(v::make_smooth_weight(1), v::tao_cap(0.5243));
  const double ccs = v::ccs_lower_bound_quadrature(b, {}).value;
  v::NestedOptions o;
  o.rel_tol = 1e-7;
  const auto a = v::alpha_smoothed(b, 0.05, o);
  EXPECT_GE(a.value, ccs - a.error_bound);
}

TEST(Mwu, PassesForSmallK) {
  for (const unsigned k0 : {1U, 2U}) {
    const auto r = v::verify_mwu(k0, mc(300000, 11));
    ASSERT_TRUE(r.pass.has_value());
    EXPECT_TRUE(*r.pass) << k0;
    EXPECT_LE(r.lhs, r.rhs + r.error);
    EXPECT_DOUBLE_EQ(r.rhs, v::box_self_integral(v::make_schedule(k0)));
  }
  EXPECT_THROW(v::verify_mwu(5, mc(10000)), twinsieve::DomainError);
}

TEST(Mwl, RatioOnlyAndVacuousForSmallK) {
  const auto r = v::verify_mwl(2, mc(200000));
  EXPECT_FALSE(r.pass.has_value());
  ASSERT_TRUE(r.ratio.has_value());
  EXPECT_GT(r.lhs, 0.0);
  EXPECT_LT(r.rhs, 0.0);
  EXPECT_NE(r.note.find("vacuous"), std::string::npos);
  const auto r4 = v::verify_mwl(4, mc(50000));
  EXPECT_GT(r4.lhs, 0.0);
}

TEST(Chf, ScalarInequality) {
  const auto big = v::scalar_chf(1e6);
  EXPECT_TRUE(big.applicable);
  EXPECT_TRUE(big.holds);
  const auto small = v::scalar_chf(2);
  EXPECT_FALSE(small.applicable);
  // A > 2 needs 2k0 above roughly 212.
  EXPECT_FALSE(v::scalar_chf(100).applicable);
  EXPECT_TRUE(v::scalar_chf(120).applicable);
}

TEST(Chf, MonteCarloReport) {
  const double grid[] = {2, 1e3, 1e6, 1e9};
  const auto r = v::verify_chf(2, mc(100000), grid);
  EXPECT_GT(r.mc.lhs, 0.0);
  EXPECT_GT(r.mc.rhs, 0.0);
  EXPECT_TRUE(r.mc.pass.has_value());
  EXPECT_EQ(r.scalar.size(), 4U);
  EXPECT_TRUE(r.scalar_pass);
  const auto unit = v::verify_chf(1, mc(10000), grid);
  EXPECT_FALSE(unit.mc.pass.has_value());
  EXPECT_NE(unit.mc.note.find("not applicable"), std::string::npos);
}

TEST(IBounds, NonnegativeAndI3Holds) {
  const auto r = v::verify_i_bounds(2, 0.5243, mc(200000, 3));
  EXPECT_GE(r.i1.value, 0.0);
  EXPECT_GE(r.i2.value, 0.0);
  EXPECT_GE(r.i3.value, 0.0);
  EXPECT_TRUE(r.i3_pass);
  const auto s = v::make_schedule(2);
  const double cap = v::tao_cap(0.5243);
  EXPECT_NEAR(r.i3_bound, std::pow(s.gamma, 2) / (6 * std::pow(4.0, 4) * (cap - 1)), 1e-15);
  const auto recs = r.records();
  ASSERT_EQ(recs.size(), 3U);
  EXPECT_TRUE(recs[2].pass.has_value());
  EXPECT_FALSE(recs[0].pass.has_value());
  EXPECT_THROW(v::verify_i_bounds(2, 0.7, mc(10000)), twinsieve::DomainError);
}

TEST(IBounds, MaxOfReciprocalOnUnitInterval) {
  // max over r in [0, 1] of 1 / (cap - r) is attained at r = 1.
  const double cap = v::tao_cap(0.5243);
  double best = 0.0;
  for (int i = 0; i <= 1000; ++i) best = std::max(best, 1.0 / (cap - i / 1000.0));
  EXPECT_DOUBLE_EQ(best, 1.0 / (cap - 1.0));
}

TEST(AlphaBeta, UnitReport) {
  const auto r = v::alpha_beta_report(1, 0.5243, 0.05, mc(20000, 2));
  EXPECT_GT(r.alpha.value, 0.0);
  EXPECT_GE(r.beta1.value, 0.0);
  EXPECT_TRUE(std::isfinite(r.beta2.value));
  EXPECT_GT(r.alpha_cap, 0.0);
  EXPECT_NEAR(r.alpha_ratio, r.alpha.value / r.alpha_cap, 1e-15);
  EXPECT_NEAR(r.s2_factor / r.alpha_cap, 0.168 / 0.167, 1e-14);
  EXPECT_EQ(r.records().size(), 3U);
}

TEST(AlphaBeta, ZeroBoundaryGivesZeroAlpha) {
  EXPECT_EQ(v::alpha_smoothed(v::zero_boundary(2, 4.0 / 3.0), 0.05, {}).value, 0.0);
}

TEST(Records, JsonShape) {
  v::VerificationRecord r;
  r.name = "x";
  r.lhs = 1.0;
  r.rhs = 2.0;
  r.pass = true;
  const auto j = v::to_json(r);
  EXPECT_EQ(j.at("name"), "x");
  EXPECT_EQ(j.at("pass"), true);
  EXPECT_FALSE(j.contains("ratio"));
}

TEST(ScheduleCsv, HeaderAndRows) {
  std::ostringstream out;
  const double ks[] = {2, 50};
  v::write_schedule_csv(out, ks);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "k0,A,T,gamma,delta1,delta2,log_box,identity_residual");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}
