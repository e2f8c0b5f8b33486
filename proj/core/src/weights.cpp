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

#include "twinsieve/variational/weights.hpp"

#include <algorithm>
#include <cmath>

#include "twinsieve/errors.hpp"

namespace twinsieve::variational {

namespace {

constexpr std::size_t kProfileIntervals = 4096;

}  // namespace

SumProductWeight::SumProductWeight(const Schedule& schedule)
    : schedule_(schedule), dim_(static_cast<unsigned>(2.0 * schedule.k0)) {
  if (schedule.k0 != std::floor(schedule.k0) || schedule.k0 < 1.0) {
    throw DomainError("weight: k0 must be a positive integer");
  }
}

double SumProductWeight::value(std::span<const double> t) const {
  double s = 0.0;
  double p = 1.0;
  for (const double u : t) {
    s += u;
    p *= factor(u);
    if (p == 0.0) return 0.0;
  }
  return outer(s) * p;
}

double SumProductWeight::partial(std::span<const double> t, std::size_t i) const {
  double s = 0.0;
  double rest = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    s += t[j];
    if (j != i) rest *= factor(t[j]);
  }
  if (rest == 0.0) return 0.0;
  return (outer_derivative(s) * factor(t[i]) + outer(s) * factor_derivative(t[i])) * rest;
}

ProductWeight::ProductWeight(const Schedule& schedule) : SumProductWeight(schedule) {}

double ProductWeight::factor(double u) const {
  const double x = 2.0 * schedule_.k0 * u;
  if (u < 0.0 || x > schedule_.t) return 0.0;
  return 1.0 / (1.0 + schedule_.a * x);
}

double ProductWeight::factor_derivative(double u) const {
  const double x = 2.0 * schedule_.k0 * u;
  if (u < 0.0 || x > schedule_.t) return 0.0;
  const double q = 1.0 + schedule_.a * x;
  return -2.0 * schedule_.k0 * schedule_.a / (q * q);
}

Knots ProductWeight::knots() const { return {{coordinate_cap()}, {1.0}}; }

double ProductWeight::sum_profile(double sigma, int order) const {
  if (order != 0) throw DomainError("ProductWeight: the sum profile exists only for order 0");
  const double upper = std::max(0.0, std::min(coordinate_cap(), 1.0 - sigma));
  const double c = 2.0 * schedule_.k0 * schedule_.a;
  return std::log1p(c * upper) / c;
}

SmoothWeight::SmoothWeight(const Schedule& schedule)
    : SmoothWeight(schedule, schedule.delta1, schedule.delta2) {}

SmoothWeight::SmoothWeight(const Schedule& schedule, double delta1, double delta2)
    : SumProductWeight(schedule) {
  if (!std::isfinite(delta1) || !std::isfinite(delta2) || delta1 <= 0.0 || delta2 <= 0.0) {
    throw DomainError("SmoothWeight: transition widths must be positive and finite "
                      "(pass them explicitly when k0 = 1)");
  }
  if (delta1 >= 1.0 || delta2 >= schedule.t) {
    throw DomainError("SmoothWeight: transition widths exceed their supports");
  }
  h1_ = Ramp(1.0 - delta1, delta1);
  h2_ = Ramp(schedule.t - delta2, delta2);
}

double SmoothWeight::factor(double u) const {
  if (u < 0.0) return 0.0;
  const double x = 2.0 * schedule_.k0 * u;
  return h2_.value(x) / (1.0 + schedule_.a * x);
}

double SmoothWeight::factor_derivative(double u) const {
  if (u < 0.0) return 0.0;
  const double n = 2.0 * schedule_.k0;
  const double x = n * u;
  const double q = 1.0 + schedule_.a * x;
  return n * h2_.derivative(x) / q - n * schedule_.a * h2_.value(x) / (q * q);
}

Knots SmoothWeight::knots() const {
  Knots k;
  const double n = 2.0 * schedule_.k0;
  for (const double x : h2_.knots()) k.coordinate.push_back(x / n);
  for (const double s : h1_.knots()) k.sum.push_back(s);
  return k;
}

double SmoothWeight::sum_profile_direct(double sigma, int order) const {
  if (order < 0 || order > 2) throw DomainError("sum_profile: order must be 0, 1 or 2");
  double hi = std::min(coordinate_cap(), 1.0 - sigma);
  double lo = order == 0 ? 0.0 : std::max(0.0, h1_.lo() - sigma);
  if (!(hi > lo)) return 0.0;
  std::vector<double> bp;
  for (const double s : h1_.knots()) bp.push_back(s - sigma);
  for (const double u : knots().coordinate) bp.push_back(u);
  const auto integrand = [&](double u) {
    const double s = u + sigma;
    const double h = order == 0 ? h1_.value(s)
                     : order == 1 ? h1_.derivative(s)
                                  : h1_.second_derivative(s);
    return h * factor(u);
  };
  NestedOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;
  opt.max_intervals = 2000;
  try {
    return integrate_1d(integrand, lo, hi, opt, bp).value;
  } catch (const QuadratureBudgetError& e) {
    return e.best().value;  // tolerance is far below what the table needs
  }
}

const SmoothWeight::Profile& SmoothWeight::profile() const {
  std::call_once(profile_once_, [this] {
    auto p = std::make_unique<Profile>();
    const std::size_t n = kProfileIntervals + 1;
    p->g0.resize(n);
    p->g1.resize(n);
    p->g2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double sigma = static_cast<double>(i) / kProfileIntervals;
      p->g0[i] = sum_profile_direct(sigma, 0);
      p->g1[i] = sum_profile_direct(sigma, 1);
      p->g2[i] = sum_profile_direct(sigma, 2);
    }
    profile_ = std::move(p);
  });
  return *profile_;
}

double SmoothWeight::sum_profile(double sigma, int order) const {
  if (order != 0 && order != 1) throw DomainError("sum_profile: order must be 0 or 1");
  if (sigma >= 1.0) return 0.0;
  if (sigma < 0.0) sigma = 0.0;
  const Profile& p = profile();
  const std::vector<double>& y = order == 0 ? p.g0 : p.g1;
  const std::vector<double>& dy = order == 0 ? p.g1 : p.g2;
  const double h = 1.0 / kProfileIntervals;
  const double pos = sigma / h;
  const auto i = std::min(static_cast<std::size_t>(pos), kProfileIntervals - 1);
  const double z = pos - static_cast<double>(i);
  // Cubic Hermite on [i h, (i + 1) h].
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double h00 = 2 * z3 - 3 * z2 + 1;
  const double h10 = z3 - 2 * z2 + z;
  const double h01 = -2 * z3 + 3 * z2;
  const double h11 = z3 - z2;
  return h00 * y[i] + h10 * h * dy[i] + h01 * y[i + 1] + h11 * h * dy[i + 1];
}

std::shared_ptr<SmoothWeight> make_smooth_weight(unsigned k0, double delta1) {
  const Schedule s = make_schedule(k0);
  double d1 = delta1;
  if (!(d1 > 0.0)) d1 = s.degenerate ? kUnitDelta1 : s.delta1;
  return std::make_shared<SmoothWeight>(s, d1, d1 * s.t / 10.0);
}

}  // namespace twinsieve::variational
