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

// Weights of the form F(t) = H(t_1 + ... + t_n) * prod phi(t_i).

#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "twinsieve/variational/cutoff.hpp"
#include "twinsieve/variational/quadrature.hpp"
#include "twinsieve/variational/schedule.hpp"

namespace twinsieve::variational {

class SumProductWeight {
 public:
  explicit SumProductWeight(const Schedule& schedule);
  virtual ~SumProductWeight() = default;

  const Schedule& schedule() const { return schedule_; }
  unsigned dim() const { return dim_; }
  double coordinate_cap() const { return schedule_.coordinate_cap(); }
  static constexpr double sum_cap() { return 1.0; }

  virtual std::string name() const = 0;
  virtual double outer(double s) const = 0;
  virtual double outer_derivative(double s) const = 0;
  virtual double factor(double u) const = 0;
  virtual double factor_derivative(double u) const = 0;
  virtual Knots knots() const = 0;

  // F(t); t.size() must equal dim().
  double value(std::span<const double> t) const;
  // dF/dt_i.
  double partial(std::span<const double> t, std::size_t i) const;

  // G_order(sigma) = int_0^inf H^(order)(u + sigma) phi(u) du, order 0 or 1.
  // This is the t_1-integral of F (or of dF/ds) with the other
  // coordinates factored out.
  virtual double sum_profile(double sigma, int order) const = 0;

 protected:
  Schedule schedule_;
  unsigned dim_;
};

// F°: indicator of the unit simplex times prod 1_[0,T](2k0 u) / (1 + 2k0 A u).
class ProductWeight final : public SumProductWeight {
 public:
  explicit ProductWeight(const Schedule& schedule);

  std::string name() const override { return "product"; }
  double outer(double s) const override { return s <= 1.0 ? 1.0 : 0.0; }
  double outer_derivative(double) const override { return 0.0; }
  double factor(double u) const override;
  double factor_derivative(double u) const override;
  Knots knots() const override;
  // Closed form for order 0; order 1 is a point mass and throws DomainError.
  double sum_profile(double sigma, int order) const override;
};

// F = h1(sum t) prod h2*(2k0 t_i) / (1 + 2k0 A t_i) with C^2 ramps:
// h1 falls over [1 - delta1, 1], h2* over [T - delta2, T].
class SmoothWeight final : public SumProductWeight {
 public:
  // Uses the schedule's deltas; DomainError when the schedule is degenerate.
  explicit SmoothWeight(const Schedule& schedule);
  SmoothWeight(const Schedule& schedule, double delta1, double delta2);

  std::string name() const override { return "smooth"; }
  double delta1() const { return h1_.width(); }
  double delta2() const { return h2_.width(); }
  const Ramp& h1() const { return h1_; }
  const Ramp& h2() const { return h2_; }

  double outer(double s) const override { return h1_.value(s); }
  double outer_derivative(double s) const override { return h1_.derivative(s); }
  double factor(double u) const override;
  double factor_derivative(double u) const override;
  Knots knots() const override;
  // Piecewise cubic Hermite table over [0, 1], built on first use.
  double sum_profile(double sigma, int order) const override;
  // Direct adaptive quadrature, order 0, 1 or 2; used to build the table.
  double sum_profile_direct(double sigma, int order) const;

 private:
  struct Profile {
    std::vector<double> g0, g1, g2;
  };
  const Profile& profile() const;

  Ramp h1_;
  Ramp h2_;
  mutable std::once_flag profile_once_;
  mutable std::unique_ptr<Profile> profile_;
};

// Width used for h1 when k0 = 1, where the schedule's delta1 is infinite.
inline constexpr double kUnitDelta1 = 0.1;

// SmoothWeight for integer k0 with delta2 = delta1 T / 10. A positive
// delta1 overrides the schedule; k0 = 1 falls back to kUnitDelta1.
std::shared_ptr<SmoothWeight> make_smooth_weight(unsigned k0, double delta1 = 0.0);

// Convenience wrappers matching the module surface.
inline double eval_smooth_F(std::span<const double> t, const SmoothWeight& w) {
  return w.value(t);
}

}  // namespace twinsieve::variational
