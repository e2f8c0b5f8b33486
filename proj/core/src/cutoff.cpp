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

#include "twinsieve/variational/cutoff.hpp"

#include <cmath>

#include "twinsieve/errors.hpp"

namespace twinsieve::variational {

namespace {

// Smoothstep S(z) = 3z^2 - 2z^3 and its integral P(z) = z^3 - z^4 / 2.
double smoothstep(double z) { return z * z * (3.0 - 2.0 * z); }
double smoothstep_integral(double z) { return z * z * z * (1.0 - 0.5 * z); }
double smoothstep_slope(double z) { return 6.0 * z * (1.0 - z); }

}  // namespace

Ramp::Ramp(double lo, double width) : lo_(lo), width_(width) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(lo)) {
    throw DomainError("Ramp: width must be positive and finite");
  }
  blend_ = width * width / (2.0 + 2.0 * width);
  slope_ = 1.0 / (width - blend_);
}

double Ramp::value(double s) const {
  const double u = s - lo_;
  if (u <= 0.0) return 1.0;
  if (u >= width_) return 0.0;
  const double mb = slope_ * blend_;
  if (u < blend_) return 1.0 - mb * smoothstep_integral(u / blend_);
  if (u > width_ - blend_) return mb * smoothstep_integral((width_ - u) / blend_);
  return 1.0 - 0.5 * mb - slope_ * (u - blend_);
}

double Ramp::derivative(double s) const {
  const double u = s - lo_;
  if (u <= 0.0 || u >= width_) return 0.0;
  if (u < blend_) return -slope_ * smoothstep(u / blend_);
  if (u > width_ - blend_) return -slope_ * smoothstep((width_ - u) / blend_);
  return -slope_;
}

double Ramp::second_derivative(double s) const {
  const double u = s - lo_;
  if (u <= 0.0 || u >= width_) return 0.0;
  if (u < blend_) return -slope_ * smoothstep_slope(u / blend_) / blend_;
  if (u > width_ - blend_) return slope_ * smoothstep_slope((width_ - u) / blend_) / blend_;
  return 0.0;
}

std::array<double, 4> Ramp::knots() const {
  return {lo_, lo_ + blend_, lo_ + width_ - blend_, lo_ + width_};
}

}  // namespace twinsieve::variational
