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

#include <array>

namespace twinsieve::variational {

// Monotone C^2 step from 1 down to 0 over [lo, lo + width].
//
// The derivative is -m in the middle and rises to 0 through smoothstep
// profiles of length b at each end, with b = width * width / (2 + 2 width)
// and m = 1 / (width - b). For width <= 1 this keeps |h'| <= m <=
// 1/width + 1; the value pieces are quartic.
class Ramp {
 public:
  Ramp() = default;
  // Throws DomainError unless width > 0 and finite.
  Ramp(double lo, double width);

  double lo() const { return lo_; }
  double hi() const { return lo_ + width_; }
  double width() const { return width_; }
  double blend() const { return blend_; }
  double slope() const { return slope_; }  // max |h'|

  double value(double u) const;
  double derivative(double u) const;
  double second_derivative(double u) const;

  // lo, lo + b, hi - b, hi.
  std::array<double, 4> knots() const;

 private:
  double lo_ = 0.0;
  double width_ = 1.0;
  double blend_ = 0.25;
  double slope_ = 4.0 / 3.0;
};

}  // namespace twinsieve::variational
