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

// The converse-Cauchy-Schwarz step: boundary data g on {t_1 = 0}, the
// extremizer L, its ramp-smoothed version h L and the resulting integrals.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "twinsieve/variational/cutoff.hpp"
#include "twinsieve/variational/quadrature.hpp"
#include "twinsieve/variational/weights.hpp"

namespace twinsieve::variational {

struct TaoBoundary {
  unsigned dim = 2;       // 2 k0; g takes the dim - 1 coordinates t_2 .. t_dim
  double cap = 4.0 / 3.0; // 2 / (3 theta0)
  double support = 1.0;   // g vanishes once t_2 + ... + t_dim > support
  std::function<double(std::span<const double>)> g;
  Knots knots;            // knots of g in its own coordinates
  std::string label;
};

// 2 / (3 theta0). DomainError unless theta0 > 0.
double tao_cap(double theta0);

TaoBoundary zero_boundary(unsigned dim, double cap);
// dim 2, g(t_2) = 1 on [0, 1].
TaoBoundary indicator_boundary(double cap);
// g = int_0^inf dF/dt_2 dt_1 for the smooth weight, which factors through
// the weight's sum profiles. Its sign is immaterial: g enters squared.
TaoBoundary weight_boundary(std::shared_ptr<const SmoothWeight> weight, double cap);

// g(t_2, ...) (cap - sum t) / (cap - t_2 - ... - t_dim); 0 when the
// denominator vanishes or turns negative.
double tao_L(std::span<const double> t, const TaoBoundary& boundary);

// d/dt_1 [h(sum t) L(t)].
double tao_D(std::span<const double> t, const TaoBoundary& boundary, const Ramp& h);

// int over Delta_{dim-1}(cap) of t_2 g^2 / (cap - sigma). Sampling uses
// Delta_{dim-1}(min(cap, support)), which carries all of g.
// DomainError if cap <= support.
QuadratureEstimate ccs_lower_bound(const TaoBoundary& boundary, const McOptions& options);
QuadratureEstimate ccs_lower_bound_quadrature(const TaoBoundary& boundary,
                                              const NestedOptions& options);

// alpha of the unsmoothed extremizer, int over Delta_dim(cap) of
// t_2 (dL/dt_1)^2; equal to the CCS bound.
QuadratureEstimate alpha_extremal(const TaoBoundary& boundary, const NestedOptions& options);

// The smoothing ramp h for width delta': 1 up to cap - delta', 0 from cap.
Ramp tao_ramp(const TaoBoundary& boundary, double delta_prime);

// alpha of h L, int over Delta_dim(cap) of t_2 D^2.
QuadratureEstimate alpha_smoothed(const TaoBoundary& boundary, double delta_prime,
                                  const NestedOptions& options);

struct TaoStepRow {
  double delta_prime = 0.0;
  QuadratureEstimate alpha;
  double excess = 0.0;  // alpha - ccs bound
};

struct TaoStepReport {
  QuadratureEstimate ccs_bound;
  QuadratureEstimate alpha_extremal;
  std::vector<TaoStepRow> rows;  // in order of decreasing delta'
  bool above = false;            // every alpha >= bound (within error)
  bool shrinking = false;        // excess strictly decreasing as delta' falls
  bool pass() const { return above && shrinking; }
};

// Each delta' must lie in (0, cap / 4).
TaoStepReport verify_tao_step(const TaoBoundary& boundary,
                              std::span<const double> delta_primes,
                              const NestedOptions& options);

}  // namespace twinsieve::variational
