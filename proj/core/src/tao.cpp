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

#include "twinsieve/variational/tao.hpp"

#include <algorithm>
#include <cmath>

#include "twinsieve/errors.hpp"

namespace twinsieve::variational {

double tao_cap(double theta0) {
  if (!(theta0 > 0.0)) throw DomainError("tao_cap: theta0 must be positive");
  return 2.0 / (3.0 * theta0);
}

TaoBoundary zero_boundary(unsigned dim, double cap) {
  if (dim < 2) throw DomainError("zero_boundary: dim must be >= 2");
  TaoBoundary b;
  b.dim = dim;
  b.cap = cap;
  b.g = [](std::span<const double>) { return 0.0; };
  b.label = "zero";
  return b;
}

TaoBoundary indicator_boundary(double cap) {
  TaoBoundary b;
  b.dim = 2;
  b.cap = cap;
  b.g = [](std::span<const double> x) { return x[0] <= 1.0 ? 1.0 : 0.0; };
  b.knots.coordinate = {1.0};
  b.label = "indicator";
  return b;
}

TaoBoundary weight_boundary(std::shared_ptr<const SmoothWeight> weight, double cap) {
  if (!weight) throw DomainError("weight_boundary: null weight");
  TaoBoundary b;
  b.dim = weight->dim();
  b.cap = cap;
  b.knots = weight->knots();
  b.knots.coordinate.push_back(std::min(weight->coordinate_cap(), 1.0));
  b.label = "smooth-weight";
  b.g = [w = std::move(weight)](std::span<const double> x) {
    double sigma = 0.0;
    double rest = 1.0;  // prod over x[1..]
    for (std::size_t i = 0; i < x.size(); ++i) {
      sigma += x[i];
      if (i > 0) rest *= w->factor(x[i]);
    }
    if (sigma >= 1.0 || rest == 0.0) return 0.0;
    return (w->sum_profile(sigma, 1) * w->factor(x[0]) +
            w->sum_profile(sigma, 0) * w->factor_derivative(x[0])) *
           rest;
  };
  return b;
}

double tao_L(std::span<const double> t, const TaoBoundary& b) {
  double sigma = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) sigma += t[i];
  const double denom = b.cap - sigma;
  if (!(denom > 0.0)) return 0.0;
  const double g = b.g(t.subspan(1));
  if (g == 0.0) return 0.0;
  return g * (denom - t[0]) / denom;
}

double tao_D(std::span<const double> t, const TaoBoundary& b, const Ramp& h) {
  double sigma = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) sigma += t[i];
  const double denom = b.cap - sigma;
  if (!(denom > 0.0)) return 0.0;
  const double s = sigma + t[0];
  if (s >= b.cap) return 0.0;
  const double g = b.g(t.subspan(1));
  if (g == 0.0) return 0.0;
  const double l = g * (denom - t[0]) / denom;
  const double dl = -g / denom;
  return h.derivative(s) * l + h.value(s) * dl;
}

namespace {

void check_cap(const TaoBoundary& b) {
  if (!(b.cap > b.support)) {
    throw DomainError("tao: cap must exceed the support of g (theta0 < 2/3)");
  }
  if (!b.g) throw DomainError("tao: boundary has no g");
}

double ccs_integrand(std::span<const double> x, const TaoBoundary& b) {
  double sigma = 0.0;
  for (const double v : x) sigma += v;
  if (sigma > b.support) return 0.0;
  const double g = b.g(x);
  return x[0] * g * g / (b.cap - sigma);
}

Knots with_support(const TaoBoundary& b) {
  Knots k = b.knots;
  k.sum.push_back(b.support);
  return k;
}

}  // namespace

QuadratureEstimate ccs_lower_bound(const TaoBoundary& b, const McOptions& options) {
  check_cap(b);
  const Integrand f = [&b](std::span<const double> x) { return ccs_integrand(x, b); };
  QuadratureEstimate q = simplex_mc(f, std::min(b.cap, b.support), b.dim - 1, options);
  q.method = "ccs-" + q.method;
  return q;
}

QuadratureEstimate ccs_lower_bound_quadrature(const TaoBoundary& b,
                                              const NestedOptions& options) {
  check_cap(b);
  const Integrand f = [&b](std::span<const double> x) { return ccs_integrand(x, b); };
  QuadratureEstimate q = nested_quadrature(f, b.support, b.dim - 1, options, with_support(b));
  q.method = "ccs-" + q.method;
  return q;
}

namespace {

// Coordinates x = (t_2, ..., t_dim, t_1): t_1 innermost, the g-coordinates
// bounded by the support.
SimplexRegion alpha_region(const TaoBoundary& b) {
  SimplexRegion r;
  r.dim = b.dim;
  r.y = b.cap;
  r.lo.assign(b.dim, 0.0);
  r.hi.assign(b.dim, b.support);
  r.hi.back() = b.cap;
  return r;
}

template <class F>
QuadratureEstimate integrate_alpha(const TaoBoundary& b, const NestedOptions& options,
                                   const Knots& knots, F&& fn) {
  std::vector<double> t(b.dim);
  const Integrand f = [&](std::span<const double> x) {
    t[0] = x[b.dim - 1];
    for (unsigned i = 1; i < b.dim; ++i) t[i] = x[i - 1];
    return fn(std::span<const double>(t));
  };
  return nested_quadrature(f, alpha_region(b), options, knots);
}

}  // namespace

QuadratureEstimate alpha_extremal(const TaoBoundary& b, const NestedOptions& options) {
  check_cap(b);
  Knots k = with_support(b);
  k.sum.push_back(b.cap);
  return integrate_alpha(b, options, k, [&b](std::span<const double> t) {
    double sigma = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) sigma += t[i];
    const double denom = b.cap - sigma;
    if (!(denom > 0.0) || sigma + t[0] >= b.cap) return 0.0;
    const double dl = -b.g(t.subspan(1)) / denom;
    return t[1] * dl * dl;
  });
}

Ramp tao_ramp(const TaoBoundary& b, double delta_prime) {
  if (!(delta_prime > 0.0) || !(delta_prime < b.cap / 4.0)) {
    throw DomainError("tao: delta' must lie in (0, cap / 4)");
  }
  return Ramp(b.cap - delta_prime, delta_prime);
}

QuadratureEstimate alpha_smoothed(const TaoBoundary& b, double delta_prime,
                                  const NestedOptions& options) {
  check_cap(b);
  const Ramp h = tao_ramp(b, delta_prime);
  Knots k = with_support(b);
  for (const double s : h.knots()) k.sum.push_back(s);
  return integrate_alpha(b, options, k, [&b, &h](std::span<const double> t) {
    const double d = tao_D(t, b, h);
    return t[1] * d * d;
  });
}

TaoStepReport verify_tao_step(const TaoBoundary& b, std::span<const double> delta_primes,
                              const NestedOptions& options) {
  TaoStepReport r;
  r.ccs_bound = ccs_lower_bound_quadrature(b, options);
  r.alpha_extremal = alpha_extremal(b, options);
  std::vector<double> dps(delta_primes.begin(), delta_primes.end());
  std::sort(dps.begin(), dps.end(), std::greater<>());
  r.above = true;
  r.shrinking = true;
  for (const double dp : dps) {
    TaoStepRow row;
    row.delta_prime = dp;
    row.alpha = alpha_smoothed(b, dp, options);
    row.excess = row.alpha.value - r.ccs_bound.value;
    const double err = row.alpha.error_bound + r.ccs_bound.error_bound;
    if (row.excess < -err) r.above = false;
    if (!r.rows.empty() && !(row.excess < r.rows.back().excess)) r.shrinking = false;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace twinsieve::variational
