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

#include "twinsieve/variational/tail_integral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "twinsieve/errors.hpp"

namespace twinsieve::variational {

double tail_integral(const SumProductWeight& weight, std::span<const double> t,
                     const NestedOptions& options) {
  const unsigned dim = weight.dim();
  if (t.size() != dim) throw DomainError("tail_integral: wrong number of coordinates");
  const double c = std::min(weight.coordinate_cap(), 1.0);
  double s = 0.0;
  for (const double x : t) {
    if (x < 0.0) throw DomainError("tail_integral: coordinates must be nonnegative");
    if (x >= c) return 0.0;
    s += x;
  }
  if (s >= 1.0) return 0.0;
  SimplexRegion region;
  region.dim = dim;
  region.y = 1.0;
  region.lo.assign(t.begin(), t.end());
  region.hi.assign(dim, c);
  const Integrand f = [&weight](std::span<const double> u) { return weight.value(u); };
  return nested_quadrature(f, region, options, weight.knots()).value;
}

NestedOptions FGrid::default_options(unsigned dim) {
  NestedOptions o;
  o.abs_tol = dim > 2 ? 1e-12 : 1e-14;
  o.rel_tol = dim > 2 ? 1e-7 : 1e-9;
  o.max_intervals = 400;
  return o;
}

FGrid::FGrid(std::shared_ptr<const SumProductWeight> weight, unsigned intervals)
    : FGrid(weight, intervals, default_options(weight ? weight->dim() : 2)) {}

FGrid::FGrid(std::shared_ptr<const SumProductWeight> weight, unsigned intervals,
             NestedOptions options)
    : weight_(std::move(weight)), options_(options) {
  if (!weight_) throw DomainError("FGrid: null weight");
  if (intervals < 2 || intervals % 2 != 0 || intervals > 126) {
    throw DomainError("FGrid: intervals must be even and in [2, 126]");
  }
  dim_ = weight_->dim();
  if (dim_ > 8) throw DomainError("FGrid: dimension above 8 is not supported");
  intervals_ = intervals;
  cap_ = std::min(weight_->coordinate_cap(), 1.0);
}

void FGrid::build() {
  built_ = true;
  if (dim_ > 2) return;
  std::vector<unsigned> idx(dim_, 0);
  while (true) {
    node(idx);
    unsigned i = 0;
    while (i < dim_ && ++idx[i] > intervals_) idx[i++] = 0;
    if (i == dim_) break;
  }
}

void FGrid::require_built() const {
  if (!built_) throw StateError("FGrid: grid not built");
}

double FGrid::node(std::span<const unsigned> index) const {
  // f is symmetric, so the sorted index is the key (7 bits per axis).
  std::vector<unsigned> sorted(index.begin(), index.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t key = 0;
  for (const unsigned i : sorted) key = (key << 7) | i;
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  std::vector<double> t(dim_);
  for (unsigned i = 0; i < dim_; ++i) t[i] = sorted[i] * spacing();
  double v = 0.0;
  try {
    v = tail_integral(*weight_, t, options_);
  } catch (const QuadratureBudgetError& e) {
    v = e.best().value;  // tolerance missed on a near-zero node; keep the estimate
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(key, v);
  return v;
}

std::size_t FGrid::cached_nodes() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

double FGrid::interpolate(std::span<const double> t, unsigned stride) const {
  if (t.size() != dim_) throw DomainError("FGrid: wrong number of coordinates");
  double s = 0.0;
  for (const double x : t) {
    if (x < 0.0) throw DomainError("FGrid: coordinates must be nonnegative");
    if (x >= cap_) return 0.0;
    s += x;
  }
  if (s >= 1.0) return 0.0;
  const double h = spacing() * stride;
  const unsigned cells = intervals_ / stride;
  std::vector<unsigned> base(dim_);
  std::vector<double> frac(dim_);
  for (unsigned i = 0; i < dim_; ++i) {
    const double p = t[i] / h;
    const unsigned b = std::min(static_cast<unsigned>(p), cells - 1);
    base[i] = b;
    frac[i] = p - b;
  }
  std::vector<unsigned> idx(dim_);
  double total = 0.0;
  for (unsigned corner = 0; corner < (1u << dim_); ++corner) {
    double w = 1.0;
    for (unsigned i = 0; i < dim_; ++i) {
      const bool up = (corner >> i) & 1u;
      idx[i] = (base[i] + (up ? 1 : 0)) * stride;
      w *= up ? frac[i] : 1.0 - frac[i];
    }
    if (w == 0.0) continue;
    total += w * node(idx);
  }
  return total;
}

double FGrid::eval(std::span<const double> t) const {
  require_built();
  return interpolate(t, 1);
}

double FGrid::eval_coarse(std::span<const double> t) const {
  require_built();
  return interpolate(t, 2);
}

double FGrid::error_estimate(std::span<const double> t) const {
  return std::abs(eval(t) - eval_coarse(t)) / 3.0;
}

}  // namespace twinsieve::variational
