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

// Simplex integration: Monte Carlo with Dirichlet sampling and nested
// adaptive Gauss-Kronrod over truncated simplices.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "twinsieve/errors.hpp"

namespace twinsieve::variational {

using Integrand = std::function<double(std::span<const double>)>;
// Writes one value per output into the second span.
using VectorIntegrand = std::function<void(std::span<const double>, std::span<double>)>;

struct QuadratureEstimate {
  double value = 0.0;
  double error_bound = 0.0;  // 3 sigma for Monte Carlo, residual for quadrature
  double std_error = 0.0;    // Monte Carlo only
  std::string method;
  std::uint64_t samples = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;
};

class PoisonedEstimateError : public Error {
 public:
  PoisonedEstimateError(const std::string& what, std::vector<double> point,
                        std::uint64_t sample)
      : Error(what), point_(std::move(point)), sample_(sample) {}
  const std::vector<double>& point() const { return point_; }
  std::uint64_t sample() const { return sample_; }

 private:
  std::vector<double> point_;
  std::uint64_t sample_;
};

class QuadratureBudgetError : public BudgetError {
 public:
  QuadratureBudgetError(const std::string& what, QuadratureEstimate best)
      : BudgetError(what), best_(std::move(best)) {}
  const QuadratureEstimate& best() const { return best_; }

 private:
  QuadratureEstimate best_;
};

struct McOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  // Samples per chunk. Chunk c always draws from the stream seeded by
  // (seed, c), and chunk results are merged in chunk order, so the
  // estimate does not depend on the worker count.
  std::uint64_t chunk = std::uint64_t{1} << 15;
};

// Uniform points on {t >= 0, sum t <= y} from dim + 1 exponential
// spacings; the estimate is the sample mean times y^dim / dim!.
// Requires dim >= 1, y > 0 and samples >= 1000 (DomainError otherwise).
// A non-finite integrand value throws PoisonedEstimateError.
QuadratureEstimate simplex_mc(const Integrand& f, double y, unsigned dim,
                              const McOptions& options);
std::vector<QuadratureEstimate> simplex_mc(const VectorIntegrand& f, std::size_t outputs,
                                           double y, unsigned dim,
                                           const McOptions& options);

// Points where the integrand may lose smoothness. Coordinate knots apply to
// every axis; sum knots are levels of t_1 + ... + t_dim.
struct Knots {
  std::vector<double> coordinate;
  std::vector<double> sum;
};

struct NestedOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-9;
  std::size_t max_intervals = 400;  // per one-dimensional integral
};

// {lo_i <= t_i <= hi_i, sum t <= y}. Empty lo / hi mean 0 / y.
struct SimplexRegion {
  unsigned dim = 1;
  double y = 1.0;
  std::vector<double> lo;
  std::vector<double> hi;
};

// Iterated adaptive G7K15 over the region, t_1 outermost. Inner error
// estimates are integrated and carried outward. Throws
// QuadratureBudgetError, holding the best estimate, when the tolerance is
// not met; DomainError for dim outside [1, 6].
QuadratureEstimate nested_quadrature(const Integrand& f, const SimplexRegion& region,
                                     const NestedOptions& options, const Knots& knots = {});
QuadratureEstimate nested_quadrature(const Integrand& f, double y, unsigned dim,
                                     const NestedOptions& options, const Knots& knots = {});

// One-dimensional adaptive G7K15 on [a, b] split first at the breakpoints.
// Throws QuadratureBudgetError like nested_quadrature.
QuadratureEstimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                                const NestedOptions& options,
                                std::span<const double> breakpoints = {});

}  // namespace twinsieve::variational
