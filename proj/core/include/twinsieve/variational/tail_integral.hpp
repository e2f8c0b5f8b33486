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

// The tail integral f(t) = int_{u >= t} F(u) du of a weight, tabulated on a
// lazily filled rectangular grid and read back by multilinear interpolation.

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>

#include "twinsieve/variational/quadrature.hpp"
#include "twinsieve/variational/weights.hpp"

namespace twinsieve::variational {

// f(t) directly by nested quadrature over {u_i >= t_i, sum u <= 1}.
double tail_integral(const SumProductWeight& weight, std::span<const double> t,
                     const NestedOptions& options = {});

class FGrid {
 public:
  // The grid covers [0, c]^dim with c = min(T / (2 k0), 1) and `intervals`
  // steps per axis (must be even so the half-resolution grid nests).
  // Without explicit options the node tolerance is default_options(dim).
  FGrid(std::shared_ptr<const SumProductWeight> weight, unsigned intervals = 64);
  FGrid(std::shared_ptr<const SumProductWeight> weight, unsigned intervals,
        NestedOptions options);

  // rel 1e-9 up to dimension 2; nodes of lazy grids use rel 1e-7.
  static NestedOptions default_options(unsigned dim = 2);

  // Marks the grid ready. Nodes are filled on demand; with dim <= 2 they
  // are all computed here.
  void build();
  bool built() const { return built_; }

  const SumProductWeight& weight() const { return *weight_; }
  unsigned dim() const { return dim_; }
  unsigned intervals() const { return intervals_; }
  double cap() const { return cap_; }
  double spacing() const { return cap_ / intervals_; }

  // Multilinear interpolation at full and at half resolution. Both return
  // exactly 0 outside the support (some t_i >= c or sum t >= 1).
  // StateError if build() has not been called.
  double eval(std::span<const double> t) const;
  double eval_coarse(std::span<const double> t) const;
  // Richardson-style estimate |fine - coarse| / 3 of the interpolation error.
  double error_estimate(std::span<const double> t) const;

  // Node value at integer coordinates in [0, intervals].
  double node(std::span<const unsigned> index) const;
  std::size_t cached_nodes() const;

 private:
  double interpolate(std::span<const double> t, unsigned stride) const;
  void require_built() const;

  std::shared_ptr<const SumProductWeight> weight_;
  unsigned dim_;
  unsigned intervals_;
  double cap_;
  NestedOptions options_;
  bool built_ = false;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, double> cache_;
};

inline double eval_f(std::span<const double> t, const FGrid& grid) { return grid.eval(t); }

}  // namespace twinsieve::variational
