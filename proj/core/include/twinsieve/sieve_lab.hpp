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

// Direct enumeration of the weighted sums over n in [x, 2x), n = v (mod W),
// with lambda_d = mu(d_1)...mu(d_k) f(log d_1 / log R, ...).

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "twinsieve/errors.hpp"
#include "twinsieve/ntheory.hpp"
#include "twinsieve/tuples.hpp"
#include "twinsieve/variational/tail_integral.hpp"
#include "twinsieve/variational/weights.hpp"

namespace twinsieve::sieve {

enum class WeightKind { product, smooth };

const char* to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& name);

// Largest x accepted for k0 = 1; the limit scales as 1 / k0.
inline constexpr std::uint64_t kMaxSieveX = 1'000'000'000;

struct SieveConfig {
  std::uint64_t x = 1'000'000;
  tuples::OffsetTuple tuple;  // twin-paired, k0 <= 3
  std::uint64_t d0 = 7;       // W = product of primes below d0
  double theta0 = 0.5243;
  unsigned m = 1;
  WeightKind weight = WeightKind::product;
  double delta1 = 0.0;  // smooth weight only; 0 keeps the schedule's value
  unsigned grid_intervals = 64;
  unsigned workers = 1;
  std::uint64_t block_terms = 4096;  // progression terms per block
  std::uint64_t max_blocks = 0;      // per call; 0 means no limit
};

struct SieveRun {
  SieveConfig config;
  unsigned k0 = 0;
  std::uint64_t w = 1;
  std::uint64_t v = 0;
  double log_r = 0.0;  // (theta0 / 2 - 1 / (100000 m)) log x
  double coordinate_cap = 0.0;  // min(T / (2 k0), 1)
  std::uint64_t product_bound = 0;   // floor(R), with a 1e-12 relative allowance
  std::uint64_t divisor_bound = 0;   // floor(R^cap), same allowance, <= product_bound
  std::uint64_t first_n = 0;         // smallest n >= x with n = v (mod W)
  std::uint64_t terms = 0;           // progression terms in [x, 2x)
  ntheory::PrimeTable table;
  std::shared_ptr<const variational::SumProductWeight> weight;
  std::shared_ptr<variational::FGrid> grid;

  std::uint64_t blocks() const;
  std::uint64_t n_at(std::uint64_t index) const { return first_n + index * w; }
};

// Validates the configuration, builds the prime table, the W-trick residue
// and the f grid. DomainError for a tuple that is not twin-paired, k0 > 3,
// x beyond kMaxSieveX / k0, or R >= x.
SieveRun make_sieve_run(const SieveConfig& config);

// mu(d_1)...mu(d_k) f(t) with t_i = log d_i / log R; 0 if some d_i is not
// squarefree, exceeds divisor_bound, or the product exceeds product_bound.
double lambda_weight(std::span<const std::uint64_t> d, const SieveRun& run);

// Sum of lambda over d_i | n + h_i, depth first with pruning once the
// running product passes product_bound.
double inner_weight(std::uint64_t n, const SieveRun& run);
// The same sum over the full Cartesian product of divisor lists, each term
// from lambda_weight. Terms are visited in the same order, so the result
// is bit-identical to inner_weight.
double brute_force_inner_weight(std::uint64_t n, const SieveRun& run);

struct BlockSums {
  std::vector<double> s1;  // per pair j
  std::vector<double> s2;
  double s3 = 0.0;
  std::uint64_t terms = 0;     // progression terms visited
  std::uint64_t admitted = 0;  // terms passing the squarefree restriction
  std::uint64_t collisions = 0;

  void merge(const BlockSums& other);
};

struct Checkpoint {
  nlohmann::json fingerprint;  // identifies the run configuration
  std::uint64_t next_block = 0;
  std::uint64_t total_blocks = 0;
  BlockSums partial;
};

nlohmann::json to_json(const Checkpoint& c);
Checkpoint checkpoint_from_json(const nlohmann::json& j);
nlohmann::json run_fingerprint(const SieveRun& run);

// Thrown when max_blocks stops a run early; resume by passing checkpoint()
// back to compute_sums.
class PartialRangeError : public Error {
 public:
  explicit PartialRangeError(Checkpoint checkpoint);
  const Checkpoint& checkpoint() const { return checkpoint_; }

 private:
  Checkpoint checkpoint_;
};

struct Predictions {
  double int_f2 = 0.0;      // int over Delta_{2k0}(1) of F^2
  double int_inner2 = 0.0;  // int over Delta_{2k0-1}(1) of (int F dt_{2k0})^2
  double s1_per_j = 0.0;
  double s2_per_j = 0.0;    // upper bound, Tao-type constant 0.168 / (cap - 1)
  double s3 = 0.0;
};

// Main terms at the run's x and R. Integrals use nested quadrature up to
// dimension 2 and seeded Monte Carlo above.
Predictions predict(const SieveRun& run);

struct SumsReport {
  std::uint64_t x = 0;
  unsigned k0 = 0;
  std::uint64_t w = 0;
  std::uint64_t v = 0;
  double log_r = 0.0;
  BlockSums sums;
  double s1_total = 0.0;
  double s2_total = 0.0;
  Predictions predicted;
  std::vector<double> ratio_s1;  // per j
  std::vector<double> ratio_s2;
  double ratio_s3 = 0.0;
  double c = 0.0;
  unsigned m = 0;
  double s_value = 0.0;  // s1_total - s2_total / c - m s3
};

// Assembles totals, predictions, ratios and S(x, C) from block sums.
SumsReport make_report(const SieveRun& run, const BlockSums& sums, double c);

// Blocks are processed by config.workers threads and merged in block order,
// so totals do not depend on the worker count. Throws PartialRangeError
// when config.max_blocks blocks have been done and more remain.
SumsReport compute_sums(const SieveRun& run, double c, const Checkpoint* resume = nullptr);

// Independent path: each n + h_i factored by trial division and weighted
// by brute_force_inner_weight, summed with the same block structure.
SumsReport reference_sums(const SieveRun& run, double c);

void write_sums_csv(std::ostream& out, const SumsReport& report);
nlohmann::json to_json(const SumsReport& report);

struct ClusterHit {
  std::uint64_t n = 0;
  std::vector<unsigned> indices;  // 0-based offset positions i
  std::vector<unsigned> omegas;   // Omega(n + h_i + 2), same order

  friend bool operator==(const ClusterHit&, const ClusterHit&) = default;
};

struct ScanOptions {
  unsigned max_omega = 2;  // d
  unsigned min_primes = 1; // r
  // Only consider the first offset of each twin pair (h_{2j-1}); the
  // default scans every offset.
  bool pair_leaders = false;
  unsigned workers = 1;
  std::uint64_t block = 1 << 16;
};

inline constexpr std::uint64_t kMaxScanEnd = 10'000'000'000;

// Every n in [x1, x2) with at least r positions i such that n + h_i is
// prime and Omega(n + h_i + 2) <= d, in increasing n. DomainError for an
// empty tuple, x1 < 1 or pair_leaders on a tuple that is not twin-paired;
// BudgetError if x2 > kMaxScanEnd.
std::vector<ClusterHit> cluster_scan(std::uint64_t x1, std::uint64_t x2,
                                     const tuples::OffsetTuple& tuple,
                                     const ScanOptions& options);

void write_hits_csv(std::ostream& out, std::span<const ClusterHit> hits);
nlohmann::json hits_summary(std::span<const ClusterHit> hits, std::uint64_t x1,
                            std::uint64_t x2, const tuples::OffsetTuple& tuple,
                            const ScanOptions& options);

}  // namespace twinsieve::sieve
