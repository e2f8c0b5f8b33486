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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "twinsieve/sieve_lab.hpp"

namespace twinsieve::sieve {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<ClusterHit> scan_block(std::uint64_t start, std::uint64_t stop,
                                   std::span<const std::uint64_t> h,
                                   std::span<const unsigned> positions,
                                   const ScanOptions& options,
                                   ntheory::ProgressionFactorizer& fac) {
  // One factorization of [start, stop + h_max + 2) serves every offset.
  fac.factor(start, 1, stop - start + h.back() + 2);
  std::vector<ClusterHit> hits;
  ClusterHit hit;
  for (std::uint64_t n = start; n < stop; ++n) {
    hit.indices.clear();
    hit.omegas.clear();
    const std::uint64_t base = n - start;
    for (const unsigned i : positions) {
      const std::uint64_t a = base + h[i];
      if (!fac.is_prime(a)) continue;
      const unsigned om = fac.big_omega(a + 2);
      if (om > options.max_omega) continue;
      hit.indices.push_back(i);
      hit.omegas.push_back(om);
    }
    if (hit.indices.size() >= options.min_primes) {
      hit.n = n;
      hits.push_back(hit);
    }
  }
  return hits;
}

}  // namespace

std::vector<ClusterHit> cluster_scan(std::uint64_t x1, std::uint64_t x2,
                                     const tuples::OffsetTuple& tuple,
                                     const ScanOptions& options) {
  if (tuple.empty()) throw DomainError("cluster_scan: empty tuple");
  if (x1 < 1) throw DomainError("cluster_scan: x1 must be >= 1");
  if (options.pair_leaders && !tuple.twin_paired()) {
    throw DomainError("cluster_scan: pair_leaders needs a twin-paired tuple");
  }
  if (options.min_primes < 1) throw DomainError("cluster_scan: r must be >= 1");
  if (options.block < 1) throw DomainError("cluster_scan: block must be >= 1");
  if (x2 > kMaxScanEnd) throw BudgetError("cluster_scan: x2 exceeds the enumeration budget");
  if (x2 <= x1 || options.max_omega == 0) return {};

  const auto h = tuple.offsets();
  std::vector<unsigned> positions;
  for (unsigned i = 0; i < h.size(); i += options.pair_leaders ? 2 : 1) positions.push_back(i);
  if (positions.size() < options.min_primes) return {};

  const ntheory::PrimeTable table = ntheory::sieve_primes(isqrt(x2 + h.back() + 2) + 1);
  const std::uint64_t blocks = (x2 - x1 + options.block - 1) / options.block;
  std::vector<std::vector<ClusterHit>> parts(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      ntheory::ProgressionFactorizer fac(table);
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        const std::uint64_t start = x1 + b * options.block;
        const std::uint64_t stop = std::min(x2, start + options.block);
        parts[b] = scan_block(start, stop, h, positions, options, fac);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = blocks;
    }
  };
  const unsigned workers =
      std::max(1U, static_cast<unsigned>(std::min<std::uint64_t>(options.workers, blocks)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<ClusterHit> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void write_hits_csv(std::ostream& out, std::span<const ClusterHit> hits) {
  out << "n,count,indices,omegas\n";
  for (const ClusterHit& hit : hits) {
    out << hit.n << ',' << hit.indices.size() << ',';
    for (std::size_t i = 0; i < hit.indices.size(); ++i) {
      out << (i ? ";" : "") << hit.indices[i];
    }
    out << ',';
    for (std::size_t i = 0; i < hit.omegas.size(); ++i) {
      out << (i ? ";" : "") << hit.omegas[i];
    }
    out << '\n';
  }
}

nlohmann::json hits_summary(std::span<const ClusterHit> hits, std::uint64_t x1,
                            std::uint64_t x2, const tuples::OffsetTuple& tuple,
                            const ScanOptions& options) {
  std::map<std::size_t, std::uint64_t> by_size;
  for (const ClusterHit& hit : hits) ++by_size[hit.indices.size()];
  nlohmann::json sizes = nlohmann::json::object();
  for (const auto& [k, n] : by_size) sizes[std::to_string(k)] = n;
  std::vector<std::uint64_t> offsets(tuple.offsets().begin(), tuple.offsets().end());
  nlohmann::json j = {{"x1", x1},
                      {"x2", x2},
                      {"offsets", offsets},
                      {"d", options.max_omega},
                      {"r", options.min_primes},
                      {"pair_leaders", options.pair_leaders},
                      {"hits", hits.size()},
                      {"hits_by_count", sizes}};
  if (!hits.empty()) {
    j["first_n"] = hits.front().n;
    j["last_n"] = hits.back().n;
  }
  return j;
}

}  // namespace twinsieve::sieve
