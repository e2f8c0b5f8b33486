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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "twinsieve/errors.hpp"
#include "twinsieve/ntheory.hpp"
#include "twinsieve/sieve_lab.hpp"

namespace sv = twinsieve::sieve;
namespace nt = twinsieve::ntheory;
namespace tp = twinsieve::tuples;

namespace {

// Straight trial-division scan used as the reference.
std::vector<sv::ClusterHit> naive_scan(std::uint64_t x1, std::uint64_t x2,
                                       const tp::OffsetTuple& tuple,
                                       const sv::ScanOptions& opts) {
  const auto table = nt::sieve_primes(100'000);
  std::vector<sv::ClusterHit> out;
  for (std::uint64_t n = x1; n < x2; ++n) {
    sv::ClusterHit hit{n, {}, {}};
    for (unsigned i = 0; i < tuple.size(); i += opts.pair_leaders ? 2 : 1) {
      const std::uint64_t p = n + tuple[i];
      if (!nt::is_prime(p, table)) continue;
      const unsigned om = nt::big_omega(p + 2, table);
      if (om > opts.max_omega) continue;
      hit.indices.push_back(i);
      hit.omegas.push_back(om);
    }
    if (hit.indices.size() >= opts.min_primes) out.push_back(hit);
  }
  return out;
}

}  // namespace

TEST(ClusterScan, SmallQuadrupleExample) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  sv::ScanOptions o;
  o.max_omega = 2;
  o.min_primes = 4;
  const auto hits = sv::cluster_scan(2, 100, t, o);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits.front().n, 5U);
  EXPECT_EQ(hits.front().indices, (std::vector<unsigned>{0, 1, 2, 3}));
  EXPECT_EQ(hits.front().omegas, (std::vector<unsigned>{1, 2, 1, 2}));
}

TEST(ClusterScan, TwinPairsUpToTen) {
  const tp::OffsetTuple t({0, 2}, true);
  sv::ScanOptions o;
  o.max_omega = 1;
  o.min_primes = 2;
  const auto hits = sv::cluster_scan(2, 10, t, o);
  ASSERT_EQ(hits.size(), 1U);
  EXPECT_EQ(hits[0].n, 3U);
}

TEST(ClusterScan, EmptyCases) {
  const tp::OffsetTuple t({0, 2}, true);
  sv::ScanOptions o;
  o.max_omega = 0;
  EXPECT_TRUE(sv::cluster_scan(2, 1000, t, o).empty());
  o.max_omega = 2;
  EXPECT_TRUE(sv::cluster_scan(50, 50, t, o).empty());
  o.min_primes = 3;
  EXPECT_TRUE(sv::cluster_scan(2, 1000, t, o).empty());
}

TEST(ClusterScan, Errors) {
  const tp::OffsetTuple t({0, 2}, true);
  sv::ScanOptions o;
  o.min_primes = 0;
  EXPECT_THROW(sv::cluster_scan(2, 100, t, o), twinsieve::DomainError);
  o.min_primes = 1;
  EXPECT_THROW(sv::cluster_scan(2, sv::kMaxScanEnd + 1, t, o), twinsieve::BudgetError);
  o.pair_leaders = true;
  EXPECT_THROW(sv::cluster_scan(2, 100, tp::OffsetTuple({0, 4}), o), twinsieve::DomainError);
}

TEST(ClusterScan, MatchesNaiveScan) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  for (unsigned d : {1U, 2U, 3U}) {
    for (unsigned r : {1U, 2U}) {
      for (bool leaders : {false, true}) {
        sv::ScanOptions o;
        o.max_omega = d;
        o.min_primes = r;
        o.pair_leaders = leaders;
        o.block = 1000;  // exercise block boundaries
        EXPECT_EQ(sv::cluster_scan(2, 20'000, t, o), naive_scan(2, 20'000, t, o))
            << d << ' ' << r << ' ' << leaders;
      }
    }
  }
}

TEST(ClusterScan, HitsReverifyByFactorization) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  const auto table = nt::sieve_primes(1000);
  sv::ScanOptions o;
  o.min_primes = 2;
  const auto hits = sv::cluster_scan(2, 100'000, t, o);
  ASSERT_GT(hits.size(), 10U);
  for (const auto& h : hits) {
    ASSERT_EQ(h.indices.size(), h.omegas.size());
    EXPECT_GE(h.indices.size(), 2U);
    for (std::size_t k = 0; k < h.indices.size(); ++k) {
      const std::uint64_t p = h.n + t[h.indices[k]];
      const auto fp = nt::factorize(p, table);
      ASSERT_EQ(fp.size(), 1U);
      EXPECT_EQ(fp.begin()->exponent, 1U);
      EXPECT_EQ(nt::big_omega(nt::factorize(p + 2, table)), h.omegas[k]);
      EXPECT_LE(h.omegas[k], 2U);
    }
  }
}

TEST(ClusterScan, WorkerCountDoesNotMatter) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  sv::ScanOptions o;
  o.block = 4096;
  const auto one = sv::cluster_scan(1000, 200'000, t, o);
  o.workers = 3;
  EXPECT_EQ(sv::cluster_scan(1000, 200'000, t, o), one);
}

TEST(ClusterScan, LeadersAreASubsetOfAllOffsets) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  sv::ScanOptions o;
  const auto all = sv::cluster_scan(2, 50'000, t, o);
  o.pair_leaders = true;
  const auto leaders = sv::cluster_scan(2, 50'000, t, o);
  EXPECT_LE(leaders.size(), all.size());
  for (const auto& h : leaders) {
    for (unsigned i : h.indices) EXPECT_EQ(i % 2, 0U);
  }
}

TEST(ClusterScan, CsvAndSummary) {
  const tp::OffsetTuple t({0, 2, 6, 8}, true);
  sv::ScanOptions o;
  o.min_primes = 4;
  const auto hits = sv::cluster_scan(2, 100, t, o);
  std::ostringstream out;
  sv::write_hits_csv(out, hits);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n') + 1), "n,count,indices,omegas\n");
  EXPECT_NE(s.find("5,4,0;1;2;3,1;2;1;2\n"), std::string::npos);
  const auto j = sv::hits_summary(hits, 2, 100, t, o);
  EXPECT_EQ(j.at("r"), 4);
}
