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
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "twinsieve/errors.hpp"
#include "twinsieve/sieve_lab.hpp"

namespace sv = twinsieve::sieve;
namespace nt = twinsieve::ntheory;
namespace tp = twinsieve::tuples;

namespace {

sv::SieveConfig base_config(std::uint64_t x, std::vector<std::uint64_t> offsets) {
  sv::SieveConfig c;
  c.x = x;
  c.tuple = tp::OffsetTuple(std::move(offsets), true);
  return c;
}

const sv::SieveRun& run_1e6() {
  static const sv::SieveRun r = sv::make_sieve_run(base_config(1'000'000, {0, 2}));
  return r;
}

const sv::SieveRun& run_small() {
  static const sv::SieveRun r = [] {
    auto c = base_config(200'000, {0, 2});
    c.block_terms = 512;
    return sv::make_sieve_run(c);
  }();
  return r;
}

double f_at(const sv::SieveRun& run, std::vector<double> t) { return run.grid->eval(t); }

}  // namespace

TEST(SieveRun, Parameters) {
  const auto& run = run_1e6();
  EXPECT_EQ(run.k0, 1U);
  EXPECT_EQ(run.w, 30U);
  EXPECT_EQ(std::gcd(run.v, run.w), 1U);
  EXPECT_EQ(std::gcd(run.v + 2, run.w), 1U);
  const double expect_log_r = (0.5243 / 2 - 1e-5) * std::log(1e6);
  EXPECT_DOUBLE_EQ(run.log_r, expect_log_r);
  EXPECT_EQ(run.product_bound, 37U);
  EXPECT_LE(run.divisor_bound, run.product_bound);
  EXPECT_GE(run.first_n, 1'000'000U);
  EXPECT_EQ(run.first_n % run.w, run.v);
  EXPECT_LT(run.n_at(run.terms - 1), 2'000'000U);
  EXPECT_GE(run.n_at(run.terms), 2'000'000U);
}

TEST(SieveRun, Validation) {
  EXPECT_THROW(sv::make_sieve_run(sv::SieveConfig{}), twinsieve::DomainError);
  auto c = base_config(1'000'000, {0, 2});
  c.tuple = tp::OffsetTuple({0, 2});
  EXPECT_THROW(sv::make_sieve_run(c), twinsieve::DomainError);
  c = base_config(1'000'000, {0, 2, 6, 8, 12, 14, 18, 20});
  EXPECT_THROW(sv::make_sieve_run(c), twinsieve::DomainError);
  c = base_config(600'000'000, {0, 2, 6, 8});
  EXPECT_THROW(sv::make_sieve_run(c), twinsieve::DomainError);
  c = base_config(1'000'000, {0, 2});
  c.theta0 = 0.7;
  EXPECT_THROW(sv::make_sieve_run(c), twinsieve::DomainError);
  c.theta0 = 0.5243;
  c.grid_intervals = 7;
  EXPECT_THROW(sv::make_sieve_run(c), twinsieve::DomainError);
}

TEST(LambdaWeight, Examples) {
  const auto& run = run_1e6();
  const std::uint64_t ones[] = {1, 1};
  EXPECT_EQ(sv::lambda_weight(ones, run), f_at(run, {0.0, 0.0}));
  const std::uint64_t four[] = {4, 1};
  EXPECT_EQ(sv::lambda_weight(four, run), 0.0);
  const std::uint64_t big[] = {41, 1};
  EXPECT_EQ(sv::lambda_weight(big, run), 0.0);
  const std::uint64_t product[] = {6, 7};
  EXPECT_EQ(sv::lambda_weight(product, run), 0.0);
  const std::uint64_t sign[] = {2, 3};
  EXPECT_GT(sv::lambda_weight(sign, run), 0.0);
  const std::uint64_t wrong[] = {1};
  EXPECT_THROW(sv::lambda_weight(wrong, run), twinsieve::DomainError);
}

TEST(LambdaWeight, RadiusTenThousand) {
  // No admissible (x, theta0) gives R = 10^4, so set the radius directly;
  // lambda depends on the run only through R and f.
  auto run = sv::make_sieve_run(base_config(1'000'000, {0, 2}));
  run.log_r = std::log(1e4);
  run.product_bound = 10'000;
  const std::uint64_t d[] = {2, 1};
  const double expect = -f_at(run, {std::log(2.0) / run.log_r, 0.0});
  EXPECT_EQ(sv::lambda_weight(d, run), expect);
  EXPECT_LT(expect, 0.0);
}

TEST(LambdaWeight, SymmetricInCoordinates) {
  const auto& run = run_1e6();
  for (std::uint64_t a = 1; a <= 37; ++a) {
    for (std::uint64_t b = 1; a * b <= 37; ++b) {
      const std::uint64_t ab[] = {a, b};
      const std::uint64_t ba[] = {b, a};
      EXPECT_DOUBLE_EQ(sv::lambda_weight(ab, run), sv::lambda_weight(ba, run));
    }
  }
}

TEST(InnerWeight, BothPrimeAboveCap) {
  const auto& run = run_1e6();
  int found = 0;
  for (std::uint64_t n = run.first_n; found < 5; n += run.w) {
    if (nt::is_prime(n, run.table) && nt::is_prime(n + 2, run.table)) {
      EXPECT_EQ(sv::inner_weight(n, run), f_at(run, {0.0, 0.0}));
      ++found;
    }
  }
}

TEST(InnerWeight, ThreeTimesPrime) {
  const auto& run = run_1e6();
  const double t3 = std::log(3.0) / run.log_r;
  const double expect = f_at(run, {0.0, 0.0}) + -f_at(run, {t3, 0.0});
  int found = 0;
  for (std::uint64_t q = 333'337; found < 3; ++q) {
    const std::uint64_t n = 3 * q;
    if (!nt::is_prime(q, run.table) || !nt::is_prime(n + 2, run.table)) continue;
    EXPECT_EQ(sv::inner_weight(n, run), expect) << n;
    ++found;
  }
}

TEST(InnerWeight, PrunedEqualsBruteForceBitExact) {
  std::mt19937_64 rng(99);
  const auto& run = run_1e6();
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t n = run.n_at(rng() % run.terms);
    EXPECT_EQ(sv::inner_weight(n, run), sv::brute_force_inner_weight(n, run)) << n;
  }
  // Also away from the residue class, where many small divisors occur.
  for (std::uint64_t n = 1'000'000; n < 1'000'200; ++n) {
    EXPECT_EQ(sv::inner_weight(n, run), sv::brute_force_inner_weight(n, run)) << n;
  }
  auto c = base_config(3'000'000, {0, 2, 6, 8});
  c.d0 = 11;
  const auto run2 = sv::make_sieve_run(c);
  for (int i = 0; i < 40; ++i) {
    const std::uint64_t n = 3'000'000 + rng() % 3'000'000;
    EXPECT_EQ(sv::inner_weight(n, run2), sv::brute_force_inner_weight(n, run2)) << n;
  }
}

TEST(InnerWeight, SwappedCoordinatesAgree) {
  const auto& run = run_1e6();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t n = 1'000'000 + rng() % 1'000'000;
    const auto a = nt::squarefree_divisors_up_to(n, run.divisor_bound, run.table);
    const auto b = nt::squarefree_divisors_up_to(n + 2, run.divisor_bound, run.table);
    double swapped = 0.0;
    for (const auto db : b) {
      for (const auto da : a) {
        const std::uint64_t d[] = {db, da};
        swapped += sv::lambda_weight(d, run);
      }
    }
    EXPECT_NEAR(sv::inner_weight(n, run), swapped, 1e-12);
  }
}

TEST(ComputeSums, BookkeepingIdentities) {
  const auto& run = run_small();
  const auto r = sv::compute_sums(run, 50.0);
  EXPECT_GE(r.sums.s3, 0.0);
  EXPECT_EQ(r.s_value, r.s1_total - r.s2_total / 50.0 - r.m * r.sums.s3);
  EXPECT_LE(r.sums.s1[0], r.sums.s3);
  EXPECT_GE(r.sums.s2[0], r.sums.s1[0]);
  EXPECT_EQ(r.sums.terms, run.terms);
  EXPECT_LE(r.sums.admitted, r.sums.terms);
  EXPECT_EQ(r.sums.collisions, 0U);
  const auto inf = sv::compute_sums(run, std::numeric_limits<double>::infinity());
  EXPECT_EQ(inf.s_value, inf.s1_total - inf.m * inf.sums.s3);
  EXPECT_THROW(sv::compute_sums(run, 0.0), twinsieve::DomainError);
}

TEST(ComputeSums, MatchesReferenceExactly) {
  const auto& run = run_small();
  const auto fast = sv::compute_sums(run, 10.0);
  const auto ref = sv::reference_sums(run, 10.0);
  EXPECT_EQ(fast.sums.s3, ref.sums.s3);
  EXPECT_EQ(fast.sums.s1, ref.sums.s1);
  EXPECT_EQ(fast.sums.s2, ref.sums.s2);
  EXPECT_EQ(fast.sums.admitted, ref.sums.admitted);
}

TEST(ComputeSums, KTwoMatchesReference) {
  auto c = base_config(100'000, {0, 2, 6, 8});
  c.d0 = 11;
  c.block_terms = 64;
  const auto run = sv::make_sieve_run(c);
  const auto fast = sv::compute_sums(run, 10.0);
  const auto ref = sv::reference_sums(run, 10.0);
  EXPECT_EQ(fast.sums.s3, ref.sums.s3);
  EXPECT_EQ(fast.sums.s1, ref.sums.s1);
  EXPECT_EQ(fast.sums.s2, ref.sums.s2);
  EXPECT_EQ(fast.sums.collisions, 0U);
}

TEST(ComputeSums, WorkerCountDoesNotMatter) {
  auto c = base_config(200'000, {0, 2});
  c.block_terms = 256;
  const auto one = sv::compute_sums(sv::make_sieve_run(c), 10.0);
  c.workers = 3;
  const auto three = sv::compute_sums(sv::make_sieve_run(c), 10.0);
  EXPECT_EQ(sv::to_json(one).dump(), sv::to_json(three).dump());
}

TEST(ComputeSums, CheckpointResume) {
  auto c = base_config(200'000, {0, 2});
  c.block_terms = 512;
  const auto full = sv::compute_sums(sv::make_sieve_run(c), 10.0);
  c.max_blocks = 2;
  const auto run = sv::make_sieve_run(c);
  ASSERT_GT(run.blocks(), 4U);
  std::optional<sv::Checkpoint> cp;
  std::optional<sv::SumsReport> done;
  int calls = 0;
  while (!done) {
    try {
      done = sv::compute_sums(run, 10.0, cp ? &*cp : nullptr);
    } catch (const sv::PartialRangeError& e) {
      // Round-trip through JSON as a resumed process would.
      cp = sv::checkpoint_from_json(nlohmann::json::parse(sv::to_json(e.checkpoint()).dump()));
      EXPECT_EQ(cp->next_block, std::min<std::uint64_t>(2 * (calls + 1), run.blocks()));
    }
    ++calls;
  }
  EXPECT_EQ(calls, static_cast<int>((run.blocks() + 1) / 2));
  EXPECT_EQ(done->sums.s3, full.sums.s3);
  EXPECT_EQ(done->sums.s1, full.sums.s1);
  EXPECT_EQ(done->sums.s2, full.sums.s2);

  auto other = c;
  other.theta0 = 0.52;
  const auto other_run = sv::make_sieve_run(other);
  ASSERT_TRUE(cp.has_value());
  EXPECT_THROW(sv::compute_sums(other_run, 10.0, &*cp), twinsieve::StateError);
  EXPECT_THROW(sv::checkpoint_from_json(nlohmann::json{{"next_block", 1}}),
               twinsieve::DomainError);
}

TEST(ComputeSums, DoublingXRoughlyDoublesS3) {
  const auto a = sv::compute_sums(sv::make_sieve_run(base_config(1'000'000, {0, 2})), 10.0);
  const auto b = sv::compute_sums(sv::make_sieve_run(base_config(2'000'000, {0, 2})), 10.0);
  const double ratio = b.sums.s3 / a.sums.s3;
  EXPECT_GT(ratio, 1.5);
  EXPECT_LT(ratio, 2.5);
}

TEST(Predictions, ProductWeightIntegrals) {
  const auto& run = run_1e6();
  const auto p = sv::predict(run);
  const auto& s = run.weight->schedule();
  EXPECT_GT(p.int_f2, 0.0);
  EXPECT_LE(p.int_f2, s.gamma * s.gamma / 4.0);
  EXPECT_GT(p.int_inner2, 0.0);
  const double wfac = 30.0 / (8.0 * 8.0);
  EXPECT_NEAR(p.s3, 1e6 * wfac / (run.log_r * run.log_r) * p.int_f2, 1e-9 * p.s3);
  EXPECT_NEAR(p.s1_per_j, 1e6 * wfac / (run.log_r * std::log(1e6)) * p.int_inner2,
              1e-9 * p.s1_per_j);
}

TEST(SumsOutput, CsvAndJson) {
  const auto r = sv::compute_sums(run_small(), 10.0);
  std::ostringstream out;
  sv::write_sums_csv(out, r);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "j,s1,s2,predicted_s1,predicted_s2_bound,ratio_s1,ratio_s2");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
  const auto j = sv::to_json(r);
  EXPECT_EQ(j.at("k0"), 1);
  EXPECT_TRUE(j.contains("ratio_s3"));
  const auto inf = sv::to_json(sv::make_report(run_small(), r.sums,
                                               std::numeric_limits<double>::infinity()));
  EXPECT_EQ(inf.at("C"), "inf");
}
