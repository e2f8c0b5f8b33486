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
#include <numeric>
#include <random>

#include "twinsieve/errors.hpp"
#include "twinsieve/ntheory.hpp"

namespace nt = twinsieve::ntheory;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> all_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

const nt::PrimeTable& table() {
  static const nt::PrimeTable t = nt::sieve_primes(1'100'000);
  return t;
}

}  // namespace

TEST(SievePrimes, SmallLimits) {
  const auto t10 = nt::sieve_primes(10);
  EXPECT_EQ(std::vector<std::uint32_t>(t10.primes().begin(), t10.primes().end()),
            (std::vector<std::uint32_t>{2, 3, 5, 7}));
  const auto t2 = nt::sieve_primes(2);
  ASSERT_EQ(t2.size(), 1U);
  EXPECT_EQ(t2.primes()[0], 2U);
  EXPECT_EQ(nt::sieve_primes(3).size(), 2U);
}

TEST(SievePrimes, CountAtOneMillion) {
  EXPECT_EQ(nt::sieve_primes(1'000'000).size(), 78498U);
}

TEST(SievePrimes, MatchesTrialDivisionAcrossSegments) {
  // 2^19 odd numbers per segment puts a boundary near 2^20.
  const std::uint64_t lo = (1ULL << 20) - 3000;
  const std::uint64_t hi = (1ULL << 20) + 3000;
  const auto& t = table();
  for (std::uint64_t n = lo; n <= hi; ++n) EXPECT_EQ(t.contains(n), trial_prime(n)) << n;
  const auto small = nt::sieve_primes(5000);
  std::vector<std::uint32_t> expect;
  for (std::uint32_t n = 2; n <= 5000; ++n) {
    if (trial_prime(n)) expect.push_back(n);
  }
  EXPECT_EQ(std::vector<std::uint32_t>(small.primes().begin(), small.primes().end()), expect);
}

TEST(SievePrimes, Errors) {
  EXPECT_THROW(nt::sieve_primes(1), twinsieve::DomainError);
  EXPECT_THROW(nt::sieve_primes(0), twinsieve::DomainError);
  EXPECT_THROW(nt::sieve_primes(1000, 100), twinsieve::ResourceError);
}

TEST(Factorize, Examples) {
  const auto& t = table();
  EXPECT_EQ(nt::factorize(12, t), (nt::FactorMap{{2, 2}, {3, 1}}));
  EXPECT_TRUE(nt::factorize(1, t).empty());
  EXPECT_EQ(nt::factorize(999983, t), (nt::FactorMap{{999983, 1}}));
  EXPECT_THROW(nt::factorize(0, t), twinsieve::DomainError);
}

TEST(Factorize, CofactorCertification) {
  const auto t = nt::sieve_primes(100);
  // 101^2 = 10201: any cofactor below it is prime.
  EXPECT_EQ(nt::factorize(10007, t), (nt::FactorMap{{10007, 1}}));
  EXPECT_THROW(nt::factorize(103ULL * 107ULL, t), twinsieve::InsufficientTableError);
  EXPECT_EQ(nt::factorize(2ULL * 2 * 97 * 97, t), (nt::FactorMap{{2, 2}, {97, 2}}));
}

TEST(Factorize, ProductRoundTripRandom) {
  std::mt19937_64 rng(11);
  const auto& t = table();
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = 1 + rng() % 1'000'000'000'000ULL;
    const auto fm = nt::factorize(n, t);
    EXPECT_EQ(nt::expand(fm), n);
    for (std::size_t k = 0; k < fm.size(); ++k) {
      EXPECT_TRUE(trial_prime(fm[k].prime) || fm[k].prime > 1'000'000);
      if (k) EXPECT_LT(fm[k - 1].prime, fm[k].prime);
    }
  }
}

TEST(ArithmeticFunctions, Examples) {
  const auto& t = table();
  EXPECT_EQ(nt::mobius(30, t), -1);
  EXPECT_EQ(nt::tau(30, t), 8U);
  EXPECT_EQ(nt::big_omega(30, t), 3U);
  EXPECT_EQ(nt::mobius(12, t), 0);
  EXPECT_EQ(nt::euler_phi(6, t), 2U);
  EXPECT_EQ(nt::mobius(1, t), 1);
  EXPECT_EQ(nt::euler_phi(1, t), 1U);
}

TEST(ArithmeticFunctions, IdentitiesUpToTenThousand) {
  const auto& t = table();
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const auto divs = all_divisors(n);
    long mu_sum = 0;
    std::uint64_t phi_sum = 0;
    for (const auto d : divs) {
      mu_sum += nt::mobius(d, t);
      phi_sum += nt::euler_phi(d, t);
    }
    ASSERT_EQ(mu_sum, n == 1 ? 1 : 0) << n;
    ASSERT_EQ(phi_sum, n) << n;
    ASSERT_EQ(nt::tau(n, t), divs.size()) << n;
    const auto fm = nt::factorize(n, t);
    unsigned omega = 0;
    for (const auto& pp : fm) omega += pp.exponent;
    ASSERT_EQ(nt::big_omega(n, t), omega);
    ASSERT_EQ(nt::is_prime(n, t), trial_prime(n)) << n;
  }
}

TEST(Crt, Examples) {
  const nt::Congruence a[] = {{1, 2}, {2, 3}};
  EXPECT_EQ(nt::crt(a), (nt::Congruence{5, 6}));
  const nt::Congruence b[] = {{0, 5}};
  EXPECT_EQ(nt::crt(b), (nt::Congruence{0, 5}));
  const nt::Congruence c[] = {{5, 6}, {3, 5}};
  EXPECT_EQ(nt::crt(c), (nt::Congruence{23, 30}));
}

TEST(Crt, SharedFactors) {
  const nt::Congruence ok[] = {{1, 4}, {3, 6}};
  EXPECT_EQ(nt::crt(ok), (nt::Congruence{9, 12}));
  const nt::Congruence bad[] = {{0, 4}, {1, 6}};
  EXPECT_THROW(nt::crt(bad), twinsieve::NoSolutionError);
  const nt::Congruence zero[] = {{0, 0}};
  EXPECT_THROW(nt::crt(zero), twinsieve::DomainError);
  EXPECT_THROW(nt::crt(std::span<const nt::Congruence>{}), twinsieve::DomainError);
}

TEST(Crt, RandomCoprimeSystemsSatisfyEveryCongruence) {
  std::mt19937_64 rng(3);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<nt::Congruence> sys;
    std::uint64_t product = 1;
    for (const auto p : primes) {
      if (rng() % 2 == 0) continue;
      const std::uint64_t e = 1 + rng() % 2;
      const std::uint64_t m = e == 1 ? p : p * p;
      if (product > (1ULL << 60) / m) break;
      product *= m;
      sys.push_back({rng() % (m * 3), m});
    }
    if (sys.empty()) continue;
    const auto r = nt::crt(sys);
    EXPECT_EQ(r.modulus, product);
    EXPECT_LT(r.residue, product);
    for (const auto& c : sys) EXPECT_EQ(r.residue % c.modulus, c.residue % c.modulus);
  }
}

TEST(ModInverse, Basics) {
  EXPECT_EQ(nt::mod_inverse(3, 7), 5U);
  EXPECT_THROW(nt::mod_inverse(4, 8), twinsieve::NoSolutionError);
  EXPECT_THROW(nt::mod_inverse(4, 0), twinsieve::DomainError);
}

TEST(CheckedMul, Overflow) {
  EXPECT_EQ(nt::checked_mul(1ULL << 31, 1ULL << 32), 1ULL << 63);
  EXPECT_THROW(nt::checked_mul(1ULL << 32, 1ULL << 32), twinsieve::OverflowError);
}

TEST(SquarefreeDivisors, Examples) {
  const auto& t = table();
  EXPECT_EQ(nt::squarefree_divisors_up_to(12, 12, t), (std::vector<std::uint64_t>{1, 2, 3, 6}));
  EXPECT_EQ(nt::squarefree_divisors_up_to(1, 10, t), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(nt::squarefree_divisors_up_to(210, 15, t),
            (std::vector<std::uint64_t>{1, 2, 3, 5, 6, 7, 10, 14, 15}));
  EXPECT_THROW(nt::squarefree_divisors_up_to(10, 0, t), twinsieve::DomainError);
}

TEST(SquarefreeDivisors, CardinalityAndBruteForce) {
  const auto& t = table();
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    const auto fm = nt::factorize(n, t);
    EXPECT_EQ(nt::squarefree_divisors_up_to(n, n, t).size(), 1ULL << fm.size());
    const std::uint64_t bound = 1 + n % 50;
    std::vector<std::uint64_t> expect;
    for (const auto d : all_divisors(n)) {
      if (d <= bound && nt::mobius(d, t) != 0) expect.push_back(d);
    }
    EXPECT_EQ(nt::squarefree_divisors_up_to(n, bound, t), expect) << n;
  }
}

TEST(ProgressionFactorizer, AgreesWithFactorize) {
  const auto& t = table();
  nt::ProgressionFactorizer pf(t);
  for (const auto& [first, step] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {1, 1}, {999'000'001, 30}, {123456789, 7}, {1'000'000'007, 210}, {2, 4}}) {
    pf.factor(first, step, 5000);
    for (std::size_t j = 0; j < pf.size(); ++j) {
      const std::uint64_t n = pf.value(j);
      const auto fm = nt::factorize(n, t);
      ASSERT_EQ(pf.factors(j), fm) << n;
      EXPECT_EQ(pf.is_prime(j), fm.size() == 1 && fm[0].exponent == 1);
      EXPECT_EQ(pf.is_squarefree(j), nt::is_squarefree(fm));
      EXPECT_EQ(pf.big_omega(j), nt::big_omega(fm));
      EXPECT_EQ(pf.tau(j), nt::tau(fm));
    }
  }
}

TEST(ProgressionFactorizer, Errors) {
  const auto t = nt::sieve_primes(100);
  nt::ProgressionFactorizer pf(t);
  EXPECT_THROW(pf.factor(1, 0, 10), twinsieve::DomainError);
  EXPECT_THROW(pf.factor(0, 1, 10), twinsieve::DomainError);
  EXPECT_THROW(pf.factor(20000, 1, 10), twinsieve::InsufficientTableError);
  EXPECT_THROW(pf.factor(~0ULL - 5, 1, 10), twinsieve::OverflowError);
}
