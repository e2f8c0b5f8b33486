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

// Exact integer primitives: prime tables, trial-division factorization,
// arithmetic functions, CRT and squarefree divisor enumeration.
//
// All integers are unsigned 64-bit. Intermediate products use 128-bit
// arithmetic; a result that does not fit throws OverflowError.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace twinsieve::ntheory {

// Largest sieve limit accepted unless the caller passes a larger budget.
inline constexpr std::uint64_t kDefaultSieveBudget = 1'000'000'000;

// Immutable, ascending list of all primes <= limit().
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }

  // Binary search; n must be <= limit() for a meaningful answer.
  bool contains(std::uint64_t n) const;

 private:
  friend PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t budget);

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

// Segmented odd-only sieve of Eratosthenes.
// Throws DomainError for limit < 2 and ResourceError for limit > budget
// (budgets above 2^32 - 1 are clamped, since primes are stored as uint32).
PrimeTable sieve_primes(std::uint64_t limit,
                        std::uint64_t budget = kDefaultSieveBudget);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending primes, exponents >= 1. The empty map is the factorization of 1.
using FactorMap = std::vector<PrimePower>;

// Trial division over the table. The leftover cofactor is certified prime
// when it is below (limit + 1)^2; otherwise InsufficientTableError.
FactorMap factorize(std::uint64_t n, const PrimeTable& table);

// Product of p^e; throws OverflowError if it does not fit.
std::uint64_t expand(const FactorMap& factors);

int mobius(const FactorMap& factors);
std::uint64_t euler_phi(const FactorMap& factors);
std::uint64_t tau(const FactorMap& factors);
unsigned big_omega(const FactorMap& factors);
unsigned small_omega(const FactorMap& factors);
bool is_squarefree(const FactorMap& factors);

int mobius(std::uint64_t n, const PrimeTable& table);
std::uint64_t euler_phi(std::uint64_t n, const PrimeTable& table);
std::uint64_t tau(std::uint64_t n, const PrimeTable& table);
unsigned big_omega(std::uint64_t n, const PrimeTable& table);

// Deterministic primality by trial division (n must satisfy the factorize
// precondition).
bool is_prime(std::uint64_t n, const PrimeTable& table);

struct Congruence {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

// Combines x = a_i (mod m_i). Moduli may share factors as long as the
// residues agree on them; the result is reduced into [0, lcm).
// Throws NoSolutionError on inconsistency, DomainError for a zero modulus
// or an empty system, OverflowError if the lcm exceeds 64 bits.
Congruence crt(std::span<const Congruence> system);

// Inverse of a modulo m (gcd(a, m) must be 1, else NoSolutionError).
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

// Ascending squarefree divisors d of n with d <= bound (always contains 1).
std::vector<std::uint64_t> squarefree_divisors_up_to(const FactorMap& factors,
                                                     std::uint64_t bound);
std::vector<std::uint64_t> squarefree_divisors_up_to(std::uint64_t n,
                                                     std::uint64_t bound,
                                                     const PrimeTable& table);

// Factors every term first + j*step, 0 <= j < count, by sieving the
// progression with the table's primes. Each prime p is placed by solving
// j = -first * step^{-1} (mod p), so only terms divisible by p are touched.
//
// After factor(), term j exposes its small prime factors (those below the
// square root of the largest term) plus one cofactor which is 1 or prime.
class ProgressionFactorizer {
 public:
  static constexpr std::size_t kMaxDistinct = 15;  // enough below 2^64

  explicit ProgressionFactorizer(const PrimeTable& table);

  // Throws InsufficientTableError if the table cannot certify the largest
  // term, OverflowError if the last term does not fit.
  void factor(std::uint64_t first, std::uint64_t step, std::size_t count);

  std::size_t size() const { return slots_.size(); }
  std::uint64_t first() const { return first_; }
  std::uint64_t step() const { return step_; }
  std::uint64_t value(std::size_t j) const { return first_ + j * step_; }

  // Cofactor left after removing the sieved primes: 1 or a prime.
  std::uint64_t cofactor(std::size_t j) const { return slots_[j].rem; }
  std::size_t small_count(std::size_t j) const { return slots_[j].count; }
  std::uint32_t small_prime(std::size_t j, std::size_t i) const {
    return slots_[j].primes[i];
  }
  unsigned small_exponent(std::size_t j, std::size_t i) const {
    return slots_[j].exps[i];
  }

  FactorMap factors(std::size_t j) const;
  bool is_prime(std::size_t j) const;
  bool is_squarefree(std::size_t j) const;
  unsigned big_omega(std::size_t j) const;
  std::uint64_t tau(std::size_t j) const;

 private:
  struct Slot {
    std::uint64_t rem = 0;
    std::uint8_t count = 0;
    std::uint8_t exps[kMaxDistinct] = {};
    std::uint32_t primes[kMaxDistinct] = {};
  };

  const PrimeTable* table_;
  std::uint64_t first_ = 0;
  std::uint64_t step_ = 1;
  std::vector<Slot> slots_;
};

}  // namespace twinsieve::ntheory
