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

#include "twinsieve/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "twinsieve/errors.hpp"

namespace twinsieve::ntheory {

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Primes <= n by a plain odd-only sieve; used for the base primes.
std::vector<std::uint32_t> small_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  out.push_back(2);
  std::vector<bool> composite(n / 2 + 1, false);  // index i <-> 2i+1
  for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t q = p * p; q <= n; q += 2 * p) composite[q / 2] = true;
  }
  return out;
}

}  // namespace

bool PrimeTable::contains(std::uint64_t n) const {
  if (n > 0xffffffffULL) return false;
  return std::binary_search(primes_.begin(), primes_.end(),
                            static_cast<std::uint32_t>(n));
}

PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t budget) {
  if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
  budget = std::min<std::uint64_t>(budget, 0xffffffffULL);
  if (limit > budget) {
    throw ResourceError("sieve_primes: limit " + std::to_string(limit) +
                        " exceeds budget " + std::to_string(budget));
  }

  PrimeTable table;
  table.limit_ = limit;
  const auto root = static_cast<std::uint32_t>(isqrt(limit));
  const std::vector<std::uint32_t> base = small_sieve(root);

  // Segments over odd numbers in [lo, hi); 2 is emitted up front.
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 19;
  table.primes_.reserve(static_cast<std::size_t>(
      1.1 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) + 16));
  table.primes_.push_back(2);
  std::vector<std::uint8_t> mark(kSegment / 2);
  std::vector<std::uint64_t> next(base.size(), 0);
  for (std::size_t i = 1; i < base.size(); ++i) {
    next[i] = std::uint64_t{base[i]} * base[i];
  }

  for (std::uint64_t lo = 3; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(lo + kSegment, limit + 1);  // exclusive
    std::fill(mark.begin(), mark.end(), 0);
    for (std::size_t i = 1; i < base.size(); ++i) {
      const std::uint64_t p = base[i];
      std::uint64_t q = next[i];
      if (q >= hi) continue;
      if (q < lo) {
        q = (lo + p - 1) / p * p;
        if (q % 2 == 0) q += p;
      }
      for (; q < hi; q += 2 * p) mark[(q - lo) / 2] = 1;
      next[i] = q;
    }
    for (std::uint64_t n = lo; n < hi; n += 2) {
      if (!mark[(n - lo) / 2]) table.primes_.push_back(static_cast<std::uint32_t>(n));
    }
  }
  table.primes_.shrink_to_fit();
  return table;
}

FactorMap factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  FactorMap out;
  std::uint64_t rem = n;
  bool exhausted = true;
  for (const std::uint32_t p32 : table.primes()) {
    const std::uint64_t p = p32;
    if (p * p > rem) {
      exhausted = false;
      break;
    }
    if (rem % p != 0) continue;
    unsigned e = 0;
    do {
      rem /= p;
      ++e;
    } while (rem % p == 0);
    out.push_back({p, e});
  }
  if (rem > 1) {
    if (exhausted) {
      const u128 bound = static_cast<u128>(table.limit() + 1) * (table.limit() + 1);
      if (static_cast<u128>(rem) >= bound) {
        throw InsufficientTableError(
            "factorize: table limit " + std::to_string(table.limit()) +
            " cannot certify cofactor of " + std::to_string(n));
      }
    }
    out.push_back({rem, 1});
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  if (p > UINT64_MAX) throw OverflowError("integer product exceeds 64 bits");
  return static_cast<std::uint64_t>(p);
}

std::uint64_t expand(const FactorMap& factors) {
  std::uint64_t n = 1;
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e; ++i) n = checked_mul(n, p);
  }
  return n;
}

int mobius(const FactorMap& factors) {
  for (const auto& pe : factors) {
    if (pe.exponent > 1) return 0;
  }
  return factors.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(const FactorMap& factors) {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : factors) {
    phi = checked_mul(phi, p - 1);
    for (unsigned i = 1; i < e; ++i) phi = checked_mul(phi, p);
  }
  return phi;
}

std::uint64_t tau(const FactorMap& factors) {
  std::uint64_t t = 1;
  for (const auto& pe : factors) t = checked_mul(t, pe.exponent + 1);
  return t;
}

unsigned big_omega(const FactorMap& factors) {
  unsigned s = 0;
  for (const auto& pe : factors) s += pe.exponent;
  return s;
}

unsigned small_omega(const FactorMap& factors) {
  return static_cast<unsigned>(factors.size());
}

bool is_squarefree(const FactorMap& factors) {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pe) { return pe.exponent == 1; });
}

int mobius(std::uint64_t n, const PrimeTable& table) {
  return mobius(factorize(n, table));
}
std::uint64_t euler_phi(std::uint64_t n, const PrimeTable& table) {
  return euler_phi(factorize(n, table));
}
std::uint64_t tau(std::uint64_t n, const PrimeTable& table) {
  return tau(factorize(n, table));
}
unsigned big_omega(std::uint64_t n, const PrimeTable& table) {
  return big_omega(factorize(n, table));
}

bool is_prime(std::uint64_t n, const PrimeTable& table) {
  if (n < 2) return false;
  const FactorMap f = factorize(n, table);
  return f.size() == 1 && f[0].exponent == 1;
}

namespace {

// Extended Euclid on signed 128-bit to stay exact for 64-bit inputs.
struct Bezout {
  i128 g, x, y;
};

Bezout ext_gcd(i128 a, i128 b) {
  i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const i128 q = a / b;
    const i128 r = a - q * b;
    a = b;
    b = r;
    const i128 x2 = x0 - q * x1;
    const i128 y2 = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = x2;
    y1 = y2;
  }
  return {a, x0, y0};
}

}  // namespace

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 0) throw DomainError("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  const Bezout b = ext_gcd(static_cast<i128>(a % m), static_cast<i128>(m));
  if (b.g != 1) throw NoSolutionError("mod_inverse: argument not invertible");
  i128 x = b.x % static_cast<i128>(m);
  if (x < 0) x += m;
  return static_cast<std::uint64_t>(x);
}

Congruence crt(std::span<const Congruence> system) {
  if (system.empty()) throw DomainError("crt: empty system");
  std::uint64_t r = 0;
  std::uint64_t m = 1;
  for (const Congruence& c : system) {
    if (c.modulus == 0) throw DomainError("crt: zero modulus");
    const std::uint64_t a = c.residue % c.modulus;
    const std::uint64_t n = c.modulus;
    const std::uint64_t g = std::gcd(m, n);
    // Need r + m*k = a (mod n)  ->  m*k = (a - r) (mod n).
    const i128 diff = static_cast<i128>(a) - static_cast<i128>(r % n);
    if (diff % static_cast<i128>(g) != 0) {
      throw NoSolutionError("crt: inconsistent residues for moduli sharing a factor");
    }
    const std::uint64_t n_g = n / g;
    const std::uint64_t lcm = checked_mul(m / g, n);
    i128 d = (diff / static_cast<i128>(g)) % static_cast<i128>(n_g);
    if (d < 0) d += n_g;
    const std::uint64_t inv = mod_inverse((m / g) % n_g, n_g);
    const std::uint64_t k = static_cast<std::uint64_t>(
        (static_cast<u128>(static_cast<std::uint64_t>(d)) * inv) % (n_g == 0 ? 1 : n_g));
    r = static_cast<std::uint64_t>((static_cast<u128>(m) * k + r) % lcm);
    m = lcm;
  }
  return {r, m};
}

std::vector<std::uint64_t> squarefree_divisors_up_to(const FactorMap& factors,
                                                     std::uint64_t bound) {
  if (bound < 1) throw DomainError("squarefree_divisors_up_to: bound must be >= 1");
  std::vector<std::uint64_t> out{1};
  for (const auto& pe : factors) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      const u128 d = static_cast<u128>(out[i]) * pe.prime;
      if (d <= bound) out.push_back(static_cast<std::uint64_t>(d));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> squarefree_divisors_up_to(std::uint64_t n,
                                                     std::uint64_t bound,
                                                     const PrimeTable& table) {
  return squarefree_divisors_up_to(factorize(n, table), bound);
}

}  // namespace twinsieve::ntheory
