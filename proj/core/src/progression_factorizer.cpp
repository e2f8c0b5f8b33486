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

#include <string>

#include "twinsieve/errors.hpp"
#include "twinsieve/ntheory.hpp"

namespace twinsieve::ntheory {

__extension__ using u128 = unsigned __int128;

ProgressionFactorizer::ProgressionFactorizer(const PrimeTable& table)
    : table_(&table) {}

void ProgressionFactorizer::factor(std::uint64_t first, std::uint64_t step,
                                   std::size_t count) {
  if (step == 0) throw DomainError("ProgressionFactorizer: step must be positive");
  if (first == 0) throw DomainError("ProgressionFactorizer: terms must be positive");
  first_ = first;
  step_ = step;
  slots_.assign(count, Slot{});
  if (count == 0) return;

  const u128 last128 = static_cast<u128>(first) + static_cast<u128>(step) * (count - 1);
  if (last128 > UINT64_MAX) throw OverflowError("ProgressionFactorizer: last term exceeds 64 bits");
  const auto last = static_cast<std::uint64_t>(last128);
  const u128 certified = static_cast<u128>(table_->limit() + 1) * (table_->limit() + 1);
  if (last128 >= certified) {
    throw InsufficientTableError("ProgressionFactorizer: table limit " +
                                 std::to_string(table_->limit()) +
                                 " cannot certify terms up to " + std::to_string(last));
  }

  for (std::size_t j = 0; j < count; ++j) slots_[j].rem = first + j * step;

  for (const std::uint32_t p32 : table_->primes()) {
    const std::uint64_t p = p32;
    if (static_cast<u128>(p) * p > last128) break;
    std::uint64_t j0;
    std::uint64_t stride;
    if (step % p == 0) {
      if (first % p != 0) continue;
      j0 = 0;
      stride = 1;
    } else {
      // first + j*step = 0 (mod p)
      const std::uint64_t inv = mod_inverse(step % p, p);
      const std::uint64_t neg = (p - first % p) % p;
      j0 = static_cast<std::uint64_t>((static_cast<u128>(neg) * inv) % p);
      stride = p;
    }
    for (std::uint64_t j = j0; j < count; j += stride) {
      Slot& s = slots_[j];
      unsigned e = 0;
      do {
        s.rem /= p;
        ++e;
      } while (s.rem % p == 0);
      s.primes[s.count] = p32;
      s.exps[s.count] = static_cast<std::uint8_t>(e);
      ++s.count;
    }
  }
}

FactorMap ProgressionFactorizer::factors(std::size_t j) const {
  const Slot& s = slots_[j];
  FactorMap out;
  out.reserve(s.count + 1);
  for (std::size_t i = 0; i < s.count; ++i) out.push_back({s.primes[i], s.exps[i]});
  if (s.rem > 1) out.push_back({s.rem, 1});
  return out;
}

bool ProgressionFactorizer::is_prime(std::size_t j) const {
  const Slot& s = slots_[j];
  if (s.count == 0) return s.rem > 1;
  return s.count == 1 && s.exps[0] == 1 && s.rem == 1;
}

bool ProgressionFactorizer::is_squarefree(std::size_t j) const {
  const Slot& s = slots_[j];
  for (std::size_t i = 0; i < s.count; ++i) {
    if (s.exps[i] > 1) return false;
  }
  return true;
}

unsigned ProgressionFactorizer::big_omega(std::size_t j) const {
  const Slot& s = slots_[j];
  unsigned total = s.rem > 1 ? 1 : 0;
  for (std::size_t i = 0; i < s.count; ++i) total += s.exps[i];
  return total;
}

std::uint64_t ProgressionFactorizer::tau(std::size_t j) const {
  const Slot& s = slots_[j];
  std::uint64_t t = s.rem > 1 ? 2 : 1;
  for (std::size_t i = 0; i < s.count; ++i) t *= s.exps[i] + 1u;
  return t;
}

}  // namespace twinsieve::ntheory
