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

#include "twinsieve/tuples.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "twinsieve/errors.hpp"
#include "twinsieve/ntheory.hpp"

namespace twinsieve::tuples {

OffsetTuple::OffsetTuple(std::vector<std::uint64_t> offsets, bool twin_paired)
    : offsets_(std::move(offsets)), twin_paired_(twin_paired) {
  for (std::size_t i = 1; i < offsets_.size(); ++i) {
    if (offsets_[i] <= offsets_[i - 1]) {
      throw DomainError("OffsetTuple: offsets must be strictly increasing");
    }
  }
  if (twin_paired_) {
    if (offsets_.empty() || offsets_.size() % 2 != 0) {
      throw DomainError("OffsetTuple: twin-paired tuple needs an even, nonzero length");
    }
    for (std::size_t j = 0; j < offsets_.size(); j += 2) {
      if (offsets_[j + 1] != offsets_[j] + 2) {
        throw DomainError("OffsetTuple: pair " + std::to_string(j / 2) +
                          " is not of the form (h, h + 2)");
      }
    }
  }
}

OffsetTuple OffsetTuple::normalized() const {
  if (offsets_.empty()) return *this;
  std::vector<std::uint64_t> shifted(offsets_);
  const std::uint64_t base = shifted.front();
  for (auto& h : shifted) h -= base;
  return OffsetTuple(std::move(shifted), twin_paired_);
}

std::optional<std::uint64_t> missed_residue(std::span<const std::uint64_t> offsets,
                                            std::uint64_t p) {
  if (p == 0) throw DomainError("missed_residue: modulus must be positive");
  std::vector<bool> hit(p, false);
  std::uint64_t covered = 0;
  for (const std::uint64_t h : offsets) {
    const std::uint64_t r = h % p;
    if (!hit[r]) {
      hit[r] = true;
      if (++covered == p) return std::nullopt;
    }
  }
  for (std::uint64_t r = 0; r < p; ++r) {
    if (!hit[r]) return r;
  }
  return std::nullopt;
}

AdmissibilityResult is_admissible(const OffsetTuple& tuple) {
  if (tuple.empty()) throw DomainError("is_admissible: empty tuple");
  AdmissibilityResult result;
  const std::uint64_t k = tuple.size();
  if (k < 2) {
    result.admissible = true;
    return result;
  }
  const ntheory::PrimeTable table = ntheory::sieve_primes(k);
  for (const std::uint32_t p : table.primes()) {
    const auto r = missed_residue(tuple.offsets(), p);
    if (!r) {
      result.violating_prime = p;
      result.certificate.classes.clear();
      return result;
    }
    result.certificate.classes.push_back({p, *r});
  }
  result.admissible = true;
  return result;
}

bool AdmissibilityCertificate::verify(const OffsetTuple& tuple) const {
  const std::uint64_t k = tuple.size();
  std::vector<std::uint64_t> expected;
  if (k >= 2) {
    const ntheory::PrimeTable table = ntheory::sieve_primes(k);
    expected.assign(table.primes().begin(), table.primes().end());
  }
  if (expected.size() != classes.size()) return false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const MissedClass& c = classes[i];
    if (c.prime != expected[i] || c.residue >= c.prime) return false;
    for (const std::uint64_t h : tuple.offsets()) {
      if (h % c.prime == c.residue) return false;
    }
  }
  return true;
}

namespace {

// Survivors h (pair (h, h + 2)) after greedy sieving of the first
// `count` multiples of 6.
std::vector<std::uint64_t> greedy_survivors(std::uint64_t count,
                                            std::span<const std::uint32_t> primes,
                                            std::size_t need) {
  std::vector<std::uint64_t> alive(count);
  for (std::uint64_t i = 0; i < count; ++i) alive[i] = 6 * i;
  std::vector<std::uint64_t> cnt;
  for (const std::uint32_t p32 : primes) {
    const std::uint64_t p = p32;
    if (p < 5) continue;
    cnt.assign(p, 0);
    for (const std::uint64_t h : alive) ++cnt[h % p];
    std::uint64_t best_r = 0;
    std::uint64_t best = UINT64_MAX;
    for (std::uint64_t r = 0; r < p; ++r) {
      // Class r kills pairs with h = r or h + 2 = r.
      const std::uint64_t loss = cnt[r] + cnt[(r + p - 2) % p];
      if (loss < best) {
        best = loss;
        best_r = r;
      }
    }
    const std::uint64_t r2 = (best_r + p - 2) % p;
    std::erase_if(alive, [&](std::uint64_t h) {
      const std::uint64_t r = h % p;
      return r == best_r || r == r2;
    });
    if (alive.size() < need) break;
  }
  return alive;
}

}  // namespace

OffsetTuple build_twin_tuple(std::uint64_t k0, std::uint64_t candidate_budget) {
  if (k0 < 1) throw DomainError("build_twin_tuple: k0 must be >= 1");
  const ntheory::PrimeTable table = ntheory::sieve_primes(std::max<std::uint64_t>(2, 2 * k0));
  const auto need = static_cast<std::size_t>(k0);

  std::uint64_t count = std::max<std::uint64_t>(4 * k0, 16);
  while (true) {
    if (count > candidate_budget) {
      throw BudgetError("build_twin_tuple: no tuple for k0 = " + std::to_string(k0) +
                        " within " + std::to_string(candidate_budget) + " candidates");
    }
    const std::vector<std::uint64_t> alive = greedy_survivors(count, table.primes(), need);
    if (alive.size() >= need) {
      std::size_t best_i = 0;
      std::uint64_t best_w = UINT64_MAX;
      for (std::size_t i = 0; i + need <= alive.size(); ++i) {
        const std::uint64_t w = alive[i + need - 1] - alive[i];
        if (w < best_w) {
          best_w = w;
          best_i = i;
        }
      }
      std::vector<std::uint64_t> offsets;
      offsets.reserve(2 * need);
      for (std::size_t i = best_i; i < best_i + need; ++i) {
        offsets.push_back(alive[i] - alive[best_i]);
        offsets.push_back(alive[i] - alive[best_i] + 2);
      }
      OffsetTuple tuple(std::move(offsets), true);
      const AdmissibilityResult check = is_admissible(tuple);
      if (!check || !check.certificate.verify(tuple)) {
        throw StateError("build_twin_tuple: constructed tuple failed certification");
      }
      return tuple;
    }
    if (count > candidate_budget / 2) {
      count = candidate_budget + 1;  // forces the budget error above
    } else {
      count *= 2;
    }
  }
}

std::uint64_t width(const OffsetTuple& tuple) {
  if (tuple.empty()) throw DomainError("width: empty tuple");
  return tuple.offsets().back() - tuple.offsets().front();
}

WidthFit fit_width_constant(std::span<const std::uint64_t> k0s) {
  WidthFit fit;
  double num = 0.0;
  double den = 0.0;
  for (const std::uint64_t k0 : k0s) {
    if (k0 < 2) throw DomainError("fit_width_constant: k0 must be >= 2");
    const double l = std::log(static_cast<double>(k0));
    const double g = static_cast<double>(k0) * l * l;
    const std::uint64_t w = width(build_twin_tuple(k0));
    const double ratio = static_cast<double>(w) / g;
    fit.samples.push_back({k0, w, ratio});
    num += static_cast<double>(w) * g;
    den += g * g;
    fit.envelope = std::max(fit.envelope, ratio);
  }
  fit.least_squares = den > 0 ? num / den : 0.0;
  return fit;
}

WTrickResult w_trick(const OffsetTuple& tuple, std::uint64_t d0) {
  if (tuple.empty()) throw DomainError("w_trick: empty tuple");
  WTrickResult out;
  out.d0 = d0;
  if (d0 <= 2) return out;
  const ntheory::PrimeTable table = ntheory::sieve_primes(d0 - 1);
  std::vector<ntheory::Congruence> system;
  for (const std::uint32_t p : table.primes()) {
    const auto r = missed_residue(tuple.offsets(), p);
    if (!r) {
      throw NoSolutionError("w_trick: offsets cover every class mod " + std::to_string(p));
    }
    system.push_back({(p - *r) % p, p});
    out.w = ntheory::checked_mul(out.w, p);
  }
  out.v = ntheory::crt(system).residue;
  return out;
}

void write_tuple_cache(std::ostream& out, const OffsetTuple& tuple) {
  if (tuple.twin_paired()) {
    out << "# k0: " << tuple.k0() << '\n';
  } else {
    out << "# size: " << tuple.size() << '\n';
  }
  out << "# width: " << (tuple.empty() ? 0 : width(tuple)) << '\n';
  for (const std::uint64_t h : tuple.offsets()) out << h << '\n';
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(std::string_view s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError("tuple cache line " + std::to_string(line_no) +
                      ": not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

OffsetTuple read_tuple_cache(std::istream& in) {
  std::optional<std::uint64_t> k0;
  std::optional<std::uint64_t> declared_width;
  std::vector<std::uint64_t> offsets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const std::string_view body = trim(s.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, colon));
      const std::string_view value = trim(body.substr(colon + 1));
      if (key == "k0") k0 = parse_u64(value, line_no);
      if (key == "width") declared_width = parse_u64(value, line_no);
      continue;
    }
    offsets.push_back(parse_u64(s, line_no));
  }
  if (k0 && offsets.size() != 2 * *k0) {
    throw DomainError("tuple cache: k0 header does not match the number of offsets");
  }
  OffsetTuple tuple(std::move(offsets), k0.has_value());
  if (declared_width && !tuple.empty() && *declared_width != width(tuple)) {
    throw DomainError("tuple cache: width header does not match the offsets");
  }
  return tuple;
}

}  // namespace twinsieve::tuples
