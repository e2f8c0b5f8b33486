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

// Admissible offset tuples with the twin-pair layout (h, h + 2), their
// certificates, a greedy narrow-tuple builder and the W-trick residue.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace twinsieve::tuples {

// Strictly increasing nonnegative offsets. A twin-paired tuple has even
// length 2*k0 and offsets[2j + 1] == offsets[2j] + 2.
class OffsetTuple {
 public:
  OffsetTuple() = default;

  // Throws DomainError if offsets are not strictly increasing, or if
  // twin_paired is requested and the layout does not match.
  explicit OffsetTuple(std::vector<std::uint64_t> offsets, bool twin_paired = false);

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  bool empty() const { return offsets_.empty(); }
  bool twin_paired() const { return twin_paired_; }
  std::uint64_t operator[](std::size_t i) const { return offsets_[i]; }

  // Number of pairs; only meaningful for twin-paired tuples.
  std::size_t k0() const { return offsets_.size() / 2; }

  // Shift so the first offset is zero.
  OffsetTuple normalized() const;

  friend bool operator==(const OffsetTuple&, const OffsetTuple&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  bool twin_paired_ = false;
};

struct MissedClass {
  std::uint64_t prime = 0;
  std::uint64_t residue = 0;

  friend bool operator==(const MissedClass&, const MissedClass&) = default;
};

// One missed residue class for every prime p <= k (k = tuple size).
struct AdmissibilityCertificate {
  std::vector<MissedClass> classes;

  // Re-checks every class by direct reduction and that all primes <= k
  // are covered.
  bool verify(const OffsetTuple& tuple) const;
};

struct AdmissibilityResult {
  bool admissible = false;
  AdmissibilityCertificate certificate;
  std::uint64_t violating_prime = 0;  // smallest covering prime when not admissible

  explicit operator bool() const { return admissible; }
};

// Smallest residue mod p hit by no offset, if any.
std::optional<std::uint64_t> missed_residue(std::span<const std::uint64_t> offsets,
                                            std::uint64_t p);

// Throws DomainError for an empty tuple.
AdmissibilityResult is_admissible(const OffsetTuple& tuple);

// Default search budget for build_twin_tuple, in candidate pairs.
inline constexpr std::uint64_t kDefaultCandidateBudget = std::uint64_t{1} << 32;

// Greedy construction over candidate pairs (h, h + 2) with h = 0 (mod 6).
// For each prime 5 <= p <= 2*k0 the residue class removing the fewest
// surviving pairs is struck out (ties go to the smallest residue); the
// narrowest run of k0 consecutive survivors is then shifted to start at 0
// and re-certified. The candidate window doubles until it succeeds; past
// the budget a BudgetError is thrown.
OffsetTuple build_twin_tuple(std::uint64_t k0,
                             std::uint64_t candidate_budget = kDefaultCandidateBudget);

// Last offset minus first. Throws DomainError for an empty tuple.
std::uint64_t width(const OffsetTuple& tuple);

struct WidthSample {
  std::uint64_t k0 = 0;
  std::uint64_t width = 0;
  double ratio = 0.0;  // width / (k0 (log k0)^2)
};

struct WidthFit {
  std::vector<WidthSample> samples;
  double least_squares = 0.0;  // c minimising sum (width - c g)^2, g = k0 (log k0)^2
  double envelope = 0.0;       // max ratio over the samples
};

// Builds each tuple and fits width ~ c k0 (log k0)^2. Every k0 must be >= 2.
WidthFit fit_width_constant(std::span<const std::uint64_t> k0s);

struct WTrickResult {
  std::uint64_t d0 = 0;
  std::uint64_t w = 1;  // product of primes below d0
  std::uint64_t v = 0;  // gcd(v + h, w) == 1 for every offset h
};

// v is assembled by CRT from v = -r_p (mod p), r_p a missed class.
// Throws NoSolutionError if some p < d0 has no missed class and
// OverflowError if W does not fit in 64 bits.
WTrickResult w_trick(const OffsetTuple& tuple, std::uint64_t d0);

// Plain-text cache: "# k0: N" and "# width: W" comment lines, then one
// offset per line in ascending order.
void write_tuple_cache(std::ostream& out, const OffsetTuple& tuple);
OffsetTuple read_tuple_cache(std::istream& in);

}  // namespace twinsieve::tuples
