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

#include "twinsieve/sieve_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "twinsieve/variational/quadrature.hpp"
#include "twinsieve/variational/schedule.hpp"
#include "twinsieve/variational/tao.hpp"

namespace twinsieve::sieve {

namespace v = twinsieve::variational;

const char* to_string(WeightKind kind) {
  return kind == WeightKind::smooth ? "smooth" : "product";
}

WeightKind weight_kind_from_string(const std::string& name) {
  if (name == "product") return WeightKind::product;
  if (name == "smooth") return WeightKind::smooth;
  throw DomainError("unknown weight kind: " + name);
}

namespace {

constexpr double kBoundSlack = 1e-12;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t floor_bound(double log_value) {
  const double b = std::exp(log_value) * (1.0 + kBoundSlack);
  if (b >= 1.8e19) throw OverflowError("sieve bound does not fit in 64 bits");
  return static_cast<std::uint64_t>(b);
}

struct Div {
  std::uint64_t d;
  bool negative;
  double t;
};

using DivList = std::vector<Div>;

void divisor_list(const ntheory::FactorMap& fm, const SieveRun& run, DivList& out) {
  out.clear();
  for (const std::uint64_t d : ntheory::squarefree_divisors_up_to(fm, run.divisor_bound)) {
    unsigned k = 0;
    for (const auto& pp : fm) k += d % pp.prime == 0 ? 1 : 0;
    out.push_back({d, (k & 1U) != 0, d == 1 ? 0.0 : std::log(static_cast<double>(d)) / run.log_r});
  }
}

double leaf(bool negative, std::span<const double> t, const SieveRun& run) {
  const double f = run.grid->eval(t);
  return negative ? -f : f;
}

struct Dfs {
  const SieveRun& run;
  std::span<const DivList> lists;
  std::vector<double> t;
  double sum = 0.0;

  void visit(std::size_t i, std::uint64_t product, bool negative) {
    if (i == lists.size()) {
      sum += leaf(negative, t, run);
      return;
    }
    for (const Div& d : lists[i]) {
      if (d.d > run.product_bound / product) break;
      t[i] = d.t;
      visit(i + 1, product * d.d, negative != d.negative);
    }
  }
};

double dfs_sum(std::span<const DivList> lists, const SieveRun& run) {
  Dfs dfs{run, lists, std::vector<double>(lists.size(), 0.0)};
  dfs.visit(0, 1, false);
  return dfs.sum;
}

// Any prime up to divisor_bound dividing two coordinates.
bool has_collision(std::span<const ntheory::FactorMap> fms, const SieveRun& run) {
  for (std::size_t a = 0; a < fms.size(); ++a) {
    for (const auto& pa : fms[a]) {
      if (pa.prime > run.divisor_bound) continue;
      for (std::size_t b = a + 1; b < fms.size(); ++b) {
        for (const auto& pb : fms[b]) {
          if (pb.prime == pa.prime) return true;
        }
      }
    }
  }
  return false;
}

bool squarefree(const ntheory::FactorMap& fm) {
  return std::all_of(fm.begin(), fm.end(), [](const auto& pp) { return pp.exponent == 1; });
}

bool is_prime(const ntheory::FactorMap& fm) {
  return fm.size() == 1 && fm[0].exponent == 1;
}

BlockSums empty_sums(unsigned k0) {
  BlockSums s;
  s.s1.assign(k0, 0.0);
  s.s2.assign(k0, 0.0);
  return s;
}

// Accumulates one admitted term given factorizations of every n + h_i.
void accumulate(BlockSums& out, std::span<const ntheory::FactorMap> fms,
                std::vector<DivList>& lists, const SieveRun& run) {
  for (std::size_t i = 0; i < fms.size(); ++i) divisor_list(fms[i], run, lists[i]);
  if (has_collision(fms, run)) ++out.collisions;
  const double inner = dfs_sum(lists, run);
  const double w2 = inner * inner;
  out.s3 += w2;
  for (unsigned j = 0; j < run.k0; ++j) {
    if (!is_prime(fms[2 * j])) continue;
    out.s1[j] += w2;
    out.s2[j] += static_cast<double>(ntheory::tau(fms[2 * j + 1])) * w2;
  }
}

BlockSums fast_block(const SieveRun& run, std::uint64_t b,
                     std::vector<ntheory::ProgressionFactorizer>& fac) {
  BlockSums out = empty_sums(run.k0);
  const std::uint64_t i0 = b * run.config.block_terms;
  const std::uint64_t count = std::min(run.config.block_terms, run.terms - i0);
  const auto h = run.config.tuple.offsets();
  for (std::size_t i = 0; i < h.size(); ++i) fac[i].factor(run.n_at(i0) + h[i], run.w, count);
  std::vector<ntheory::FactorMap> fms(h.size());
  std::vector<DivList> lists(h.size());
  for (std::uint64_t j = 0; j < count; ++j) {
    ++out.terms;
    bool ok = true;
    for (std::size_t i = 1; i < h.size() && ok; i += 2) ok = fac[i].is_squarefree(j);
    if (!ok) continue;
    ++out.admitted;
    for (std::size_t i = 0; i < h.size(); ++i) fms[i] = fac[i].factors(j);
    accumulate(out, fms, lists, run);
  }
  return out;
}

BlockSums reference_block(const SieveRun& run, std::uint64_t b) {
  BlockSums out = empty_sums(run.k0);
  const std::uint64_t i0 = b * run.config.block_terms;
  const std::uint64_t count = std::min(run.config.block_terms, run.terms - i0);
  const auto h = run.config.tuple.offsets();
  std::vector<ntheory::FactorMap> fms(h.size());
  for (std::uint64_t j = 0; j < count; ++j) {
    ++out.terms;
    const std::uint64_t n = run.n_at(i0 + j);
    for (std::size_t i = 0; i < h.size(); ++i) fms[i] = ntheory::factorize(n + h[i], run.table);
    bool ok = true;
    for (std::size_t i = 1; i < h.size() && ok; i += 2) ok = squarefree(fms[i]);
    if (!ok) continue;
    ++out.admitted;
    if (has_collision(fms, run)) ++out.collisions;
    const double inner = brute_force_inner_weight(n, run);
    const double w2 = inner * inner;
    out.s3 += w2;
    for (unsigned p = 0; p < run.k0; ++p) {
      if (!is_prime(fms[2 * p])) continue;
      out.s1[p] += w2;
      out.s2[p] += static_cast<double>(ntheory::tau(fms[2 * p + 1])) * w2;
    }
  }
  return out;
}

// Runs body(block, worker_state) over [begin, end) on `workers` threads;
// results land in block order.
template <class State, class Body>
std::vector<BlockSums> run_blocks(std::uint64_t begin, std::uint64_t end, unsigned workers,
                                  const std::function<State()>& make_state, Body body) {
  std::vector<BlockSums> out(end - begin);
  std::atomic<std::uint64_t> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      State state = make_state();
      for (std::uint64_t b = next++; b < end; b = next++) out[b - begin] = body(b, state);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = end;
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(end - begin)));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

std::uint64_t SieveRun::blocks() const {
  return (terms + config.block_terms - 1) / config.block_terms;
}

SieveRun make_sieve_run(const SieveConfig& config) {
  const auto& tuple = config.tuple;
  if (!tuple.twin_paired() || tuple.empty()) {
    throw DomainError("sieve run needs a twin-paired tuple");
  }
  const unsigned k0 = static_cast<unsigned>(tuple.k0());
  if (k0 > 3) throw DomainError("sieve run supports k0 <= 3");
  if (config.x < 100 || config.x > kMaxSieveX / k0) {
    throw DomainError("x must lie in [100, " + std::to_string(kMaxSieveX / k0) + "]");
  }
  if (!(config.theta0 > 0.0 && config.theta0 < 2.0 / 3.0)) {
    throw DomainError("theta0 must lie in (0, 2/3)");
  }
  if (config.m < 1) throw DomainError("m must be >= 1");
  if (config.block_terms < 1) throw DomainError("block_terms must be >= 1");
  if (config.grid_intervals < 2 || config.grid_intervals % 2 != 0) {
    throw DomainError("grid_intervals must be even and >= 2");
  }

  SieveRun run;
  run.config = config;
  run.k0 = k0;
  const tuples::WTrickResult wt = tuples::w_trick(tuple, config.d0);
  run.w = wt.w;
  run.v = wt.v;

  const double exponent = config.theta0 / 2.0 - 1.0 / (100000.0 * config.m);
  const double log_x = std::log(static_cast<double>(config.x));
  run.log_r = exponent * log_x;
  if (!(run.log_r > 0.0) || run.log_r >= log_x) throw DomainError("need 1 < R < x");

  const v::Schedule s = v::make_schedule(k0);
  if (config.weight == WeightKind::smooth) {
    run.weight = v::make_smooth_weight(k0, config.delta1);
  } else {
    run.weight = std::make_shared<v::ProductWeight>(s);
  }
  run.coordinate_cap = std::min(s.t / (2.0 * k0), 1.0);
  run.product_bound = floor_bound(run.log_r);
  run.divisor_bound = std::min(run.product_bound, floor_bound(run.log_r * run.coordinate_cap));

  const std::uint64_t x = config.x;
  run.first_n = x + (run.v + run.w - x % run.w) % run.w;
  run.terms = run.first_n >= 2 * x ? 0 : (2 * x - 1 - run.first_n) / run.w + 1;

  const std::uint64_t top = 2 * x + tuple[tuple.size() - 1];
  run.table = ntheory::sieve_primes(isqrt(top) + 1);

  run.grid = std::make_shared<v::FGrid>(run.weight, config.grid_intervals);
  run.grid->build();
  return run;
}

double lambda_weight(std::span<const std::uint64_t> d, const SieveRun& run) {
  if (d.size() != 2 * run.k0) throw DomainError("lambda_weight: need 2 k0 divisors");
  std::uint64_t product = 1;
  bool negative = false;
  std::vector<double> t(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) throw DomainError("lambda_weight: divisors must be positive");
    if (d[i] > run.divisor_bound || d[i] > run.product_bound / product) return 0.0;
    product *= d[i];
    const ntheory::FactorMap fm = ntheory::factorize(d[i], run.table);
    const int mu = ntheory::mobius(fm);
    if (mu == 0) return 0.0;
    negative = negative != (mu < 0);
    t[i] = d[i] == 1 ? 0.0 : std::log(static_cast<double>(d[i])) / run.log_r;
  }
  return leaf(negative, t, run);
}

double inner_weight(std::uint64_t n, const SieveRun& run) {
  const auto h = run.config.tuple.offsets();
  std::vector<DivList> lists(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    divisor_list(ntheory::factorize(n + h[i], run.table), run, lists[i]);
  }
  return dfs_sum(lists, run);
}

double brute_force_inner_weight(std::uint64_t n, const SieveRun& run) {
  const auto h = run.config.tuple.offsets();
  std::vector<std::vector<std::uint64_t>> lists(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    lists[i] = ntheory::squarefree_divisors_up_to(n + h[i], run.divisor_bound, run.table);
  }
  std::vector<std::size_t> idx(h.size(), 0);
  std::vector<std::uint64_t> d(h.size());
  double sum = 0.0;
  while (true) {
    for (std::size_t i = 0; i < h.size(); ++i) d[i] = lists[i][idx[i]];
    sum += lambda_weight(d, run);
    std::size_t i = h.size();
    while (i > 0) {
      --i;
      if (++idx[i] < lists[i].size()) break;
      idx[i] = 0;
      if (i == 0) return sum;
    }
  }
}

void BlockSums::merge(const BlockSums& other) {
  if (s1.size() < other.s1.size()) s1.resize(other.s1.size(), 0.0);
  if (s2.size() < other.s2.size()) s2.resize(other.s2.size(), 0.0);
  for (std::size_t j = 0; j < other.s1.size(); ++j) s1[j] += other.s1[j];
  for (std::size_t j = 0; j < other.s2.size(); ++j) s2[j] += other.s2[j];
  s3 += other.s3;
  terms += other.terms;
  admitted += other.admitted;
  collisions += other.collisions;
}

namespace {

nlohmann::json sums_json(const BlockSums& s) {
  return {{"s1", s.s1},           {"s2", s.s2},
          {"s3", s.s3},           {"terms", s.terms},
          {"admitted", s.admitted}, {"collisions", s.collisions}};
}

BlockSums sums_from_json(const nlohmann::json& j) {
  BlockSums s;
  j.at("s1").get_to(s.s1);
  j.at("s2").get_to(s.s2);
  j.at("s3").get_to(s.s3);
  j.at("terms").get_to(s.terms);
  j.at("admitted").get_to(s.admitted);
  j.at("collisions").get_to(s.collisions);
  return s;
}

}  // namespace

nlohmann::json to_json(const Checkpoint& c) {
  return {{"fingerprint", c.fingerprint},
          {"next_block", c.next_block},
          {"total_blocks", c.total_blocks},
          {"partial", sums_json(c.partial)}};
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
  Checkpoint c;
  try {
    c.fingerprint = j.at("fingerprint");
    j.at("next_block").get_to(c.next_block);
    j.at("total_blocks").get_to(c.total_blocks);
    c.partial = sums_from_json(j.at("partial"));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed checkpoint: ") + e.what());
  }
  return c;
}

nlohmann::json run_fingerprint(const SieveRun& run) {
  const SieveConfig& c = run.config;
  std::vector<std::uint64_t> offsets(c.tuple.offsets().begin(), c.tuple.offsets().end());
  return {{"x", c.x},
          {"offsets", offsets},
          {"d0", c.d0},
          {"theta0", c.theta0},
          {"m", c.m},
          {"weight", to_string(c.weight)},
          {"delta1", c.delta1},
          {"grid_intervals", c.grid_intervals},
          {"block_terms", c.block_terms}};
}

PartialRangeError::PartialRangeError(Checkpoint checkpoint)
    : Error("sieve run stopped at block " + std::to_string(checkpoint.next_block) + " of " +
            std::to_string(checkpoint.total_blocks)),
      checkpoint_(std::move(checkpoint)) {}

Predictions predict(const SieveRun& run) {
  const v::SumProductWeight& w = *run.weight;
  const v::Schedule& s = w.schedule();
  const unsigned dim = w.dim();
  const v::Knots knots = w.knots();
  v::NestedOptions nested;
  nested.abs_tol = 1e-13;
  nested.rel_tol = 1e-8;
  v::McOptions mc;
  mc.samples = 400000;
  mc.seed = 1;
  mc.workers = run.config.workers;

  auto integrate = [&](const v::Integrand& f, unsigned d) {
    if (d > 2) return v::simplex_mc(f, 1.0, d, mc).value;
    try {
      return v::nested_quadrature(f, 1.0, d, nested, knots).value;
    } catch (const v::QuadratureBudgetError& e) {
      return e.best().value;
    }
  };

  Predictions p;
  p.int_f2 = integrate(
      [&w](std::span<const double> t) {
        const double f = w.value(t);
        return f * f;
      },
      dim);
  p.int_inner2 = integrate(
      [&w](std::span<const double> x) {
        double sigma = 0.0;
        double prod = 1.0;
        for (const double u : x) {
          sigma += u;
          prod *= w.factor(u);
        }
        if (prod == 0.0) return 0.0;
        const double g = prod * w.sum_profile(sigma, 0);
        return g * g;
      },
      dim - 1);

  const double phi_w =
      static_cast<double>(ntheory::euler_phi(ntheory::factorize(run.w, run.table)));
  const double n = 2.0 * run.k0;
  const double log_wfac = (n - 1.0) * std::log(static_cast<double>(run.w)) - n * std::log(phi_w);
  const double x = static_cast<double>(run.config.x);
  const double log_x = std::log(x);
  const double lr = run.log_r;
  p.s3 = x * std::exp(log_wfac - n * std::log(lr)) * p.int_f2;
  p.s1_per_j = x / log_x * std::exp(log_wfac - (n - 1.0) * std::log(lr)) * p.int_inner2;
  const double cap = v::tao_cap(run.config.theta0);
  const double scale = std::exp((n - 2.0) * std::log(s.gamma) - n * std::log(n));
  p.s2_per_j = x * log_x * std::exp(log_wfac - (n + 1.0) * std::log(lr)) * 0.168 /
               (cap - 1.0) * scale;
  return p;
}

SumsReport make_report(const SieveRun& run, const BlockSums& sums, double c) {
  if (!(c > 0.0)) throw DomainError("C must be positive");
  SumsReport r;
  r.x = run.config.x;
  r.k0 = run.k0;
  r.w = run.w;
  r.v = run.v;
  r.log_r = run.log_r;
  r.sums = sums;
  for (const double s : sums.s1) r.s1_total += s;
  for (const double s : sums.s2) r.s2_total += s;
  r.predicted = predict(run);
  for (const double s : sums.s1) r.ratio_s1.push_back(s / r.predicted.s1_per_j);
  for (const double s : sums.s2) r.ratio_s2.push_back(s / r.predicted.s2_per_j);
  r.ratio_s3 = sums.s3 / r.predicted.s3;
  r.c = c;
  r.m = run.config.m;
  r.s_value = r.s1_total - r.s2_total / c - r.m * sums.s3;
  return r;
}

SumsReport compute_sums(const SieveRun& run, double c, const Checkpoint* resume) {
  if (!(c > 0.0)) throw DomainError("C must be positive");
  const std::uint64_t total = run.blocks();
  BlockSums merged = empty_sums(run.k0);
  std::uint64_t begin = 0;
  if (resume != nullptr) {
    if (resume->fingerprint != run_fingerprint(run) || resume->total_blocks != total ||
        resume->next_block > total) {
      throw StateError("checkpoint does not belong to this run");
    }
    merged = resume->partial;
    begin = resume->next_block;
  }
  const std::uint64_t limit = run.config.max_blocks;
  const std::uint64_t end = limit == 0 ? total : std::min(total, begin + limit);
  const auto size = run.config.tuple.size();
  const auto parts = run_blocks<std::vector<ntheory::ProgressionFactorizer>>(
      begin, end, run.config.workers,
      [&] { return std::vector<ntheory::ProgressionFactorizer>(size, ntheory::ProgressionFactorizer(run.table)); },
      [&](std::uint64_t b, std::vector<ntheory::ProgressionFactorizer>& fac) {
        return fast_block(run, b, fac);
      });
  for (const auto& p : parts) merged.merge(p);
  if (end < total) throw PartialRangeError(Checkpoint{run_fingerprint(run), end, total, merged});
  return make_report(run, merged, c);
}

SumsReport reference_sums(const SieveRun& run, double c) {
  BlockSums merged = empty_sums(run.k0);
  const auto parts = run_blocks<int>(
      0, run.blocks(), run.config.workers, [] { return 0; },
      [&](std::uint64_t b, int&) { return reference_block(run, b); });
  for (const auto& p : parts) merged.merge(p);
  return make_report(run, merged, c);
}

void write_sums_csv(std::ostream& out, const SumsReport& r) {
  out << "j,s1,s2,predicted_s1,predicted_s2_bound,ratio_s1,ratio_s2\n";
  char buf[512];
  for (unsigned j = 0; j < r.k0; ++j) {
    std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", j + 1,
                  r.sums.s1[j], r.sums.s2[j], r.predicted.s1_per_j, r.predicted.s2_per_j,
                  r.ratio_s1[j], r.ratio_s2[j]);
    out << buf;
  }
}

nlohmann::json to_json(const SumsReport& r) {
  nlohmann::json j;
  j["x"] = r.x;
  j["k0"] = r.k0;
  j["W"] = r.w;
  j["v"] = r.v;
  j["log_R"] = r.log_r;
  j["sums"] = sums_json(r.sums);
  j["s1_total"] = r.s1_total;
  j["s2_total"] = r.s2_total;
  j["predicted"] = {{"int_F2", r.predicted.int_f2},
                    {"int_inner2", r.predicted.int_inner2},
                    {"s1_per_j", r.predicted.s1_per_j},
                    {"s2_per_j_bound", r.predicted.s2_per_j},
                    {"s3", r.predicted.s3}};
  j["ratio_s1"] = r.ratio_s1;
  j["ratio_s2"] = r.ratio_s2;
  j["ratio_s3"] = r.ratio_s3;
  if (std::isinf(r.c)) {
    j["C"] = "inf";
  } else {
    j["C"] = r.c;
  }
  j["m"] = r.m;
  j["S"] = r.s_value;
  return j;
}

}  // namespace twinsieve::sieve
