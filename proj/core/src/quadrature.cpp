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

#include "twinsieve/variational/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <queue>
#include <random>
#include <thread>

namespace twinsieve::variational {

namespace {

// ---- Monte Carlo ----------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  // Chan et al. pairwise merge.
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double nt = na + nb;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    n += o.n;
  }
};

struct ChunkResult {
  std::vector<Moments> moments;
  std::exception_ptr error;
};

double log_factorial(unsigned d) { return std::lgamma(static_cast<double>(d) + 1.0); }

}  // namespace

std::vector<QuadratureEstimate> simplex_mc(const VectorIntegrand& f, std::size_t outputs,
                                           double y, unsigned dim,
                                           const McOptions& options) {
  if (dim < 1) throw DomainError("simplex_mc: dim must be >= 1");
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("simplex_mc: y must be positive");
  if (options.samples < 1000) throw DomainError("simplex_mc: need at least 1000 samples");
  if (options.chunk == 0) throw DomainError("simplex_mc: chunk must be positive");
  if (outputs == 0) throw DomainError("simplex_mc: no outputs requested");

  const std::uint64_t chunks = (options.samples + options.chunk - 1) / options.chunk;
  std::vector<ChunkResult> results(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    ChunkResult& r = results[c];
    r.moments.assign(outputs, Moments{});
    try {
      std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(c + 1)));
      const std::uint64_t begin = c * options.chunk;
      const std::uint64_t end = std::min(options.samples, begin + options.chunk);
      std::vector<double> e(dim + 1);
      std::vector<double> t(dim);
      std::vector<double> out(outputs);
      for (std::uint64_t s = begin; s < end; ++s) {
        double total = 0.0;
        for (auto& v : e) {
          // u in [0, 1) with 53 random bits; -log(1 - u) is finite.
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          v = -std::log1p(-u);
          total += v;
        }
        for (unsigned i = 0; i < dim; ++i) t[i] = y * e[i] / total;
        f(t, out);
        for (std::size_t k = 0; k < outputs; ++k) {
          if (!std::isfinite(out[k])) {
            throw PoisonedEstimateError("simplex_mc: non-finite integrand value", t, s);
          }
          r.moments[k].add(out[k]);
        }
      }
    } catch (...) {
      r.error = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1 || chunks == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Moments> total(outputs);
  for (const ChunkResult& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    for (std::size_t k = 0; k < outputs; ++k) total[k].merge(r.moments[k]);
  }

  const double volume = std::exp(dim * std::log(y) - log_factorial(dim));
  std::vector<QuadratureEstimate> out(outputs);
  for (std::size_t k = 0; k < outputs; ++k) {
    const Moments& m = total[k];
    const double var = m.n > 1 ? m.m2 / static_cast<double>(m.n - 1) : 0.0;
    QuadratureEstimate& q = out[k];
    q.value = volume * m.mean;
    q.std_error = volume * std::sqrt(var / static_cast<double>(m.n));
    q.error_bound = 3.0 * q.std_error;
    q.method = "simplex-mc";
    q.samples = options.samples;
    q.seed = options.seed;
    q.evaluations = options.samples;
  }
  return out;
}

QuadratureEstimate simplex_mc(const Integrand& f, double y, unsigned dim,
                              const McOptions& options) {
  const VectorIntegrand g = [&f](std::span<const double> t, std::span<double> out) {
    out[0] = f(t);
  };
  return simplex_mc(g, 1, y, dim, options)[0];
}

// ---- Gauss-Kronrod --------------------------------------------------------

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Sample {
  double value;
  double error;  // carried from inner levels
};

using PairFn = std::function<Sample(double)>;

struct Segment {
  double a, b;
  double value, error, carried;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const PairFn& f, double a, double b, std::uint64_t& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  double carried = 0.0;
  const Sample mid = f(c);
  fv[7] = mid.value;
  double k = kWgk[7] * mid.value;
  double g = kWg[3] * mid.value;
  carried += kWgk[7] * mid.error;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const Sample lo = f(c - dx);
    const Sample hi = f(c + dx);
    fv[j] = lo.value;
    fv[14 - j] = hi.value;
    k += kWgk[j] * (lo.value + hi.value);
    carried += kWgk[j] * (lo.error + hi.error);
    if (j % 2 == 1) g += kWg[j / 2] * (lo.value + hi.value);
  }
  evals += 15;
  const double mean = 0.5 * k;
  double asc = kWgk[7] * std::abs(fv[7] - mean);
  double abs_sum = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    abs_sum += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
  }
  k *= h;
  g *= h;
  asc *= std::abs(h);
  abs_sum *= std::abs(h);
  double err = std::abs(k - g);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  err = std::max(err, floor);
  return {a, b, k, err, carried * std::abs(h)};
}

struct Adaptive {
  double value = 0.0;
  double own_error = 0.0;
  double carried = 0.0;
  bool converged = true;
};

Adaptive adaptive(const PairFn& f, double a, double b, double abs_tol, double rel_tol,
                  std::size_t max_intervals, std::span<const double> breakpoints,
                  std::uint64_t& evals) {
  Adaptive out;
  if (!(b > a)) return out;
  std::vector<double> cuts{a};
  for (const double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  double value = 0.0;
  double error = 0.0;
  double carried = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    Segment s = gk15(f, cuts[i], cuts[i + 1], evals);
    value += s.value;
    error += s.error;
    carried += s.carried;
    heap.push(s);
  }
  std::size_t count = heap.size();
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (count >= max_intervals) {
      out.converged = false;
      break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      break;
    }
    heap.pop();
    const Segment l = gk15(f, worst.a, mid, evals);
    const Segment r = gk15(f, mid, worst.b, evals);
    value += l.value + r.value - worst.value;
    error += l.error + r.error - worst.error;
    carried += l.carried + r.carried - worst.carried;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  // Re-sum to shed accumulated update error.
  value = 0.0;
  error = 0.0;
  carried = 0.0;
  std::vector<Segment> segs;
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const Segment& s : segs) {
    value += s.value;
    error += s.error;
    carried += s.carried;
  }
  out.value = value;
  out.own_error = error;
  out.carried = carried;
  return out;
}

}  // namespace

QuadratureEstimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                                const NestedOptions& options,
                                std::span<const double> breakpoints) {
  std::uint64_t evals = 0;
  const PairFn g = [&f](double x) { return Sample{f(x), 0.0}; };
  const Adaptive r = adaptive(g, a, b, options.abs_tol, options.rel_tol, options.max_intervals,
                              breakpoints, evals);
  QuadratureEstimate q;
  q.value = r.value;
  q.error_bound = r.own_error;
  q.method = "gauss-kronrod-15";
  q.tolerance = options.rel_tol;
  q.evaluations = evals;
  if (!r.converged) {
    throw QuadratureBudgetError("integrate_1d: tolerance not reached within the panel budget", q);
  }
  return q;
}

QuadratureEstimate nested_quadrature(const Integrand& f, const SimplexRegion& region,
                                     const NestedOptions& options, const Knots& knots) {
  const unsigned dim = region.dim;
  if (dim < 1 || dim > 6) throw DomainError("nested_quadrature: dim must be in [1, 6]");
  if (!(region.y > 0.0)) throw DomainError("nested_quadrature: y must be positive");
  std::vector<double> lo = region.lo.empty() ? std::vector<double>(dim, 0.0) : region.lo;
  std::vector<double> hi = region.hi.empty() ? std::vector<double>(dim, region.y) : region.hi;
  if (lo.size() != dim || hi.size() != dim) {
    throw DomainError("nested_quadrature: bounds do not match the dimension");
  }
  // rest_lo[i] = lo[i] + ... + lo[dim - 1]
  std::vector<double> rest_lo(dim + 1, 0.0);
  for (unsigned i = dim; i-- > 0;) rest_lo[i] = rest_lo[i + 1] + lo[i];

  const double inner_rel = options.rel_tol / (2.0 * dim);
  const double inner_abs = options.abs_tol / (2.0 * dim);
  std::vector<double> t(dim, 0.0);
  std::uint64_t evals = 0;
  std::vector<double> bp;

  std::function<Sample(unsigned, double)> level = [&](unsigned i, double s) -> Sample {
    if (i == dim) {
      ++evals;
      return {f(t), 0.0};
    }
    const double a = lo[i];
    const double b = std::min(hi[i], region.y - s - rest_lo[i + 1]);
    if (!(b > a)) return {0.0, 0.0};
    std::vector<double> cuts;
    for (const double c : knots.coordinate) cuts.push_back(c);
    for (const double k : knots.sum) {
      cuts.push_back(k - s - rest_lo[i + 1]);
      if (i + 1 < dim) {
        for (const double c : knots.coordinate) cuts.push_back(k - s - c);
      }
    }
    const PairFn inner = [&, i, s](double x) {
      t[i] = x;
      return level(i + 1, s + x);
    };
    const Adaptive r = adaptive(inner, a, b, i == 0 ? options.abs_tol / 2 : inner_abs,
                                i == 0 ? options.rel_tol / 2 : inner_rel,
                                options.max_intervals, cuts, evals);
    return {r.value, r.own_error + r.carried};
  };

  const Sample total = level(0, 0.0);
  QuadratureEstimate q;
  q.value = total.value;
  q.error_bound = total.error;
  q.method = "nested-gauss-kronrod-15";
  q.tolerance = options.rel_tol;
  q.evaluations = evals;
  const double target = std::max(options.abs_tol, options.rel_tol * std::abs(q.value));
  if (!(q.error_bound <= target)) {
    throw QuadratureBudgetError("nested_quadrature: tolerance not reached within the panel budget",
                                q);
  }
  return q;
}

QuadratureEstimate nested_quadrature(const Integrand& f, double y, unsigned dim,
                                     const NestedOptions& options, const Knots& knots) {
  SimplexRegion region;
  region.dim = dim;
  region.y = y;
  return nested_quadrature(f, region, options, knots);
}

}  // namespace twinsieve::variational
