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

#include "twinsieve/variational/verify.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <ostream>

#include "twinsieve/errors.hpp"
#include "twinsieve/variational/schedule.hpp"
#include "twinsieve/variational/tao.hpp"
#include "twinsieve/variational/weights.hpp"

namespace twinsieve::variational {

nlohmann::json to_json(const VerificationRecord& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["error"] = r.error;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  if (r.pass) j["pass"] = *r.pass;
  if (r.ratio) j["ratio"] = *r.ratio;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace {

void require_k0(unsigned k0, unsigned max, const char* who) {
  if (k0 < 1 || k0 > max) {
    throw DomainError(std::string(who) + ": k0 must be in [1, " + std::to_string(max) + "]");
  }
}

VerificationRecord record(std::string name, const McOptions& o) {
  VerificationRecord r;
  r.name = std::move(name);
  r.samples = o.samples;
  r.seed = o.seed;
  return r;
}

// gamma^{2k0-2} / (2k0)^{2k0}
double boundary_scale(const Schedule& s) {
  const double n = 2.0 * s.k0;
  return std::exp((n - 2.0) * std::log(s.gamma) - n * std::log(n));
}

}  // namespace

VerificationRecord verify_mwu(unsigned k0, const McOptions& options) {
  require_k0(k0, 4, "verify_mwu");
  const ProductWeight w(make_schedule(k0));
  const Integrand f = [&w](std::span<const double> t) {
    const double v = w.value(t);
    return v * v;
  };
  const QuadratureEstimate q = simplex_mc(f, 1.0, w.dim(), options);
  VerificationRecord r = record("mwu_k0_" + std::to_string(k0), options);
  r.lhs = q.value;
  r.rhs = box_self_integral(w.schedule());
  r.error = q.error_bound;
  r.pass = r.lhs <= r.rhs + r.error;
  r.ratio = r.lhs / r.rhs;
  return r;
}

VerificationRecord verify_mwl(unsigned k0, const McOptions& options) {
  require_k0(k0, 4, "verify_mwl");
  const ProductWeight w(make_schedule(k0));
  const Integrand f = [&w](std::span<const double> x) {
    double sigma = 0.0;
    double p = 1.0;
    for (const double v : x) {
      sigma += v;
      p *= w.factor(v);
    }
    const double inner = p * w.sum_profile(sigma, 0);
    return inner * inner;
  };
  const QuadratureEstimate q = simplex_mc(f, 1.0, w.dim() - 1, options);
  const Schedule& s = w.schedule();
  VerificationRecord r = record("mwl_k0_" + std::to_string(k0), options);
  r.lhs = q.value;
  r.rhs = (s.a - 2.0) / (2.0 * s.k0) * box_self_integral(s);
  r.error = q.error_bound;
  r.ratio = r.lhs / r.rhs;
  if (s.a - 2.0 <= 0.0) r.note = "vacuous: A - 2 <= 0, right-hand side is not positive";
  return r;
}

ScalarChfRow scalar_chf(double k0) {
  const Schedule s = make_schedule(k0);
  ScalarChfRow row;
  row.k0 = k0;
  row.lhs = 1.0 - 2.24 * k0 * s.delta1;
  row.applicable = s.a - 2.0 > 0.0 && !s.degenerate;
  row.rhs = row.applicable ? (s.a - 2.5) / (s.a - 2.0) : 0.0;
  row.holds = row.applicable && row.lhs >= row.rhs;
  return row;
}

ChfReport verify_chf(unsigned k0, const McOptions& options, std::span<const double> grid) {
  require_k0(k0, 3, "verify_chf");
  ChfReport rep;
  rep.scalar_pass = true;
  for (const double k : grid) {
    rep.scalar.push_back(scalar_chf(k));
    if (rep.scalar.back().applicable && !rep.scalar.back().holds) rep.scalar_pass = false;
  }
  rep.mc = record("chf_k0_" + std::to_string(k0), options);
  const Schedule s = make_schedule(k0);
  if (s.degenerate) {
    rep.mc.note = "not applicable: delta1 is infinite at k0 = 1";
    return rep;
  }
  const SmoothWeight smooth(s);
  const ProductWeight plain(s);
  const VectorIntegrand f = [&](std::span<const double> x, std::span<double> out) {
    double sigma = 0.0;
    double ps = 1.0;
    double pp = 1.0;
    for (const double v : x) {
      sigma += v;
      ps *= smooth.factor(v);
      pp *= plain.factor(v);
    }
    const double a = ps == 0.0 ? 0.0 : ps * smooth.sum_profile(sigma, 0);
    const double b = pp * plain.sum_profile(sigma, 0);
    out[0] = a * a;
    out[1] = b * b;
  };
  const auto q = simplex_mc(f, 2, 1.0, 2 * k0 - 1, options);
  const double factor = 1.0 - 2.24 * k0 * s.delta1;
  rep.mc.lhs = q[0].value;
  rep.mc.rhs = factor * q[1].value;
  rep.mc.error = q[0].error_bound + std::abs(factor) * q[1].error_bound;
  rep.mc.pass = rep.mc.lhs >= rep.mc.rhs - rep.mc.error;
  rep.mc.ratio = rep.mc.lhs / rep.mc.rhs;
  rep.mc.note = "asymptotic inequality; pass is informational";
  return rep;
}

std::vector<VerificationRecord> IBoundsReport::records() const {
  std::vector<VerificationRecord> out(3);
  const QuadratureEstimate* est[3] = {&i1, &i2, &i3};
  const double bounds[3] = {i1_bound, i2_bound, i3_bound};
  for (int j = 0; j < 3; ++j) {
    VerificationRecord& r = out[j];
    r.name = "I" + std::to_string(j + 1) + "_k0_" + std::to_string(k0);
    r.lhs = est[j]->value;
    r.rhs = bounds[j];
    r.error = est[j]->error_bound;
    r.samples = est[j]->samples;
    r.seed = est[j]->seed;
    if (bounds[j] > 0.0) r.ratio = r.lhs / bounds[j];
  }
  out[2].pass = i3_pass;
  out[0].note = "asymptotic bound; ratio only";
  out[1].note = "asymptotic bound; ratio only";
  return out;
}

IBoundsReport verify_i_bounds(unsigned k0, double theta0, const McOptions& options,
                              double delta1) {
  require_k0(k0, 3, "verify_i_bounds");
  if (!(theta0 > 0.5 && theta0 < 2.0 / 3.0)) {
    throw DomainError("verify_i_bounds: theta0 must lie in (1/2, 2/3)");
  }
  const auto w = make_smooth_weight(k0, delta1);
  const Schedule& s = w->schedule();
  const double n = 2.0 * k0;
  const double cap = tao_cap(theta0);
  const VectorIntegrand f = [&](std::span<const double> x, std::span<double> out) {
    double sigma = 0.0;
    double rest = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sigma += x[i];
      if (i > 0) rest *= w->factor(x[i]);
    }
    if (sigma >= 1.0 || rest == 0.0) {
      out[0] = out[1] = out[2] = 0.0;
      return;
    }
    const double pre = x[0] / (cap - sigma);
    const double g0 = w->sum_profile(sigma, 0);
    const double g1 = w->sum_profile(sigma, 1);
    const double u = n * x[0];
    const double q = 1.0 + s.a * u;
    const double a = g1 * w->factor(x[0]) * rest;
    const double b = g0 * n * w->h2().derivative(u) / q * rest;
    const double c = g0 * n * s.a * w->h2().value(u) / (q * q) * rest;
    out[0] = pre * a * a;
    out[1] = pre * b * b;
    out[2] = pre * c * c;
  };
  const auto q = simplex_mc(f, 3, 1.0, 2 * k0 - 1, options);
  IBoundsReport r;
  r.k0 = k0;
  r.theta0 = theta0;
  r.cap = cap;
  r.i1 = q[0];
  r.i2 = q[1];
  r.i3 = q[2];
  r.scale = boundary_scale(s);
  r.i3_bound = r.scale / (6.0 * (cap - 1.0));
  r.i3_pass = r.i3.value <= r.i3_bound + r.i3.error_bound;

  const double d1 = w->delta1();
  const double d2 = w->delta2();
  const double tail = std::pow(s.gamma / n, n - 2.0);  // (gamma / 2k0)^{2k0-2}
  r.i2_bound = (1.0 / (cap - 1.0)) * (1.0 + 1.0 / d2) * (1.0 + 1.0 / d2) * (d2 / n) *
               (1.02 * std::log(s.k0) / (n * n)) * tail;
  const double l = std::log1p(n * s.a * d1);
  r.i1_bound = (1.0 + d1) * (1.0 + d1) * (1.0 - s.gamma) / ((cap - 1.0) * n * n * s.a) * tail +
               l * l / ((n * s.a) * (n * s.a) * (cap - 1.0)) * (1.0 + 1.0 / d1) *
                   (1.0 + 1.0 / d1) * d1 / (4.0 * n * s.a) * tail;
  return r;
}

std::vector<VerificationRecord> AlphaBetaReport::records() const {
  std::vector<VerificationRecord> out(3);
  const char* names[3] = {"alpha", "beta1", "beta2"};
  const QuadratureEstimate* est[3] = {&alpha, &beta1, &beta2};
  for (int j = 0; j < 3; ++j) {
    VerificationRecord& r = out[j];
    r.name = std::string(names[j]) + "_k0_" + std::to_string(k0);
    r.lhs = est[j]->value;
    r.error = est[j]->error_bound;
    r.samples = est[j]->samples;
    r.seed = est[j]->seed;
  }
  out[0].rhs = alpha_cap;
  out[0].ratio = alpha_ratio;
  out[0].note = "cap holds only for large k0; ratio only";
  return out;
}

AlphaBetaReport alpha_beta_report(unsigned k0, double theta0, double delta_prime,
                                  const McOptions& options, double delta1) {
  require_k0(k0, 2, "alpha_beta_report");
  const auto w = make_smooth_weight(k0, delta1);
  const double cap = tao_cap(theta0);
  const TaoBoundary b = weight_boundary(w, cap);
  const Ramp h = tao_ramp(b, delta_prime);
  NestedOptions inner;
  inner.abs_tol = 1e-14;
  inner.rel_tol = 1e-8;
  inner.max_intervals = 200;

  const VectorIntegrand f = [&](std::span<const double> t, std::span<double> out) {
    const double d = tao_D(t, b, h);
    out[0] = t[1] * d * d;
    out[1] = t[1] * t[1] * d * d;
    if (d == 0.0) {
      out[2] = 0.0;
      return;
    }
    double others = 0.0;  // t_3 + ... + t_dim
    for (std::size_t i = 2; i < t.size(); ++i) others += t[i];
    const double upper = std::min(b.support - others, cap - t[0] - others);
    if (upper <= t[1]) {
      out[2] = 0.0;
      return;
    }
    std::vector<double> u(t.begin(), t.end());
    std::vector<double> bp(b.knots.coordinate);
    for (const double s : b.knots.sum) bp.push_back(s - others);
    for (const double s : h.knots()) bp.push_back(s - t[0] - others);
    const auto g = [&](double v) {
      u[1] = v;
      return tao_D(u, b, h);
    };
    double phi = 0.0;
    try {
      phi = integrate_1d(g, t[1], upper, inner, bp).value;
    } catch (const QuadratureBudgetError& e) {
      phi = e.best().value;
    }
    out[2] = -t[1] * d * phi;
  };
  const auto q = simplex_mc(f, 3, cap, b.dim, options);
  AlphaBetaReport r;
  r.k0 = k0;
  r.theta0 = theta0;
  r.delta_prime = delta_prime;
  r.alpha = q[0];
  r.beta1 = q[1];
  r.beta2 = q[2];
  const double scale = boundary_scale(w->schedule());
  r.alpha_cap = 0.167 / (cap - 1.0) * scale;
  r.alpha_ratio = r.alpha.value / r.alpha_cap;
  r.s2_factor = 0.168 / (cap - 1.0) * scale;
  return r;
}

void write_schedule_csv(std::ostream& out, std::span<const double> k0s) {
  out << "k0,A,T,gamma,delta1,delta2,log_box,identity_residual\n";
  char buf[512];
  for (const double k0 : k0s) {
    const Schedule s = make_schedule(k0);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3e\n", k0, s.a,
                  s.t, s.gamma, s.delta1, s.delta2, log_box_self_integral(s),
                  identity_residual(s));
    out << buf;
  }
}

}  // namespace twinsieve::variational
