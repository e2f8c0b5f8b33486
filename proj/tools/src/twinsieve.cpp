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

// twinsieve command-line driver.
//
// Exit status: 0 on success, 1 when an asserted inequality fails, 2 on
// usage or input errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "twinsieve/errors.hpp"
#include "twinsieve/pipeline.hpp"
#include "twinsieve/report.hpp"
#include "twinsieve/sieve_lab.hpp"
#include "twinsieve/tuples.hpp"
#include "twinsieve/variational/schedule.hpp"
#include "twinsieve/variational/tao.hpp"
#include "twinsieve/variational/verify.hpp"

namespace v = twinsieve::variational;
namespace sv = twinsieve::sieve;
namespace tp = twinsieve::tuples;
namespace pl = twinsieve::pipeline;
namespace rp = twinsieve::report;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "1e6" as well as "1000000".
std::uint64_t to_count(double value, const char* flag) {
  if (!(value >= 0.0) || value > 1.8e19 || value != std::floor(value)) {
    throw UsageError(std::string(flag) + " must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(value);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    rp::write_text_file(out, text);
  }
}

tp::OffsetTuple parse_tuple(const std::string& text) {
  std::vector<std::uint64_t> h;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(item, &pos);
    if (pos != item.size()) throw UsageError("--tuple: bad offset '" + item + "'");
    h.push_back(x);
  }
  if (h.empty()) throw UsageError("--tuple: empty");
  return tp::OffsetTuple(std::move(h));
}

tp::OffsetTuple twin_tuple(const std::string& text, std::uint64_t k0) {
  if (!text.empty()) {
    const auto t = parse_tuple(text);
    return tp::OffsetTuple({t.offsets().begin(), t.offsets().end()}, true);
  }
  if (k0 == 0) throw UsageError("give --tuple or --k0");
  return tp::build_twin_tuple(k0);
}

// JSON config keys become "--key value" tokens unless the flag is already
// on the command line.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + ": expected a JSON object");
  const auto present = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  const auto scalar = [](const nlohmann::json& x) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_number_integer()) return std::to_string(x.get<long long>());
    if (x.is_number_unsigned()) return std::to_string(x.get<unsigned long long>());
    if (x.is_number()) return rp::format_double(x.get<double>());
    throw UsageError("config: unsupported value " + x.dump());
  };
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || present(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& x : value) {
        args.push_back(flag);
        args.push_back(scalar(x));
      }
    } else {
      args.push_back(flag);
      args.push_back(scalar(value));
    }
  }
  return args;
}

struct Common {
  std::string out;
  std::string config;
  unsigned workers = 1;
};

void add_common(CLI::App* sub, Common& c, bool workers) {
  sub->add_option("--out", c.out, "Output path (default stdout)");
  sub->add_option("--config", c.config, "JSON file of flag values; flags given here win");
  if (workers) {
    sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  }
}

// --- tuple -----------------------------------------------------------------

struct TupleArgs {
  std::uint64_t k0 = 0;
  bool json = false;
  bool cache = false;
};

int run_tuple(const TupleArgs& a, const Common& c) {
  const auto t = tp::build_twin_tuple(a.k0);
  const auto cert = tp::is_admissible(t);
  if (!cert || !cert.certificate.verify(t)) {
    std::cerr << "tuple failed certification\n";
    return kVerificationFailed;
  }
  std::ostringstream s;
  if (a.json) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& m : cert.certificate.classes) {
      classes.push_back({{"p", m.prime}, {"r", m.residue}});
    }
    s << rp::render_json({{"k0", a.k0},
                          {"offsets", std::vector<std::uint64_t>(t.offsets().begin(),
                                                                 t.offsets().end())},
                          {"width", tp::width(t)},
                          {"missed_classes", classes}});
  } else if (a.cache) {
    tp::write_tuple_cache(s, t);
  } else {
    for (std::size_t i = 0; i < t.size(); ++i) s << (i ? " " : "") << t[i];
    s << '\n';
  }
  emit(c.out, s.str());
  return kOk;
}

// --- schedule --------------------------------------------------------------

int run_schedule(const std::vector<double>& k0s, const Common& c) {
  std::ostringstream s;
  v::write_schedule_csv(s, k0s);
  emit(c.out, s.str());
  return kOk;
}

// --- integrals -------------------------------------------------------------

struct IntegralArgs {
  unsigned k0 = 1;
  std::string check = "mwu";
  double samples = 1e6;
  std::uint64_t seed = 1;
  double theta0 = 0.52427 / (1.0 - 8e-6);
  double delta_prime = 0.05;
  double delta1 = 0.0;
  std::vector<double> chf_grid;
};

int run_integrals(const IntegralArgs& a, const Common& c) {
  v::McOptions o;
  o.samples = to_count(a.samples, "--samples");
  o.seed = a.seed;
  o.workers = c.workers;
  std::vector<v::VerificationRecord> records;
  nlohmann::json extra = nlohmann::json::object();
  bool ok = true;
  if (a.check == "mwu") {
    records.push_back(v::verify_mwu(a.k0, o));
  } else if (a.check == "mwl") {
    records.push_back(v::verify_mwl(a.k0, o));
  } else if (a.check == "chf") {
    std::vector<double> grid = a.chf_grid;
    if (grid.empty()) grid = {10, 100, 1e3, 1e4, 1e6, 1e9};
    const auto r = v::verify_chf(a.k0, o, grid);
    records.push_back(r.mc);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.scalar) {
      rows.push_back({{"k0", row.k0},
                      {"lhs", row.lhs},
                      {"rhs", row.rhs},
                      {"applicable", row.applicable},
                      {"holds", row.holds}});
    }
    extra["scalar"] = rows;
    extra["scalar_pass"] = r.scalar_pass;
    ok = r.scalar_pass;
    // The Monte Carlo side is an asymptotic statement; it does not set the status.
    records.back().pass.reset();
  } else if (a.check == "i-bounds") {
    const auto r = v::verify_i_bounds(a.k0, a.theta0, o, a.delta1);
    records = r.records();
    extra["cap"] = r.cap;
    extra["scale"] = r.scale;
  } else if (a.check == "alpha-beta") {
    const auto r = v::alpha_beta_report(a.k0, a.theta0, a.delta_prime, o, a.delta1);
    records = r.records();
    extra["alpha_cap"] = r.alpha_cap;
    extra["s2_factor"] = r.s2_factor;
  } else {
    throw UsageError("--check must be one of mwu, mwl, chf, i-bounds, alpha-beta");
  }
  nlohmann::json j = {{"check", a.check}, {"k0", a.k0}};
  for (const auto& r : records) {
    j["records"].push_back(v::to_json(r));
    if (r.pass && !*r.pass) ok = false;
  }
  for (const auto& [k, x] : extra.items()) j[k] = x;
  j["pass"] = ok;
  emit(c.out, rp::render_json(j));
  return ok ? kOk : kVerificationFailed;
}

// --- tao -------------------------------------------------------------------

struct TaoArgs {
  std::string boundary = "indicator";
  unsigned k0 = 1;
  double theta0 = 0.5;
  std::vector<double> delta_primes{0.1, 0.05, 0.025};
  double samples = 1e6;
  std::uint64_t seed = 1;
};

int run_tao(const TaoArgs& a, const Common& c) {
  const double cap = v::tao_cap(a.theta0);
  v::TaoBoundary b;
  if (a.boundary == "indicator") {
    b = v::indicator_boundary(cap);
  } else if (a.boundary == "zero") {
    b = v::zero_boundary(2 * a.k0, cap);
  } else if (a.boundary == "weight") {
    b = v::weight_boundary(v::make_smooth_weight(a.k0), cap);
  } else {
    throw UsageError("--boundary must be indicator, zero or weight");
  }
  v::McOptions o;
  o.samples = to_count(a.samples, "--samples");
  o.seed = a.seed;
  o.workers = c.workers;
  const auto mc = v::ccs_lower_bound(b, o);
  const auto step = v::verify_tao_step(b, a.delta_primes, v::NestedOptions{});
  const auto q = [](const v::QuadratureEstimate& e) {
    return nlohmann::json{{"value", e.value},
                          {"error_bound", e.error_bound},
                          {"method", e.method},
                          {"samples", e.samples},
                          {"seed", e.seed}};
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : step.rows) {
    rows.push_back({{"delta_prime", r.delta_prime}, {"alpha", q(r.alpha)}, {"excess", r.excess}});
  }
  const nlohmann::json j = {{"boundary", b.label},
                            {"cap", cap},
                            {"ccs_bound_mc", q(mc)},
                            {"ccs_bound", q(step.ccs_bound)},
                            {"alpha_extremal", q(step.alpha_extremal)},
                            {"rows", rows},
                            {"above", step.above},
                            {"shrinking", step.shrinking},
                            {"pass", step.pass()}};
  emit(c.out, rp::render_json(j));
  return step.pass() ? kOk : kVerificationFailed;
}

// --- sieve-run -------------------------------------------------------------

struct SieveArgs {
  double x = 1e6;
  std::uint64_t k0 = 1;
  std::string tuple;
  std::uint64_t d0 = 7;
  double theta0 = 0.5243;
  unsigned m = 1;
  std::string weight = "product";
  double delta1 = 0.0;
  unsigned grid = 64;
  double block_terms = 4096;
  double max_blocks = 0;
  std::string c = "inf";
  std::string checkpoint;
  std::string csv;
  bool reference = false;
};

int run_sieve(const SieveArgs& a, const Common& c) {
  sv::SieveConfig cfg;
  cfg.x = to_count(a.x, "--x");
  cfg.tuple = twin_tuple(a.tuple, a.k0);
  cfg.d0 = a.d0;
  cfg.theta0 = a.theta0;
  cfg.m = a.m;
  cfg.weight = sv::weight_kind_from_string(a.weight);
  cfg.delta1 = a.delta1;
  cfg.grid_intervals = a.grid;
  cfg.workers = c.workers;
  cfg.block_terms = to_count(a.block_terms, "--block-terms");
  cfg.max_blocks = to_count(a.max_blocks, "--max-blocks");
  if (cfg.max_blocks > 0 && a.checkpoint.empty()) {
    throw UsageError("--max-blocks needs --checkpoint");
  }
  if (a.reference && cfg.max_blocks > 0) {
    throw UsageError("--reference runs the whole range; drop --max-blocks");
  }
  const double cc = a.c == "inf" ? std::numeric_limits<double>::infinity() : std::stod(a.c);
  const auto run = sv::make_sieve_run(cfg);

  std::optional<sv::Checkpoint> resume;
  if (!a.checkpoint.empty()) {
    std::ifstream in(a.checkpoint);
    if (in) resume = sv::checkpoint_from_json(nlohmann::json::parse(in));
  }
  sv::SumsReport r;
  try {
    r = a.reference ? sv::reference_sums(run, cc)
                    : sv::compute_sums(run, cc, resume ? &*resume : nullptr);
  } catch (const sv::PartialRangeError& e) {
    rp::write_text_file(a.checkpoint, rp::render_json(sv::to_json(e.checkpoint())));
    std::cerr << "partial range: " << e.checkpoint().next_block << " of "
              << e.checkpoint().total_blocks << " blocks; rerun to resume from "
              << a.checkpoint << '\n';
    return kOk;
  }
  if (!a.checkpoint.empty()) std::remove(a.checkpoint.c_str());
  if (!a.csv.empty()) {
    std::ostringstream s;
    sv::write_sums_csv(s, r);
    rp::write_text_file(a.csv, s.str());
  }
  emit(c.out, rp::render_json(sv::to_json(r)));
  return kOk;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  double x1 = 2;
  double x2 = 1e6;
  std::uint64_t k0 = 2;
  std::string tuple;
  unsigned d = 2;
  unsigned r = 1;
  bool pair_leaders = false;
  std::string summary;
};

int run_scan(const ScanArgs& a, const Common& c) {
  const auto t = a.tuple.empty() ? tp::build_twin_tuple(a.k0) : parse_tuple(a.tuple);
  sv::ScanOptions o;
  o.max_omega = a.d;
  o.min_primes = a.r;
  o.pair_leaders = a.pair_leaders;
  o.workers = c.workers;
  const std::uint64_t x1 = to_count(a.x1, "--x1");
  const std::uint64_t x2 = to_count(a.x2, "--x2");
  const auto hits = sv::cluster_scan(x1, x2, t, o);
  std::ostringstream s;
  sv::write_hits_csv(s, hits);
  emit(c.out, s.str());
  if (!a.summary.empty()) {
    rp::write_text_file(a.summary, rp::render_json(sv::hits_summary(hits, x1, x2, t, o)));
  }
  return kOk;
}

// --- constants / headline --------------------------------------------------

struct PresetArgs {
  std::string preset = "baker-irving";
  std::optional<double> theta0;
  double c1 = 0.0;

  pl::DistributionPreset resolve() const {
    if (theta0) return pl::custom_preset(*theta0, c1);
    return pl::preset(preset);
  }
};

void add_preset(CLI::App* sub, PresetArgs& p) {
  sub->add_option("--preset", p.preset, "bombieri-vinogradov, baker-irving or stadlmann");
  sub->add_option("--theta0", p.theta0, "Custom exponent; overrides --preset");
  sub->add_option("--c1", p.c1, "Minorant deficit for a custom exponent");
}

int run_constants(unsigned long long m, double width, const PresetArgs& p, const Common& c) {
  const auto r = pl::derive_constants(m, p.resolve(), width);
  nlohmann::json j = pl::to_json(r);
  j["preset_detail"] = pl::to_json(p.resolve());
  emit(c.out, rp::render_json(j));
  return r.log_c <= r.rhs_763 ? kOk : kVerificationFailed;
}

int run_headline(unsigned long long lo, unsigned long long hi, bool json, const PresetArgs& p,
                 const Common& c) {
  const auto t = pl::check_headline(lo, hi, p.resolve());
  if (json) {
    emit(c.out, rp::render_json(pl::to_json(t)));
  } else {
    std::ostringstream s;
    pl::write_headline_csv(s, t);
    emit(c.out, s.str());
  }
  for (const auto& row : t.rows) {
    if (!row.holds_763) return kVerificationFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twinsieve: sieve weights, simplex integrals and constants for bounded "
               "almost-twin-prime clusters"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;

  TupleArgs tuple_args;
  auto* tuple = app.add_subcommand("tuple", "Build and certify a narrow twin-paired tuple");
  tuple->add_option("--k0", tuple_args.k0, "Number of twin pairs")->required()->check(CLI::PositiveNumber);
  tuple->add_flag("--json", tuple_args.json, "Print offsets, width and the certificate");
  tuple->add_flag("--cache", tuple_args.cache, "Print the plain-text cache format");
  add_common(tuple, common, false);

  std::vector<double> sched_k0s;
  auto* schedule = app.add_subcommand("schedule", "Tabulate A, T, gamma and the deltas");
  schedule->add_option("--k0", sched_k0s, "k0 values")->required()->delimiter(',');
  add_common(schedule, common, false);

  IntegralArgs int_args;
  auto* integrals = app.add_subcommand("integrals", "Check a simplex-integral inequality");
  integrals->add_option("--k0", int_args.k0, "Number of twin pairs")->check(CLI::PositiveNumber);
  integrals->add_option("--check", int_args.check, "mwu, mwl, chf, i-bounds or alpha-beta");
  integrals->add_option("--samples", int_args.samples, "Monte Carlo samples");
  integrals->add_option("--seed", int_args.seed, "Monte Carlo seed");
  integrals->add_option("--theta0", int_args.theta0, "Exponent for i-bounds and alpha-beta");
  integrals->add_option("--delta-prime", int_args.delta_prime, "Ramp width for alpha-beta");
  integrals->add_option("--delta1", int_args.delta1, "Override delta1 (0 keeps the schedule)");
  integrals->add_option("--chf-grid", int_args.chf_grid, "k0 values for the scalar chf check")
      ->delimiter(',');
  add_common(integrals, common, true);

  TaoArgs tao_args;
  auto* tao = app.add_subcommand("tao", "Converse Cauchy-Schwarz step and its smoothing");
  tao->add_option("--boundary", tao_args.boundary, "indicator, zero or weight");
  tao->add_option("--k0", tao_args.k0, "Pairs (zero and weight boundaries)")->check(CLI::PositiveNumber);
  tao->add_option("--theta0", tao_args.theta0, "Cap is 2 / (3 theta0)");
  tao->add_option("--delta-primes", tao_args.delta_primes, "Ramp widths, decreasing")->delimiter(',');
  tao->add_option("--samples", tao_args.samples, "Monte Carlo samples for the bound");
  tao->add_option("--seed", tao_args.seed, "Monte Carlo seed");
  add_common(tao, common, true);

  SieveArgs sieve_args;
  auto* sieve = app.add_subcommand("sieve-run", "Evaluate S1, S2, S3 over [x, 2x)");
  sieve->add_option("--x", sieve_args.x, "Lower end of the range");
  sieve->add_option("--k0", sieve_args.k0, "Pairs; the tuple is built when --tuple is absent");
  sieve->add_option("--tuple", sieve_args.tuple, "Comma-separated twin-paired offsets");
  sieve->add_option("--d0", sieve_args.d0, "W is the product of primes below D0");
  sieve->add_option("--theta0", sieve_args.theta0, "Level exponent");
  sieve->add_option("--m", sieve_args.m, "m in R and in S1 - S2/C - m S3")->check(CLI::PositiveNumber);
  sieve->add_option("--weight", sieve_args.weight, "product or smooth");
  sieve->add_option("--delta1", sieve_args.delta1, "Smooth weight only");
  sieve->add_option("--grid", sieve_args.grid, "Grid intervals per axis");
  sieve->add_option("--block-terms", sieve_args.block_terms, "Progression terms per block");
  sieve->add_option("--max-blocks", sieve_args.max_blocks, "Stop after this many blocks");
  sieve->add_option("--C", sieve_args.c, "C in S1 - S2/C - m S3, or inf");
  sieve->add_option("--checkpoint", sieve_args.checkpoint, "Checkpoint file for partial runs");
  sieve->add_option("--csv", sieve_args.csv, "Per-pair sums as CSV");
  sieve->add_flag("--reference", sieve_args.reference, "Use the unpruned trial-division oracle");
  add_common(sieve, common, true);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Find n with many primes n + h whose n + h + 2 has few factors");
  scan->add_option("--x1", scan_args.x1, "Start of the range");
  scan->add_option("--x2", scan_args.x2, "End of the range (exclusive)");
  scan->add_option("--k0", scan_args.k0, "Pairs; the tuple is built when --tuple is absent");
  scan->add_option("--tuple", scan_args.tuple, "Comma-separated offsets");
  scan->add_option("--d", scan_args.d, "Largest Omega(n + h + 2)");
  scan->add_option("--r", scan_args.r, "Smallest number of qualifying offsets");
  scan->add_flag("--pair-leaders", scan_args.pair_leaders, "Only the first offset of each pair");
  scan->add_option("--summary", scan_args.summary, "JSON summary path");
  add_common(scan, common, true);

  unsigned long long const_m = 0;
  double width_constant = 1.0;
  PresetArgs const_preset;
  auto* constants = app.add_subcommand("constants", "Derive k0, C and the gap bound from m");
  constants->add_option("--m", const_m, "m")->required()->check(CLI::PositiveNumber);
  constants->add_option("--width-constant", width_constant, "Fitted c in width ~ c k0 (log k0)^2");
  add_preset(constants, const_preset);
  add_common(constants, common, false);

  unsigned long long m_lo = 10;
  unsigned long long m_hi = 1000;
  bool headline_json = false;
  PresetArgs head_preset;
  auto* headline = app.add_subcommand("headline", "Check log C against 7.63 m + 4 log m + 21 log 2");
  headline->add_option("--m-lo", m_lo, "First m")->check(CLI::PositiveNumber);
  headline->add_option("--m-hi", m_hi, "Last m");
  headline->add_flag("--json", headline_json, "JSON instead of CSV");
  add_preset(headline, head_preset);
  add_common(headline, common, false);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = inject_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*tuple) return run_tuple(tuple_args, common);
    if (*schedule) return run_schedule(sched_k0s, common);
    if (*integrals) return run_integrals(int_args, common);
    if (*tao) return run_tao(tao_args, common);
    if (*sieve) return run_sieve(sieve_args, common);
    if (*scan) return run_scan(scan_args, common);
    if (*constants) return run_constants(const_m, width_constant, const_preset, common);
    if (*headline) return run_headline(m_lo, m_hi, headline_json, head_preset, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
