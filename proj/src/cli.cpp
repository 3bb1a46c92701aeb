#include "dlogdist/cli.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlogdist/bounds.hpp"
#include "dlogdist/dlog.hpp"
#include "dlogdist/experiments.hpp"
#include "dlogdist/expsum.hpp"
#include "dlogdist/numtheory.hpp"
#include "dlogdist/sampling.hpp"
#include "dlogdist/torus.hpp"
#include "dlogdist/version.hpp"

namespace dlogdist {

namespace {

using json = nlohmann::ordered_json;

// Numeric payloads are quantized to 15 significant digits so that repeated
// runs serialize identically.
double sig15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return std::strtod(buf, nullptr);
}

json jnum(double v) { return sig15(v); }

json jcomplex(std::complex<double> z) {
  return json{{"re", sig15(z.real())}, {"im", sig15(z.imag())}};
}

std::string jrat(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

struct CheckList {
  json items = json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, json details = json::object()) {
    details["name"] = name;
    details["pass"] = pass;
    // keep name/pass in front
    json entry;
    entry["name"] = name;
    entry["pass"] = pass;
    for (auto& [k, v] : details.items()) {
      if (k != "name" && k != "pass") entry[k] = v;
    }
    items.push_back(entry);
    all_pass = all_pass && pass;
  }
};

struct ProgressionFlags {
  u64 a = 0;
  u64 r = 1;
  u64 n = 0;

  Progression resolve(u64 p, u64 default_n) const {
    Progression j{a, r, n == 0 ? default_n : n};
    validate_progression(j, p);
    return j;
  }
};

void add_progression_flags(CLI::App* cmd, ProgressionFlags& f, bool require_n) {
  cmd->add_option("--a", f.a, "progression offset a");
  cmd->add_option("--r", f.r, "progression step r");
  auto* opt = cmd->add_option("--n", f.n, "progression length N");
  if (require_n) opt->required();
}

json progression_config(const Progression& j) {
  return json{{"a", j.a}, {"r", j.r}, {"n", j.n}};
}

std::vector<std::pair<u64, i64>> parse_bases(const std::string& text) {
  std::vector<std::pair<u64, i64>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw PreconditionError("--bases expects g:b pairs separated by commas");
    }
    out.emplace_back(std::stoull(item.substr(0, colon)),
                     std::stoll(item.substr(colon + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw PreconditionError("--bases is empty");
  return out;
}

Interval interval_from_strings(const std::string& alpha, const std::string& beta) {
  return Interval(Rational::parse(alpha), Rational::parse(beta));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"discrete logarithms, resolvent sums, and discrepancy experiments"};
  app.require_subcommand(1);

  // flags shared across subcommands
  u64 p = 0;
  std::optional<u64> g_flag;
  u64 seed = 1;
  int jobs = 1;
  std::string format = "json";
  auto add_common = [&](CLI::App* cmd, bool need_p = true) {
    auto* po = cmd->add_option("--p", p, "odd prime modulus");
    if (need_p) po->required();
    cmd->add_option("--g", g_flag, "primitive root (auto-selected when absent)");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--jobs", jobs, "worker threads for sweeps");
    cmd->add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  // --- primroot ---
  auto* cmd_primroot = app.add_subcommand("primroot", "smallest primitive root mod p");
  add_common(cmd_primroot);

  // --- dlog ---
  auto* cmd_dlog = app.add_subcommand("dlog", "discrete logarithm of x");
  add_common(cmd_dlog);
  u64 x_value = 0;
  std::string solver = "auto";
  cmd_dlog->add_option("--x", x_value, "value in [1, p-1]")->required();
  cmd_dlog->add_option("--solver", solver, "table, bsgs, rho, or auto")
      ->check(CLI::IsMember({"table", "bsgs", "rho", "auto"}));

  // --- image ---
  auto* cmd_image = app.add_subcommand("image", "torus image of a progression");
  add_common(cmd_image);
  ProgressionFlags image_j;
  add_progression_flags(cmd_image, image_j, /*require_n=*/true);

  // --- discrepancy ---
  auto* cmd_disc = app.add_subcommand("discrepancy", "interval or extreme discrepancy");
  add_common(cmd_disc);
  ProgressionFlags disc_j;
  add_progression_flags(cmd_disc, disc_j, /*require_n=*/true);
  std::string alpha_str, beta_str;
  bool extreme = false, half_open = false, with_oracle = false;
  cmd_disc->add_option("--alpha", alpha_str, "interval left endpoint");
  cmd_disc->add_option("--beta", beta_str, "interval right endpoint");
  cmd_disc->add_flag("--extreme", extreme, "compute the extreme discrepancy");
  cmd_disc->add_flag("--half-open", half_open, "count [alpha, beta) instead of [alpha, beta]");
  cmd_disc->add_flag("--oracle", with_oracle, "cross-check against the quadratic oracle");

  // --- resolvent ---
  auto* cmd_res = app.add_subcommand("resolvent", "Lagrangian resolvent S(theta^k, zeta^u)");
  add_common(cmd_res);
  u64 k_value = 0, u_value = 0;
  cmd_res->add_option("--k", k_value, "multiplicative twist exponent")->required();
  cmd_res->add_option("--u", u_value, "additive twist exponent")->required();

  // --- phasesum ---
  auto* cmd_phase = app.add_subcommand("phasesum", "progression phase sum and its bound");
  add_common(cmd_phase);
  ProgressionFlags phase_j;
  add_progression_flags(cmd_phase, phase_j, /*require_n=*/true);
  u64 phase_u = 0;
  cmd_phase->add_option("--u", phase_u, "additive frequency")->required();

  // --- logsum ---
  auto* cmd_logsum = app.add_subcommand("logsum", "log-character sum over a progression");
  add_common(cmd_logsum);
  ProgressionFlags logsum_j;
  add_progression_flags(cmd_logsum, logsum_j, /*require_n=*/true);
  u64 logsum_k = 0;
  cmd_logsum->add_option("--k", logsum_k, "character frequency")->required();

  // --- verify-eq4 ---
  auto* cmd_eq4 = app.add_subcommand("verify-eq4", "inversion identity residual");
  add_common(cmd_eq4);
  std::optional<u64> eq4_k, eq4_z;
  u64 eq4_samples = 0;
  cmd_eq4->add_option("--k", eq4_k, "twist exponent");
  cmd_eq4->add_option("--z", eq4_z, "group element in [1, p-1]");
  cmd_eq4->add_option("--samples", eq4_samples, "random (k, z) pairs");

  // --- verify-eq5 ---
  auto* cmd_eq5 = app.add_subcommand("verify-eq5", "decomposition identity residual");
  add_common(cmd_eq5);
  ProgressionFlags eq5_j;
  add_progression_flags(cmd_eq5, eq5_j, /*require_n=*/false);
  std::optional<u64> eq5_k;
  u64 eq5_samples = 0;
  cmd_eq5->add_option("--k", eq5_k, "character frequency");
  cmd_eq5->add_option("--samples", eq5_samples, "random (J, k) pairs");

  // --- verify-eq7 ---
  auto* cmd_eq7 = app.add_subcommand("verify-eq7", "Polya-Vinogradov style ratio");
  add_common(cmd_eq7);
  ProgressionFlags eq7_j;
  add_progression_flags(cmd_eq7, eq7_j, /*require_n=*/true);
  u64 eq7_samples = 200;
  bool eq7_exhaustive = false;
  cmd_eq7->add_option("--samples", eq7_samples, "random nonzero k count");
  cmd_eq7->add_flag("--exhaustive", eq7_exhaustive, "test every nonzero k");

  // --- et-bound ---
  auto* cmd_et = app.add_subcommand("et-bound", "Erdos-Turan inequality at one interval");
  add_common(cmd_et);
  ProgressionFlags et_j;
  add_progression_flags(cmd_et, et_j, /*require_n=*/true);
  u64 et_k = 0;
  std::string et_alpha = "0", et_beta = "1";
  cmd_et->add_option("--K", et_k, "truncation order (0 means p-1)");
  cmd_et->add_option("--alpha", et_alpha, "interval left endpoint");
  cmd_et->add_option("--beta", et_beta, "interval right endpoint");

  // --- theorem1 ---
  auto* cmd_th1 = app.add_subcommand("theorem1", "discrepancy bound reports");
  add_common(cmd_th1);
  ProgressionFlags th1_j;
  add_progression_flags(cmd_th1, th1_j, /*require_n=*/false);
  u64 th1_k = 0, th1_samples = 20;
  std::string th1_alpha, th1_beta;
  cmd_th1->add_option("--K", th1_k, "truncation order (0 means p-1)");
  cmd_th1->add_option("--samples", th1_samples, "random interval count");
  cmd_th1->add_option("--alpha", th1_alpha, "explicit interval left endpoint");
  cmd_th1->add_option("--beta", th1_beta, "explicit interval right endpoint");

  // --- corollary1 ---
  auto* cmd_cor = app.add_subcommand("corollary1", "window counts of log values");
  add_common(cmd_cor);
  ProgressionFlags cor_j;
  add_progression_flags(cmd_cor, cor_j, /*require_n=*/false);
  u64 cor_s = 0, cor_t = 0;
  double cor_delta = 0.1, cor_c3 = 1.0;
  cmd_cor->add_option("--s", cor_s, "window start")->required();
  cmd_cor->add_option("--t", cor_t, "window end")->required();
  cmd_cor->add_option("--delta", cor_delta, "relative envelope");
  cmd_cor->add_option("--c3", cor_c3, "hypothesis probe constant");

  // --- union-check ---
  auto* cmd_union = app.add_subcommand("union-check", "discrepancy additivity residual");
  add_common(cmd_union);
  ProgressionFlags un_j1;
  add_progression_flags(cmd_union, un_j1, /*require_n=*/true);
  u64 un_a2 = 0, un_r2 = 1, un_n2 = 0;
  cmd_union->add_option("--a2", un_a2, "second progression offset");
  cmd_union->add_option("--r2", un_r2, "second progression step");
  cmd_union->add_option("--n2", un_n2, "second progression length")->required();
  std::string un_alpha, un_beta;
  u64 un_samples = 20;
  cmd_union->add_option("--alpha", un_alpha, "explicit interval left endpoint");
  cmd_union->add_option("--beta", un_beta, "explicit interval right endpoint");
  cmd_union->add_option("--samples", un_samples, "random interval count");

  // --- poly ---
  auto* cmd_poly = app.add_subcommand("poly", "polynomial-twisted log sum");
  add_common(cmd_poly);
  ProgressionFlags poly_j;
  add_progression_flags(cmd_poly, poly_j, /*require_n=*/true);
  std::vector<i64> poly_coeffs;
  cmd_poly->add_option("--coeffs", poly_coeffs, "a0,a1,...,an")
      ->required()
      ->delimiter(',');

  // --- multibase ---
  auto* cmd_multi = app.add_subcommand("multibase", "multi-base twisted sum");
  add_common(cmd_multi);
  ProgressionFlags multi_j;
  add_progression_flags(cmd_multi, multi_j, /*require_n=*/true);
  i64 multi_a = 0;
  std::string multi_bases;
  cmd_multi->add_option("--coeff-a", multi_a, "coefficient of x in the phase");
  cmd_multi->add_option("--bases", multi_bases, "g1:b1,g2:b2,...")->required();

  // --- perm ---
  auto* cmd_perm = app.add_subcommand("perm", "ordering statistics of log tuples");
  add_common(cmd_perm);
  ProgressionFlags perm_j;
  add_progression_flags(cmd_perm, perm_j, /*require_n=*/false);
  u32 perm_r = 2;
  std::string perm_mode = "exhaustive-adjacent";
  u64 perm_samples = 100'000;
  double perm_tol = 0.02;
  cmd_perm->add_option("--r-tuple", perm_r, "tuple size r");
  cmd_perm->add_option("--mode", perm_mode, "exhaustive, exhaustive-adjacent, or sampled")
      ->check(CLI::IsMember({"exhaustive", "exhaustive-adjacent", "sampled"}));
  cmd_perm->add_option("--samples", perm_samples, "tuples drawn in sampled mode");
  cmd_perm->add_option("--tol", perm_tol, "frequency tolerance for r >= 3");

  // --- sweep ---
  auto* cmd_sweep = app.add_subcommand("sweep", "constant-estimation table over primes");
  add_common(cmd_sweep, /*need_p=*/false);
  std::vector<u64> sweep_primes;
  u64 sweep_intervals = 10, sweep_ks = 200;
  cmd_sweep->add_option("--primes", sweep_primes, "comma-separated prime list")
      ->required()
      ->delimiter(',');
  cmd_sweep->add_option("--intervals", sweep_intervals, "random intervals per prime");
  cmd_sweep->add_option("--k-samples", sweep_ks, "sampled frequencies per prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  json config, results;
  CheckList checks;
  const auto t_start = std::chrono::steady_clock::now();

  try {
    auto make_ctx = [&]() { return build_ctx(p, g_flag); };
    auto base_config = [&](const char* name, const FieldCtx& ctx) {
      config["command"] = name;
      config["p"] = ctx.p;
      config["g"] = ctx.g;
      config["seed"] = seed;
      config["jobs"] = jobs;
    };

    if (cmd_primroot->parsed()) {
      if (g_flag.has_value()) {
        FieldCtx ctx = make_ctx();  // throws NonGeneratorError when invalid
        base_config("primroot", ctx);
        results["g"] = ctx.g;
        checks.add("is_primitive_root", true, {{"g", ctx.g}});
      } else {
        FieldCtx ctx = make_ctx();
        base_config("primroot", ctx);
        results["g"] = ctx.g;
      }
      json factors = json::array();
      FieldCtx ctx = make_ctx();
      for (auto& [q, m] : ctx.factors_of_p_minus_1) {
        factors.push_back(json{{"prime", q}, {"multiplicity", m}});
      }
      results["factors_of_p_minus_1"] = factors;
    } else if (cmd_dlog->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("dlog", ctx);
      config["x"] = x_value;
      std::string used = solver;
      if (used == "auto") used = ctx.p <= (u64{1} << 22) ? "table" : "bsgs";
      u64 n;
      if (used == "table") {
        n = build_table(ctx).log(x_value % ctx.p);
      } else if (used == "bsgs") {
        n = dlog_bsgs(ctx, x_value);
      } else {
        n = dlog_pollard_rho(ctx, x_value, seed);
      }
      config["solver"] = used;
      results["log"] = n;
      checks.add("round_trip", mod_pow(ctx.g, n, ctx.p) == x_value % ctx.p,
                 {{"log", n}});
    } else if (cmd_image->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("image", ctx);
      Progression j = image_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      auto table = build_table(ctx);
      TorusPoints m = log_image(table, j);
      results["denominator"] = m.denominator;
      results["cardinality"] = m.cardinality();
      results["numerators"] = m.numerators;
    } else if (cmd_disc->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("discrepancy", ctx);
      Progression j = disc_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      config["half_open"] = half_open;
      auto table = build_table(ctx);
      TorusPoints m = log_image(table, j);
      if (extreme) {
        config["extreme"] = true;
        ExtremeReport rep = extreme_discrepancy(m);
        results["raw"] = jnum(rep.raw);
        results["normalized"] = jnum(rep.normalized);
        results["cardinality"] = rep.cardinality;
        results["alpha"] = jrat(rep.alpha);
        results["beta"] = jrat(rep.beta);
        results["attained_as_limit"] = rep.attained_as_limit;
        double trivial = 1.0 + 1.0 / static_cast<double>(rep.cardinality);
        checks.add("normalized_within_trivial_bound", rep.normalized <= trivial,
                   {{"value", jnum(rep.normalized)}, {"bound", jnum(trivial)}});
        if (with_oracle) {
          ExtremeReport ref = brute_force_extreme_discrepancy(m);
          checks.add("oracle_exact_match",
                     ref.raw_num == rep.raw_num && ref.denominator == rep.denominator,
                     {{"oracle_raw", jnum(ref.raw)}});
        }
      } else {
        if (alpha_str.empty() || beta_str.empty()) {
          throw PreconditionError("interval mode needs --alpha and --beta");
        }
        Interval iv = interval_from_strings(alpha_str, beta_str);
        config["alpha"] = jrat(iv.alpha);
        config["beta"] = jrat(iv.beta);
        IntervalMode mode = half_open ? IntervalMode::kHalfOpen : IntervalMode::kClosed;
        std::size_t cnt = count_points(m, iv, mode);
        double d = interval_discrepancy(m, iv, mode);
        results["count"] = cnt;
        results["raw"] = jnum(d);
        results["normalized"] = jnum(d / static_cast<double>(m.cardinality()));
        results["cardinality"] = m.cardinality();
      }
    } else if (cmd_res->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("resolvent", ctx);
      config["k"] = k_value;
      config["u"] = u_value;
      ResolventValue s = resolvent(ctx, k_value, u_value);
      results["value"] = jcomplex(s.value);
      results["modulus"] = jnum(std::abs(s.value));
      results["modulus_sq"] = jnum(std::norm(s.value));
      results["terms"] = s.terms;
      results["err_bound"] = jnum(s.err_bound);
      bool k_trivial = k_value % (ctx.p - 1) == 0;
      bool u_trivial = u_value % ctx.p == 0;
      if (k_trivial && u_trivial) {
        double expect = static_cast<double>(ctx.p - 1);
        checks.add("trivial_value_p_minus_1",
                   std::abs(s.value - std::complex<double>(expect, 0.0)) <= 1e-8,
                   {{"expected", jnum(expect)}});
      } else if (u_trivial) {
        checks.add("vanishing_geometric_sum", std::abs(s.value) <= 1e-8,
                   {{"value", jnum(std::abs(s.value))}});
      } else if (k_trivial) {
        checks.add("full_additive_sum_is_minus_1",
                   std::abs(s.value + 1.0) <= 1e-8,
                   {{"value", jcomplex(s.value)}});
      } else {
        double dev = std::abs(std::norm(s.value) - static_cast<double>(ctx.p));
        checks.add("gauss_modulus",
                   dev <= 1e-6 * static_cast<double>(ctx.p),
                   {{"deviation", jnum(dev)},
                    {"tolerance", jnum(1e-6 * static_cast<double>(ctx.p))}});
      }
    } else if (cmd_phase->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("phasesum", ctx);
      Progression j = phase_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      config["u"] = phase_u;
      PhaseSum s = progression_phase_sum(ctx.p, j, phase_u);
      results["value"] = jcomplex(s.value);
      results["modulus"] = jnum(std::abs(s.value));
      results["bound"] = jnum(s.bound);
      checks.add("sharp_bound", std::abs(s.value) <= s.bound,
                 {{"modulus", jnum(std::abs(s.value))}, {"bound", jnum(s.bound)}});
    } else if (cmd_logsum->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("logsum", ctx);
      Progression j = logsum_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      config["k"] = logsum_k;
      auto table = build_table(ctx);
      auto s = log_character_sum(table, j, logsum_k);
      results["value"] = jcomplex(s);
      results["modulus"] = jnum(std::abs(s));
      checks.add("triangle_bound",
                 std::abs(s) <= static_cast<double>(j.n) + 1e-9,
                 {{"modulus", jnum(std::abs(s))}, {"n", j.n}});
    } else if (cmd_eq4->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("verify-eq4", ctx);
      auto table = build_table(ctx);
      double worst = 0.0;
      if (eq4_samples > 0) {
        config["samples"] = eq4_samples;
        SplitMix64 rng(seed);
        for (u64 i = 0; i < eq4_samples; ++i) {
          u64 k = rng.below(ctx.p - 1);
          u64 z = 1 + rng.below(ctx.p - 1);
          worst = std::max(worst, verify_inversion(table, k, z));
        }
        results["max_residual"] = jnum(worst);
      } else {
        if (!eq4_k || !eq4_z) {
          throw PreconditionError("verify-eq4 needs --k and --z, or --samples");
        }
        config["k"] = *eq4_k;
        config["z"] = *eq4_z;
        worst = verify_inversion(table, *eq4_k, *eq4_z);
        results["residual"] = jnum(worst);
      }
      checks.add("inversion_identity", worst <= 1e-7,
                 {{"residual", jnum(worst)}, {"tolerance", 1e-7}});
    } else if (cmd_eq5->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("verify-eq5", ctx);
      auto table = build_table(ctx);
      double worst = 0.0;
      if (eq5_samples > 0) {
        config["samples"] = eq5_samples;
        SplitMix64 rng(seed);
        for (u64 i = 0; i < eq5_samples; ++i) {
          Progression j = random_progression(rng, ctx.p);
          u64 k = rng.below(ctx.p - 1);
          worst = std::max(worst, verify_decomposition(table, j, k));
        }
        results["max_residual"] = jnum(worst);
      } else {
        if (!eq5_k) throw PreconditionError("verify-eq5 needs --k, or --samples");
        Progression j = eq5_j.resolve(ctx.p, 0);
        config["progression"] = progression_config(j);
        config["k"] = *eq5_k;
        worst = verify_decomposition(table, j, *eq5_k);
        results["residual"] = jnum(worst);
      }
      checks.add("decomposition_identity", worst <= 1e-7,
                 {{"residual", jnum(worst)}, {"tolerance", 1e-7}});
    } else if (cmd_eq7->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("verify-eq7", ctx);
      Progression j = eq7_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      auto table = build_table(ctx);
      std::vector<u64> ks;
      if (eq7_exhaustive) {
        config["exhaustive"] = true;
        for (u64 k = 1; k + 1 < ctx.p; ++k) ks.push_back(k);
      } else {
        config["samples"] = eq7_samples;
        SplitMix64 rng(seed);
        for (u64 i = 0; i < eq7_samples; ++i) ks.push_back(1 + rng.below(ctx.p - 2));
      }
      PvReport rep = pv_bound_check(table, j, ks);
      results["max_ratio"] = jnum(rep.max_ratio);
      results["argmax_k"] = rep.argmax_k;
      results["bound"] = jnum(rep.bound);
      checks.add("pv_ratio_le_1", rep.max_ratio <= 1.0,
                 {{"max_ratio", jnum(rep.max_ratio)}});
    } else if (cmd_et->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("et-bound", ctx);
      Progression j = et_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      u64 trunc = et_k == 0 ? ctx.p - 1 : et_k;
      config["K"] = trunc;
      Interval iv = interval_from_strings(et_alpha, et_beta);
      config["alpha"] = jrat(iv.alpha);
      config["beta"] = jrat(iv.beta);
      auto table = build_table(ctx);
      TorusPoints m = log_image(table, j);
      double lhs = std::abs(interval_discrepancy(m, iv));
      double rhs = erdos_turan_rhs(m, ETParams{trunc}, iv);
      results["lhs"] = jnum(lhs);
      results["rhs"] = jnum(rhs);
      checks.add("erdos_turan_inequality", lhs <= rhs * (1.0 + 1e-6),
                 {{"lhs", jnum(lhs)}, {"rhs", jnum(rhs)}});
    } else if (cmd_th1->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("theorem1", ctx);
      Progression j = th1_j.resolve(ctx.p, (ctx.p - 1) / 2);
      config["progression"] = progression_config(j);
      u64 trunc = th1_k == 0 ? ctx.p - 1 : th1_k;
      config["K"] = trunc;
      auto table = build_table(ctx);
      std::vector<Interval> ivs;
      if (!th1_alpha.empty() && !th1_beta.empty()) {
        ivs.push_back(interval_from_strings(th1_alpha, th1_beta));
      } else {
        config["samples"] = th1_samples;
        SplitMix64 rng(seed);
        for (u64 i = 0; i < th1_samples; ++i) ivs.push_back(random_interval(rng));
      }
      auto reports = theorem1_check(table, j, ivs, trunc, jobs);
      json records = json::array();
      double worst_excess = 0.0;
      double c1 = 0.0;
      for (const auto& rep : reports) {
        records.push_back(json{{"alpha", jrat(rep.interval.alpha)},
                               {"beta", jrat(rep.interval.beta)},
                               {"lhs", jnum(rep.lhs)},
                               {"rhs_explicit", jnum(rep.rhs_explicit)},
                               {"rhs_theorem", jnum(rep.rhs_theorem)},
                               {"ratio", jnum(rep.ratio)},
                               {"hypothesis_ok", rep.hypothesis_ok}});
        worst_excess = std::max(worst_excess, rep.lhs - rep.rhs_explicit);
        if (rep.hypothesis_ok) c1 = std::max(c1, rep.ratio);
      }
      results["records"] = records;
      results["c1_estimate"] = jnum(c1);
      checks.add("et_chain_holds", worst_excess <= 1e-6,
                 {{"worst_excess", jnum(worst_excess)}});
    } else if (cmd_cor->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("corollary1", ctx);
      Progression j = cor_j.resolve(ctx.p, (ctx.p - 1) / 2);
      config["progression"] = progression_config(j);
      config["s"] = cor_s;
      config["t"] = cor_t;
      config["delta"] = jnum(cor_delta);
      config["c3"] = jnum(cor_c3);
      auto table = build_table(ctx);
      CorollaryReport rep = corollary1_count(table, j, cor_s, cor_t, cor_delta, cor_c3);
      results["count"] = rep.count;
      results["window_length"] = rep.window_length;
      results["expected_paper"] = jnum(rep.expected_paper);
      results["expected_torus"] = jnum(rep.expected_torus);
      results["rel_dev_paper"] = jnum(rep.rel_dev_paper);
      results["rel_dev_torus"] = jnum(rep.rel_dev_torus);
      results["hypothesis_ok"] = rep.hypothesis_ok;
      checks.add("count_within_delta_envelope",
                 std::abs(rep.rel_dev_paper) <= rep.delta,
                 {{"rel_dev", jnum(rep.rel_dev_paper)}, {"delta", jnum(rep.delta)}});
    } else if (cmd_union->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("union-check", ctx);
      Progression j1 = un_j1.resolve(ctx.p, 0);
      Progression j2{un_a2, un_r2, un_n2};
      validate_progression(j2, ctx.p);
      config["progression"] = progression_config(j1);
      config["progression2"] = progression_config(j2);
      auto table = build_table(ctx);
      TorusPoints m1 = log_image(table, j1);
      TorusPoints m2 = log_image(table, j2);
      double worst = 0.0;
      if (!un_alpha.empty() && !un_beta.empty()) {
        Interval iv = interval_from_strings(un_alpha, un_beta);
        config["alpha"] = jrat(iv.alpha);
        config["beta"] = jrat(iv.beta);
        worst = union_discrepancy_residual(m1, m2, iv);
        results["residual"] = jnum(worst);
      } else {
        config["samples"] = un_samples;
        SplitMix64 rng(seed);
        for (u64 i = 0; i < un_samples; ++i) {
          worst = std::max(worst, union_discrepancy_residual(m1, m2, random_interval(rng)));
        }
        results["max_residual"] = jnum(worst);
      }
      checks.add("union_additivity_exact", worst == 0.0, {{"residual", jnum(worst)}});
    } else if (cmd_poly->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("poly", ctx);
      Progression j = poly_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      config["coeffs"] = poly_coeffs;
      auto table = build_table(ctx);
      IntPolynomial poly = make_polynomial(poly_coeffs, ctx.p - 1);
      auto s = poly_twist_sum(table, j, poly);
      results["value"] = jcomplex(s);
      results["modulus"] = jnum(std::abs(s));
      results["degree"] = poly.degree();
      checks.add("triangle_bound",
                 std::abs(s) <= static_cast<double>(j.n) + 1e-9,
                 {{"modulus", jnum(std::abs(s))}, {"n", j.n}});
    } else if (cmd_multi->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("multibase", ctx);
      Progression j = multi_j.resolve(ctx.p, 0);
      config["progression"] = progression_config(j);
      config["coeff_a"] = multi_a;
      config["bases"] = multi_bases;
      auto table = build_table(ctx);
      MultiBaseSpec spec{multi_a, parse_bases(multi_bases)};
      auto s = multibase_sum(table, j, spec);
      results["value"] = jcomplex(s);
      results["modulus"] = jnum(std::abs(s));
      // no proved envelope; report the sqrt(p)-scale ratio for eyeballing
      double scale = std::sqrt(static_cast<double>(ctx.p)) *
                     (2.0 + std::log(static_cast<double>(ctx.p)));
      results["sqrtp_scale_ratio"] = jnum(std::abs(s) / scale);
      checks.add("triangle_bound",
                 std::abs(s) <= static_cast<double>(j.n) + 1e-9,
                 {{"modulus", jnum(std::abs(s))}, {"n", j.n}});
    } else if (cmd_perm->parsed()) {
      FieldCtx ctx = make_ctx();
      base_config("perm", ctx);
      Progression j = perm_j.resolve(ctx.p, ctx.p >= 4 ? ctx.p - 2 : 1);
      config["progression"] = progression_config(j);
      config["r_tuple"] = perm_r;
      config["mode"] = perm_mode;
      OrderingMode mode = OrderingMode::kSampled;
      if (perm_mode == "exhaustive") mode = OrderingMode::kExhaustive;
      if (perm_mode == "exhaustive-adjacent") mode = OrderingMode::kExhaustiveAdjacent;
      if (mode == OrderingMode::kSampled) config["samples"] = perm_samples;
      auto table = build_table(ctx);
      OrderingHistogram hist =
          ordering_frequencies(table, j, perm_r, mode, perm_samples, seed, jobs);
      results["total"] = hist.total;
      json counts, freqs;
      for (const auto& [key, cnt] : hist.counts) {
        counts[key] = cnt;
        freqs[key] = jnum(static_cast<double>(cnt) / static_cast<double>(hist.total));
      }
      results["counts"] = counts;
      results["frequencies"] = freqs;
      if (perm_r == 2) {
        double fraction = hist.frequency("12");
        results["fraction_increasing"] = jnum(fraction);
        checks.add("balanced_orderings", fraction >= 0.48 && fraction <= 0.52,
                   {{"fraction", jnum(fraction)}});
      } else if (perm_r >= 3) {
        double uniform = 1.0;
        for (u32 i = 2; i <= perm_r; ++i) uniform /= static_cast<double>(i);
        double worst = 0.0;
        for (const auto& [key, cnt] : hist.counts) {
          double f = static_cast<double>(cnt) / static_cast<double>(hist.total);
          worst = std::max(worst, std::abs(f - uniform));
        }
        results["max_dev_from_uniform"] = jnum(worst);
        checks.add("near_uniform_orderings", worst <= perm_tol,
                   {{"max_dev", jnum(worst)}, {"tol", jnum(perm_tol)}});
      }
    } else if (cmd_sweep->parsed()) {
      config["command"] = "sweep";
      config["primes"] = sweep_primes;
      config["seed"] = seed;
      config["jobs"] = jobs;
      config["intervals"] = sweep_intervals;
      config["k_samples"] = sweep_ks;
      json records = json::array();
      bool all_et = true, all_pv = true;
      for (u64 prime : sweep_primes) {
        FieldCtx ctx = build_ctx(prime);
        auto table = build_table(ctx);
        Progression j{0, 1, (prime - 1) / 2};
        ExtremeBoundReport ext = extreme_bound_check(table, j);
        SplitMix64 rng(seed ^ prime);
        std::vector<Interval> ivs;
        for (u64 i = 0; i < sweep_intervals; ++i) ivs.push_back(random_interval(rng));
        auto reports = theorem1_check(table, j, ivs, std::nullopt, jobs);
        double c1 = 0.0;
        for (const auto& rep : reports) {
          if (rep.lhs > rep.rhs_explicit * (1.0 + 1e-6)) all_et = false;
          if (rep.hypothesis_ok) c1 = std::max(c1, rep.ratio);
        }
        std::vector<u64> ks;
        u64 k_count = std::min(sweep_ks, prime - 2);
        for (u64 i = 0; i < k_count; ++i) ks.push_back(1 + rng.below(prime - 2));
        PvReport pv = pv_bound_check(table, j, ks);
        if (pv.max_ratio > 1.0) all_pv = false;
        records.push_back(json{{"p", prime},
                               {"g", ctx.g},
                               {"cardinality", j.n},
                               {"extreme_normalized", jnum(ext.measured)},
                               {"c2_estimate", jnum(ext.constant_estimate)},
                               {"c1_estimate", jnum(c1)},
                               {"pv_max_ratio", jnum(pv.max_ratio)},
                               {"min_gap_capacity_ok", ext.capacity_ok}});
      }
      results["records"] = records;
      checks.add("et_chain_holds_all", all_et);
      checks.add("pv_ratio_le_1_all", all_pv);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto t_end = std::chrono::steady_clock::now();
  const double elapsed =
      std::chrono::duration_cast<std::chrono::duration<double>>(t_end - t_start).count();

  json doc;
  doc["config"] = config;
  doc["results"] = results;
  doc["checks"] = checks.items;
  doc["timing"] = json{{"seconds", elapsed}};
  doc["version"] = kVersion;

  if (format == "csv") {
    for (const auto& [key, value] : doc.flatten().items()) {
      out << key << "," << value.dump() << "\n";
    }
  } else {
    out << doc.dump(2) << "\n";
  }
  return checks.all_pass ? 0 : 1;
}

}  // namespace dlogdist
