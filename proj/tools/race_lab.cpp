#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "racelab/barriers.hpp"
#include "racelab/error.hpp"
#include "racelab/orderings.hpp"
#include "racelab/primes.hpp"
#include "racelab/search.hpp"
#include "racelab/serialize.hpp"
#include "racelab/simulator.hpp"

using nlohmann::json;
using namespace racelab;

namespace {

enum Exit { pass = 0, failed = 2, invalid = 3, budget = 4 };

struct RunConfig {
  std::string command;
  int q = 0;
  std::string kind;
  std::string D;
  int r = 0;
  double tau = 0;
  double beta = 0.75;
  double gamma = 0;
  double M = 64;
  int K = 16;
  int N = 16;
  std::string recipe;
  std::string out;
  std::string plot;
  std::string window = "period";
  int samples = 1 << 14;
  double u0 = 0;
  double u1 = 0;
  double step = 0;
  std::string mode = "dominant";
  double x_max = 1e6;
  long long a = 1;
  long long b = 0;
  std::string zeros;
  double sigma = 0.5;
  std::string s;
  double alpha = 0.5;
  std::string t;
  int threads = 0;
  unsigned seed = 1;

  json to_json() const {
    return {{"command", command}, {"q", q},           {"kind", kind},       {"D", D},
            {"r", r},             {"tau", tau},       {"beta", beta},       {"gamma", gamma},
            {"M", M},             {"K", K},           {"N", N},             {"recipe", recipe},
            {"out", out},         {"window", window}, {"samples", samples}, {"u0", u0},
            {"u1", u1},           {"step", step},     {"mode", mode},       {"x_max", x_max},
            {"a", a},             {"b", b},           {"zeros", zeros},     {"sigma", sigma},
            {"s", s},             {"alpha", alpha},   {"t", t},             {"threads", threads},
            {"seed", seed}};
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

// "a,a2,a3" -> exponents {1,2,3}
std::vector<int> parse_exponents(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    if (tok[0] != 'a') throw Error(Errc::invalid_config, "D entries look like a, a2, a3: " + tok);
    out.push_back(tok.size() == 1 ? 1 : std::stoi(tok.substr(1)));
  }
  return out;
}

void emit(const RunConfig& cfg, json body) {
  body["config"] = cfg.to_json();
  const std::string text = body.dump(2);
  std::cout << text << "\n";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw Error(Errc::invalid_config, "cannot write " + cfg.out);
    f << text << "\n";
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::invalid_config, "cannot write " + path);
  f << text;
}

BarrierRecipe load_recipe(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::invalid_config, "cannot read " + path);
  json j = json::parse(f);
  return recipe_from_json(j.contains("recipe") ? j.at("recipe") : j);
}

OrderingTrace recipe_trace(const BarrierRecipe& r, const RunConfig& cfg) {
  auto S = r.race_set();
  if (cfg.window == "period") return period_trace(S, cfg.samples, cfg.threads);
  auto colon = cfg.window.find(':');
  if (colon == std::string::npos) throw Error(Errc::invalid_config, "window is 'period' or u0:u1");
  const double u0 = std::stod(cfg.window.substr(0, colon)), u1 = std::stod(cfg.window.substr(colon + 1));
  return trace(S, u0, u1, (u1 - u0) / cfg.samples, TraceMode::dominant_only, cfg.threads);
}

json thm311_json(const Thm311Report& v) {
  json ids = json::array();
  for (const auto& i : v.identities) ids.push_back({{"name", i.name}, {"max_error", i.max_error}});
  return {{"ok", v.ok},
          {"size", v.size},
          {"differences", v.differences},
          {"min_margin", v.scan.min_value},
          {"min_margin_at", v.scan.min_value_at},
          {"offending_v", v.offending_v},
          {"identities", ids}};
}

json thm51_json(const Thm51Report& v) {
  return {{"A", v.a},
          {"B", v.b},
          {"C", v.c},
          {"D", v.d},
          {"D_vacuous", v.d_vacuous},
          {"attempts", v.attempts},
          {"min_theta_gap", v.min_theta_gap},
          {"min_derivative_gap", v.min_derivative_gap},
          {"min_d_value", v.min_d_value},
          {"min_p_value", v.min_p_value},
          {"theta_count", v.theta_count}};
}

// Verification of a recipe by kind; returns true on pass.
bool verify_recipe(const BarrierRecipe& r, const RunConfig& cfg, json& report) {
  switch (r.kind) {
    case RecipeKind::thm311_even_cyclic:
    case RecipeKind::thm311_n8:
    case RecipeKind::thm311_z4z2: {
      auto v = verify_thm311(r);
      report = thm311_json(v);
      return v.ok;
    }
    case RecipeKind::thm43_extremal: {
      auto t = period_trace(r.race_set(), cfg.samples, cfg.threads);
      auto v = verdict(t, Claim::extremal_exact);
      report = verdict_to_json(v);
      return v.holds;
    }
    case RecipeKind::thm51_census: {
      auto v = verify_thm51(r);
      auto t = period_trace(r.race_set(), cfg.samples, cfg.threads);
      auto verd = verdict(t, Claim::thm51_upper);
      report = thm51_json(v);
      report["census"] = verdict_to_json(verd);
      return v.a && v.b && v.c && v.d && verd.holds;
    }
  }
  return false;
}

int cmd_barrier_build(const RunConfig& cfg) {
  BarrierRecipe r;
  json extra;
  if (cfg.kind == "thm311") {
    r = build_thm311(cfg.q, cfg.tau, cfg.beta, cfg.gamma);
  } else if (cfg.kind == "thm43") {
    ResidueGroup G(cfg.q);
    const int rr = cfg.r > 0 ? cfg.r : G.lambda();
    ExtremalReport rep;
    r = build_extremal(cfg.q, rr, parse_exponents(cfg.D.empty() ? "a,a2,a3" : cfg.D), cfg.beta,
                       cfg.gamma > 0 ? cfg.gamma : std::max(1000.0, cfg.tau + 1), cfg.K, cfg.N, &rep);
    extra = {{"K", rep.K}, {"N", rep.N}, {"size", rep.size}, {"omega_type_exact", rep.omega_type_exact}};
  } else if (cfg.kind == "thm51") {
    r = build_thm51(cfg.q, cfg.tau, cfg.M, cfg.gamma);
  } else {
    throw Error(Errc::invalid_config, "kind is thm311, thm43 or thm51");
  }
  json report;
  const bool ok = verify_recipe(r, cfg, report);
  json body = {{"recipe", recipe_to_json(r)}, {"verification", report}, {"pass", ok}};
  if (!extra.is_null()) body["construction"] = extra;
  emit(cfg, body);
  return ok ? pass : failed;
}

int cmd_barrier_verify(const RunConfig& cfg) {
  auto r = load_recipe(cfg.recipe);
  json report;
  const bool ok = verify_recipe(r, cfg, report);
  emit(cfg, {{"kind", recipe_kind_name(r.kind)}, {"verification", report}, {"pass", ok}});
  return ok ? pass : failed;
}

int cmd_simulate(const RunConfig& cfg) {
  auto r = load_recipe(cfg.recipe);
  auto S = r.race_set();
  OrderingTrace t;
  if (cfg.mode == "dominant" && cfg.u1 <= cfg.u0) {
    t = period_trace(S, cfg.samples, cfg.threads);
  } else {
    if (!(cfg.u1 > cfg.u0)) throw Error(Errc::invalid_config, "need u1 > u0");
    const double step = cfg.step > 0 ? cfg.step : (cfg.u1 - cfg.u0) / cfg.samples;
    t = trace(S, cfg.u0, cfg.u1, step, cfg.mode == "full" ? TraceMode::full_formula : TraceMode::dominant_only,
              cfg.threads);
  }
  const std::string csv = cfg.out.empty() ? "trace.csv" : cfg.out + ".csv";
  write_file(csv, trace_to_csv(t));
  if (!cfg.plot.empty()) {
    std::ostringstream gp;
    gp << "set datafile separator ','\nset key outside\nset xlabel 'u'\nplot ";
    for (std::size_t k = 0; k < t.members.size(); ++k)
      gp << (k ? ", " : "") << "'" << csv << "' using 1:" << k + 2 << " with lines title 'a=" << t.members[k]
         << "'";
    gp << "\n";
    write_file(cfg.plot, gp.str());
  }
  emit(cfg, {{"samples", t.u.size()},
             {"members", t.members},
             {"crossings", t.crossings.size()},
             {"periodic", t.periodic},
             {"csv", csv}});
  return pass;
}

int cmd_orderings(const RunConfig& cfg) {
  auto r = load_recipe(cfg.recipe);
  auto t = recipe_trace(r, cfg);
  auto c = census(t);
  json body = {{"census", census_to_json(c, t.members)}};
  try {
    auto tg = turan_graph_bound(c, static_cast<int>(t.members.size()));
    body["turan_lower_bound"] = tg.lower_bound;
  } catch (const Error& e) {
    body["turan_lower_bound"] = nullptr;
    body["turan_error"] = e.what();
  }
  emit(cfg, body);
  return pass;
}

int cmd_race(const RunConfig& cfg) {
  const long long x_max = static_cast<long long>(cfg.x_max);
  auto table = sieve_race(cfg.q, x_max, {}, cfg.threads);
  const std::string csv = cfg.out.empty() ? "race.csv" : cfg.out + ".csv";
  write_file(csv, table_to_csv(table));
  ResidueGroup G(cfg.q);
  const long long b = cfg.b ? cfg.b : G.units().back();
  auto lead = first_lead_change(cfg.q, cfg.a, b, x_max);
  json body = {{"pi", table.pi.back()},
               {"residues", table.residues},
               {"counts", table.counts.back()},
               {"a", cfg.a},
               {"b", b},
               {"first_lead_change", lead ? json(*lead) : json(nullptr)},
               {"csv", csv}};
  if (!cfg.zeros.empty()) {
    auto zs = load_zero_data(cfg.zeros, cfg.q);
    auto rep = compare_with_simulator(table, zs, cfg.sigma, cfg.a, b);
    body["agreement"] = {{"sign_agreement", rep.sign_agreement},
                         {"correlation", rep.correlation},
                         {"bias", rep.bias},
                         {"max_height", rep.max_height}};
  }
  emit(cfg, body);
  return pass;
}

int cmd_frac_parts(const RunConfig& cfg) {
  auto s = parse_list(cfg.s);
  std::vector<long double> sl(s.begin(), s.end());
  const long double u = find_fractional_parts(sl, cfg.alpha);
  const double eps = lemma25_eps(static_cast<int>(s.size()), cfg.alpha);
  json parts = json::array();
  bool ok = true;
  for (long double sk : sl) {
    long double x = u * sk;
    double f = static_cast<double>(x - std::floor(x));
    parts.push_back(f);
    ok = ok && f >= eps && f <= cfg.alpha;
  }
  emit(cfg, {{"u", static_cast<double>(u)}, {"frac_parts", parts}, {"eps", eps}, {"pass", ok}});
  return ok ? pass : failed;
}

int cmd_all_negative(const RunConfig& cfg) {
  auto t = parse_list(cfg.t), beta = parse_list(cfg.s);
  if (beta.empty()) beta.assign(t.size(), 0.0);
  const long double u = find_all_negative(t, beta);
  const double bound = -lemma26_eps2(static_cast<int>(t.size()));
  json vals = json::array();
  bool ok = true;
  for (std::size_t k = 0; k < t.size(); ++k) {
    double v = std::sin(static_cast<double>(u * t[k]) + beta[k]);
    vals.push_back(v);
    ok = ok && v < bound;
  }
  emit(cfg, {{"u", static_cast<double>(u)}, {"values", vals}, {"bound", bound}, {"pass", ok}});
  return ok ? pass : failed;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::budget_exceeded: return budget;
    case Errc::verification_failed:
    case Errc::condition_a_failed:
    case Errc::condition_b_failed:
    case Errc::condition_c_failed:
    case Errc::condition_d_failed:
    case Errc::omega_type_lost:
    case Errc::missing_label:
    case Errc::inconclusive_window: return failed;
    default: return invalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime race barrier lab"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "worker thread cap (0 = hardware)");
  app.add_option("--seed", cfg.seed, "seed recorded with the run");
  app.add_option("--out", cfg.out, "output path (JSON, or prefix for CSV)");

  auto* barrier = app.add_subcommand("barrier", "build or verify barrier recipes");
  barrier->require_subcommand(1);
  auto* build = barrier->add_subcommand("build", "build a recipe and verify it");
  build->add_option("kind", cfg.kind, "thm311, thm43 or thm51")->required();
  build->add_option("--q", cfg.q)->required();
  build->add_option("--tau", cfg.tau);
  build->add_option("--beta", cfg.beta);
  build->add_option("--gamma", cfg.gamma);
  build->add_option("--M", cfg.M);
  build->add_option("--K", cfg.K);
  build->add_option("--N", cfg.N);
  build->add_option("--D", cfg.D, "thm43 targets as powers of a, e.g. a,a2,a3");
  build->add_option("--r", cfg.r, "thm43 cyclic subgroup order (default lambda(q))");
  build->add_option("--samples", cfg.samples);
  auto* verify = barrier->add_subcommand("verify", "verify a recipe file");
  verify->add_option("--recipe", cfg.recipe)->required();
  verify->add_option("--samples", cfg.samples);

  auto* simulate = app.add_subcommand("simulate", "trace a recipe's race functions");
  simulate->add_option("--recipe", cfg.recipe)->required();
  simulate->add_option("--mode", cfg.mode)->check(CLI::IsMember({"dominant", "full"}));
  simulate->add_option("--u0", cfg.u0);
  simulate->add_option("--u1", cfg.u1);
  simulate->add_option("--step", cfg.step);
  simulate->add_option("--samples", cfg.samples);
  simulate->add_option("--plot", cfg.plot, "gnuplot script path");

  auto* orderings = app.add_subcommand("orderings", "ordering census of a recipe");
  orderings->add_option("--recipe", cfg.recipe)->required();
  orderings->add_option("--window", cfg.window, "'period' or u0:u1");
  orderings->add_option("--samples", cfg.samples);

  auto* race = app.add_subcommand("race", "sieve a real prime race");
  race->add_option("--q", cfg.q)->required();
  race->add_option("--xmax", cfg.x_max);
  race->add_option("--a", cfg.a);
  race->add_option("--b", cfg.b);
  race->add_option("--zeros", cfg.zeros, "zero list for the simulator comparison");
  race->add_option("--sigma", cfg.sigma);

  auto* trig = app.add_subcommand("trig", "constructive lemmas on trigonometric sums");
  trig->require_subcommand(1);
  auto* frac = trig->add_subcommand("frac-parts", "u with eps <= {u s_k} <= alpha");
  frac->add_option("--s", cfg.s)->required();
  frac->add_option("--alpha", cfg.alpha);
  auto* neg = trig->add_subcommand("all-negative", "u with sin(t_k u + beta_k) < -eps2");
  neg->add_option("--t", cfg.t)->required();
  neg->add_option("--beta", cfg.s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : invalid;
  }
  try {
    if (cfg.threads < 0) throw Error(Errc::invalid_config, "threads must be >= 0");
    if (!(cfg.beta > 0.5 && cfg.beta < 1)) throw Error(Errc::invalid_config, "beta must lie in (1/2, 1)");
    if (cfg.samples < 16) throw Error(Errc::invalid_config, "samples must be >= 16");
    if (build->parsed()) {
      cfg.command = "barrier build";
      return cmd_barrier_build(cfg);
    }
    if (verify->parsed()) {
      cfg.command = "barrier verify";
      return cmd_barrier_verify(cfg);
    }
    if (simulate->parsed()) {
      cfg.command = "simulate";
      return cmd_simulate(cfg);
    }
    if (orderings->parsed()) {
      cfg.command = "orderings";
      return cmd_orderings(cfg);
    }
    if (race->parsed()) {
      cfg.command = "race";
      return cmd_race(cfg);
    }
    if (frac->parsed()) {
      cfg.command = "trig frac-parts";
      return cmd_frac_parts(cfg);
    }
    if (neg->parsed()) {
      cfg.command = "trig all-negative";
      return cmd_all_negative(cfg);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "invalid_config: " << e.what() << "\n";
    return invalid;
  }
  return invalid;
}
