#include <algorithm>
#include <cmath>
#include <numbers>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"

namespace racelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kP[8] = {0, 0, 1, 2, 3, 4, 3, 2};  // p_k for 2 <= k <= 7

std::shared_ptr<const ResidueGroup> group_for(int q) {
  return std::make_shared<const ResidueGroup>(q);
}

int element_of_order(const ResidueGroup& G, int n) {
  for (int a : G.units())
    if (G.order(a) == n) return a;
  return 0;
}

ZeroEntry entry(const DirichletCharacter& chi, double beta, double gamma, int k, int mult) {
  ZeroEntry e;
  e.label = chi.label();
  e.beta = beta;
  e.gamma = k * gamma;
  e.mult = mult;
  e.k = k;
  return e;
}

DirichletCharacter with_values(const std::shared_ptr<const ResidueGroup>& G, long long a, Phase pa,
                               long long b, Phase pb) {
  for (const auto& chi : characters(G))
    if (chi.phase(a) == pa && chi.phase(b) == pb) return chi;
  throw Error(Errc::no_suitable_subgroup, "no character with the required values");
}

}  // namespace

const char* recipe_kind_name(RecipeKind k) {
  switch (k) {
    case RecipeKind::thm311_even_cyclic: return "thm311_even_cyclic";
    case RecipeKind::thm311_n8: return "thm311_n8";
    case RecipeKind::thm311_z4z2: return "thm311_z4z2";
    case RecipeKind::thm43_extremal: return "thm43_extremal";
    case RecipeKind::thm51_census: return "thm51_census";
  }
  return "unknown";
}

RecipeKind recipe_kind_from_name(const std::string& s) {
  for (auto k : {RecipeKind::thm311_even_cyclic, RecipeKind::thm311_n8, RecipeKind::thm311_z4z2,
                 RecipeKind::thm43_extremal, RecipeKind::thm51_census})
    if (s == recipe_kind_name(k)) return k;
  throw Error(Errc::invalid_input, "unknown recipe kind " + s);
}

QPR qpr_polys() {
  QPR out;
  out.Q = Trig::combine({{2, 1, 0}, {0.5, 6, 0}});
  out.P = Trig::combine({{2, 1, kPi / 2}, {-0.5, 6, kPi / 2}});
  std::vector<Trig::Term> r;
  for (int k = 2; k <= 7; ++k) r.push_back({static_cast<double>(kP[k]) / k, static_cast<double>(k), 0});
  out.R = Trig::combine(r);
  return out;
}

Property318 check_property_318(double step) {
  const auto [Q, P, R] = qpr_polys();
  const double s3 = std::sqrt(3.0);
  auto dom = [&](double v) { return std::abs(P(v)) - s3 * Q(v); };
  const double L = P.lipschitz() + s3 * Q.lipschitz();
  Property318 out;
  out.domination = certify_positive(dom, L, 0, 0.759, step);
  out.domination_tail = certify_positive(dom, L, 2.7, 2 * kPi, step);
  out.r_negative = certify_positive([&](double v) { return -R(v); }, R.lipschitz(), 0.758,
                                    kPi - 1e-6, step);
  return out;
}

BarrierRecipe build_thm311(int q, double tau, double beta, double gamma) {
  if (q < 7 || q == 8 || q == 10 || q == 12 || q == 24)
    throw Error(Errc::excluded_modulus, "q = " + std::to_string(q));
  if (gamma <= 0) gamma = std::max(tau + 1, 100.0);
  if (!(gamma > tau)) throw Error(Errc::precondition_violated, "gamma must exceed tau");
  auto Gp = group_for(q);
  const auto& G = *Gp;
  BarrierRecipe out;
  out.q = q;
  out.params = {{"beta", beta}, {"gamma", gamma}, {"tau", tau}};
  out.claim = "thm311: (3.1') and (3.2') fail for D";
  std::vector<ZeroEntry> entries;
  int lam = G.lambda();
  int d = 0;
  while (lam % 2 == 0) {
    lam /= 2;
    ++d;
  }
  const int h = lam;
  if (h >= 3 && d >= 1) {
    // Case (i): a of order n = lambda = 2^d h.
    const int n = G.lambda(), s = n / h;
    int c = 1;
    while (std::abs(std::tan(2 * kPi * c / h)) > std::sqrt(3.0) + 1e-12) ++c;
    const long long a = element_of_order(G, n);
    auto chi = character_with_value(Gp, a, Phase(n - 1, n));
    entries.push_back(entry(chi.power(2 * c), beta, gamma, 6, 3));
    entries.push_back(entry(chi.power(2 * h - 2 * c), beta, gamma, 1, 2));
    for (int k = 2; k <= 7; ++k) entries.push_back(entry(chi.power(h), beta, gamma, k, kP[k]));
    out.kind = RecipeKind::thm311_even_cyclic;
    out.a = a;
    out.n = n;
    out.D = {G.pow(a, s), G.pow(a, n - s), G.pow(a, n / 2)};
    out.params["h"] = h;
    out.params["d"] = d;
    out.params["c"] = c;
    out.params["s"] = s;
  } else if (d >= 3) {
    // Case (ii): an element of order 8.
    const long long a = element_of_order(G, 8);
    auto chi = character_with_value(Gp, a, Phase(7, 8));
    entries.push_back(entry(chi.power(2), beta, gamma, 1, 4));
    for (int k = 2; k <= 7; ++k) {
      entries.push_back(entry(chi.power(3), beta, gamma, k, kP[k]));
      entries.push_back(entry(chi.power(5), beta, gamma, k, kP[k]));
    }
    out.kind = RecipeKind::thm311_n8;
    out.a = a;
    out.n = 8;
    out.D = {G.pow(a, 3), G.pow(a, 5), G.pow(a, 4)};
    out.params["s"] = 3;
  } else if (d == 2 && G.phi() >= 8) {
    // Case (iii): a of order 4, b of order 2 outside <a>.
    long long a = 0, b = 0;
    for (int x : G.units()) {
      if (G.order(x) != 4) continue;
      for (int y : G.units())
        if (G.order(y) == 2 && y != G.pow(x, 2)) {
          a = x;
          b = y;
          break;
        }
      if (a) break;
    }
    if (!a) throw Error(Errc::no_suitable_subgroup, "q = " + std::to_string(q));
    auto chi1 = with_values(Gp, a, Phase(3, 4), b, Phase(0, 1));
    auto chi2 = with_values(Gp, a, Phase(0, 1), b, Phase(1, 2));
    entries.push_back(entry(chi1, beta, gamma, 1, 1));
    for (int l = 2; l <= 7; ++l) entries.push_back(entry(chi2, beta, gamma, l, kP[l]));
    out.kind = RecipeKind::thm311_z4z2;
    out.a = a;
    out.b = b;
    out.n = 4;
    out.D = {a, G.pow(a, 3), b};
    out.params["chi1"] = chi1.label();
    out.params["chi2"] = chi2.label();
  } else {
    throw Error(Errc::no_suitable_subgroup, "q = " + std::to_string(q));
  }
  out.B.emplace(Gp, entries, ZeroSystem::Kind::hypothetical, gamma);
  return out;
}

Thm311Report verify_thm311(const BarrierRecipe& recipe, double step) {
  if (recipe.kind != RecipeKind::thm311_even_cyclic && recipe.kind != RecipeKind::thm311_n8 &&
      recipe.kind != RecipeKind::thm311_z4z2)
    throw Error(Errc::recipe_mismatch, "not a Thm 3.11 recipe");
  const auto& B = recipe.system();
  DecompParams dp;
  dp.a = recipe.a;
  dp.b = recipe.b;
  dp.n = recipe.n;
  dp.gamma = recipe.params.at("gamma");
  auto dec = theorem_decomposition(B, DecompCase::thm311, dp);
  const auto [Q, P, R] = qpr_polys();
  Thm311Report rep;
  rep.size = B.size();
  std::vector<Trig> diffs;
  auto diff = [&](const std::string& g0, const std::string& gr) {
    rep.differences.push_back(g0 + "-" + gr);
    diffs.push_back(dec.functions.at(g0) - dec.functions.at(gr));
    return diffs.back();
  };
  auto identity = [&](const std::string& name, const Trig& got, const Trig& want) {
    // sum |c| bounds the sup of the difference
    const Trig e = got - want;
    rep.identities.push_back({name, e.abs_sum() + std::abs(e.constant())});
  };
  const double s2 = std::sqrt(2.0);
  switch (recipe.kind) {
    case RecipeKind::thm311_even_cyclic: {
      const int n = recipe.n, s = static_cast<int>(recipe.params.at("s"));
      const double th = 4 * kPi * recipe.params.at("c") / recipe.params.at("h");
      const std::string g0 = "G[0]";
      auto d1 = diff(g0, "G[" + std::to_string(s) + "]");
      auto d2 = diff(g0, "G[" + std::to_string(n - s) + "]");
      auto d3 = diff(g0, "G[" + std::to_string(n / 2) + "]");
      identity(rep.differences[0], d1, Q * (1 - std::cos(th)) + P * std::sin(th));
      identity(rep.differences[1], d2, Q * (1 - std::cos(th)) - P * std::sin(th));
      identity(rep.differences[2], d3, R * 2.0);
      break;
    }
    case RecipeKind::thm311_n8: {
      auto d1 = diff("G[0]", "G[3]");
      auto d2 = diff("G[0]", "G[5]");
      auto d3 = diff("G[0]", "G[4]");
      const Trig sp = Trig::combine({{4, 1, 0}, {4, 1, kPi / 2}});
      const Trig sm = Trig::combine({{4, 1, 0}, {-4, 1, kPi / 2}});
      identity("G[0]-G[3]", d1, sp + R * (2 - s2));
      identity("G[0]-G[5]", d2, sm + R * (2 - s2));
      identity("G[0]-G[4]", d3, R * 4.0);
      break;
    }
    case RecipeKind::thm311_z4z2: {
      auto d1 = diff("G[0,0]", "G[1,0]");
      auto d2 = diff("G[0,0]", "G[3,0]");
      auto d3 = diff("G[0,0]", "G[0,1]");
      identity("G[0,0]-G[1,0]", d1, Trig::combine({{1, 1, 0}, {-1, 1, kPi / 2}}));
      identity("G[0,0]-G[3,0]", d2, Trig::combine({{1, 1, 0}, {1, 1, kPi / 2}}));
      identity("G[0,0]-G[0,1]", d3, R * 2.0);
      break;
    }
    default: break;
  }
  Eigen::VectorXd L(static_cast<Eigen::Index>(diffs.size()));
  for (std::size_t i = 0; i < diffs.size(); ++i) L[static_cast<Eigen::Index>(i)] = diffs[i].lipschitz();
  auto F = [&](double v, Eigen::VectorXd& out) {
    out.resize(static_cast<Eigen::Index>(diffs.size()));
    for (std::size_t i = 0; i < diffs.size(); ++i) out[static_cast<Eigen::Index>(i)] = diffs[i](v);
  };
  rep.scan = certify_some_negative(F, L, 0, 2 * kPi, step);
  rep.offending_v = rep.scan.ok ? 0 : rep.scan.first_fail;
  rep.ok = rep.scan.ok;
  for (const auto& id : rep.identities)
    if (id.max_error > 1e-9) rep.ok = false;
  return rep;
}

}  // namespace racelab
