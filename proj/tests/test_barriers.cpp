#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"
#include "racelab/serialize.hpp"

using namespace racelab;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double lemma44_residual(int r, const Eigen::VectorXd& nu, const Eigen::VectorXd& c,
                        const Eigen::VectorXd& d, double u, int v) {
  double lhs = 0;
  for (int j = 0; j < r; ++j) lhs += nu[j] * std::sin(u + 2 * kPi * j * v / r);
  return std::abs(lhs - c[v] * std::sin(u) - d[v] * std::cos(u));
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::invalid_input;
}

}  // namespace

TEST_CASE("Q, P and R", "[barriers]") {
  auto [Q, P, R] = qpr_polys();
  REQUIRE(Q(0) == Approx(0).margin(1e-15));
  REQUIRE(P(0) == Approx(1.5));
  REQUIRE(R(0) == Approx(0).margin(1e-15));
  const int p[] = {1, 2, 3, 4, 3, 2};
  for (double v : {0.3, 1.1, 2.9}) {
    double want = 0;
    for (int k = 2; k <= 7; ++k) want += p[k - 2] / static_cast<double>(k) * std::sin(k * v);
    REQUIRE(R(v) == Approx(want));
  }
}

TEST_CASE("property (3.18) scan", "[barriers]") {
  auto prop = check_property_318();
  REQUIRE(prop.domination.ok);
  REQUIRE(prop.domination_tail.ok);
  REQUIRE(prop.domination.min_value > 0);
  // R is not negative on all of [0.758, pi): the scan reports where it fails.
  REQUIRE_FALSE(prop.r_negative.ok);
  const auto R = qpr_polys().R;
  const double v = prop.r_negative.first_fail;
  REQUIRE(v > 2.7);
  REQUIRE(v < 2.8);
  REQUIRE(R(v) > -1e-4 * R.lipschitz());
}

TEST_CASE("Thm 3.11 recipes", "[barriers]") {
  auto r7 = build_thm311(7, 1000);
  REQUIRE(r7.kind == RecipeKind::thm311_even_cyclic);
  REQUIRE(r7.n == 6);
  REQUIRE(r7.params.at("h") == 3);
  REQUIRE(r7.params.at("d") == 1);
  REQUIRE(r7.system().size() == 20);
  for (const auto& e : r7.system().entries()) REQUIRE(e.gamma > 1000);
  auto r17 = build_thm311(17, 0);
  REQUIRE(r17.kind == RecipeKind::thm311_n8);
  REQUIRE(r17.system().size() == 34);
  auto r15 = build_thm311(15, 0);
  REQUIRE(r15.kind == RecipeKind::thm311_z4z2);
  REQUIRE(r15.system().size() == 16);
  for (int q : {5, 8, 10, 12, 24}) REQUIRE(code_of([&] { build_thm311(q, 0); }) == Errc::excluded_modulus);
  REQUIRE(code_of([&] { build_thm311(7, 500, 0.75, 100); }) == Errc::precondition_violated);

  for (const auto* r : {&r7, &r17, &r15}) {
    auto rep = verify_thm311(*r);
    REQUIRE(rep.ok);
    REQUIRE(rep.scan.min_value > 0);
    for (const auto& id : rep.identities) REQUIRE(id.max_error < 1e-9);
  }
  // h = 3: |(1 - cos 4 pi/h) / sin 4 pi/h| = sqrt 3.
  REQUIRE(std::abs((1 - std::cos(4 * kPi / 3)) / std::sin(4 * kPi / 3)) == Approx(std::sqrt(3.0)));
}

TEST_CASE("Thm 3.11 identities by direct evaluation", "[barriers]") {
  auto [Q, P, R] = qpr_polys();
  const double s2 = std::sqrt(2.0);
  auto r17 = build_thm311(17, 0);
  DecompParams dp;
  dp.a = r17.a;
  dp.n = 8;
  dp.gamma = r17.params.at("gamma");
  auto dec = theorem_decomposition(r17.system(), DecompCase::thm311, dp);
  auto r15 = build_thm311(15, 0);
  DecompParams dq;
  dq.a = r15.a;
  dq.b = r15.b;
  dq.n = 4;
  dq.gamma = r15.params.at("gamma");
  auto d15 = theorem_decomposition(r15.system(), DecompCase::thm311, dq);
  for (double v = 0; v < 2 * kPi; v += 0.013) {
    const double g0 = dec.functions.at("G[0]")(v);
    REQUIRE(g0 - dec.functions.at("G[3]")(v) ==
            Approx(4 * (std::sin(v) + std::cos(v)) + (2 - s2) * R(v)).margin(1e-12));
    REQUIRE(g0 - dec.functions.at("G[5]")(v) ==
            Approx(4 * (std::sin(v) - std::cos(v)) + (2 - s2) * R(v)).margin(1e-12));
    REQUIRE(g0 - dec.functions.at("G[4]")(v) == Approx(4 * R(v)).margin(1e-12));
    if (v < kPi / 4) {
      const double h0 = d15.functions.at("G[0,0]")(v);
      const bool some = h0 - d15.functions.at("G[1,0]")(v) < 0 || h0 - d15.functions.at("G[3,0]")(v) < 0;
      REQUIRE(some);
    }
  }
}

TEST_CASE("Lemma 4.4 solver", "[barriers]") {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3), d(3);
  d << 0, 1, -1;
  auto nu = solve_lemma44(3, c, d);
  REQUIRE(nu[0] == Approx(0).margin(1e-14));
  REQUIRE(nu[1] == Approx(1 / std::sqrt(3.0)));
  REQUIRE(nu[2] == Approx(-1 / std::sqrt(3.0)));
  for (double u : {0.0, 0.7, 2.1})
    REQUIRE((std::sin(u + 2 * kPi / 3) - std::sin(u + 4 * kPi / 3)) / std::sqrt(3.0) == Approx(std::cos(u)));
  REQUIRE(solve_lemma44(5, Eigen::VectorXd::Zero(5), Eigen::VectorXd::Zero(5)).norm() == 0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int r = 3; r <= 12; ++r) {
    Eigen::VectorXd cc(r), dd(r);
    dd[0] = 0;
    cc[0] = U(rng);
    for (int v = 1; v <= r / 2; ++v) {
      cc[v] = cc[r - v] = U(rng);
      dd[v] = U(rng);
      dd[r - v] = -dd[v];
    }
    if (r % 2 == 0) dd[r / 2] = 0;
    auto x = solve_lemma44(r, cc, dd);
    for (int s = 0; s < 100; ++s) {
      const int v = static_cast<int>(rng() % r);
      REQUIRE(lemma44_residual(r, x, cc, dd, 10 * U(rng), v) < 1e-10);
    }
  }
}

TEST_CASE("Omega systems", "[barriers]") {
  auto om = build_omega({1, 2, 3}, 6);
  REQUIRE(om.corner[2] == kPi);
  for (double u : {0.0, 1.0, 3.0}) REQUIRE(om.f(2, u) == 0);
  for (std::size_t i = 0; i < 3; ++i) {
    double integral = 0;
    const int n = 100000;
    for (int s = 0; s < n; ++s) integral += om.f(i, (s + 0.5) * kPi / n) * kPi / n;
    REQUIRE(integral == Approx(0).margin(1e-6));
  }
  auto pts = om.crossing_points();
  REQUIRE(pts.size() == 6);
  for (std::size_t i = 1; i < pts.size(); ++i) REQUIRE(pts[i] > pts[i - 1]);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double x = om.crossing[i][j];
      REQUIRE(x > 0);
      REQUIRE(x < kPi);
      REQUIRE(om.f(i, x) == Approx(om.f(j, x)).margin(1e-12));
    }
  auto self = [&](double u, Eigen::VectorXd& x) {
    x.resize(3);
    for (int i = 0; i < 3; ++i) x[i] = om.f(i, u);
  };
  REQUIRE(check_omega_type(self, om));
  auto near = [&](double u, Eigen::VectorXd& x) {
    self(u, x);
    x.array() += 1e-3 * std::sin(7 * u);
  };
  REQUIRE(check_omega_type(near, om));
  auto lost = [&](double u, Eigen::VectorXd& x) {
    self(u, x);
    x[0] = 10;
  };
  REQUIRE_FALSE(check_omega_type(lost, om));
}

TEST_CASE("extremal barrier", "[barriers]") {
  for (int v = 1; v < 6; ++v)
    for (double u : {0.2, 1.7}) {
      double s = 0;
      for (int j = 0; j < 6; ++j) s += std::sin(2 * u + 2 * kPi * j * v / 6);
      REQUIRE(s == Approx(0).margin(1e-12));
    }
  ExtremalReport rep;
  auto r = build_extremal(7, 6, {1, 2, 3}, 0.75, 1000, 16, 16, &rep);
  REQUIRE(rep.omega_type_exact);
  REQUIRE(r.system().size() == rep.size);
  std::map<long long, std::set<int>> labels;
  for (const auto& e : r.system().entries()) {
    REQUIRE(e.mult > 0);
    labels[e.k].insert(e.label);
  }
  for (const auto& [k, ls] : labels) REQUIRE(ls.size() < 5);
  REQUIRE(code_of([] { build_extremal(7, 6, {1, 5}); }) == Errc::precondition_violated);
  REQUIRE(code_of([] { build_extremal(7, 3, {1}); }) == Errc::precondition_violated);
}

TEST_CASE("Thm 5.1 construction", "[barriers]") {
  Thm51Report rep;
  auto r = build_thm51(5, 0, 64, 0, {}, &rep);
  REQUIRE(rep.a);
  REQUIRE(rep.b);
  REQUIRE(rep.c);
  REQUIRE(rep.d);
  REQUIRE(rep.d_vacuous);
  REQUIRE(r.params.at("gamma") >= 1000);

  const double gamma = 1000, beta = 0.8, M = 64;
  const double eps = std::atan(beta / gamma);
  auto w0 = thm51_w(beta, gamma, 2, M, 0), w1 = thm51_w(beta, gamma, 2, M, 1);
  for (double x : {kPi - eps, 2 * kPi - eps}) REQUIRE(w0(x / gamma) - w1(x / gamma) == Approx(0).margin(1e-15));
  for (int a1 = 0; a1 < 2; ++a1) {
    auto u = thm51_w(beta, gamma, 4, M, a1), v = thm51_w(beta, gamma, 4, M, a1 + 2);
    for (double x : {kPi * (1 - 2.0 * a1 / 4) - eps, kPi * (2 - 2.0 * a1 / 4) - eps})
      REQUIRE(u(x / gamma) - v(x / gamma) == Approx(0).margin(1e-15));
  }

  // P(z) against the (D) combination: (W3 - W4) - (W5 - W6) = -2 P / ((1+z^2)(4+z^2)).
  const double z = beta / gamma;
  const int n = 6;
  std::vector<Trig> W;
  for (int a = 0; a < n; ++a) W.push_back(thm51_w(beta, gamma, n, M, a).time_scaled(1 / gamma) * gamma);
  for (double x : {0.3, 1.9, 4.4}) {
    const int a3 = 0, a4 = 2, a5 = 1, a6 = 5;
    const double lhs = W[a3](x) - W[a4](x) - (W[a5](x) - W[a6](x));
    const double p = thm51_p(M, z, x + kPi * (a3 + a4) / n, x + kPi * (a5 + a6) / n,
                             kPi * (a4 - a3) / n, kPi * (a6 - a5) / n);
    REQUIRE(lhs == Approx(-2 * p / ((1 + z * z) * (4 + z * z))).epsilon(1e-10));
  }
  REQUIRE(code_of([] { build_thm51(5, 0, 64, 0, {0.6, 0.7}); }) == Errc::invalid_input);
  REQUIRE(code_of([] { build_thm51(15, 0, 64, 0, {0.6, 0.7}); }) == Errc::precondition_violated);
}

TEST_CASE("hypothesis checks", "[barriers]") {
  REQUIRE(std::sqrt(9.0 / 8) - std::sqrt(3.0 / 8) - (std::sqrt(9.0 / 8) + std::sqrt(3.0 / 8)) / (2 + std::sqrt(3.0)) ==
          Approx(0).margin(1e-15));
  auto G = std::make_shared<const ResidueGroup>(7);
  auto chi = character_with_value(G, 2, Phase(1, 3));
  ZeroEntry e;
  e.label = chi.label();
  e.beta = 0.8;
  e.gamma = 20;
  ZeroSystem B(G, {e});
  auto h36 = check_hypotheses(36, B, {2});
  REQUIRE(h36.n == 1);
  REQUIRE(h36.tau == Approx(13));
  REQUIRE(h36.all_pass());
  auto h34 = check_hypotheses(34, B, {2});
  REQUIRE(h34.tau == Approx(3.7320508).margin(1e-7));
  REQUIRE(h34.all_pass());
  e.gamma = 3;
  auto low = check_hypotheses(34, ZeroSystem(G, {e}), {2});
  REQUIRE_FALSE(low.all_pass());
  REQUIRE_FALSE(check_hypotheses(31, B, {1, 2}).all_pass());
  REQUIRE_FALSE(check_hypotheses(34, B, {6}).all_pass());
  REQUIRE_THROWS_AS(check_hypotheses(35, B, {2}), Error);
}

TEST_CASE("recipe JSON round trip", "[barriers]") {
  for (const auto& r : {build_thm311(15, 0), build_extremal(7, 6, {1, 2, 3}), build_thm51(7)}) {
    auto j = recipe_to_json(r);
    auto back = recipe_from_json(j);
    REQUIRE(back.kind == r.kind);
    REQUIRE(back.D == r.D);
    REQUIRE(back.system().size() == r.system().size());
    REQUIRE(recipe_to_json(back) == j);
    auto zs = zeros_from_json(zeros_to_json(r.system()));
    REQUIRE(zs.entries().size() == r.system().entries().size());
  }
}
