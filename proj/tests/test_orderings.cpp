#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"
#include "racelab/orderings.hpp"
#include "racelab/simulator.hpp"

using namespace racelab;

namespace {

constexpr double kPi = std::numbers::pi;

OrderingTrace make_trace(int m, double u0, double u1, int samples, MemberEvaluator f,
                         bool periodic = false) {
  OrderingTrace t;
  for (int i = 0; i < m; ++i) t.members.push_back(i + 1);
  t.values.resize(samples, m);
  Eigen::VectorXd v;
  for (int s = 0; s < samples; ++s) {
    const double u = u0 + (u1 - u0) * s / samples;
    t.u.push_back(u);
    f(u, v);
    t.values.row(s) = v.transpose();
  }
  t.evaluator = f;
  t.periodic = periodic;
  t.period = periodic ? u1 - u0 : 0;
  t.crossings = detect_crossings(t);
  return t;
}

MemberEvaluator shifted_sines(int m, double spread = 2 * kPi) {
  return [m, spread](double u, Eigen::VectorXd& v) {
    v.resize(m);
    for (int i = 0; i < m; ++i) v[i] = std::sin(u + spread * i / m);
  };
}

}  // namespace

TEST_CASE("census counts", "[orderings]") {
  auto two = make_trace(2, 0, 2 * kPi, 1000, shifted_sines(2, kPi / 2), true);
  REQUIRE(census(two).size() == 2);
  auto flat = make_trace(3, 0, 1, 100, [](double, Eigen::VectorXd& v) { v = Eigen::Vector3d(3, 2, 1); });
  auto cf = census(flat);
  REQUIRE(cf.size() == 1);
  REQUIRE(ordering_string(cf.orderings[0].order, flat.members) == "a1>a2>a3");
  auto one = make_trace(1, 0, 1, 10, [](double u, Eigen::VectorXd& v) { v = Eigen::VectorXd::Constant(1, u); });
  REQUIRE(census(one).size() == 1);
  // Three phase-shifted sines: 6 crossings per period, each a new ordering.
  auto three = make_trace(3, 0, 2 * kPi, 2000, shifted_sines(3), true);
  REQUIRE(census(three).size() == 6);
  auto twice = make_trace(3, 0, 4 * kPi, 4000, shifted_sines(3));
  REQUIRE(census(twice).size() == census(three).size());
  // Positive rescaling keeps the census.
  auto scaled = make_trace(3, 0, 2 * kPi, 2000, [](double u, Eigen::VectorXd& v) {
    shifted_sines(3)(u, v);
    v *= 17.5;
  }, true);
  REQUIRE(census(scaled).size() == census(three).size());
}

TEST_CASE("ties expand to every compatible ordering", "[orderings]") {
  OrderingTrace t;
  t.members = {1, 2, 3};
  t.u = {0};
  t.values = Eigen::RowVector3d(1, 1, 1);
  auto c = census(t);
  REQUIRE(c.size() == 6);
  REQUIRE(c.weak_orderings == 1);
}

TEST_CASE("crossing detection", "[orderings]") {
  auto t = make_trace(2, 0, 2 * kPi, 1000, shifted_sines(2, kPi / 2), true);
  int changes = 0;
  for (const auto& cr : t.crossings)
    if (cr.sign_before != cr.sign_after && cr.sign_before && cr.sign_after) ++changes;
  REQUIRE(changes == 2);
}

TEST_CASE("Turan graph bound", "[orderings]") {
  auto two = make_trace(2, 0, 2 * kPi, 1000, shifted_sines(2, kPi / 2), true);
  REQUIRE(turan_graph_bound(two).lower_bound == 2);
  auto three = make_trace(3, 0, 2 * kPi, 2000, shifted_sines(3), true);
  auto tb = turan_graph_bound(three);
  REQUIRE(tb.lower_bound >= 4);
  REQUIRE(tb.lower_bound <= static_cast<long long>(census(three).size()));
  REQUIRE(tb.forest.size() + 1 <= tb.vertices.size());
  auto stuck = make_trace(3, 0, 2 * kPi, 2000, [](double u, Eigen::VectorXd& v) {
    v = Eigen::Vector3d(std::sin(u), std::cos(u), 5);
  }, true);
  try {
    turan_graph_bound(stuck);
    FAIL("expected missing-label");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::missing_label);
  }
}

TEST_CASE("verdicts", "[orderings]") {
  auto three = make_trace(3, 0, 2 * kPi, 2000, shifted_sines(3), true);
  REQUIRE(verdict(three, Claim::kt_all_pairs).holds);
  for (int a = 0; a < 3; ++a) REQUIRE(verdict(three, Claim::lead_trail, a).holds);
  // Lemma 4.8: all three lead and trail, so at least 5 orderings.
  REQUIRE(verdict(three, Claim::thm51_upper).census >= 5);
  REQUIRE(verdict(three, Claim::thm51_upper).holds);
  REQUIRE_FALSE(verdict(three, Claim::extremal_exact).holds);
  auto one = make_trace(1, 0, 1, 10, [](double u, Eigen::VectorXd& v) { v = Eigen::VectorXd::Constant(1, u); });
  REQUIRE(verdict(one, Claim::extremal_exact).census == 1);
  REQUIRE(verdict(one, Claim::extremal_exact).holds);

  // A new ordering appearing only at the end of a non-periodic window.
  auto late = make_trace(2, 0, 10, 1000, [](double u, Eigen::VectorXd& v) {
    v = Eigen::Vector2d(u > 9.5 ? 1 : 0, 0.5);
  });
  try {
    verdict(late, Claim::thm51_upper);
    FAIL("expected inconclusive-window");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::inconclusive_window);
  }
}

TEST_CASE("census on barrier traces", "[orderings]") {
  auto ext = build_extremal(7, 6, {1, 2, 3});
  auto t = period_trace(ext.race_set(), 4096);
  auto v = verdict(t, Claim::extremal_exact);
  REQUIRE(v.census == 4);
  REQUIRE(v.holds);
  REQUIRE(turan_graph_bound(t).lower_bound == 4);

  auto r51 = build_thm51(5);
  auto t51 = period_trace(r51.race_set(), 4096);
  auto v51 = verdict(t51, Claim::thm51_upper);
  REQUIRE(v51.census <= 12);
  REQUIRE(v51.holds);
}
