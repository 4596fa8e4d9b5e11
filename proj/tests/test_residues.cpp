#include <catch_amalgamated.hpp>

#include <numeric>

#include "racelab/error.hpp"
#include "racelab/residues.hpp"

using namespace racelab;

namespace {

int brute_order(int q, int a) {
  int x = a % q, k = 1;
  while (x != 1) {
    x = x * a % q;
    ++k;
  }
  return k;
}

int brute_sqrt_count(int q, int c) {
  int n = 0;
  for (int w = 0; w < q; ++w)
    if (w * w % q == c % q) ++n;
  return n;
}

}  // namespace

TEST_CASE("unit group structure", "[residues]") {
  for (int q = 3; q <= 100; ++q) {
    ResidueGroup G(q);
    int phi = 0, lam = 1;
    for (int a = 1; a < q; ++a)
      if (std::gcd(a, q) == 1) {
        ++phi;
        lam = std::lcm(lam, brute_order(q, a));
        REQUIRE(G.order(a) == brute_order(q, a));
      }
    REQUIRE(G.phi() == phi);
    REQUIRE(G.lambda() == lam);
    long long prod = 1;
    for (const auto& g : G.generators()) {
      prod *= g.n;
      REQUIRE(brute_order(q, g.g) == g.n);
    }
    REQUIRE(prod == phi);
    for (int a : G.units()) REQUIRE(G.from_exponents(G.exponents(a)) == a);
  }
  ResidueGroup g8(8);
  REQUIRE(g8.phi() == 4);
  REQUIRE(g8.lambda() == 2);
  REQUIRE(g8.generators().size() == 2);
  ResidueGroup g5(5);
  REQUIRE(g5.generators().size() == 1);
  REQUIRE(g5.generators()[0].n == 4);
  ResidueGroup g15(15);
  std::vector<int> orders;
  for (const auto& g : g15.generators()) orders.push_back(g.n);
  std::sort(orders.begin(), orders.end());
  REQUIRE(orders == std::vector<int>{2, 4});
  REQUIRE_THROWS_AS(ResidueGroup(2), Error);
}

TEST_CASE("characters are complete and multiplicative", "[residues]") {
  for (int q = 3; q <= 100; ++q) {
    auto G = std::make_shared<const ResidueGroup>(q);
    auto chars = characters(G);
    REQUIRE(static_cast<int>(chars.size()) == G->phi());
    int principal = 0;
    for (const auto& chi : chars) {
      if (chi.is_principal()) ++principal;
      bool has_conj = std::any_of(chars.begin(), chars.end(),
                                  [&](const DirichletCharacter& x) { return x == chi.conjugate(); });
      REQUIRE(has_conj);
      for (int a : G->units())
        for (int b : G->units())
          REQUIRE(chi.phase(G->mul(a, b)) == chi.phase(a) + chi.phase(b));
    }
    REQUIRE(principal == 1);
    // Orthogonality, exact in Z[zeta_lambda].
    for (int a : G->units()) {
      CyclotomicSum s(G->lambda());
      for (const auto& chi : chars) s.add(chi.phase(a), 1);
      if (a == 1) {
        REQUIRE(s.value().real() == Catch::Approx(G->phi()));
      } else {
        REQUIRE(s.is_zero());
      }
    }
  }
}

TEST_CASE("separating characters mod 5", "[residues]") {
  auto chars = characters(5);
  int sep = 0;
  for (const auto& chi : chars)
    if (!chi.is_principal() && !(chi.phase(2) == chi.phase(1))) ++sep;
  REQUIRE(chars.size() == 4);
  REQUIRE(sep == 3);
}

TEST_CASE("character with a prescribed value", "[residues]") {
  auto chi = character_with_value(7, 3, Phase(5, 6));
  REQUIRE(chi.phase(3) == Phase(5, 6));
  REQUIRE(std::abs(chi(3) - std::polar(1.0, -2 * std::numbers::pi / 6)) < 1e-12);
  auto psi = character_with_value(5, 2, Phase(3, 4));
  REQUIRE(std::abs(psi(2) - std::complex<double>(0, -1)) < 1e-12);
  REQUIRE(Phase(-1, 4) == Phase(3, 4));
  try {
    character_with_value(7, 2, Phase(1, 4));
    FAIL("expected not-representable");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::not_representable);
  }
}

TEST_CASE("square root counts", "[residues]") {
  REQUIRE(sqrt_count(8, 1) == 4);
  REQUIRE(sqrt_count(5, 2) == 0);
  REQUIRE(sqrt_count(5, 4) == 2);
  for (int q = 3; q <= 60; ++q) {
    ResidueGroup G(q);
    for (int a : G.units()) {
      REQUIRE(sqrt_count(q, a) == brute_sqrt_count(q, a));
      REQUIRE(sqrt_count(q, 1) >= sqrt_count(q, a));
    }
  }
  try {
    sqrt_count(9, 3);
    FAIL("expected invalid-residue");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::invalid_residue);
  }
}

TEST_CASE("cyclotomic zero test", "[residues]") {
  // 1 + zeta_3 + zeta_3^2 = 0 inside Z[zeta_6].
  CyclotomicSum s(6);
  s.add(0, 1);
  s.add(2, 1);
  s.add(4, 1);
  REQUIRE(s.is_zero());
  CyclotomicSum t(6);
  t.add(1, 1);
  t.add(0, -1);
  REQUIRE_FALSE(t.is_zero());
  REQUIRE(std::abs(t.value() - (std::polar(1.0, std::numbers::pi / 3) - 1.0)) < 1e-12);
}
