#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <vector>

#include "racelab/error.hpp"
#include "racelab/primes.hpp"

using namespace racelab;

namespace {

bool is_prime_td(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<char> simple_sieve(long long n) {
  std::vector<char> p(n + 1, 1);
  p[0] = p[1] = 0;
  for (long long i = 2; i * i <= n; ++i)
    if (p[i])
      for (long long j = i * i; j <= n; j += i) p[j] = 0;
  return p;
}

}  // namespace

TEST_CASE("prime counts", "[primes]") {
  auto p = simple_sieve(1000000);
  long long n = 0;
  for (char c : p) n += c;
  REQUIRE(n == 78498);
  REQUIRE(prime_pi(1000000) == 78498);
  auto t4 = sieve_race(4, 1000000);
  const std::size_t last = t4.x.size() - 1;
  REQUIRE(t4.x[last] == 1000000);
  REQUIRE(t4.count(last, 1) + t4.count(last, 3) == 78498 - 1);
  auto t3 = sieve_race(3, 100, {CheckpointRule::Kind::linear, 10, 0, 10});
  REQUIRE(t3.x.back() == 100);
  REQUIRE(t3.count(t3.x.size() - 1, 1) == 11);
  REQUIRE(t3.count(t3.x.size() - 1, 2) == 13);
}

TEST_CASE("sieve matches trial division", "[primes]") {
  for (int q : {3, 4, 7, 12}) {
    auto t = sieve_race(q, 100000, {CheckpointRule::Kind::linear, 1000, 0, 1000}, 0, 4096);
    std::vector<long long> counts(q, 0);
    long long pi = 0, divides = 0;
    std::size_t i = 0;
    for (long long x = 2; x <= 100000; ++x) {
      if (is_prime_td(x)) {
        ++pi;
        ++counts[x % q];
        if (q % x == 0) ++divides;
      }
      if (i < t.x.size() && t.x[i] == x) {
        REQUIRE(t.pi[i] == pi);
        long long sum = 0;
        for (long long a : t.residues) {
          REQUIRE(t.count(i, a) == counts[a]);
          sum += t.count(i, a);
        }
        REQUIRE(sum == pi - divides);
        ++i;
      }
    }
    REQUIRE(i == t.x.size());
  }
}

TEST_CASE("checkpoints and CSV", "[primes]") {
  auto x = make_checkpoints(1000000, {});
  REQUIRE(x.back() == 1000000);
  for (std::size_t i = 1; i < x.size(); ++i) REQUIRE(x[i] > x[i - 1]);
  auto t = sieve_race(5, 200000);
  for (std::size_t i = 1; i < t.x.size(); ++i)
    for (std::size_t r = 0; r < t.residues.size(); ++r) REQUIRE(t.counts[i][r] >= t.counts[i - 1][r]);
  auto back = table_from_csv(table_to_csv(t));
  REQUIRE(back.q == t.q);
  REQUIRE(back.residues == t.residues);
  REQUIRE(back.x == t.x);
  REQUIRE(back.pi == t.pi);
  REQUIRE(back.counts == t.counts);
  REQUIRE(table_to_csv(back) == table_to_csv(t));
}

TEST_CASE("threads do not change the table", "[primes]") {
  auto a = sieve_race(7, 300000, {}, 1, 1 << 12);
  auto b = sieve_race(7, 300000, {}, 4, 1 << 14);
  REQUIRE(a.counts == b.counts);
  REQUIRE(a.pi == b.pi);
}

TEST_CASE("first lead change", "[primes]") {
  // Trial-division oracle: first x where pi_{4,1}(x) > pi_{4,3}(x).
  long long c1 = 0, c3 = 0, oracle = 0;
  for (long long x = 3; x <= 100000 && !oracle; ++x)
    if (is_prime_td(x)) {
      (x % 4 == 1 ? c1 : c3) += 1;
      if (c1 > c3) oracle = x;
    }
  REQUIRE(oracle == 26861);
  auto flc = first_lead_change(4, 1, 3, 100000);
  REQUIRE(flc.has_value());
  REQUIRE(*flc == oracle);
  REQUIRE_FALSE(first_lead_change(3, 1, 2, 10000000).has_value());
  try {
    first_lead_change(4, 3, 7, 1000);
    FAIL("expected invalid-pair");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::invalid_pair);
  }
}

TEST_CASE("sieve budget", "[primes]") {
  REQUIRE(sieve_budget() == 100000000);
  setenv("RACE_LAB_BUDGET", "1000", 1);
  REQUIRE(sieve_budget() == 1000);
  try {
    sieve_race(4, 5000);
    FAIL("expected budget-exceeded");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::budget_exceeded);
  }
  unsetenv("RACE_LAB_BUDGET");
}

TEST_CASE("comparison with zero data", "[primes]") {
  auto t = sieve_race(3, 1000000);
  auto zeros = load_zero_data(std::string(RACELAB_TEST_DATA) + "/zeros_q3_q4.txt", 3);
  auto rep = compare_with_simulator(t, zeros, 0.5, 2, 1, 1000);
  REQUIRE(rep.sign_agreement >= 0.9);
  REQUIRE(rep.bias == 1.0);
  REQUIRE(rep.max_height < 100);
  auto same = compare_with_simulator(t, zeros, 0.5, 2, 2, 1000);
  for (const auto& p : same.points) {
    REQUIRE(p.observed == 0);
    REQUIRE(p.predicted == 0);
  }
  try {
    compare_with_simulator(t, ZeroSystem(std::make_shared<const ResidueGroup>(3)), 0.5, 2, 1);
    FAIL("expected insufficient-zero-data");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::insufficient_zero_data);
  }
}
