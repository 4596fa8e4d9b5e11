#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "racelab/zerosys.hpp"

namespace racelab {

struct CheckpointRule {
  enum class Kind { geometric, linear };
  Kind kind = Kind::geometric;
  double start = 1000;   // first checkpoint
  double factor = 1.01;  // geometric ratio
  double spacing = 0;    // linear spacing
};

std::vector<long long> make_checkpoints(long long x_max, const CheckpointRule& rule);

struct PrimeRaceTable {
  int q = 0;
  std::vector<long long> residues;            // all units mod q
  std::vector<long long> x;                   // checkpoints
  std::vector<long long> pi;                  // pi(x_i)
  std::vector<std::vector<long long>> counts;  // counts[i][r] = pi_{q,residues[r]}(x_i)

  long long count(std::size_t i, long long a) const;
};

// Sieve budget: 1e8 unless RACE_LAB_BUDGET overrides it.
long long sieve_budget();

PrimeRaceTable sieve_race(int q, long long x_max, const CheckpointRule& rule = {},
                          int threads = 0, long long segment = 1 << 18);

// Calls fn(p) for every prime p <= x_max in increasing order.
void for_each_prime(long long x_max, const std::function<void(long long)>& fn,
                    long long segment = 1 << 18);

long long prime_pi(long long x);

// Least x at which sign(pi_{q,a} - pi_{q,b}) is opposite to its first
// nonzero sign; empty if none up to x_max.
std::optional<long long> first_lead_change(int q, long long a, long long b,
                                           long long x_max);

struct AgreementPoint {
  long long x;
  double observed;   // u phi / (2 e^{sigma u}) (pi_a - pi_b)
  double predicted;  // bias + truncated zero sum
  bool sign_match;
};

struct AgreementReport {
  long long a = 0;
  long long b = 0;
  double sigma = 0.5;
  double bias = 0;      // (N_q(b) - N_q(a)) / 2
  double max_height = 0;
  std::vector<AgreementPoint> points;
  double sign_agreement = 0;
  double correlation = 0;
};

AgreementReport compare_with_simulator(const PrimeRaceTable& table,
                                       const ZeroSystem& zeros, double sigma,
                                       long long a, long long b,
                                       long long x_min = 0);

std::string table_to_csv(const PrimeRaceTable& t);
PrimeRaceTable table_from_csv(const std::string& text);

}  // namespace racelab
