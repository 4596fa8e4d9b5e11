#include "racelab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "racelab/error.hpp"
#include "racelab/simulator.hpp"

namespace racelab {

namespace {

std::vector<int> base_primes(long long limit) {
  std::vector<char> comp(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<int> out;
  for (long long i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<int>(i));
    for (long long j = i * i; j <= limit; j += i) comp[j] = 1;
  }
  return out;
}

long long isqrt(long long x) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Marks primes in [lo, hi) into flags (1 = prime).
void sieve_segment(long long lo, long long hi, const std::vector<int>& primes,
                   std::vector<char>& flags) {
  flags.assign(static_cast<std::size_t>(hi - lo), 1);
  for (long long n = lo; n < std::min(hi, 2LL); ++n) flags[n - lo] = 0;
  for (int p : primes) {
    long long pp = static_cast<long long>(p) * p;
    if (pp >= hi) break;
    long long start = std::max(pp, (lo + p - 1) / p * p);
    for (long long j = start; j < hi; j += p) flags[j - lo] = 0;
  }
}

}  // namespace

std::vector<long long> make_checkpoints(long long x_max, const CheckpointRule& rule) {
  std::vector<long long> out;
  if (rule.kind == CheckpointRule::Kind::linear) {
    if (!(rule.spacing > 0)) throw Error(Errc::invalid_config, "linear checkpoints need spacing > 0");
    for (double x = rule.start; x <= static_cast<double>(x_max); x += rule.spacing)
      out.push_back(static_cast<long long>(x));
  } else {
    if (!(rule.factor > 1)) throw Error(Errc::invalid_config, "geometric factor must exceed 1");
    for (double x = rule.start; x <= static_cast<double>(x_max); x *= rule.factor) {
      long long v = static_cast<long long>(std::floor(x));
      if (out.empty() || v > out.back()) out.push_back(v);
    }
  }
  if (out.empty() || out.back() != x_max) out.push_back(x_max);
  return out;
}

long long PrimeRaceTable::count(std::size_t i, long long a) const {
  auto it = std::find(residues.begin(), residues.end(), ((a % q) + q) % q);
  if (it == residues.end()) throw Error(Errc::invalid_residue, std::to_string(a));
  return counts[i][it - residues.begin()];
}

long long sieve_budget() {
  if (const char* env = std::getenv("RACE_LAB_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return static_cast<long long>(v);
  }
  return 100000000LL;
}

PrimeRaceTable sieve_race(int q, long long x_max, const CheckpointRule& rule, int threads,
                          long long segment) {
  if (x_max > sieve_budget())
    throw Error(Errc::budget_exceeded, "x_max " + std::to_string(x_max) + " exceeds budget " +
                                           std::to_string(sieve_budget()));
  if (x_max < 2) throw Error(Errc::domain_error, "x_max must be >= 2");
  ResidueGroup G(q);
  PrimeRaceTable t;
  t.q = q;
  for (int a : G.units()) t.residues.push_back(a);
  t.x = make_checkpoints(x_max, rule);
  const std::size_t R = t.residues.size(), C = t.x.size();
  std::vector<int> slot(q, -1);
  for (std::size_t r = 0; r < R; ++r) slot[t.residues[r]] = static_cast<int>(r);
  const auto primes = base_primes(isqrt(x_max) + 1);

  const long long nseg = (x_max + segment) / segment;
  int w = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  w = std::max(1, std::min<int>(w, static_cast<int>(nseg)));
  // Per worker: bucket counts [checkpoint bucket][residue + 1], the last
  // column counting all primes.
  std::vector<std::vector<long long>> acc(w, std::vector<long long>(C * (R + 1), 0));
  auto work = [&](int id) {
    std::vector<char> flags;
    auto& a = acc[id];
    for (long long s = id; s < nseg; s += w) {
      long long lo = s * segment, hi = std::min(x_max + 1, lo + segment);
      if (lo >= hi) break;
      sieve_segment(lo, hi, primes, flags);
      std::size_t b = std::lower_bound(t.x.begin(), t.x.end(), lo) - t.x.begin();
      for (long long n = lo; n < hi; ++n) {
        if (!flags[n - lo]) continue;
        while (t.x[b] < n) ++b;
        int r = slot[n % q];
        if (r >= 0) ++a[b * (R + 1) + r];
        ++a[b * (R + 1) + R];
      }
    }
  };
  std::vector<std::thread> pool;
  for (int id = 0; id < w; ++id) pool.emplace_back(work, id);
  for (auto& th : pool) th.join();
  t.counts.assign(C, std::vector<long long>(R, 0));
  t.pi.assign(C, 0);
  std::vector<long long> run(R + 1, 0);
  for (std::size_t b = 0; b < C; ++b) {
    for (int id = 0; id < w; ++id)
      for (std::size_t r = 0; r <= R; ++r) run[r] += acc[id][b * (R + 1) + r];
    for (std::size_t r = 0; r < R; ++r) t.counts[b][r] = run[r];
    t.pi[b] = run[R];
  }
  return t;
}

void for_each_prime(long long x_max, const std::function<void(long long)>& fn, long long segment) {
  if (x_max < 2) return;
  const auto primes = base_primes(isqrt(x_max) + 1);
  std::vector<char> flags;
  for (long long lo = 0; lo <= x_max; lo += segment) {
    long long hi = std::min(x_max + 1, lo + segment);
    sieve_segment(lo, hi, primes, flags);
    for (long long n = lo; n < hi; ++n)
      if (flags[n - lo]) fn(n);
  }
}

long long prime_pi(long long x) {
  if (x > sieve_budget()) throw Error(Errc::budget_exceeded, "pi(x) beyond sieve budget");
  long long n = 0;
  for_each_prime(x, [&](long long) { ++n; });
  return n;
}

std::optional<long long> first_lead_change(int q, long long a, long long b, long long x_max) {
  ResidueGroup G(q);
  if (!G.is_unit(a) || !G.is_unit(b)) throw Error(Errc::invalid_residue, "a and b must be units");
  if (G.reduce(a) == G.reduce(b)) throw Error(Errc::invalid_pair, "a and b must differ");
  if (x_max > sieve_budget()) throw Error(Errc::budget_exceeded, "x_max exceeds budget");
  const int ra = G.reduce(a), rb = G.reduce(b);
  long long diff = 0;
  int initial = 0;
  std::optional<long long> found;
  // Stop early by scanning segments until the first sign reversal.
  const long long segment = 1 << 18;
  const auto primes = base_primes(isqrt(x_max) + 1);
  std::vector<char> flags;
  for (long long lo = 0; lo <= x_max && !found; lo += segment) {
    long long hi = std::min(x_max + 1, lo + segment);
    sieve_segment(lo, hi, primes, flags);
    for (long long n = lo; n < hi; ++n) {
      if (!flags[n - lo]) continue;
      int r = static_cast<int>(n % q);
      if (r == ra) ++diff;
      else if (r == rb) --diff;
      else continue;
      int s = (diff > 0) - (diff < 0);
      if (initial == 0) initial = s;
      else if (s == -initial) {
        found = n;
        break;
      }
    }
  }
  return found;
}

AgreementReport compare_with_simulator(const PrimeRaceTable& table, const ZeroSystem& zeros,
                                       double sigma, long long a, long long b, long long x_min) {
  AgreementReport rep;
  rep.a = a;
  rep.b = b;
  rep.sigma = sigma;
  if (zeros.q() != table.q) throw Error(Errc::invalid_input, "zero data modulus differs");
  ResidueGroup G(table.q);
  const int ra = G.reduce(a), rb = G.reduce(b);
  if (ra == rb) {
    for (std::size_t i = 0; i < table.x.size(); ++i)
      if (table.x[i] >= std::max<long long>(x_min, 3)) rep.points.push_back({table.x[i], 0, 0, true});
    rep.sign_agreement = 1;
    rep.correlation = 1;
    return rep;
  }
  bool covered = false;
  for (const auto& e : zeros.entries()) {
    const auto& chi = zeros.character(e.label);
    if (chi.phase_num(ra) != chi.phase_num(rb)) covered = true;
    rep.max_height = std::max(rep.max_height, e.gamma);
  }
  if (!covered) throw Error(Errc::insufficient_zero_data, "no zeros for characters in C_q(a,b)");
  rep.bias = 0.5 * (sqrt_count(table.q, rb) - sqrt_count(table.q, ra));
  const double phi = G.phi();
  long long match = 0;
  std::vector<double> obs, pred;
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    const long long x = table.x[i];
    if (x < std::max<long long>(x_min, 3)) continue;
    const double u = std::log(static_cast<double>(x));
    const double d = static_cast<double>(table.count(i, ra) - table.count(i, rb));
    AgreementPoint p;
    p.x = x;
    p.observed = u * phi / (2 * std::exp(sigma * u)) * d;
    p.predicted = rep.bias + corollary13_sum(zeros, ra, rb, u, sigma);
    p.sign_match = (p.observed > 0) == (p.predicted > 0) || (p.observed == 0 && p.predicted == 0);
    match += p.sign_match;
    obs.push_back(p.observed);
    pred.push_back(p.predicted);
    rep.points.push_back(p);
  }
  if (!rep.points.empty()) {
    rep.sign_agreement = static_cast<double>(match) / rep.points.size();
    const double n = obs.size();
    double mo = std::accumulate(obs.begin(), obs.end(), 0.0) / n;
    double mp = std::accumulate(pred.begin(), pred.end(), 0.0) / n;
    double so = 0, sp = 0, sop = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      so += (obs[i] - mo) * (obs[i] - mo);
      sp += (pred[i] - mp) * (pred[i] - mp);
      sop += (obs[i] - mo) * (pred[i] - mp);
    }
    rep.correlation = so > 0 && sp > 0 ? sop / std::sqrt(so * sp) : 0;
  }
  return rep;
}

std::string table_to_csv(const PrimeRaceTable& t) {
  nlohmann::json header = {{"q", t.q}, {"residues", t.residues}};
  std::ostringstream out;
  out << "# " << header.dump() << "\n";
  out << "x,pi";
  for (long long r : t.residues) out << ",pi_" << r;
  out << "\n";
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    out << t.x[i] << ',' << t.pi[i];
    for (long long c : t.counts[i]) out << ',' << c;
    out << "\n";
  }
  return out.str();
}

PrimeRaceTable table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PrimeRaceTable t;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw Error(Errc::malformed_line, "missing JSON header");
  auto header = nlohmann::json::parse(line.substr(2));
  t.q = header.at("q").get<int>();
  t.residues = header.at("residues").get<std::vector<long long>>();
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<long long> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stoll(cell));
    if (row.size() != t.residues.size() + 2) throw Error(Errc::malformed_line, line);
    t.x.push_back(row[0]);
    t.pi.push_back(row[1]);
    t.counts.emplace_back(row.begin() + 2, row.end());
  }
  return t;
}

}  // namespace racelab
