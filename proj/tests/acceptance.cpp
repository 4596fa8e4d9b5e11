#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"
#include "racelab/orderings.hpp"
#include "racelab/primes.hpp"
#include "racelab/search.hpp"
#include "racelab/simulator.hpp"
#include "racelab/trigpoly.hpp"

using namespace racelab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Property (3.18) by certified scan.
void criterion1(Result& r) {
  auto t0 = std::chrono::steady_clock::now();
  auto p = check_property_318(1e-4);
  const double dt = seconds_since(t0);
  r.detail << "min |P|-sqrt3 Q on [0,0.759]: " << p.domination.min_value
           << ", on [2.7,2pi]: " << p.domination_tail.min_value
           << ", min -R on [0.758,pi-1e-6]: " << p.r_negative.min_value << ", " << dt << " s";
  r.require(p.domination.ok, "domination on [0, 0.759]");
  r.require(p.domination_tail.ok, "domination on [2.7, 2pi]");
  if (!p.r_negative.ok) {
    const auto R = qpr_polys().R;
    r.detail << "; R(" << p.r_negative.first_fail << ") = " << R(p.r_negative.first_fail);
  }
  r.require(p.r_negative.ok, "R < 0 on [0.758, pi - 1e-6]");
  r.require(dt < 1, "runtime < 1 s");
}

// 2. Thm 3.11 in its three cases.
void criterion2(Result& r) {
  const int qs[] = {7, 17, 15};
  const long long sizes[] = {20, 34, 16};
  for (int i = 0; i < 3; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    auto recipe = build_thm311(qs[i], 1000);
    auto rep = verify_thm311(recipe, 1e-3);
    const double dt = seconds_since(t0);
    r.detail << "q=" << qs[i] << ": |B|=" << recipe.system().size() << " margin " << rep.scan.min_value
             << " (" << dt << " s); ";
    r.require(recipe.system().size() == sizes[i], "|B| for q=" + std::to_string(qs[i]));
    r.require(rep.ok, "verification for q=" + std::to_string(qs[i]));
    r.require(dt < 10, "runtime for q=" + std::to_string(qs[i]));
  }
}

// 3. Extremal barriers reach r(r-1)/2+1 exactly.
void criterion3(Result& r) {
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    int q, order;
    std::vector<int> V;
  };
  for (const Case& c : {Case{7, 6, {1, 2, 3}}, Case{17, 8, {1, 2, 3, 4}}}) {
    auto recipe = build_extremal(c.q, c.order, c.V);
    auto v = verdict(period_trace(recipe.race_set(), 4096), Claim::extremal_exact);
    r.detail << "q=" << c.q << " |D|=" << c.V.size() << ": census " << v.census << " (want " << v.bound
             << ", |B|=" << recipe.system().size() << "); ";
    r.require(v.holds, "census for q=" + std::to_string(c.q));
  }
  const double dt = seconds_since(t0);
  r.detail << dt << " s";
  r.require(dt < 60, "runtime < 60 s");
}

// 4. Thm 4.2 on random KT systems (Prop 4.1: no real zeros, z(a,b) nonempty).
void criterion4(Result& r) {
  std::mt19937 rng(4);
  auto G = std::make_shared<const ResidueGroup>(13);
  auto chars = characters(G);
  const auto& units = G->units();
  const double gamma = 100;
  int done = 0, tries = 0;
  long long min_excess = 1 << 30;
  while (done < 20 && tries < 1000) {
    ++tries;
    const int m = 3 + static_cast<int>(rng() % 3);
    std::vector<long long> D;
    while (static_cast<int>(D.size()) < m) {
      long long a = units[rng() % units.size()];
      if (std::find(D.begin(), D.end(), a) == D.end()) D.push_back(a);
    }
    std::vector<ZeroEntry> es;
    for (int k = 1; k <= 4; ++k)
      for (int s = 0; s < 3; ++s) {
        const auto& chi = chars[1 + rng() % (chars.size() - 1)];
        ZeroEntry e;
        e.label = chi.label();
        e.beta = 0.75;
        e.gamma = k * gamma;
        e.k = k;
        e.mult = 1 + static_cast<int>(rng() % 3);
        es.push_back(e);
      }
    ZeroSystem B(G, es, ZeroSystem::Kind::hypothetical, gamma);
    if (!is_kt_candidate(B, D).all_pass) continue;
    auto t = period_trace({B, D, PiProxy::li}, 4096);
    const long long bound = static_cast<long long>(m) * (m - 1) / 2 + 1;
    long long lower = 0, size = 0;
    try {
      lower = turan_graph_bound(t).lower_bound;
      size = static_cast<long long>(census(t).size());
    } catch (const Error& e) {
      r.require(false, std::string("instance ") + std::to_string(done) + ": " + e.what());
      ++done;
      continue;
    }
    r.require(lower >= bound, "Turan bound below r(r-1)/2+1");
    r.require(size >= lower, "census below the Turan bound");
    min_excess = std::min(min_excess, size - bound);
    ++done;
  }
  r.detail << done << " instances, min census - (r(r-1)/2+1) = " << min_excess;
  r.require(done == 20, "20 KT instances");
}

// 5. Thm 5.1 bound r(r-1).
void criterion5(Result& r) {
  auto t0 = std::chrono::steady_clock::now();
  for (int q : {5, 7}) {
    Thm51Report rep;
    auto recipe = build_thm51(q, 0, 64, 0, {}, &rep);
    r.require(rep.a && rep.b && rep.c && rep.d, "(A)-(D) for q=" + std::to_string(q));
    auto v = verdict(period_trace(recipe.race_set(), 4096), Claim::thm51_upper);
    r.detail << "q=" << q << ": census " << v.census << " <= " << v.bound << "; ";
    r.require(v.holds, "census bound for q=" + std::to_string(q));
    if (q != 7) continue;
    // Every subset of size >= 2 of the six members.
    const auto all = recipe.D;
    long long worst = 0;
    for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
      std::vector<long long> D;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) D.push_back(all[i]);
      if (D.size() < 2) continue;
      auto sv = verdict(period_trace({recipe.system(), D, PiProxy::li}, 4096), Claim::thm51_upper);
      r.require(sv.holds, "subset census");
      worst = std::max(worst, sv.census - sv.bound);
    }
    r.detail << "subsets: max census - r(r-1) = " << worst << "; ";
  }
  const double dt = seconds_since(t0);
  r.detail << dt << " s";
  r.require(dt < 120, "runtime < 120 s");
}

// 6. Section 2 constructive lemmas on random inputs.
void criterion6(Result& r) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> U(0, 1);
  int fails25 = 0, fails26 = 0, fails24 = 0, fails27 = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    std::vector<long double> s;
    while (static_cast<int>(s.size()) < n) s.push_back(0.1L + 10.0L * U(rng));
    std::sort(s.begin(), s.end(), std::greater<>());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const long double alpha = 0.05L + 0.9L * U(rng);
    const long double u = find_fractional_parts(s, alpha);
    const long double eps = lemma25_eps(static_cast<int>(s.size()), static_cast<double>(alpha));
    for (long double x : s) {
      const long double f = u * x - std::floor(u * x);
      if (f < eps - 1e-12L || f > alpha + 1e-12L) ++fails25;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    std::vector<double> t, beta;
    const double eps2 = lemma26_eps2(n);
    for (int k = 0; k < n; ++k) {
      t.push_back(0.2 + 5 * U(rng) + k * 1e-3);
      beta.push_back(eps2 * (2 * U(rng) - 1));
    }
    const long double u = find_all_negative(t, beta);
    for (int k = 0; k < n; ++k)
      if (!(std::sin(u * t[k] + beta[k]) < -eps2)) ++fails26;
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const double e1 = lemma24_eps1(n);
    std::vector<Trig::Term> p, q;
    for (int k = 0; k < n; ++k) {
      const double t = 1 + k + 0.37 * U(rng);
      const double a = (0.2 + U(rng)) * (rng() % 2 ? 1 : -1), b = (0.2 + U(rng)) * (rng() % 2 ? 1 : -1);
      p.push_back({a, t, kPi / 2 + e1 * (2 * U(rng) - 1)});
      q.push_back({b, t, e1 * (2 * U(rng) - 1)});
    }
    try {
      auto c = find_simultaneous_positive(Trig::combine(p), Trig::combine(q), e1);
      bool ok = c.certified;
      for (double m : c.margins) ok = ok && m > c.step * c.derivative_bound;
      if (!ok) ++fails24;
    } catch (const Error&) {
      ++fails24;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    DominationInput in;
    in.t.resize(n);
    in.a.resize(n);
    in.b.resize(n);
    in.c.resize(n);
    for (int k = 0; k < n; ++k) {
      in.t[k] = 1 + k + 0.5 * U(rng);
      in.a[k] = (0.1 + U(rng)) * (rng() % 2 ? 1 : -1);
      in.c[k] = U(rng);
      in.b[k] = std::abs(in.a[k]) + in.c[k] + 0.5 * U(rng);
    }
    const double gamma = 0.5 * in.a.cwiseAbs().sum() / in.b.sum();
    try {
      auto d = find_dominating(in, gamma);
      if (!(d.cert.certified && d.margin > d.cert.step * d.cert.derivative_bound)) ++fails27;
    } catch (const Error&) {
      ++fails27;
    }
  }
  r.detail << "failures: Lemma 2.5 " << fails25 << ", Lemma 2.6 " << fails26 << ", Lemma 2.4 " << fails24
           << ", Lemma 2.7 " << fails27;
  r.require(fails25 + fails26 + fails24 + fails27 == 0, "zero failures");
}

// 7. Norm laws of Lemma 2.1.
void criterion7(Result& r) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  double worst_rel = 0, worst_pos = 1;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 8;
    std::vector<Trig::Term> terms;
    for (int k = 0; k < n; ++k) terms.push_back({4 * U(rng) - 2, 1 + 3 * U(rng), 2 * kPi * U(rng)});
    auto p = Trig::combine(terms);
    const double U0 = 1e4 * 2 * kPi / p.min_t();
    auto m = empirical_moments(p, U0, 2 * kPi / p.max_t() / 16);
    const double rel = std::abs(m.l2 - l2_norm(p)) / l2_norm(p);
    worst_rel = std::max(worst_rel, rel);
    const double slack = m.positive_fraction - (1.0 / (4 * p.size()) - 0.01);
    worst_pos = std::min(worst_pos, slack);
    r.require(rel < 0.01, "l2 within 1%");
    r.require(slack >= 0, "positive fraction");
  }
  r.detail << "max relative l2 error " << worst_rel << ", min positive-fraction slack " << worst_pos;
}

// 8. Lemma 4.4 residuals.
void criterion8(Result& r) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3), d(3);
  d << 0, 1, -1;
  auto nu = solve_lemma44(3, c, d);
  const double s3 = 1 / std::sqrt(3.0);
  const double ex = std::max({std::abs(nu[0]), std::abs(nu[1] - s3), std::abs(nu[2] + s3)});
  r.require(ex < 1e-12, "r=3 worked example");
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> U(-1, 1);
  double worst = 0;
  for (int rr = 3; rr <= 12; ++rr) {
    Eigen::VectorXd cc(rr), dd(rr);
    cc[0] = U(rng);
    dd[0] = 0;
    for (int v = 1; v <= rr / 2; ++v) {
      cc[v] = cc[rr - v] = U(rng);
      dd[v] = U(rng);
      dd[rr - v] = -dd[v];
    }
    if (rr % 2 == 0) dd[rr / 2] = 0;
    auto x = solve_lemma44(rr, cc, dd);
    for (int s = 0; s < 100; ++s) {
      const double u = 10 * U(rng);
      const int v = static_cast<int>(rng() % rr);
      double lhs = 0;
      for (int j = 0; j < rr; ++j) lhs += x[j] * std::sin(u + 2 * kPi * j * v / rr);
      worst = std::max(worst, std::abs(lhs - cc[v] * std::sin(u) - dd[v] * std::cos(u)));
    }
  }
  r.detail << "r=3 example error " << ex << ", max residual " << worst;
  r.require(worst < 1e-10, "residual < 1e-10");
}

// 9. Real primes at desk scale.
void criterion9(Result& r) {
  auto t0 = std::chrono::steady_clock::now();
  auto t4 = sieve_race(4, 1000000);
  const double dt = seconds_since(t0);
  bool partition = true;
  for (std::size_t i = 0; i < t4.x.size(); ++i)
    partition = partition && t4.count(i, 1) + t4.count(i, 3) == t4.pi[i] - 1;
  r.require(partition, "partition identity");
  r.require(t4.pi.back() == 78498, "pi(10^6)");
  r.require(dt < 5, "sieve runtime");
  long long c1 = 0, c3 = 0, oracle = 0;
  for (long long x = 3; !oracle && x < 1000000; x += 2) {
    bool prime = true;
    for (long long d = 3; d * d <= x && prime; d += 2) prime = x % d != 0;
    if (!prime) continue;
    (x % 4 == 1 ? c1 : c3) += 1;
    if (c1 > c3) oracle = x;
  }
  auto flc = first_lead_change(4, 1, 3, 1000000);
  r.require(flc && *flc == oracle, "first lead change vs trial division");
  auto t3 = sieve_race(3, 1000000);
  auto zeros = load_zero_data(std::string(RACELAB_TEST_DATA) + "/zeros_q3_q4.txt", 3);
  auto rep = compare_with_simulator(t3, zeros, 0.5, 2, 1, 1000);
  r.require(rep.sign_agreement >= 0.9, "sign agreement >= 90%");
  r.detail << "sieve " << dt << " s, pi(1e6)=" << t4.pi.back() << ", first lead change "
           << (flc ? std::to_string(*flc) : "none") << " (oracle " << oracle << "), q=3 sign agreement "
           << rep.sign_agreement << " over " << rep.points.size() << " checkpoints";
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<void(Result&)> checks[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9};
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
  if (only < 0 || only > 9) {
    std::fprintf(stderr, "criterion must be 1..9\n");
    return 2;
  }
  bool all = true;
  for (int n = 1; n <= 9; ++n) {
    if (only && n != only) continue;
    Result r;
    try {
      checks[n - 1](r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << " [error: " << e.what() << "]";
    }
    std::printf("criterion %d: %s  %s\n", n, r.pass ? "PASS" : "FAIL", r.detail.str().c_str());
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
