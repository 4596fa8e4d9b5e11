#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"

namespace racelab {

namespace {

constexpr double kEps3 = 1e-3;  // Lemma 2.7 constant, left implicit in the paper

std::string num(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

using RhoSet = std::set<std::pair<double, double>>;

void add_all(RhoSet& s, const std::vector<DominantZero>& zs) {
  for (const auto& z : zs) s.insert({z.beta, z.gamma});
}

double min_height(const RhoSet& s) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [b, g] : s) m = std::min(m, g);
  return s.empty() ? 0 : m;
}

}  // namespace

bool HypothesisReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const HypothesisItem& i) { return i.pass; });
}

HypothesisReport check_hypotheses(int thm, const ZeroSystem& B, const std::vector<long long>& D,
                                  double tau_prime) {
  const auto& G = B.group();
  HypothesisReport rep;
  rep.thm = thm;
  auto item = [&](const std::string& name, bool pass, const std::string& detail = "") {
    rep.items.push_back({name, pass, detail});
  };
  auto z_nonempty = [&](long long a, long long b, RhoSet& acc, bool all_nonzero) {
    auto d = dominant_data(B, a, b);
    const auto& zs = all_nonzero ? d.nonzero : d.z;
    add_all(acc, zs);
    const std::string name = std::string(all_nonzero ? "Z(" : "z(") + std::to_string(G.reduce(a)) +
                             "," + std::to_string(G.reduce(b)) + ") nonempty";
    item(name, !zs.empty(), std::to_string(zs.size()) + " points");
  };
  auto heights = [&](const RhoSet& s, double tau, const std::string& label) {
    const double h = min_height(s);
    item("heights >= " + label, !s.empty() && h >= tau, "min height " + num(h) + ", tau " + num(tau));
  };
  if (D.empty()) {
    item("D nonempty", false);
    return rep;
  }
  for (long long a : D)
    if (!G.is_unit(a)) {
      item("D inside F_q^*", false, std::to_string(a));
      return rep;
    }
  switch (thm) {
    case 31: {
      bool no_one = std::none_of(D.begin(), D.end(), [&](long long a) { return G.reduce(a) == 1; });
      item("1 not in D", no_one);
      RhoSet s;
      for (long long a : D) z_nonempty(a, 1, s, false);
      break;
    }
    case 34: {
      const long long a = D.front();
      item("a has order 3", G.order(a) == 3, "order " + std::to_string(G.order(a)));
      RhoSet s;
      z_nonempty(a, 1, s, false);
      rep.tau = 2 + std::sqrt(3.0);
      rep.n = static_cast<int>(s.size());
      heights(s, rep.tau, "2+sqrt3");
      break;
    }
    case 36: {
      bool no_one = std::none_of(D.begin(), D.end(), [&](long long a) { return G.reduce(a) == 1; });
      item("1 not in D", no_one);
      RhoSet s;
      for (long long a : D) z_nonempty(a, 1, s, false);
      rep.n = static_cast<int>(s.size());
      rep.tau = std::max(tau_prime, 1 / lemma26_eps2(std::max(1, rep.n)));
      heights(s, rep.tau, "1/eps2(n)");
      break;
    }
    case 39: {
      long long a = 0;
      for (long long x : D)
        if (G.order(x) == 4) a = G.reduce(x);
      std::set<int> want, got;
      if (a)
        for (int e = 1; e < 4; ++e) want.insert(G.pow(a, e));
      for (long long x : D) got.insert(G.reduce(x));
      item("G cyclic of order 4", a != 0 && (D.size() == 1 || got == want),
           a ? "generator " + std::to_string(a) : "no element of order 4");
      if (!a) break;
      RhoSet s;
      for (int c : want) z_nonempty(c, 1, s, false);
      rep.n = static_cast<int>(s.size());
      const double eps2 = lemma26_eps2(std::max(1, rep.n));
      rep.tau = std::max(tau_prime, 2 / (kEps3 * (eps2 / 2) * (eps2 / 2)));
      heights(s, rep.tau, "2/(eps3 (eps2/2)^2)");
      break;
    }
    case 47: {
      const long long a = D.front();
      item("a has order 3", G.order(a) == 3, "order " + std::to_string(G.order(a)));
      RhoSet s;
      z_nonempty(a, 1, s, true);
      z_nonempty(a, G.pow(a, 2), s, true);
      rep.n = static_cast<int>(s.size());
      const int n = std::max(1, rep.n);
      rep.tau = std::max({tau_prime, 1 / lemma26_eps2(n), 1 / lemma24_eps1(n)});
      heights(s, rep.tau, "max(tau', 1/eps1(n))");
      break;
    }
    default:
      throw Error(Errc::invalid_input, "hypothesis checks exist for 31, 34, 36, 39, 47");
  }
  return rep;
}

}  // namespace racelab
