#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "racelab/error.hpp"
#include "racelab/simulator.hpp"

namespace racelab {

namespace {

constexpr double kPi = std::numbers::pi;

using Term = Trig::Term;

std::string key(const std::string& base, long long i) {
  return base + "[" + std::to_string(i) + "]";
}

std::string key(const std::string& base, long long i, long long j) {
  return base + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

std::vector<int> labels(const ZeroSystem& B) {
  std::set<int> s;
  for (const auto& e : B.entries()) s.insert(e.label);
  return {s.begin(), s.end()};
}

// Sum of n(beta + i gamma, chi) over chi in the label set.
int mult_over(const ZeroSystem& B, const std::vector<int>& set, double beta, double gamma) {
  int n = 0;
  for (int l : set) n += B.multiplicity(l, beta, gamma);
  return n;
}

// Labels of B with chi(a) = e(j / order).
std::vector<int> class_of(const ZeroSystem& B, long long a, int order, int j) {
  std::vector<int> out;
  const int lambda = B.group().lambda();
  for (int l : labels(B)) {
    int num = B.character(l).phase_num(a);
    if (static_cast<long long>(num) * order == static_cast<long long>(j) * lambda) out.push_back(l);
  }
  return out;
}

std::vector<double> heights_of(const DominantData& d) {
  std::vector<double> h;
  for (const auto& z : d.z) h.push_back(z.gamma);
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

Term sin_at(double c, double t, double alpha) { return {c, t, alpha}; }
Term cos_at(double c, double t, double alpha) { return {c, t, alpha + kPi / 2}; }

void check_order(const ZeroSystem& B, long long a, int order) {
  if (!B.group().is_unit(a) || B.group().order(a) != order)
    throw Error(Errc::recipe_mismatch,
                std::to_string(a) + " does not have order " + std::to_string(order));
}

Decomposition thm31(const ZeroSystem& B, const DecompParams& p) {
  Decomposition out;
  for (long long a : p.D) {
    auto d = dominant_data(B, a, 1);
    if (d.empty || d.z.empty())
      throw Error(Errc::recipe_mismatch, "z(" + std::to_string(a) + ",1) is empty");
    const double ba = d.beta;
    out.scalars[key("beta", a)] = ba;
    std::vector<Term> weighted;
    double weighted_const = 0;
    for (int l : labels(B)) {
      const auto& chi = B.character(l);
      if (chi.phase_num(a) == 0) continue;
      std::vector<Term> terms;
      double constant = 0.5 * B.multiplicity(l, ba, 0) / ba;
      auto it = d.z_chi.find(l);
      if (it != d.z_chi.end())
        for (const auto& z : it->second)
          if (z.gamma > 0) {
            int n = B.multiplicity(l, ba, z.gamma);
            terms.push_back(sin_at(n / std::hypot(z.gamma, ba), z.gamma, std::atan(ba / z.gamma)));
          }
      Trig R = Trig::combine(terms, constant);
      const double w = -2 * (1 - chi(a).real());
      for (auto t : terms) {
        t.c *= w;
        weighted.push_back(t);
      }
      weighted_const += w * constant;
      out.functions[key("R", a, l)] = R;
    }
    out.functions[key("weighted", a)] = Trig::combine(weighted, weighted_const);
    for (double g : heights_of(d)) out.heights.push_back(g);
  }
  std::sort(out.heights.begin(), out.heights.end());
  out.heights.erase(std::unique(out.heights.begin(), out.heights.end()), out.heights.end());
  return out;
}

Decomposition thm34(const ZeroSystem& B, const DecompParams& p) {
  check_order(B, p.a, 3);
  auto d = dominant_data(B, p.a, 1);
  if (d.empty || d.z.empty()) throw Error(Errc::recipe_mismatch, "z(a,1) is empty");
  const double beta = d.beta;
  auto K1 = class_of(B, p.a, 3, 1), K2 = class_of(B, p.a, 3, 2);
  std::vector<int> K12 = K1;
  K12.insert(K12.end(), K2.begin(), K2.end());
  Decomposition out;
  out.scalars["beta"] = beta;
  out.heights = heights_of(d);
  std::vector<Term> f, f1, f2, g, g1, g2;
  const double s3 = std::sqrt(3.0);
  for (double gm : out.heights) {
    int n = mult_over(B, K12, beta, gm);
    int m = -mult_over(B, K1, beta, gm) + mult_over(B, K2, beta, gm);
    out.weights["n"].push_back(n);
    out.weights["m"].push_back(m);
    const double r2 = gm * gm + beta * beta, r = std::sqrt(r2);
    const double eps = std::atan2(beta, gm);
    f.push_back(sin_at(1.5 * n / r, gm, eps));
    f1.push_back(sin_at(1.5 * n * gm / r2, gm, 0));
    f2.push_back(cos_at(1.5 * n * beta / r2, gm, 0));
    g.push_back(cos_at(s3 / 2 * m / r, gm, eps));
    g1.push_back(cos_at(s3 / 2 * m * gm / r2, gm, 0));
    g2.push_back(sin_at(s3 / 2 * m * beta / r2, gm, 0));
  }
  out.functions["f"] = Trig::combine(f);
  out.functions["f1"] = Trig::combine(f1);
  out.functions["f2"] = Trig::combine(f2);
  out.functions["g"] = Trig::combine(g);
  out.functions["g1"] = Trig::combine(g1);
  out.functions["g2"] = Trig::combine(g2);
  return out;
}

Decomposition thm39(const ZeroSystem& B, const DecompParams& p) {
  check_order(B, p.a, 4);
  const long long a2 = B.group().pow(p.a, 2);
  auto d1 = dominant_data(B, p.a, 1), d2 = dominant_data(B, a2, 1);
  if (d1.z.empty() || d2.z.empty())
    throw Error(Errc::recipe_mismatch, "z(a1,1) or z(a2,1) is empty");
  const double b1 = d1.beta, b2 = d2.beta;
  auto K1 = class_of(B, p.a, 4, 1), K2 = class_of(B, p.a, 4, 2), K3 = class_of(B, p.a, 4, 3);
  std::vector<int> K13 = K1;
  K13.insert(K13.end(), K3.begin(), K3.end());
  Decomposition out;
  out.scalars["beta1"] = b1;
  out.scalars["beta2"] = b2;
  auto h1 = heights_of(d1), h2 = heights_of(d2);
  out.heights = h1;
  out.heights.insert(out.heights.end(), h2.begin(), h2.end());
  std::sort(out.heights.begin(), out.heights.end());
  out.heights.erase(std::unique(out.heights.begin(), out.heights.end()), out.heights.end());
  std::vector<Term> f, g, h, Q, P, R;
  for (double gm : out.heights) {
    const bool in1 = std::binary_search(h1.begin(), h1.end(), gm);
    const bool in2 = std::binary_search(h2.begin(), h2.end(), gm);
    int k1 = in1 ? mult_over(B, K13, b1, gm) : 0;
    int k2 = in2 ? mult_over(B, K13, b2, gm) : 0;
    int l = in1 ? mult_over(B, K2, b1, gm) : 0;
    int m = in1 ? mult_over(B, K1, b1, gm) - mult_over(B, K3, b1, gm) : 0;
    out.weights["k1"].push_back(k1);
    out.weights["k2"].push_back(k2);
    out.weights["l"].push_back(l);
    out.weights["m"].push_back(m);
    if (in1) {
      const double r = std::hypot(gm, b1), eps = std::atan2(b1, gm);
      f.push_back(sin_at((k1 + 2 * l) / r, gm, eps));
      g.push_back(cos_at(m / r, gm, eps));
      Q.push_back(sin_at((k1 + 2 * l) / r, gm, 0));
      P.push_back(cos_at(m / r, gm, 0));
      R.push_back(sin_at(2 * l / r, gm, 0));
    }
    if (in2) {
      const double r = std::hypot(gm, b2), eps = std::atan2(b2, gm);
      h.push_back(sin_at(2 * k2 / r, gm, eps));
    }
  }
  out.functions["f"] = Trig::combine(f);
  out.functions["g"] = Trig::combine(g);
  out.functions["h"] = Trig::combine(h);
  out.functions["Q"] = Trig::combine(Q);
  out.functions["P"] = Trig::combine(P);
  out.functions["R"] = Trig::combine(R);
  return out;
}

Decomposition thm47(const ZeroSystem& B, const DecompParams& p) {
  check_order(B, p.a, 3);
  const long long a2 = B.group().pow(p.a, 2);
  auto d = dominant_data(B, p.a, a2);
  if (d.z.empty()) throw Error(Errc::recipe_mismatch, "z(a,a^2) is empty");
  Decomposition out;
  out.scalars["beta"] = d.beta;
  std::vector<Term> h;
  double hc = 0;
  for (const auto& z : d.z) {
    std::complex<double> w = std::conj(z.g) / std::complex<double>(z.beta, z.gamma);
    if (z.gamma == 0)
      hc += 0.5 * w.real();
    else
      h.push_back({std::abs(w), z.gamma, std::arg(w) + kPi / 2});
  }
  out.functions["h"] = Trig::combine(h, hc);
  // g1(rho) = sum_chi n (1 - (chi(a) + chi(a^2)) / 2) is real.
  std::map<std::pair<double, double>, double> g1;
  for (const auto& e : B.entries()) {
    const auto& chi = B.character(e.label);
    g1[{e.beta, e.gamma}] += e.mult * (1 - 0.5 * (chi(p.a) + chi(a2)).real());
  }
  double beta1 = -1;
  for (const auto& [rho, v] : g1)
    if (std::abs(v) > 1e-12) beta1 = std::max(beta1, rho.first);
  if (beta1 < 0) throw Error(Errc::recipe_mismatch, "g1 vanishes identically");
  out.scalars["beta1"] = beta1;
  std::vector<Term> h1;
  double h1c = 0;
  for (const auto& [rho, v] : g1) {
    if (rho.first != beta1 || std::abs(v) <= 1e-12) continue;
    const double gm = rho.second;
    out.heights.push_back(gm);
    out.weights["g1"].push_back(v);
    if (gm == 0)
      h1c += 0.5 * v / beta1;
    else
      h1.push_back(sin_at(v / std::hypot(gm, beta1), gm, std::atan2(beta1, gm)));
  }
  out.functions["h1"] = Trig::combine(h1, h1c);
  return out;
}

// Lattice index k of an entry; throws unless the entry sits on k * gamma.
long long lattice_k(const ZeroEntry& e, double gamma) {
  if (e.k > 0) return e.k;
  if (gamma <= 0) throw Error(Errc::recipe_mismatch, "no base height given");
  double k = std::round(e.gamma / gamma);
  if (k < 1 || std::abs(e.gamma - k * gamma) > 1e-9 * e.gamma)
    throw Error(Errc::recipe_mismatch, "height off the lattice k * gamma");
  return static_cast<long long>(k);
}

void check_single_level(const ZeroSystem& B) {
  for (const auto& e : B.entries())
    if (e.beta != B.r_plus())
      throw Error(Errc::recipe_mismatch, "lattice recipes use a single real part");
}

// sum over entries of (n / k) sin(k v - 2 pi phase(chi(c))) in v = gamma u.
Trig lattice_function(const ZeroSystem& B, long long c, double gamma) {
  std::vector<Term> terms;
  for (const auto& e : B.entries()) {
    long long k = lattice_k(e, gamma);
    double ph = B.character(e.label).phase(c).value();
    terms.push_back(sin_at(static_cast<double>(e.mult) / k, static_cast<double>(k), -2 * kPi * ph));
  }
  return Trig::combine(terms);
}

Decomposition thm311(const ZeroSystem& B, const DecompParams& p) {
  check_single_level(B);
  const double gamma = p.gamma > 0 ? p.gamma : B.base_gamma();
  const auto& G = B.group();
  Decomposition out;
  out.variable = "v";
  if (p.b != 0) {
    check_order(B, p.a, 4);
    check_order(B, p.b, 2);
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 2; ++s)
        out.functions[key("G", r, s)] =
            lattice_function(B, G.mul(G.pow(p.a, r), G.pow(p.b, s)), gamma);
    return out;
  }
  const int n = p.n > 0 ? p.n : G.order(p.a);
  check_order(B, p.a, n);
  for (int r = 0; r < n; ++r) out.functions[key("G", r)] = lattice_function(B, G.pow(p.a, r), gamma);
  return out;
}

Decomposition thm43(const ZeroSystem& B, const DecompParams& p) {
  check_single_level(B);
  const double gamma = p.gamma > 0 ? p.gamma : B.base_gamma();
  const auto& G = B.group();
  const int r = p.n > 0 ? p.n : G.order(p.a);
  check_order(B, p.a, r);
  long long K = 0;
  for (const auto& e : B.entries()) K = std::max(K, lattice_k(e, gamma));
  Decomposition out;
  out.variable = "v";
  for (int v = 0; v < r; ++v) {
    const long long c = G.pow(p.a, v);
    std::vector<Term> total;
    for (long long k = 1; k <= K; ++k) {
      std::vector<Term> terms;
      for (const auto& e : B.entries()) {
        if (lattice_k(e, gamma) != k) continue;
        double ph = B.character(e.label).phase(c).value();
        terms.push_back(sin_at(static_cast<double>(e.mult) / k, static_cast<double>(k), -2 * kPi * ph));
      }
      if (terms.empty()) continue;
      out.functions[key("G", k, v)] = Trig::combine(terms);
      total.insert(total.end(), terms.begin(), terms.end());
    }
    out.functions[key("sum", v)] = Trig::combine(total);
  }
  return out;
}

Decomposition thm51(const ZeroSystem& B, const DecompParams& p) {
  const auto& G = B.group();
  const auto& gens = G.generators();
  Decomposition out;
  // Component j of each entry's character, which must be supported on one
  // generator.
  std::map<int, std::vector<const ZeroEntry*>> per_j;
  for (const auto& e : B.entries()) {
    const auto& k = B.character(e.label).k();
    int j = -1;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] != 0) {
        if (j >= 0) throw Error(Errc::recipe_mismatch, "character spans several generators");
        j = static_cast<int>(i);
      }
    per_j[j].push_back(&e);
  }
  for (const auto& [j, entries] : per_j) {
    const double beta = entries.front()->beta;
    for (const auto* e : entries)
      if (e->beta != beta) throw Error(Errc::recipe_mismatch, "one real part per generator");
    out.scalars[key("beta", j)] = beta;
    const int nj = gens[j].n;
    std::vector<int> alpha(gens.size(), 0);
    for (int a = 0; a < nj; ++a) {
      alpha[j] = a;
      const long long c = G.from_exponents(alpha);
      std::vector<Term> terms;
      for (const auto* e : entries) {
        std::complex<double> w = std::conj(B.character(e->label)(c)) *
                                 static_cast<double>(e->mult) / e->rho();
        terms.push_back({std::abs(w), e->gamma, std::arg(w) + kPi / 2});
      }
      out.functions[key("w", j, a)] = Trig::combine(terms);
    }
  }
  (void)p;
  return out;
}

}  // namespace

Decomposition theorem_decomposition(const ZeroSystem& B, DecompCase which,
                                    const DecompParams& params) {
  switch (which) {
    case DecompCase::thm31: return thm31(B, params);
    case DecompCase::thm34: return thm34(B, params);
    case DecompCase::thm39: return thm39(B, params);
    case DecompCase::thm47: return thm47(B, params);
    case DecompCase::thm311: return thm311(B, params);
    case DecompCase::thm43: return thm43(B, params);
    case DecompCase::thm51: return thm51(B, params);
  }
  throw Error(Errc::invalid_input, "unknown decomposition");
}

}  // namespace racelab
