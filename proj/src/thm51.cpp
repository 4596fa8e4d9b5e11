#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"

namespace racelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLocalize = 1e-10;  // root localization in x = gamma u
constexpr double kGap = 10 * kLocalize;

struct RootScan {
  std::vector<double> roots;
  bool certified = true;
};

double bisect(const Trig& d, double lo, double hi) {
  double flo = d(lo);
  while (hi - lo > kLocalize * 1e-2) {
    double mid = 0.5 * (lo + hi), fm = d(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Roots of d in [x0, x1): a cell with a sign change and |d'| bounded away
// from 0 holds exactly one root; a cell with |d0| + |d1| > L h holds none.
void scan_cell(const Trig& d, double L, double L2, double x0, double x1, double d0, double d1,
               int depth, RootScan& out) {
  const double h = x1 - x0;
  if (d0 == 0) {
    out.roots.push_back(x0);
    return scan_cell(d, L, L2, std::nextafter(x0, x1), x1, d(std::nextafter(x0, x1)), d1, depth, out);
  }
  if ((d0 < 0) != (d1 < 0) && d1 != 0) {
    const double xm = 0.5 * (x0 + x1);
    if (std::abs(d.derivative(xm)) > L2 * h / 2) {
      out.roots.push_back(bisect(d, x0, x1));
      return;
    }
  } else if (std::abs(d0) + std::abs(d1) > L * h) {
    return;
  }
  if (depth > 40) {
    out.certified = false;
    return;
  }
  const double xm = 0.5 * (x0 + x1), dm = d(xm);
  scan_cell(d, L, L2, x0, xm, d0, dm, depth + 1, out);
  scan_cell(d, L, L2, xm, x1, dm, d1, depth + 1, out);
}

RootScan roots_in_period(const Trig& d, int cells = 4096) {
  RootScan out;
  const double L = d.lipschitz(), L2 = d.second_bound(), h = 2 * kPi / cells;
  double d0 = d(0);
  for (int i = 0; i < cells; ++i) {
    const double x0 = i * h, x1 = (i + 1) * h, d1 = d(x1);
    scan_cell(d, L, L2, x0, x1, d0, d1, 0, out);
    d0 = d1;
  }
  // A root exactly at 2 pi is the root at 0.
  out.roots.erase(std::remove_if(out.roots.begin(), out.roots.end(),
                                 [](double x) { return x >= 2 * kPi; }),
                  out.roots.end());
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

struct Component {
  int j;
  int n;
  double beta;
  std::vector<Trig> W;  // gamma w_{j,alpha}(x / gamma)
};

struct Theta {
  std::size_t comp;
  int a1;
  int a2;
  double x;
};

std::vector<Component> components(const BarrierRecipe& r) {
  const auto& gens = r.system().group().generators();
  const double gamma = r.params.at("gamma"), M = r.params.at("M");
  std::vector<Component> out;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    Component c{static_cast<int>(j), gens[j].n, r.betas.at(j), {}};
    for (int a = 0; a < c.n; ++a)
      c.W.push_back(thm51_w(c.beta, gamma, c.n, M, a).time_scaled(1 / gamma) * gamma);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Trig thm51_w(double beta, double gamma, int nj, double M, int alpha) {
  const double eps = std::atan(beta / gamma), nu = std::atan(beta / (2 * gamma));
  if (nj == 2) return Trig::combine({{1 / std::hypot(gamma, beta), gamma, kPi * alpha + eps}});
  return Trig::combine({{M / std::hypot(gamma, beta), gamma, 2 * kPi * alpha / nj + eps},
                        {1 / std::hypot(2 * gamma, beta), 2 * gamma, 4 * kPi * alpha / nj + nu}});
}

double thm51_p(double M, double z, double y1, double y2, double B1, double B2) {
  return M * (4 + z * z) *
             (std::sin(B1) * (std::cos(y1) - z * std::sin(y1)) -
              std::sin(B2) * (std::cos(y2) - z * std::sin(y2))) +
         (1 + z * z) * (std::sin(2 * B1) * (2 * std::cos(2 * y1) - z * std::sin(2 * y1)) -
                        std::sin(2 * B2) * (2 * std::cos(2 * y2) - z * std::sin(2 * y2)));
}

Thm51Report verify_thm51(const BarrierRecipe& recipe) {
  if (recipe.kind != RecipeKind::thm51_census) throw Error(Errc::recipe_mismatch, "not a Thm 5.1 recipe");
  const double gamma = recipe.params.at("gamma"), M = recipe.params.at("M");
  const auto comps = components(recipe);
  Thm51Report rep;
  rep.a = true;
  rep.c = true;
  rep.min_derivative_gap = std::numeric_limits<double>::infinity();
  std::vector<Theta> thetas;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& c = comps[ci];
    for (int a1 = 0; a1 < c.n; ++a1)
      for (int a2 = a1 + 1; a2 < c.n; ++a2) {
        const Trig d = c.W[a1] - c.W[a2];
        auto scan = roots_in_period(d);
        if (!scan.certified || scan.roots.size() != 2) rep.a = false;
        for (double x : scan.roots) {
          thetas.push_back({ci, a1, a2, x});
          double gap = std::abs(d.derivative(x)) - d.second_bound() * kLocalize;
          rep.min_derivative_gap = std::min(rep.min_derivative_gap, gap);
          if (!(gap > 0)) rep.c = false;
        }
      }
  }
  rep.theta_count = static_cast<long long>(thetas.size());
  // (B): nonzero and pairwise distinct on the circle.
  std::vector<double> xs;
  for (const auto& t : thetas) xs.push_back(t.x);
  std::sort(xs.begin(), xs.end());
  rep.min_theta_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rep.min_theta_gap = std::min({rep.min_theta_gap, xs[i], 2 * kPi - xs[i]});
    if (i > 0) rep.min_theta_gap = std::min(rep.min_theta_gap, xs[i] - xs[i - 1]);
  }
  rep.b = rep.min_theta_gap > kGap;
  // (D) for j' < j and the polynomial P(z_j) of (5.19).
  rep.d = true;
  rep.d_vacuous = comps.size() < 2;
  rep.min_d_value = std::numeric_limits<double>::infinity();
  rep.min_p_value = std::numeric_limits<double>::infinity();
  for (const auto& t : thetas)
    for (std::size_t cj = t.comp + 1; cj < comps.size(); ++cj) {
      const auto& c = comps[cj];
      const double z = c.beta / gamma;
      std::vector<double> W(c.n);
      for (int a = 0; a < c.n; ++a) W[a] = c.W[a](t.x);
      for (int a3 = 0; a3 < c.n; ++a3)
        for (int a4 = 0; a4 < c.n; ++a4)
          for (int a5 = 0; a5 < c.n; ++a5)
            for (int a6 = 0; a6 < c.n; ++a6) {
              if (a3 == a5 && a4 == a6) continue;
              if (a3 == a4 && a5 == a6) continue;
              const double v = W[a3] - W[a4] - (W[a5] - W[a6]);
              rep.min_d_value = std::min(rep.min_d_value, std::abs(v));
              if (!(std::abs(v) > kGap * M)) rep.d = false;
              if (c.n >= 4 && a3 < a4 && a5 < a6 && a3 != a5 && a4 != a6) {
                const double y1 = t.x + kPi * (a3 + a4) / c.n, y2 = t.x + kPi * (a5 + a6) / c.n;
                const double B1 = kPi * (a4 - a3) / c.n, B2 = kPi * (a6 - a5) / c.n;
                rep.min_p_value = std::min(rep.min_p_value, std::abs(thm51_p(M, z, y1, y2, B1, B2)));
              }
            }
    }
  if (rep.d_vacuous) {
    rep.min_d_value = 0;
    rep.min_p_value = 0;
  } else if (rep.min_p_value == std::numeric_limits<double>::infinity()) {
    rep.min_p_value = 0;
  }
  return rep;
}

BarrierRecipe build_thm51(int q, double tau, double M, double gamma, std::vector<double> betas,
                          Thm51Report* report) {
  auto Gp = std::make_shared<const ResidueGroup>(q);
  const auto& gens = Gp->generators();
  const std::size_t m = gens.size();
  if (m == 0) throw Error(Errc::invalid_modulus, "trivial unit group");
  if (gamma <= 0) gamma = std::max({1000.0, 10 * M, tau + 1});
  if (!(gamma > std::max(tau, M))) throw Error(Errc::precondition_violated, "gamma must exceed tau and M");
  if (betas.empty())
    for (std::size_t j = 0; j < m; ++j) betas.push_back(0.9 - 0.3 * (j + 1.0) / (m + 1.0));
  if (betas.size() != m) throw Error(Errc::invalid_input, "one beta per generator");
  for (std::size_t j = 0; j < m; ++j) {
    if (!(betas[j] > 0.5 && betas[j] < 1)) throw Error(Errc::precondition_violated, "beta outside (1/2, 1)");
    if (j > 0 && !(betas[j] < betas[j - 1]))
      throw Error(Errc::precondition_violated, "betas must decrease");
  }
  Thm51Report rep;
  const std::vector<double> base = betas;
  for (int attempt = 0; attempt < 8; ++attempt) {
    // Deterministic perturbation inside a short interval around each beta.
    for (std::size_t j = 0; j < m; ++j)
      betas[j] = base[j] + (attempt ? 1e-3 * attempt * (j % 2 ? -1.0 : 1.0) / (m + 1.0) : 0);
    std::vector<ZeroEntry> entries;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<int> k(m, 0);
      k[j] = gens[j].n - 1;
      DirichletCharacter chi(Gp, k);
      const int c1 = gens[j].n == 2 ? 1 : static_cast<int>(M), c2 = gens[j].n == 2 ? 0 : 1;
      for (int kk = 1; kk <= 2; ++kk) {
        int c = kk == 1 ? c1 : c2;
        if (!c) continue;
        ZeroEntry e;
        e.label = chi.power(kk).label();
        e.beta = betas[j];
        e.gamma = kk * gamma;
        e.mult = c;
        e.k = kk;
        entries.push_back(e);
      }
    }
    BarrierRecipe out;
    out.kind = RecipeKind::thm51_census;
    out.q = q;
    out.params = {{"gamma", gamma}, {"M", M}, {"tau", tau}};
    out.betas = betas;
    for (int a : Gp->units()) out.D.push_back(a);
    out.claim = "thm51: census of any r members is at most r(r-1)";
    out.B.emplace(Gp, entries, ZeroSystem::Kind::hypothetical, gamma);
    rep = verify_thm51(out);
    rep.attempts = attempt + 1;
    if (rep.a && rep.b && rep.c && rep.d) {
      if (report) *report = rep;
      return out;
    }
  }
  if (report) *report = rep;
  if (!rep.a) throw Error(Errc::condition_a_failed, "solution counts differ from 2");
  if (!rep.b) throw Error(Errc::condition_b_failed, "solution points collide");
  if (!rep.c) throw Error(Errc::condition_c_failed, "derivative gap vanishes");
  throw Error(Errc::condition_d_failed, "(D) combination vanishes");
}

}  // namespace racelab
