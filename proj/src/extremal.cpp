#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"

namespace racelab {

namespace {

constexpr double kPi = std::numbers::pi;

double level_for(double p) { return -(kPi - p) * (kPi - p) / (2 * kPi); }

double reduce_period(double u) {
  u = std::fmod(u, 2 * kPi);
  return u < 0 ? u + 2 * kPi : u;
}

// Indices sorted by decreasing value.
std::vector<int> ordering_of(const Eigen::VectorXd& x) {
  std::vector<int> idx(static_cast<std::size_t>(x.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] > x[b]; });
  return idx;
}

bool consistent(const std::vector<int>& order, const Eigen::VectorXd& x, double tol) {
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (x[order[i]] < x[order[i + 1]] - tol) return false;
  return true;
}

}  // namespace

double OmegaSystem::f(std::size_t i, double u) const {
  u = reduce_period(u);
  if (u > kPi) u = 2 * kPi - u;
  return u <= corner[i] ? level[i] : level[i] + (u - corner[i]);
}

double OmegaSystem::cosine_coeff(std::size_t i, int k) const {
  return 2 / kPi * (std::cos(k * kPi) - std::cos(k * corner[i])) / (static_cast<double>(k) * k);
}

std::vector<double> OmegaSystem::crossing_points() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < crossing.size(); ++i)
    for (std::size_t j = i + 1; j < crossing.size(); ++j) {
      out.push_back(crossing[i][j]);
      out.push_back(2 * kPi - crossing[i][j]);
    }
  std::sort(out.begin(), out.end());
  return out;
}

OmegaSystem build_omega(const std::vector<int>& V, int r, unsigned seed) {
  OmegaSystem om;
  om.V = V;
  const std::size_t m = V.size();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::vector<double> base(m);
  std::size_t free = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (2 * V[i] != r) ++free;
  for (int attempt = 0; attempt < 64; ++attempt) {
    om.corner.assign(m, kPi);
    std::size_t slot = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (2 * V[i] == r) continue;
      double p = kPi * (slot + 1.0) / (free + 1.0);
      if (attempt > 0) p += jitter(rng) * kPi / (free + 1.0);
      om.corner[i] = p;
      ++slot;
    }
    om.level.resize(m);
    for (std::size_t i = 0; i < m; ++i) om.level[i] = level_for(om.corner[i]);
    om.crossing.assign(m, std::vector<double>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        std::size_t lo = om.corner[i] < om.corner[j] ? i : j, hi = lo == i ? j : i;
        om.crossing[i][j] = om.corner[lo] + (om.level[hi] - om.level[lo]);
      }
    auto pts = om.crossing_points();
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      if (pts[i] < 1e-3 || std::abs(pts[i] - kPi) < 1e-3) ok = false;
      if (i > 0 && pts[i] - pts[i - 1] < 1e-3) ok = false;
    }
    if (ok) return om;
  }
  throw Error(Errc::omega_construction_failed, "crossing points keep colliding");
}

bool check_omega_type(const CandidateSystem& candidate, const OmegaSystem& omega, int samples,
                      double tol) {
  const auto pts = omega.crossing_points();
  const std::size_t m = omega.V.size();
  if (pts.empty()) return true;
  // Midpoints u'_j of the intervals between consecutive crossings, cyclically.
  std::vector<double> mid;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) mid.push_back(0.5 * (pts[i] + pts[i + 1]));
  mid.push_back(reduce_period(0.5 * (pts.back() + pts.front() + 2 * kPi)));
  std::sort(mid.begin(), mid.end());
  std::vector<std::vector<int>> ref;
  for (double u : mid) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) x[static_cast<Eigen::Index>(i)] = omega.f(i, u);
    ref.push_back(ordering_of(x));
  }
  Eigen::VectorXd x;
  for (int s = 0; s < samples; ++s) {
    const double u = 2 * kPi * s / samples;
    candidate(u, x);
    if (x.size() != static_cast<Eigen::Index>(m))
      throw Error(Errc::invalid_input, "candidate size differs from the Omega system");
    // u lies in [mid[j], mid[j+1]) cyclically.
    std::size_t j = std::upper_bound(mid.begin(), mid.end(), u) - mid.begin();
    const std::size_t a = (j + mid.size() - 1) % mid.size(), b = j % mid.size();
    if (!consistent(ref[a], x, tol) && !consistent(ref[b], x, tol)) return false;
  }
  return true;
}

BarrierRecipe build_extremal(int q, int r, const std::vector<int>& V, double beta, double gamma,
                             int K0, int N0, ExtremalReport* report) {
  auto Gp = std::make_shared<const ResidueGroup>(q);
  const auto& G = *Gp;
  if (r < 6) throw Error(Errc::precondition_violated, "cyclic subgroup order must be >= 6");
  if (G.lambda() % r != 0) throw Error(Errc::precondition_violated, "no cyclic subgroup of that order");
  std::set<int> seen;
  for (int v : V) {
    if (v <= 0 || v >= r) throw Error(Errc::precondition_violated, "1 is not allowed in D");
    if (2 * v != r && std::find(V.begin(), V.end(), r - v) != V.end())
      throw Error(Errc::precondition_violated, "D contains a pair a, a^-1");
    if (!seen.insert(v).second) throw Error(Errc::invalid_input, "repeated exponent");
  }
  long long a = 0;
  for (int x : G.units())
    if (G.order(x) == r) {
      a = x;
      break;
    }
  auto chi = character_with_value(Gp, a, Phase(r - 1, r));
  const OmegaSystem omega = build_omega(V, r);
  const std::size_t m = V.size();
  ExtremalReport rep;

  // (2) Fourier truncation.
  int K = K0;
  auto poly_candidate = [&](int KK) {
    return [&, KK](double u, Eigen::VectorXd& x) {
      x.setZero(static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (int k = 1; k <= KK; ++k) x[static_cast<Eigen::Index>(i)] += omega.cosine_coeff(i, k) * std::cos(k * u);
    };
  };
  while (!check_omega_type(poly_candidate(K), omega)) {
    K *= 2;
    if (K > 4096) throw Error(Errc::omega_type_lost, "Fourier truncation K > 4096");
  }
  rep.K = K;
  rep.omega_type_poly = true;

  // (3) Lemma 4.4 per k with c = 0 and d_v = -b_{k,v}, d_{r-v} = b_{k,v}.
  std::vector<Eigen::VectorXd> nu(static_cast<std::size_t>(K) + 1);
  for (int k = 1; k <= K; ++k) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(r), d = Eigen::VectorXd::Zero(r);
    for (std::size_t i = 0; i < m; ++i) {
      if (2 * V[i] == r) continue;
      d[V[i]] = -omega.cosine_coeff(i, k);
      d[r - V[i]] = omega.cosine_coeff(i, k);
    }
    nu[k] = solve_lemma44(r, c, d);
  }

  // (4) Integerize and re-check with the integer system.
  auto integer_table = [&](int N) {
    std::vector<std::vector<long long>> t(static_cast<std::size_t>(K) + 1, std::vector<long long>(r, 0));
    for (int k = 1; k <= K; ++k)
      for (int j = 1; j < r; ++j) t[k][j] = k * static_cast<long long>(std::floor(N * nu[k][j]));
    return t;
  };
  int N = N0;
  std::vector<std::vector<long long>> Nt;
  for (;;) {
    Nt = integer_table(N);
    auto cand = [&](double u, Eigen::VectorXd& x) {
      x.setZero(static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (int k = 1; k <= K; ++k)
          for (int j = 1; j < r; ++j)
            if (Nt[k][j])
              x[static_cast<Eigen::Index>(i)] -= static_cast<double>(Nt[k][j]) / (static_cast<double>(k) * N) *
                                                 std::sin(k * u + 2 * kPi * j * V[i] / r);
    };
    if (check_omega_type(cand, omega)) break;
    N *= 2;
    if (N > (1 << 20)) throw Error(Errc::omega_type_lost, "integerization N > 2^20");
  }
  rep.N = N;
  rep.omega_type_integer = true;

  // (5) Shift per k so that min_j N_{k,j} = 0; emit the zeros.
  std::vector<ZeroEntry> entries;
  for (int k = 1; k <= K; ++k) {
    long long lo = *std::min_element(Nt[k].begin() + 1, Nt[k].end());
    for (int j = 1; j < r; ++j) {
      long long n = Nt[k][j] - lo;
      if (n == 0) continue;
      ZeroEntry e;
      e.label = chi.power(j).label();
      e.beta = beta;
      e.gamma = k * gamma;
      e.mult = static_cast<int>(n);
      e.k = k;
      entries.push_back(e);
    }
  }
  BarrierRecipe out;
  out.kind = RecipeKind::thm43_extremal;
  out.q = q;
  out.a = a;
  out.n = r;
  for (int v : V) out.D.push_back(G.pow(a, v));
  out.params = {{"beta", beta}, {"gamma", gamma}, {"K", K}, {"N", N}, {"r", r}};
  out.claim = "thm43: census of D equals |D|(|D|-1)/2+1";
  out.B.emplace(Gp, entries, ZeroSystem::Kind::hypothetical, gamma);

  // Final check on the exact dominant members in v = gamma u.
  auto polys = dominant_members(out.race_set());
  auto exact = [&](double v, Eigen::VectorXd& x) {
    x.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) x[static_cast<Eigen::Index>(i)] = polys[i](v / gamma);
  };
  rep.omega_type_exact = check_omega_type(exact, omega);
  rep.size = out.B->size();
  if (report) *report = rep;
  if (!rep.omega_type_exact) throw Error(Errc::omega_type_lost, "exact dominant trace");
  return out;
}

}  // namespace racelab
