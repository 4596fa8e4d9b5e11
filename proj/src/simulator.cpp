#include "racelab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "racelab/error.hpp"
#include "racelab/primes.hpp"
#include "racelab/quadrature.hpp"

namespace racelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxLogX = 709.0;

double star(const ZeroEntry& e) { return e.gamma == 0 ? 0.5 : 1.0; }

// conj(chi(a)) for the character of entry e.
std::complex<double> conj_chi(const ZeroSystem& B, const ZeroEntry& e, long long a) {
  return std::conj(B.character(e.label)(a));
}

// Re(w e^{i gamma u}) as a single sine term.
Trig::Term re_phasor(std::complex<double> w, double gamma) {
  return {std::abs(w), gamma, std::arg(w) + kPi / 2};
}

}  // namespace

void validate(const RaceFunctionSet& S) {
  for (long long a : S.members)
    if (!S.B.group().is_unit(a))
      throw Error(Errc::invalid_residue,
                  std::to_string(a) + " is not a unit mod " + std::to_string(S.q()));
}

std::complex<double> f_rho_integral(std::complex<double> rho, double s0, double s1) {
  if (s1 <= s0) return 0;
  auto f = [rho](double s) { return std::exp(rho * s) / (s * s); };
  auto r = integrate_oscillatory(f, s0, s1, std::abs(rho.imag()), 1e-9);
  return r.value / rho;
}

double f_rho_discarded_bound(std::complex<double> rho, double x) {
  const double beta = rho.real(), r2 = std::norm(rho);
  const double s = std::log(x), l2 = std::log(2.0);
  if (x <= 2) return 0;
  auto g = [beta](double t) { return std::complex<double>(std::exp(beta * t) / (t * t * t)); };
  double tail = integrate_gk15(g, l2, s, 1e-9).value.real();
  return (std::exp(beta * s) / (s * s) + std::pow(2.0, beta) / (l2 * l2) + 2 * tail) / r2;
}

FRho f_rho(std::complex<double> rho, double x) {
  if (!(x >= 2)) throw Error(Errc::domain_error, "f(rho) needs x >= 2");
  if (rho == 0.0) throw Error(Errc::domain_error, "rho must be nonzero");
  const double s = std::log(x);
  FRho out;
  out.main = std::exp(rho * s) / (rho * s);
  out.integral = f_rho_integral(rho, std::log(2.0), s);
  out.value = out.main + out.integral;
  out.discarded_bound = f_rho_discarded_bound(rho, x);
  out.asymptotic_scale = std::exp(rho.real() * s) / (std::norm(rho) * s * s);
  return out;
}

double li(double x) {
  if (x <= 0) throw Error(Errc::domain_error, "li needs x > 0");
  return std::expint(std::log(x));
}

double pi_proxy_value(PiProxy proxy, double x) {
  if (proxy == PiProxy::li) return li(x);
  return static_cast<double>(prime_pi(static_cast<long long>(std::floor(x))));
}

double oscillation(const RaceFunctionSet& S, long long a, double x) {
  if (!(x >= 2)) throw Error(Errc::domain_error, "x must be >= 2");
  if (std::log(x) > kMaxLogX) throw Error(Errc::overflow_risk, "x too large");
  std::complex<double> sum = 0;
  std::map<std::pair<double, double>, std::complex<double>> cache;
  for (const auto& e : S.B.entries()) {
    auto key = std::make_pair(e.beta, e.gamma);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, f_rho(e.rho(), x).value).first;
    sum += conj_chi(S.B, e, a) * static_cast<double>(e.mult) * star(e) * it->second;
  }
  return -2.0 / S.B.group().phi() * sum.real();
}

std::map<long long, double> race_values(const RaceFunctionSet& S, double x) {
  validate(S);
  if (!(x >= 2)) throw Error(Errc::domain_error, "x must be >= 2");
  const double base = pi_proxy_value(S.pi_proxy, x) / S.B.group().phi();
  std::map<long long, double> out;
  for (long long a : S.members) out[a] = base + oscillation(S, a, x);
  return out;
}

double race_difference(const RaceFunctionSet& S, long long a, long long b, double x) {
  return oscillation(S, a, x) - oscillation(S, b, x);
}

double DominantProfile::scale(double u) const {
  return 2 * std::exp(beta * u) / (phi * u);
}

double DominantProfile::residual_bound(double u) const {
  // Scaled by phi u / (2 e^{beta u}): each rho contributes |g| times its
  // discarded integral bound, non-dominant rho also their main term.
  const double l2 = std::log(2.0);
  auto scaled_discard = [&](double b, double r2) {
    auto g = [&](double t) {
      return std::complex<double>(std::exp(b * t - beta * u) / (t * t * t));
    };
    double tail = integrate_gk15(g, l2, u, 1e-9).value.real();
    return (std::exp((b - beta) * u) / u + u * std::exp(-beta * u) * std::pow(2.0, b) / (l2 * l2) +
            2 * u * tail) / r2;
  };
  double total = 0;
  for (const auto& z0 : z) {
    double w = z0.gamma == 0 ? 0.5 : 1.0;
    total += w * std::abs(z0.g) * scaled_discard(z0.beta, z0.beta * z0.beta + z0.gamma * z0.gamma);
  }
  for (const auto& z0 : rest) {
    double w = z0.gamma == 0 ? 0.5 : 1.0;
    double r = std::hypot(z0.beta, z0.gamma);
    total += w * std::abs(z0.g) *
             (std::exp((z0.beta - beta) * u) / r + scaled_discard(z0.beta, r * r));
  }
  return total;
}

DominantProfile dominant_profile(const RaceFunctionSet& S, long long a, long long b) {
  validate(S);
  auto d = dominant_data(S.B, a, b);
  if (d.empty || d.z.empty())
    throw Error(Errc::empty_dominant_set, "z(a,b) is empty");
  DominantProfile p;
  p.a = a;
  p.b = b;
  p.phi = S.B.group().phi();
  p.beta = d.beta;
  p.z = d.z;
  for (const auto& z0 : d.nonzero)
    if (z0.beta != d.beta) p.rest.push_back(z0);
  std::vector<Trig::Term> terms;
  double constant = 0;
  for (const auto& z0 : d.z) {
    std::complex<double> w = -std::conj(z0.g) / std::complex<double>(z0.beta, z0.gamma);
    if (z0.gamma == 0)
      constant += 0.5 * w.real();
    else
      terms.push_back(re_phasor(w, z0.gamma));
  }
  p.M = Trig::combine(terms, constant);
  return p;
}

double corollary13_shift_bound(double sigma, double t) {
  return t == 0 ? std::numeric_limits<double>::infinity() : sigma / t;
}

double corollary13_sum(const ZeroSystem& zeros, long long a, long long b, double u,
                       double sigma) {
  const auto& G = zeros.group();
  if (!G.is_unit(a) || !G.is_unit(b)) throw Error(Errc::invalid_residue, "a, b must be units");
  double total = 0;
  for (const auto& e : zeros.entries()) {
    if (std::abs(e.beta - sigma) > 1e-12)
      throw Error(Errc::invalid_input, "zeros have mixed real parts");
    const auto& chi = zeros.character(e.label);
    if (chi.phase_num(a) == chi.phase_num(b)) continue;
    const double t = e.gamma;
    const double shift = std::atan2(sigma, t);
    auto nu = [&](long long n) {
      return std::sin(t * u - 2 * kPi * chi.phase(n).value() + shift);
    };
    const double w = t == 0 ? 0.5 : 1.0;
    total += w * e.mult * (nu(b) - nu(a)) / std::hypot(t, sigma);
  }
  return total;
}

std::vector<Trig> dominant_members(const RaceFunctionSet& S, double level_weight) {
  validate(S);
  std::vector<double> levels;
  for (const auto& e : S.B.entries()) levels.push_back(e.beta);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto weight = [&](double beta) {
    auto it = std::find(levels.begin(), levels.end(), beta);
    return std::pow(level_weight, static_cast<double>(it - levels.begin()));
  };
  std::vector<Trig> out;
  double peak = 0;
  for (long long a : S.members) {
    std::vector<Trig::Term> terms;
    double constant = 0;
    for (const auto& e : S.B.entries()) {
      std::complex<double> w = -conj_chi(S.B, e, a) * static_cast<double>(e.mult) *
                               weight(e.beta) / e.rho();
      if (e.gamma == 0)
        constant += 0.5 * w.real();
      else
        terms.push_back(re_phasor(w, e.gamma));
    }
    out.push_back(Trig::combine(terms, constant));
    if (out.back().size()) peak = std::max(peak, out.back().c().maxCoeff());
    peak = std::max(peak, std::abs(constant));
  }
  if (peak > 0)
    for (auto& p : out) p = p * (1.0 / peak);
  return out;
}

namespace {

int worker_count(int threads, std::size_t work) {
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(1, work / 64)));
}

template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn fn) {
  const int w = worker_count(threads, n);
  if (w <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + w - 1) / w;
  for (int k = 0; k < w; ++k) {
    std::size_t lo = k * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// Full-formula scaled member values u e^{-beta u} x (oscillating sum).
class FullFormula {
 public:
  explicit FullFormula(const RaceFunctionSet& S) {
    beta_ = S.B.empty() ? 0.5 : S.B.r_plus();
    for (const auto& e : S.B.entries()) {
      auto key = std::make_pair(e.beta, e.gamma);
      if (std::find(rhos_.begin(), rhos_.end(), key) == rhos_.end()) rhos_.push_back(key);
    }
    for (long long a : S.members) {
      std::vector<std::complex<double>> w(rhos_.size(), 0.0);
      for (const auto& e : S.B.entries()) {
        auto k = std::find(rhos_.begin(), rhos_.end(), std::make_pair(e.beta, e.gamma)) - rhos_.begin();
        w[k] += conj_chi(S.B, e, a) * static_cast<double>(e.mult) * star(e);
      }
      weights_.push_back(std::move(w));
    }
  }

  std::size_t zeros() const { return rhos_.size(); }

  // J_k(u) = e^{-beta u} int_{ln 2}^{u} e^{rho_k s} / s^2 ds
  std::complex<double> integral(std::size_t k, double u0, double u1,
                                std::complex<double> J0) const {
    std::complex<double> rho(rhos_[k].first, rhos_[k].second);
    const double b = beta_;
    auto f = [rho, b, u1](double s) { return std::exp(rho * s - b * u1) / (s * s); };
    auto r = integrate_oscillatory(f, u0, u1, std::abs(rho.imag()), 1e-9);
    return J0 * std::exp(-b * (u1 - u0)) + r.value;
  }

  void values(double u, const std::vector<std::complex<double>>& J, Eigen::VectorXd& out) const {
    out.resize(static_cast<Eigen::Index>(weights_.size()));
    for (std::size_t m = 0; m < weights_.size(); ++m) {
      std::complex<double> sum = 0;
      for (std::size_t k = 0; k < rhos_.size(); ++k) {
        std::complex<double> rho(rhos_[k].first, rhos_[k].second);
        std::complex<double> f = std::exp((rho - beta_) * u) / rho + u * J[k] / rho;
        sum += weights_[m][k] * f;
      }
      out[m] = -sum.real();
    }
  }

  void direct(double u, Eigen::VectorXd& out) const {
    std::vector<std::complex<double>> J(rhos_.size());
    for (std::size_t k = 0; k < rhos_.size(); ++k) J[k] = integral(k, std::log(2.0), u, 0.0);
    values(u, J, out);
  }

 private:
  double beta_;
  std::vector<std::pair<double, double>> rhos_;
  std::vector<std::vector<std::complex<double>>> weights_;
};

bool lattice_period(const ZeroSystem& B, double& period) {
  if (B.base_gamma() <= 0) return false;
  for (const auto& e : B.entries())
    if (e.gamma != 0 && e.k < 0) return false;
  period = 2 * kPi / B.base_gamma();
  return true;
}

}  // namespace

OrderingTrace trace(const RaceFunctionSet& S, double u0, double u1, double step,
                    TraceMode mode, int threads) {
  validate(S);
  if (!(step > 0) || !(u1 >= u0)) throw Error(Errc::invalid_input, "bad u range or step");
  const std::size_t n = static_cast<std::size_t>(std::floor((u1 - u0) / step + 1e-9)) + 1;
  OrderingTrace t;
  t.members = S.members;
  t.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.u[i] = u0 + step * static_cast<double>(i);
  const Eigen::Index m = static_cast<Eigen::Index>(S.members.size());
  t.values.resize(static_cast<Eigen::Index>(n), m);
  if (mode == TraceMode::dominant_only) {
    auto polys = std::make_shared<std::vector<Trig>>(dominant_members(S));
    parallel_chunks(n, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        for (Eigen::Index k = 0; k < m; ++k) t.values(i, k) = (*polys)[k](t.u[i]);
    });
    t.evaluator = [polys](double u, Eigen::VectorXd& out) {
      out.resize(static_cast<Eigen::Index>(polys->size()));
      for (std::size_t k = 0; k < polys->size(); ++k) out[k] = (*polys)[k](u);
    };
    double period;
    if (lattice_period(S.B, period) || S.B.empty()) {
      t.period = S.B.empty() ? u1 - u0 : period;
      t.periodic = S.B.empty() || u1 - u0 + step >= period - 1e-12 * period;
    }
  } else {
    if (u1 > kMaxLogX)
      throw Error(Errc::overflow_risk,
                  "x = e^u is not representable beyond u = 709; use dominant-only mode");
    if (u0 < std::log(2.0)) throw Error(Errc::domain_error, "u must be >= log 2");
    auto ff = std::make_shared<FullFormula>(S);
    parallel_chunks(n, threads, [&](std::size_t lo, std::size_t hi) {
      std::vector<std::complex<double>> J(ff->zeros(), 0.0);
      double prev = std::log(2.0);
      Eigen::VectorXd row;
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t k = 0; k < ff->zeros(); ++k) J[k] = ff->integral(k, prev, t.u[i], J[k]);
        prev = t.u[i];
        ff->values(t.u[i], J, row);
        t.values.row(static_cast<Eigen::Index>(i)) = row.transpose();
      }
    });
    t.evaluator = [ff](double u, Eigen::VectorXd& out) { ff->direct(u, out); };
  }
  t.crossings = detect_crossings(t);
  return t;
}

OrderingTrace period_trace(const RaceFunctionSet& S, int samples_per_period, int threads) {
  double period;
  if (!lattice_period(S.B, period))
    throw Error(Errc::invalid_input, "system heights are not on a lattice k * gamma");
  const double step = period / samples_per_period;
  auto t = trace(S, 0, period - step, step, TraceMode::dominant_only, threads);
  t.periodic = true;
  t.period = period;
  return t;
}

}  // namespace racelab
