#include "racelab/trigpoly.hpp"

#include <cmath>
#include <numbers>

namespace racelab {

Moments empirical_moments(const Trig& p, double U, double step) {
  if (!(U > 0) || !(step > 0))
    throw Error(Errc::invalid_input, "U and step must be positive");
  if (p.size() > 0 && step >= 2 * std::numbers::pi / p.max_t())
    throw Error(Errc::resolution_too_coarse,
                "step is not below the smallest period");
  const long long n = static_cast<long long>(std::floor(U / step));
  if (n < 1) throw Error(Errc::invalid_input, "U shorter than one step");
  double s1 = 0, s2 = 0, sup = 0;
  long long pos = 0;
  for (long long i = 0; i < n; ++i) {
    double v = p((i + 0.5) * step);
    s1 += v;
    s2 += v * v;
    if (v > 0) ++pos;
    sup = std::max(sup, std::abs(v));
  }
  Moments m;
  m.mean = s1 / n;
  m.l2 = std::sqrt(s2 / n);
  m.positive_fraction = static_cast<double>(pos) / n;
  m.sup_seen = sup;
  return m;
}

std::complex<double> ExpPoly::operator()(double u) const {
  std::complex<double> s = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += a[k] * std::polar(1.0, lambda[k] * u);
  return s;
}

ExpPoly to_exponential(const Trig& p) {
  // c sin(x) = (c / 2i)(e^{ix} - e^{-ix})
  ExpPoly e;
  const std::complex<double> i(0, 1);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    std::complex<double> w = p.c()[k] / (2.0 * i) * std::polar(1.0, p.alpha()[k]);
    e.a.push_back(w);
    e.lambda.push_back(p.t()[k]);
    e.a.push_back(std::conj(w));
    e.lambda.push_back(-p.t()[k]);
  }
  if (p.constant() != 0) {
    e.a.push_back(p.constant());
    e.lambda.push_back(0);
  }
  return e;
}

NazarovReport nazarov_check(const ExpPoly& p, const std::vector<Interval>& E,
                            double U, double C) {
  NazarovReport r;
  for (const auto& iv : E) r.measure += std::max(0.0, std::min(iv.hi, U) - std::max(iv.lo, 0.0));
  if (E.empty() || !(r.measure > 0))
    throw Error(Errc::invalid_set, "E has zero measure");
  double lmax = 0;
  for (double l : p.lambda) lmax = std::max(lmax, std::abs(l));
  const double step = lmax > 0 ? std::min(U / 4096, 2 * std::numbers::pi / lmax / 64)
                               : U / 4096;
  auto in_e = [&](double u) {
    for (const auto& iv : E)
      if (u >= iv.lo && u <= iv.hi) return true;
    return false;
  };
  double sup_all = 0, sup_e = 0;
  const long long n = static_cast<long long>(std::ceil(U / step));
  for (long long i = 0; i <= n; ++i) {
    double u = std::min(U, i * step);
    double v = std::abs(p(u));
    sup_all = std::max(sup_all, v);
    if (in_e(u)) sup_e = std::max(sup_e, v);
  }
  const int terms = static_cast<int>(p.size());
  const double factor = terms <= 1 ? 1.0 : std::pow(C * U / r.measure, terms - 1);
  r.lhs = sup_all;
  r.rhs = factor * sup_e;
  r.holds = r.lhs <= r.rhs * (1 + 1e-12);
  return r;
}

double corollary23_eps(int n, double gamma, double C) {
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(n))) *
         std::pow(C / gamma, 1.0 - 2.0 * n);
}

double small_value_fraction(const Trig& p, double eps_mult, double U) {
  if (p.size() == 0) throw Error(Errc::invalid_input, "zero polynomial");
  const double thr = eps_mult * p.abs_sum();
  const double step = 2 * std::numbers::pi / p.max_t() / 16384;
  const long long n = static_cast<long long>(std::floor(U / step));
  long long hits = 0;
  for (long long i = 0; i < n; ++i)
    if (std::abs(p((i + 0.5) * step)) < thr) ++hits;
  return static_cast<double>(hits) / n;
}

}  // namespace racelab
