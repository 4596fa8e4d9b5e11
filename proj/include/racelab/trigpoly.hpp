#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "racelab/error.hpp"

namespace racelab {

// P(u) = constant + sum_k c_k sin(t_k u + alpha_k), t_k > 0 pairwise distinct.
template <class Scalar>
class TrigPoly {
 public:
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Term {
    Scalar c;
    Scalar t;
    Scalar alpha;
  };

  TrigPoly() = default;

  TrigPoly(Vec c, Vec t, Vec alpha, Scalar constant = Scalar(0))
      : c_(std::move(c)), t_(std::move(t)), a_(std::move(alpha)),
        constant_(constant) {
    if (c_.size() != t_.size() || c_.size() != a_.size())
      throw Error(Errc::invalid_input, "term arrays differ in length");
    for (Eigen::Index i = 0; i < t_.size(); ++i) {
      if (!(t_[i] > Scalar(0)))
        throw Error(Errc::invalid_input, "frequencies must be positive");
      for (Eigen::Index j = 0; j < i; ++j)
        if (t_[i] == t_[j])
          throw Error(Errc::invalid_input, "frequencies must be distinct");
    }
    if (c_.size() > 0 && (c_.array() == Scalar(0)).all())
      throw Error(Errc::invalid_input, "all amplitudes are zero");
  }

  // Merges equal frequencies, folds negative frequencies and t = 0 terms,
  // drops vanishing terms.
  static TrigPoly combine(std::vector<Term> terms, Scalar constant = Scalar(0)) {
    const Scalar pi = std::numbers::pi_v<Scalar>;
    std::vector<Term> norm;
    for (Term tm : terms) {
      if (tm.c == Scalar(0)) continue;
      if (tm.t == Scalar(0)) {
        constant += tm.c * std::sin(tm.alpha);
        continue;
      }
      if (tm.t < Scalar(0)) {
        tm.t = -tm.t;
        tm.alpha = pi - tm.alpha;
      }
      norm.push_back(tm);
    }
    std::sort(norm.begin(), norm.end(),
              [](const Term& x, const Term& y) { return x.t < y.t; });
    std::vector<Term> merged;
    std::vector<std::pair<Scalar, Scalar>> phasor;
    Scalar scale(0);
    for (const Term& tm : norm) scale = std::max(scale, std::abs(tm.c));
    for (const Term& tm : norm) {
      const Scalar tol = Scalar(1e-12) * std::max(Scalar(1), tm.t);
      if (!merged.empty() && std::abs(merged.back().t - tm.t) <= tol) {
        phasor.back().first += tm.c * std::cos(tm.alpha);
        phasor.back().second += tm.c * std::sin(tm.alpha);
      } else {
        merged.push_back(tm);
        phasor.emplace_back(tm.c * std::cos(tm.alpha), tm.c * std::sin(tm.alpha));
      }
    }
    std::vector<Term> out;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      Scalar amp = std::hypot(phasor[i].first, phasor[i].second);
      if (amp <= Scalar(1e-15) * scale) continue;
      out.push_back({amp, merged[i].t, std::atan2(phasor[i].second, phasor[i].first)});
    }
    Vec c(out.size()), t(out.size()), a(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      c[i] = out[i].c;
      t[i] = out[i].t;
      a[i] = out[i].alpha;
    }
    return TrigPoly(c, t, a, constant);
  }

  Eigen::Index size() const { return c_.size(); }
  bool empty() const { return c_.size() == 0 && constant_ == Scalar(0); }
  const Vec& c() const { return c_; }
  const Vec& t() const { return t_; }
  const Vec& alpha() const { return a_; }
  Scalar constant() const { return constant_; }

  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (Eigen::Index i = 0; i < size(); ++i) out.push_back({c_[i], t_[i], a_[i]});
    return out;
  }

  Scalar operator()(Scalar u) const {
    return constant_ + (c_.array() * (t_.array() * u + a_.array()).sin()).sum();
  }

  Vec operator()(const Vec& u) const {
    Vec out(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = (*this)(u[i]);
    return out;
  }

  Scalar derivative(Scalar u) const {
    return (c_.array() * t_.array() * (t_.array() * u + a_.array()).cos()).sum();
  }

  Scalar abs_sum() const { return c_.cwiseAbs().sum(); }
  Scalar lipschitz() const { return (c_.cwiseAbs().array() * t_.array()).sum(); }
  Scalar second_bound() const {
    return (c_.cwiseAbs().array() * t_.array().square()).sum();
  }
  Scalar max_t() const { return size() ? t_.maxCoeff() : Scalar(0); }
  Scalar min_t() const { return size() ? t_.minCoeff() : Scalar(0); }

  TrigPoly operator-() const { return TrigPoly(-c_, t_, a_, -constant_); }

  TrigPoly operator*(Scalar s) const {
    if (s == Scalar(0)) return TrigPoly();
    return TrigPoly(c_ * s, t_, a_, constant_ * s);
  }

  TrigPoly operator+(const TrigPoly& o) const {
    std::vector<Term> all = terms();
    for (const Term& tm : o.terms()) all.push_back(tm);
    return combine(all, constant_ + o.constant_);
  }

  TrigPoly operator-(const TrigPoly& o) const { return *this + (-o); }

  // P(s u) as a polynomial in u.
  TrigPoly time_scaled(Scalar s) const {
    std::vector<Term> all = terms();
    for (Term& tm : all) tm.t *= s;
    return combine(all, constant_);
  }

  // P(u + h) as a polynomial in u.
  TrigPoly shifted(Scalar h) const {
    Vec a = a_ + t_ * h;
    return TrigPoly(c_, t_, a, constant_);
  }

  TrigPoly derivative_poly() const {
    const Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
    Vec c = c_.cwiseProduct(t_);
    Vec a = a_.array() + half_pi;
    return TrigPoly(c, t_, a);
  }

 private:
  Vec c_;
  Vec t_;
  Vec a_;
  Scalar constant_ = Scalar(0);
};

template <class Scalar>
TrigPoly<Scalar> operator*(Scalar s, const TrigPoly<Scalar>& p) {
  return p * s;
}

using Trig = TrigPoly<double>;

template <class Scalar>
TrigPoly<Scalar> sin_term(Scalar c, Scalar t, Scalar alpha = Scalar(0)) {
  return TrigPoly<Scalar>::combine({{c, t, alpha}});
}

template <class Scalar>
TrigPoly<Scalar> cos_term(Scalar c, Scalar t, Scalar alpha = Scalar(0)) {
  return TrigPoly<Scalar>::combine(
      {{c, t, alpha + std::numbers::pi_v<Scalar> / 2}});
}

template <class Scalar>
Scalar eval(const TrigPoly<Scalar>& p, Scalar u) {
  return p(u);
}

// Closed form (1/2 sum c_k^2)^(1/2) of the mean square of the oscillating part.
template <class Scalar>
Scalar l2_norm(const TrigPoly<Scalar>& p) {
  return std::sqrt(p.c().squaredNorm() / Scalar(2));
}

struct Moments {
  double mean = 0;
  double l2 = 0;
  double positive_fraction = 0;
  double sup_seen = 0;
};

Moments empirical_moments(const Trig& p, double U, double step);

// Complex exponential sum sum_k a_k e^{i lambda_k u}.
struct ExpPoly {
  std::vector<std::complex<double>> a;
  std::vector<double> lambda;

  std::complex<double> operator()(double u) const;
  std::size_t size() const { return a.size(); }
};

ExpPoly to_exponential(const Trig& p);

struct Interval {
  double lo;
  double hi;
};

struct NazarovReport {
  double lhs = 0;
  double rhs = 0;
  double measure = 0;
  bool holds = false;
};

NazarovReport nazarov_check(const ExpPoly& p, const std::vector<Interval>& E,
                            double U, double C = 10.0);

// (1/(2 sqrt n)) (C/gamma)^(1-2n).
double corollary23_eps(int n, double gamma, double C = 10.0);
double small_value_fraction(const Trig& p, double eps_mult, double U);

}  // namespace racelab
