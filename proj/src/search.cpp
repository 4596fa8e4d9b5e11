#include "racelab/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace racelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap(double x) {
  x = std::fmod(x, 2 * kPi);
  if (x <= -kPi) x += 2 * kPi;
  if (x > kPi) x -= 2 * kPi;
  return x;
}

struct Scanner {
  const std::function<bool(double, double, double&)>& cell_ok;
  const std::function<double(double)>& value;
  int max_depth;
  ScanReport& r;

  void record(double x, double v) {
    if (v < r.min_value) {
      r.min_value = v;
      r.min_value_at = x;
    }
  }

  bool fail(double x) {
    if (r.ok) {
      r.ok = false;
      r.first_fail = x;
    }
    return false;
  }

  bool cell(double x0, double x1, double v0, double v1, int depth) {
    if (v0 <= 0) return fail(x0);
    if (v1 <= 0) return fail(x1);
    double lb = 0;
    if (cell_ok(x0, x1, lb)) {
      ++r.cells;
      r.min_bound = std::min(r.min_bound, lb);
      return true;
    }
    if (depth >= max_depth) return fail(x0);
    double xm = 0.5 * (x0 + x1);
    double vm = value(xm);
    record(xm, vm);
    return cell(x0, xm, v0, vm, depth + 1) && cell(xm, x1, vm, v1, depth + 1);
  }

  void run(double a, double b, double step) {
    r.min_value = kInf;
    r.min_bound = kInf;
    const long long n = std::max<long long>(1, static_cast<long long>(std::ceil((b - a) / step - 1e-9)));
    double x0 = a;
    double v0 = value(a);
    record(a, v0);
    for (long long i = 1; i <= n; ++i) {
      double x1 = i == n ? b : a + i * step;
      double v1 = value(x1);
      record(x1, v1);
      cell(x0, x1, v0, v1, 0);
      x0 = x1;
      v0 = v1;
    }
  }
};

}  // namespace

ScanReport certify_positive(const std::function<double(double)>& f, double L,
                            double a, double b, double step, int max_depth) {
  ScanReport r;
  std::function<double(double)> value = [&](double x) { return f(x); };
  std::function<bool(double, double, double&)> ok = [&](double x0, double x1,
                                                        double& lb) {
    lb = 0.5 * (f(x0) + f(x1) - L * (x1 - x0));
    return lb > 0;
  };
  Scanner s{ok, value, max_depth, r};
  s.run(a, b, step);
  return r;
}

ScanReport certify_some_negative(
    const std::function<void(double, Eigen::VectorXd&)>& F,
    const Eigen::VectorXd& L, double a, double b, double step, int max_depth) {
  ScanReport r;
  Eigen::VectorXd v0(L.size()), v1(L.size());
  std::function<double(double)> value = [&](double x) {
    F(x, v0);
    return (-v0).maxCoeff();
  };
  std::function<bool(double, double, double&)> ok = [&](double x0, double x1,
                                                        double& lb) {
    F(x0, v0);
    F(x1, v1);
    Eigen::VectorXd bound = 0.5 * (-v0 - v1 - L * (x1 - x0));
    lb = bound.maxCoeff();
    return lb > 0;
  };
  Scanner s{ok, value, max_depth, r};
  s.run(a, b, step);
  return r;
}

namespace {

Decoded decode(const Trig& p, double shift) {
  Decoded d;
  const auto n = p.size();
  d.t = p.t();
  d.coef.resize(n);
  d.offset.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double c = p.c()[k];
    double off = wrap(p.alpha()[k] - shift);
    if (std::abs(off) > kPi / 2) {
      c = -c;
      off = wrap(off - kPi);
    }
    d.coef[k] = c;
    d.offset[k] = off;
  }
  return d;
}

// Aligns several decoded polynomials on the union of their frequencies.
std::vector<double> union_freqs(const std::vector<const Decoded*>& ds) {
  std::vector<double> all;
  for (auto* d : ds)
    for (Eigen::Index k = 0; k < d->t.size(); ++k) all.push_back(d->t[k]);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double t : all)
    if (out.empty() || std::abs(t - out.back()) > 1e-12 * std::max(1.0, t))
      out.push_back(t);
  return out;
}

void scatter(const Decoded& d, const std::vector<double>& freqs,
             Eigen::VectorXd& coef, Eigen::VectorXd& off) {
  coef = Eigen::VectorXd::Zero(freqs.size());
  off = Eigen::VectorXd::Zero(freqs.size());
  for (Eigen::Index k = 0; k < d.t.size(); ++k) {
    auto it = std::lower_bound(freqs.begin(), freqs.end(),
                               d.t[k] - 1e-12 * std::max(1.0, d.t[k]));
    auto j = it - freqs.begin();
    coef[j] = d.coef[k];
    off[j] = d.offset[k];
  }
}

}  // namespace

Decoded decode_cos(const Trig& p) { return decode(p, kPi / 2); }
Decoded decode_sin(const Trig& p) { return decode(p, 0.0); }

double lemma24_eps1(int n, double C) {
  return corollary23_eps(n, 1.0 / (10.0 * n), C) / 2.0;
}

SearchCertificate find_simultaneous_positive(const Trig& P, const Trig& Q,
                                             double eps1) {
  Decoded dp = decode_cos(P), dq = decode_sin(Q);
  if (P.constant() != 0 || Q.constant() != 0)
    throw Error(Errc::precondition_violated, "constant terms not allowed");
  auto freqs = union_freqs({&dp, &dq});
  const int n = static_cast<int>(freqs.size());
  if (n == 0) throw Error(Errc::precondition_violated, "empty polynomials");
  Eigen::VectorXd a, alpha, b, beta;
  scatter(dp, freqs, a, alpha);
  scatter(dq, freqs, b, beta);
  const double tol = 1e-12;
  if (!(eps1 > 0) || eps1 > lemma24_eps1(n) * (1 + tol))
    throw Error(Errc::precondition_violated, "eps1 exceeds eps1(n)");
  if (alpha.cwiseAbs().maxCoeff() > eps1 * (1 + tol) + tol ||
      beta.cwiseAbs().maxCoeff() > eps1 * (1 + tol) + tol)
    throw Error(Errc::precondition_violated, "phase exceeds eps1");

  const double S1 = a.cwiseAbs().sum(), S2 = b.cwiseAbs().sum();
  const double tp = S1 * eps1, tq = S2 * eps1;
  const double L = std::max(P.lipschitz(), Q.lipschitz());
  const double tmin = *std::min_element(freqs.begin(), freqs.end());
  const double tmax = *std::max_element(freqs.begin(), freqs.end());
  double W = 4 * 2 * kPi / tmin;
  double step = 2 * kPi / tmax / 512;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const long long m = static_cast<long long>(std::ceil(W / step));
    if (m > 50'000'000) break;
    double best = -kInf, best_u = 0;
    for (long long i = 0; i <= m; ++i) {
      double u = i * step;
      double mg = std::min(P(u) - tp, Q(u) - tq);
      if (mg > best) {
        best = mg;
        best_u = u;
      }
    }
    if (best > step * L) {
      SearchCertificate c;
      c.u = best_u;
      c.margins = {P(best_u) - tp, Q(best_u) - tq};
      c.derivative_bound = L;
      c.step = step;
      c.target = eps1;
      c.certified = true;
      return c;
    }
    if (attempt % 2 == 0)
      step /= 4;
    else
      W *= 4;
  }
  throw Error(Errc::search_exhausted, "no certified simultaneous positive point");
}

double lemma25_eps(int n, double alpha) {
  return 6.0 * std::pow(alpha / 6.0, std::ldexp(1.0, n - 1));
}

namespace {

long double dist_int(long double x) { return std::abs(x - std::nearbyint(x)); }

long double frac_rec(const std::vector<long double>& s, std::size_t from,
                     long double alpha) {
  const long double s1 = s[from];
  if (from + 1 == s.size()) return alpha / s1;
  const long double up = frac_rec(s, from + 1, alpha * alpha / 6);
  const long long lmax = std::max<long long>(1, static_cast<long long>(std::floor(3 / alpha)));
  long long pick = 1;
  long double best = 2;
  for (long long l = 1; l <= lmax; ++l) {
    long double d = dist_int(l * up * s1);
    if (d <= alpha / 3) {
      pick = l;
      break;
    }
    if (d < best) {
      best = d;
      pick = l;
    }
  }
  return pick * up + alpha / (2 * s1);
}

}  // namespace

long double find_fractional_parts(const std::vector<long double>& s,
                                  long double alpha) {
  if (s.empty()) throw Error(Errc::invalid_input, "empty s");
  if (!(alpha > 0 && alpha < 1))
    throw Error(Errc::invalid_input, "alpha must lie in (0,1)");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0)) throw Error(Errc::invalid_input, "s must be positive");
    if (i > 0 && !(s[i] < s[i - 1]))
      throw Error(Errc::invalid_input, "s must be strictly decreasing");
  }
  return frac_rec(s, 0, alpha);
}

double lemma26_eps2(int n) { return std::pow(13.0, -std::ldexp(1.0, n - 1)); }

long double find_all_negative(const std::vector<double>& t,
                              const std::vector<double>& beta) {
  if (t.empty() || t.size() != beta.size())
    throw Error(Errc::invalid_input, "t and beta must be nonempty and aligned");
  std::vector<long double> s;
  for (double x : t) {
    if (!(x > 0)) throw Error(Errc::invalid_input, "t must be positive");
    s.push_back(static_cast<long double>(x) / (2 * std::numbers::pi_v<long double>));
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const double eps2 = lemma26_eps2(static_cast<int>(s.size()));
  for (double b : beta)
    if (std::abs(b) > eps2)
      throw Error(Errc::precondition_violated, "|beta_k| exceeds eps2(n)");
  // t_k u = -2 pi s_k u', so sin(t_k u) = -sin(2 pi {s_k u'}) with {s_k u'} in [eps, 6/13].
  return -find_fractional_parts(s, 6.0L / 13.0L);
}

DominationInput decode_domination(const Trig& Q, const Trig& P, const Trig& R) {
  Decoded dq = decode_sin(Q), dp = decode_cos(P), dr = decode_sin(R);
  for (const Decoded* d : {&dq, &dp, &dr})
    for (Eigen::Index k = 0; k < d->offset.size(); ++k)
      if (std::abs(d->offset[k]) > 1e-9)
        throw Error(Errc::precondition_violated, "phases must vanish");
  auto freqs = union_freqs({&dq, &dp, &dr});
  DominationInput in;
  in.t = Eigen::Map<Eigen::VectorXd>(freqs.data(), freqs.size());
  Eigen::VectorXd off;
  scatter(dp, freqs, in.a, off);
  scatter(dq, freqs, in.b, off);
  scatter(dr, freqs, in.c, off);
  return in;
}

namespace {

void check_27(const DominationInput& in, bool sum_clause, double gamma) {
  const double tol = 1e-12;
  if (in.t.size() == 0) throw Error(Errc::precondition_violated, "no terms");
  for (Eigen::Index k = 0; k < in.t.size(); ++k) {
    if (in.c[k] < -tol)
      throw Error(Errc::precondition_violated, "c_k must be nonnegative");
    if (in.b[k] < std::abs(in.a[k]) + in.c[k] - tol)
      throw Error(Errc::precondition_violated, "b_k < |a_k| + c_k");
  }
  if (!(gamma > 0)) throw Error(Errc::precondition_violated, "gamma must be positive");
  if (sum_clause && !(in.a.cwiseAbs().sum() > gamma * in.b.sum()))
    throw Error(Errc::precondition_violated, "sum |a_k| <= gamma sum b_k");
}

struct Evaluated {
  double p, q, r;
};

Evaluated eval_in(const DominationInput& in, double u) {
  Eigen::ArrayXd x = in.t.array() * u;
  Eigen::ArrayXd s = x.sin(), c = x.cos();
  return {(in.a.array() * c).sum(), (in.b.array() * s).sum(),
          (in.c.array() * s).sum()};
}

template <class Score>
std::pair<double, double> best_point(const DominationInput& in, double step,
                                     double W, Score score) {
  const long long m = static_cast<long long>(std::ceil(W / step));
  double best = -kInf, best_u = 0;
  for (long long i = -m; i <= m; ++i) {
    double u = i * step;
    double v = score(eval_in(in, u));
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  return {best_u, best};
}

}  // namespace

DominationResult find_dominating(const DominationInput& in, double gamma,
                                 double eps3) {
  check_27(in, true, gamma);
  const double tmin = in.t.minCoeff(), tmax = in.t.maxCoeff();
  const Eigen::ArrayXd t = in.t.array();
  const double LQ = (in.b.array().abs() * t).sum();
  const double LP = (in.a.array().abs() * t).sum();
  const double LR = (in.c.array().abs() * t).sum();
  const double L = LQ + std::max(LP, LR);
  double W = 4 * 2 * kPi / tmin;
  double step = 2 * kPi / tmax / 512;
  auto score = [](const Evaluated& e) {
    return e.q - std::max(std::abs(e.p), e.r);
  };
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (W / step > 25'000'000) break;
    auto [u, best] = best_point(in, step, W, score);
    if (best > step * L) {
      DominationResult res;
      Evaluated e = eval_in(in, u);
      res.cert.u = u;
      res.cert.margins = {e.q - std::abs(e.p), e.q - e.r};
      res.cert.derivative_bound = L;
      res.cert.step = step;
      res.margin = best;
      res.eps3_target = eps3 * gamma * gamma * in.b.sum();
      res.cert.target = res.eps3_target;
      res.cert.certified = true;
      res.meets_eps3 = best >= res.eps3_target;
      return res;
    }
    if (attempt % 2 == 0)
      step /= 4;
    else
      W *= 4;
  }
  throw Error(Errc::search_exhausted, "no certified dominating point");
}

DominationResult find_dominating(const Trig& Q, const Trig& P, const Trig& R,
                                 double gamma, double eps3) {
  return find_dominating(decode_domination(Q, P, R), gamma, eps3);
}

GapResult lemma28_gap(const DominationInput& in, double gamma, double eps4) {
  check_27(in, false, gamma);
  GapResult g;
  g.target = -kInf;
  for (Eigen::Index k = 0; k < in.t.size(); ++k) {
    const double b2 = in.b[k] * in.b[k];
    const double first = (b2 - in.a[k] * in.a[k] - gamma * b2) / 2;
    const double second = eps4 * gamma * gamma * b2;
    const double v = std::min(first, second);
    if (v > g.target) {
      g.target = v;
      g.target_k = static_cast<int>(k);
      g.eps4_branch = second <= first;
    }
  }
  const double tmin = in.t.minCoeff(), tmax = in.t.maxCoeff();
  const Eigen::ArrayXd t = in.t.array();
  const double SQ = in.b.cwiseAbs().sum(), SP = in.a.cwiseAbs().sum(),
               SR = in.c.cwiseAbs().sum();
  const double LQ = (in.b.array().abs() * t).sum();
  const double LP = (in.a.array().abs() * t).sum();
  const double LR = (in.c.array().abs() * t).sum();
  const double L = 2 * SQ * LQ + 2 * std::max(SP * LP, SR * LR);
  double W = 4 * 2 * kPi / tmin;
  double step = 2 * kPi / tmax / 512;
  auto score = [](const Evaluated& e) {
    return e.q * e.q - std::max(e.p * e.p, e.r * e.r);
  };
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (W / step > 25'000'000) break;
    auto [u, best] = best_point(in, step, W, score);
    g.u = u;
    g.gap = best;
    if (best > 0 && best > step * L) {
      g.certified = true;
      return g;
    }
    if (attempt % 2 == 0)
      step /= 4;
    else
      W *= 4;
  }
  throw Error(Errc::search_exhausted, "no certified positive gap");
}

GapResult lemma28_gap(const Trig& Q, const Trig& P, const Trig& R, double gamma,
                      double eps4) {
  return lemma28_gap(decode_domination(Q, P, R), gamma, eps4);
}

}  // namespace racelab
