#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "racelab/trigpoly.hpp"

namespace racelab {

struct SearchCertificate {
  double u = 0;
  std::vector<double> margins;
  double derivative_bound = 0;
  double step = 0;
  double target = 0;
  bool certified = false;
};

// Result of a Lipschitz-certified scan over [a, b].
struct ScanReport {
  bool ok = true;
  double min_value = 0;      // smallest sampled value of the certified quantity
  double min_value_at = 0;
  double min_bound = 0;      // smallest certified lower bound over a cell
  double first_fail = 0;     // leftmost uncertified point when !ok
  long long cells = 0;
};

// Certifies f > 0 on [a, b] given |f'| <= L. A cell [x, x+h] is certified when
// f(x) + f(x+h) > L h; failing cells are bisected up to max_depth times.
ScanReport certify_positive(const std::function<double(double)>& f, double L,
                            double a, double b, double step,
                            int max_depth = 24);

// Certifies that at every point of [a, b] some component of F is negative.
// L holds per-component Lipschitz bounds. The reported values are
// min_j F_j negated, so a positive min_value means success.
ScanReport certify_some_negative(
    const std::function<void(double, Eigen::VectorXd&)>& F,
    const Eigen::VectorXd& L, double a, double b, double step,
    int max_depth = 24);

// Coefficients of a polynomial read as sum a_k cos(t_k u + alpha_k) or
// sum b_k sin(t_k u + beta_k) with |offset| <= pi/2.
struct Decoded {
  Eigen::VectorXd t;
  Eigen::VectorXd coef;
  Eigen::VectorXd offset;
};

Decoded decode_cos(const Trig& p);
Decoded decode_sin(const Trig& p);

double lemma24_eps1(int n, double C = 10.0);
SearchCertificate find_simultaneous_positive(const Trig& P, const Trig& Q,
                                             double eps1);

double lemma25_eps(int n, double alpha);
long double find_fractional_parts(const std::vector<long double>& s,
                                  long double alpha);

double lemma26_eps2(int n);
long double find_all_negative(const std::vector<double>& t,
                              const std::vector<double>& beta);

// Inputs of Lemmas 2.7 and 2.8 on a shared frequency list:
// P = sum a_k cos t_k u, Q = sum b_k sin t_k u, R = sum c_k sin t_k u.
struct DominationInput {
  Eigen::VectorXd t;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

DominationInput decode_domination(const Trig& Q, const Trig& P, const Trig& R);

struct DominationResult {
  SearchCertificate cert;
  double margin = 0;
  double eps3_target = 0;
  bool meets_eps3 = false;
};

DominationResult find_dominating(const DominationInput& in, double gamma,
                                 double eps3 = 1e-3);
DominationResult find_dominating(const Trig& Q, const Trig& P, const Trig& R,
                                 double gamma, double eps3 = 1e-3);

struct GapResult {
  double u = 0;
  double gap = 0;
  double target = 0;
  int target_k = 0;
  bool eps4_branch = false;
  bool certified = false;
};

GapResult lemma28_gap(const DominationInput& in, double gamma,
                      double eps4 = 1e-3);
GapResult lemma28_gap(const Trig& Q, const Trig& P, const Trig& R,
                      double gamma, double eps4 = 1e-3);

}  // namespace racelab
