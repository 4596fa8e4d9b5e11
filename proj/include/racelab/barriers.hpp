#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "racelab/orderings.hpp"
#include "racelab/search.hpp"
#include "racelab/simulator.hpp"
#include "racelab/trigpoly.hpp"
#include "racelab/zerosys.hpp"

namespace racelab {

enum class RecipeKind {
  thm311_even_cyclic,
  thm311_n8,
  thm311_z4z2,
  thm43_extremal,
  thm51_census
};

const char* recipe_kind_name(RecipeKind k);
RecipeKind recipe_kind_from_name(const std::string& s);

struct BarrierRecipe {
  RecipeKind kind = RecipeKind::thm311_even_cyclic;
  int q = 0;
  std::map<std::string, double> params;  // beta, gamma, tau, M, K, N, h, d, c, s
  long long a = 0;                       // generator of the cyclic part
  long long b = 0;                       // thm311 case (iii): order-2 element
  int n = 0;                             // order of a
  std::vector<long long> D;              // target set (race members)
  std::vector<double> betas;             // thm51: one real part per generator
  std::optional<ZeroSystem> B;
  std::string claim;

  const ZeroSystem& system() const { return *B; }
  RaceFunctionSet race_set() const { return {*B, D, PiProxy::li}; }
};

// Q = 2 sin v + sin(6v)/2, P = 2 cos v - cos(6v)/2, R = sum p_k/k sin kv.
struct QPR {
  Trig Q;
  Trig P;
  Trig R;
};
QPR qpr_polys();

struct Property318 {
  ScanReport domination;  // |P| - sqrt3 Q > 0 on [0, 0.759] and [2.7, 2 pi]
  ScanReport domination_tail;
  ScanReport r_negative;  // -R > 0 on [0.758, pi - 1e-6]
  bool ok() const { return domination.ok && domination_tail.ok && r_negative.ok; }
};
Property318 check_property_318(double step = 1e-4);

BarrierRecipe build_thm311(int q, double tau, double beta = 0.75, double gamma = 0);

struct IdentityCheck {
  std::string name;
  double max_error;
};

struct Thm311Report {
  bool ok = false;
  std::vector<std::string> differences;  // designated G_0 - G_r names
  ScanReport scan;                       // min_value > 0 means certified
  double offending_v = 0;
  std::vector<IdentityCheck> identities;
  long long size = 0;
};
Thm311Report verify_thm311(const BarrierRecipe& recipe, double step = 1e-3);

// Lemma 4.4: nu with sum_j nu_j sin(u + 2 pi j v / r) = c_v sin u + d_v cos u.
Eigen::VectorXd solve_lemma44(int r, const Eigen::VectorXd& c, const Eigen::VectorXd& d);

// Piecewise-linear even 2 pi-periodic functions with zero mean and one
// corner p_v in (0, pi]: constant left of the corner, slope 1 right of it.
struct OmegaSystem {
  std::vector<int> V;
  std::vector<double> corner;  // p_v; p = pi gives the zero function
  std::vector<double> level;   // value on [0, p_v]
  // crossing[i][j] in (0, pi) for i != j
  std::vector<std::vector<double>> crossing;

  double f(std::size_t i, double u) const;
  // Fourier cosine coefficient b_k of f_i.
  double cosine_coeff(std::size_t i, int k) const;
  // Sorted crossing points in [0, 2 pi).
  std::vector<double> crossing_points() const;
};

OmegaSystem build_omega(const std::vector<int>& V, int r, unsigned seed = 1);

// Each candidate function is evaluated over one period [0, 2 pi).
using CandidateSystem = std::function<void(double, Eigen::VectorXd&)>;
bool check_omega_type(const CandidateSystem& candidate, const OmegaSystem& omega,
                      int samples = 1 << 14, double tol = 1e-12);

struct ExtremalReport {
  int K = 0;
  int N = 0;
  long long size = 0;
  bool omega_type_poly = false;
  bool omega_type_integer = false;
  bool omega_type_exact = false;
};

// D given as exponents V of the generator a of a cyclic subgroup of order r.
BarrierRecipe build_extremal(int q, int r, const std::vector<int>& V,
                             double beta = 0.75, double gamma = 1000,
                             int K0 = 16, int N0 = 16, ExtremalReport* report = nullptr);

struct Thm51Report {
  bool a = false;
  bool b = false;
  bool c = false;
  bool d = false;
  bool d_vacuous = false;  // a single generator
  int attempts = 0;
  double min_theta_gap = 0;
  double min_derivative_gap = 0;
  double min_d_value = 0;
  double min_p_value = 0;
  long long theta_count = 0;
};

// w_{j,alpha}(u) of the construction, as a TrigPoly in u.
Trig thm51_w(double beta, double gamma, int nj, double M, int alpha);
// The polynomial P(z_j) of the (D) condition at the given configuration.
double thm51_p(double M, double z, double y1, double y2, double B1, double B2);

BarrierRecipe build_thm51(int q, double tau = 0, double M = 64, double gamma = 0,
                          std::vector<double> betas = {}, Thm51Report* report = nullptr);
Thm51Report verify_thm51(const BarrierRecipe& recipe);

struct HypothesisItem {
  std::string name;
  bool pass;
  std::string detail;
};

struct HypothesisReport {
  int thm = 0;
  std::vector<HypothesisItem> items;
  double tau = 0;
  int n = 0;
  bool all_pass() const;
};

// thm in {31, 34, 36, 39, 47}; D holds the targets (or the generator a).
HypothesisReport check_hypotheses(int thm, const ZeroSystem& B, const std::vector<long long>& D,
                                  double tau_prime = 0);

}  // namespace racelab
