#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "racelab/orderings.hpp"
#include "racelab/trigpoly.hpp"
#include "racelab/zerosys.hpp"

namespace racelab {

enum class PiProxy { li, sieve };

struct RaceFunctionSet {
  ZeroSystem B;
  std::vector<long long> members;
  PiProxy pi_proxy = PiProxy::li;

  int q() const { return B.q(); }
};

// Throws invalid-residue unless every member is a unit mod q.
void validate(const RaceFunctionSet& S);

struct FRho {
  std::complex<double> value;     // f(rho)
  std::complex<double> main;      // x^rho / (rho log x)
  std::complex<double> integral;  // (1/rho) int_2^x t^(rho-1) / log^2 t dt
  double discarded_bound = 0;     // explicit bound on |integral|
  double asymptotic_scale = 0;    // x^beta / (|rho|^2 log^2 x)
};

FRho f_rho(std::complex<double> rho, double x);

// (1/rho) int_{s0}^{s1} e^{rho s} / s^2 ds, the integral term in s = log t.
std::complex<double> f_rho_integral(std::complex<double> rho, double s0,
                                    double s1);

// Explicit bound on |(1/rho) int_2^x t^(rho-1)/log^2 t dt| by one
// integration by parts.
double f_rho_discarded_bound(std::complex<double> rho, double x);

double li(double x);
double pi_proxy_value(PiProxy proxy, double x);

// P_{q,a}(x; B) per member.
std::map<long long, double> race_values(const RaceFunctionSet& S, double x);

// The oscillating part -(2/phi) Re sum_chi conj(chi(a)) sum* n f(rho).
double oscillation(const RaceFunctionSet& S, long long a, double x);

struct DominantProfile {
  long long a = 0;
  long long b = 0;
  int phi = 0;
  double beta = 0;
  // M(e^u) = -Re sum* conj(g) e^{i gamma u} / (beta + i gamma) as a TrigPoly.
  Trig M;
  std::vector<DominantZero> z;
  // Non-dominant rho with g != 0: (beta, gamma, |g|).
  std::vector<DominantZero> rest;

  // 2 e^{beta u} / (phi u)
  double scale(double u) const;
  // Bound on |D * phi u / (2 e^{beta u}) - M(u)| from the discarded terms.
  double residual_bound(double u) const;
};

DominantProfile dominant_profile(const RaceFunctionSet& S, long long a,
                                 long long b);

// D_{q,a,b}(x; B) via the full formula.
double race_difference(const RaceFunctionSet& S, long long a, long long b,
                       double x);

// Sum over chi in C_q(a,b) and t >= 0 (half weight at t = 0) of
// n (nu(b) - nu(a)) / sqrt(t^2 + sigma^2).
double corollary13_sum(const ZeroSystem& zeros, long long a, long long b,
                       double u, double sigma);
// |sin(v + atan(sigma/t)) - sin v| <= sigma / t.
double corollary13_shift_bound(double sigma, double t);

enum class DecompCase { thm31, thm34, thm39, thm47, thm311, thm43, thm51 };

struct DecompParams {
  std::vector<long long> D;  // thm31: targets; thm311/thm43: residues a^r
  long long a = 0;           // generator / distinguished element
  long long b = 0;           // thm311 case (iii): the order-2 element
  int n = 0;                 // order of a (thm311 / thm43)
  double gamma = 0;          // base height for lattice systems
};

struct Decomposition {
  std::map<std::string, Trig> functions;
  std::map<std::string, std::vector<double>> weights;  // per height
  std::vector<double> heights;
  std::map<std::string, double> scalars;
  std::string variable = "u";  // "v" for lattice systems: v = gamma u
};

Decomposition theorem_decomposition(const ZeroSystem& B, DecompCase which,
                                    const DecompParams& params);

enum class TraceMode { full_formula, dominant_only };

// Members' dominant-only values as TrigPolys in u, normalized to unit peak
// amplitude. Lower real-part levels get weight level_weight^rank.
std::vector<Trig> dominant_members(const RaceFunctionSet& S,
                                   double level_weight = 1e-3);

OrderingTrace trace(const RaceFunctionSet& S, double u0, double u1,
                    double step, TraceMode mode, int threads = 0);

// One period of the dominant-only trace for lattice systems.
OrderingTrace period_trace(const RaceFunctionSet& S, int samples_per_period,
                           int threads = 0);

}  // namespace racelab
