#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "racelab/residues.hpp"

namespace racelab {

// One point rho = beta + i gamma of B(chi) with multiplicity n(rho, chi).
// On a height lattice gamma = k * base_gamma and k is stored exactly.
struct ZeroEntry {
  int label = 0;
  double beta = 0.5;
  double gamma = 0;
  int mult = 1;
  long long k = -1;  // lattice index, -1 if off-lattice

  std::complex<double> rho() const { return {beta, gamma}; }
};

class ZeroSystem {
 public:
  enum class Kind { hypothetical, observed };

  // Hypothetical systems enforce 1/2 < R- <= R+ <= 1; observed systems
  // (zero data on the critical line) only require 0 < beta < 1.
  ZeroSystem(std::shared_ptr<const ResidueGroup> group,
             std::vector<ZeroEntry> entries, Kind kind = Kind::hypothetical,
             double base_gamma = 0);
  explicit ZeroSystem(std::shared_ptr<const ResidueGroup> group)
      : ZeroSystem(std::move(group), {}) {}

  int q() const { return group_->q(); }
  const ResidueGroup& group() const { return *group_; }
  const std::shared_ptr<const ResidueGroup>& group_ptr() const { return group_; }
  Kind kind() const { return kind_; }
  double base_gamma() const { return base_gamma_; }

  // Entries with equal (label, rho) merged; sorted by label, beta desc, gamma.
  const std::vector<ZeroEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  // |B|: total count with multiplicity.
  long long size() const;
  double r_minus() const;
  double r_plus() const;
  // n(rho, chi) for chi with the given label.
  int multiplicity(int label, double beta, double gamma) const;
  const DirichletCharacter& character(int label) const;

 private:
  std::shared_ptr<const ResidueGroup> group_;
  std::vector<ZeroEntry> entries_;
  Kind kind_;
  double base_gamma_;
  std::map<int, DirichletCharacter> chars_;
};

// Distinct points rho of the system (over all characters).
struct DistinctZero {
  double beta;
  double gamma;
  long long k;
};
std::vector<DistinctZero> distinct_zeros(const ZeroSystem& B);

// g(rho; a, b) = sum_chi n(rho, chi)(chi(a) - chi(b)), exact in Z[zeta_lambda].
CyclotomicSum g_rho_exact(const ZeroSystem& B, double beta, double gamma,
                          long long a, long long b);
std::complex<double> g_rho(const ZeroSystem& B, std::complex<double> rho,
                           long long a, long long b);

struct DominantZero {
  double beta;
  double gamma;
  long long k;
  std::complex<double> g;
};

struct DominantData {
  bool empty = true;
  double beta = 0;
  // All rho with g(rho) != 0, then the dominant subset z(a, b).
  std::vector<DominantZero> nonzero;
  std::vector<DominantZero> z;
  // z(chi; a, b) by character label.
  std::map<int, std::vector<DistinctZero>> z_chi;
};

DominantData dominant_data(const ZeroSystem& B, long long a, long long b);

struct KtPairReport {
  long long a;
  long long b;
  bool z_nonempty;
  bool has_real;
};

struct KtReport {
  bool all_pass = true;
  bool has_real = false;
  std::vector<KtPairReport> pairs;
};

KtReport is_kt_candidate(const ZeroSystem& B, const std::vector<long long>& D);

// Zero-list text format:
//   q=<int> chi=<label> gamma=<decimal> [beta=<decimal>] [mult=<int>]
// with '#' comments. Returns an observed system per modulus.
std::map<int, ZeroSystem> parse_zero_data(const std::string& text);
std::map<int, ZeroSystem> load_zero_data(const std::string& path);
// Convenience: the system for one modulus (empty if the file has none).
ZeroSystem load_zero_data(const std::string& path, int q);

}  // namespace racelab
