#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace racelab {

// Rational number in [0,1); a character value is e(phase).
struct Phase {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Phase() = default;
  Phase(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / den; }
  std::complex<double> root() const;
  bool operator==(const Phase& o) const { return num == o.num && den == o.den; }
};

Phase operator+(const Phase& a, const Phase& b);
Phase operator-(const Phase& a);
Phase operator-(const Phase& a, const Phase& b);

class ResidueGroup {
 public:
  struct Generator {
    int g;
    int n;
  };

  explicit ResidueGroup(int q);

  int q() const { return q_; }
  int phi() const { return phi_; }
  int lambda() const { return lambda_; }
  const std::vector<int>& units() const { return units_; }
  const std::vector<Generator>& generators() const { return gens_; }

  int reduce(long long a) const;
  bool is_unit(long long a) const;
  // Exponent vector alpha_j(a) with a = prod g_j^alpha_j.
  const std::vector<int>& exponents(long long a) const;
  int from_exponents(const std::vector<int>& alpha) const;
  int mul(long long a, long long b) const;
  int pow(long long a, long long e) const;
  int inverse(long long a) const;
  int order(long long a) const;

 private:
  int q_;
  int phi_ = 0;
  int lambda_ = 1;
  std::vector<int> units_;
  std::vector<Generator> gens_;
  std::vector<std::vector<int>> exps_;
};

ResidueGroup unit_group(int q);

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const ResidueGroup> group,
                     std::vector<int> k);

  int q() const { return group_->q(); }
  const ResidueGroup& group() const { return *group_; }
  std::shared_ptr<const ResidueGroup> group_ptr() const { return group_; }
  // Exponents k_j with chi(g_j) = e(k_j / n_j).
  const std::vector<int>& k() const { return k_; }
  int label() const { return label_; }
  int order() const { return order_; }
  bool is_principal() const { return order_ == 1; }

  // Numerator of the phase over lambda(q); -1 for non-units.
  int phase_num(long long a) const;
  Phase phase(long long a) const;
  std::complex<double> operator()(long long a) const;

  DirichletCharacter conjugate() const;
  DirichletCharacter power(long long j) const;
  bool operator==(const DirichletCharacter& o) const {
    return q() == o.q() && k_ == o.k_;
  }

 private:
  std::shared_ptr<const ResidueGroup> group_;
  std::vector<int> k_;
  std::vector<int> table_;
  int label_ = 0;
  int order_ = 1;
};

std::vector<DirichletCharacter> characters(int q);
std::vector<DirichletCharacter> characters(
    const std::shared_ptr<const ResidueGroup>& group);
DirichletCharacter character_by_label(
    const std::shared_ptr<const ResidueGroup>& group, int label);
DirichletCharacter character_with_value(int q, long long a, Phase target);
DirichletCharacter character_with_value(
    const std::shared_ptr<const ResidueGroup>& group, long long a,
    Phase target);
int sqrt_count(int q, long long c);

// Integer combination of n-th roots of unity with an exact zero test
// (reduction modulo the n-th cyclotomic polynomial).
class CyclotomicSum {
 public:
  explicit CyclotomicSum(int n = 1) : n_(n), c_(n, 0) {}

  int n() const { return n_; }
  void add(long long k, long long coeff);
  void add(const Phase& p, long long coeff);
  CyclotomicSum& operator+=(const CyclotomicSum& o);
  bool is_zero() const;
  std::complex<double> value() const;
  const std::vector<long long>& coeffs() const { return c_; }

 private:
  int n_;
  std::vector<long long> c_;
};

const std::vector<long long>& cyclotomic_polynomial(int n);

}  // namespace racelab
