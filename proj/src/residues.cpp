#include "racelab/residues.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "racelab/error.hpp"

namespace racelab {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = floor_mod(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<long long>((__int128)r * b % m);
    b = static_cast<long long>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<int, int>> factor(int n) {
  std::vector<std::pair<int, int>> f;
  for (int p = 2; (long long)p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

int primitive_root_mod_p(int p) {
  auto f = factor(p - 1);
  for (int g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [r, e] : f)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

// x = g mod m1, x = 1 mod m2, gcd(m1, m2) = 1.
int crt_lift(int g, int m1, int m2) {
  if (m2 == 1) return floor_mod(g, m1);
  long long inv = 0;
  for (long long t = 0; t < m1; ++t)
    if ((m2 * t) % m1 == 1) {
      inv = t;
      break;
    }
  // x = 1 + m2 * t, t = (g - 1) * inv mod m1
  long long t = floor_mod((long long)(g - 1) * inv, m1);
  return static_cast<int>(1 + m2 * t);
}

}  // namespace

Phase::Phase(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(Errc::invalid_input, "phase with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  n = floor_mod(n, d);
  std::int64_t g = std::gcd(n, d);
  if (g == 0) g = d;
  num = n / g;
  den = d / g;
}

std::complex<double> Phase::root() const {
  double a = 2.0 * std::numbers::pi * static_cast<double>(num) / den;
  return {std::cos(a), std::sin(a)};
}

Phase operator+(const Phase& a, const Phase& b) {
  std::int64_t l = std::lcm(a.den, b.den);
  return Phase(a.num * (l / a.den) + b.num * (l / b.den), l);
}

Phase operator-(const Phase& a) { return Phase(-a.num, a.den); }

Phase operator-(const Phase& a, const Phase& b) { return a + (-b); }

ResidueGroup::ResidueGroup(int q) : q_(q) {
  if (q < 3) throw Error(Errc::invalid_modulus, "q must be >= 3");
  for (int a = 1; a < q; ++a)
    if (std::gcd(a, q) == 1) units_.push_back(a);
  phi_ = static_cast<int>(units_.size());

  for (auto [p, e] : factor(q)) {
    int pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    int rest = q / pe;
    if (p == 2) {
      if (e == 2) gens_.push_back({crt_lift(pe - 1, pe, rest), 2});
      if (e >= 3) {
        gens_.push_back({crt_lift(pe - 1, pe, rest), 2});
        gens_.push_back({crt_lift(5, pe, rest), pe / 4});
      }
      continue;
    }
    int g = primitive_root_mod_p(p);
    if (e >= 2 && powmod(g, p - 1, (long long)p * p) == 1) g += p;
    gens_.push_back({crt_lift(g, pe, rest), pe / p * (p - 1)});
  }
  for (auto& gn : gens_) lambda_ = std::lcm(lambda_, gn.n);

  exps_.assign(q, {});
  const int m = static_cast<int>(gens_.size());
  std::vector<int> alpha(m, 0);
  for (int count = 0; count < phi_; ++count) {
    long long x = 1;
    for (int j = 0; j < m; ++j)
      x = x * powmod(gens_[j].g, alpha[j], q) % q;
    exps_[x] = alpha;
    for (int j = 0; j < m; ++j) {
      if (++alpha[j] < gens_[j].n) break;
      alpha[j] = 0;
    }
  }
}

int ResidueGroup::reduce(long long a) const {
  return static_cast<int>(floor_mod(a, q_));
}

bool ResidueGroup::is_unit(long long a) const {
  return std::gcd(reduce(a), q_) == 1;
}

const std::vector<int>& ResidueGroup::exponents(long long a) const {
  if (!is_unit(a))
    throw Error(Errc::invalid_residue,
                std::to_string(a) + " is not a unit mod " + std::to_string(q_));
  return exps_[reduce(a)];
}

int ResidueGroup::from_exponents(const std::vector<int>& alpha) const {
  if (alpha.size() != gens_.size())
    throw Error(Errc::invalid_input, "exponent vector size mismatch");
  long long x = 1;
  for (std::size_t j = 0; j < gens_.size(); ++j)
    x = x * powmod(gens_[j].g, floor_mod(alpha[j], gens_[j].n), q_) % q_;
  return static_cast<int>(x);
}

int ResidueGroup::mul(long long a, long long b) const {
  return static_cast<int>(floor_mod(a, q_) * floor_mod(b, q_) % q_);
}

int ResidueGroup::pow(long long a, long long e) const {
  if (e < 0) return pow(inverse(a), -e);
  return static_cast<int>(powmod(a, e, q_));
}

int ResidueGroup::inverse(long long a) const {
  const auto& al = exponents(a);
  std::vector<int> inv(al.size());
  for (std::size_t j = 0; j < al.size(); ++j)
    inv[j] = (gens_[j].n - al[j]) % gens_[j].n;
  return from_exponents(inv);
}

int ResidueGroup::order(long long a) const {
  const auto& al = exponents(a);
  int ord = 1;
  for (std::size_t j = 0; j < al.size(); ++j)
    ord = std::lcm(ord, gens_[j].n / std::gcd(gens_[j].n, al[j]));
  return ord;
}

ResidueGroup unit_group(int q) { return ResidueGroup(q); }

DirichletCharacter::DirichletCharacter(
    std::shared_ptr<const ResidueGroup> group, std::vector<int> k)
    : group_(std::move(group)), k_(std::move(k)) {
  const auto& gens = group_->generators();
  if (k_.size() != gens.size())
    throw Error(Errc::invalid_input, "character exponent size mismatch");
  const int lam = group_->lambda();
  int radix = 1;
  order_ = 1;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    k_[j] = static_cast<int>(floor_mod(k_[j], gens[j].n));
    label_ += k_[j] * radix;
    radix *= gens[j].n;
    order_ = std::lcm(order_, gens[j].n / std::gcd(gens[j].n, k_[j]));
  }
  table_.assign(group_->q(), -1);
  for (int a : group_->units()) {
    const auto& al = group_->exponents(a);
    long long s = 0;
    for (std::size_t j = 0; j < gens.size(); ++j)
      s += (long long)k_[j] * al[j] * (lam / gens[j].n);
    table_[a] = static_cast<int>(floor_mod(s, lam));
  }
}

int DirichletCharacter::phase_num(long long a) const {
  return table_[group_->reduce(a)];
}

Phase DirichletCharacter::phase(long long a) const {
  int n = phase_num(a);
  if (n < 0)
    throw Error(Errc::invalid_residue,
                std::to_string(a) + " is not a unit mod " + std::to_string(q()));
  return Phase(n, group_->lambda());
}

std::complex<double> DirichletCharacter::operator()(long long a) const {
  int n = phase_num(a);
  if (n < 0) return {0.0, 0.0};
  return Phase(n, group_->lambda()).root();
}

DirichletCharacter DirichletCharacter::conjugate() const { return power(-1); }

DirichletCharacter DirichletCharacter::power(long long j) const {
  std::vector<int> k(k_.size());
  const auto& gens = group_->generators();
  for (std::size_t i = 0; i < k.size(); ++i)
    k[i] = static_cast<int>(floor_mod((long long)k_[i] * j, gens[i].n));
  return DirichletCharacter(group_, std::move(k));
}

std::vector<DirichletCharacter> characters(
    const std::shared_ptr<const ResidueGroup>& group) {
  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  for (int label = 0; label < group->phi(); ++label)
    out.push_back(character_by_label(group, label));
  return out;
}

std::vector<DirichletCharacter> characters(int q) {
  return characters(std::make_shared<const ResidueGroup>(q));
}

DirichletCharacter character_by_label(
    const std::shared_ptr<const ResidueGroup>& group, int label) {
  if (label < 0 || label >= group->phi())
    throw Error(Errc::unknown_character_label,
                "label " + std::to_string(label) + " out of range mod " +
                    std::to_string(group->q()));
  std::vector<int> k;
  for (const auto& g : group->generators()) {
    k.push_back(label % g.n);
    label /= g.n;
  }
  return DirichletCharacter(group, std::move(k));
}

DirichletCharacter character_with_value(
    const std::shared_ptr<const ResidueGroup>& group, long long a,
    Phase target) {
  if (!group->is_unit(a))
    throw Error(Errc::invalid_residue, "not a unit");
  const DirichletCharacter* best = nullptr;
  auto all = characters(group);
  for (const auto& chi : all) {
    if (!(chi.phase(a) == target)) continue;
    if (!best || chi.order() < best->order()) best = &chi;
  }
  if (!best)
    throw Error(Errc::not_representable,
                "no character mod " + std::to_string(group->q()) +
                    " takes the requested value at " + std::to_string(a));
  return *best;
}

DirichletCharacter character_with_value(int q, long long a, Phase target) {
  return character_with_value(std::make_shared<const ResidueGroup>(q), a,
                              target);
}

int sqrt_count(int q, long long c) {
  if (q < 3) throw Error(Errc::invalid_modulus, "q must be >= 3");
  long long cr = floor_mod(c, q);
  if (std::gcd<long long>(cr, q) != 1)
    throw Error(Errc::invalid_residue, "gcd(c, q) != 1");
  int n = 0;
  for (long long w = 0; w < q; ++w)
    if (w * w % q == cr) ++n;
  return n;
}

const std::vector<long long>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    std::vector<long long> phi_d;
    {
      mu.unlock();
      phi_d = cyclotomic_polynomial(d);
      mu.lock();
    }
    int deg = static_cast<int>(p.size()) - 1;
    int dd = static_cast<int>(phi_d.size()) - 1;
    std::vector<long long> quot(deg - dd + 1, 0);
    for (int i = deg; i >= dd; --i) {
      long long c = p[i];
      quot[i - dd] = c;
      for (int j = 0; j <= dd; ++j) p[i - dd + j] -= c * phi_d[j];
    }
    p = quot;
  }
  return cache.emplace(n, p).first->second;
}

void CyclotomicSum::add(long long k, long long coeff) {
  c_[floor_mod(k, n_)] += coeff;
}

void CyclotomicSum::add(const Phase& p, long long coeff) {
  if (n_ % p.den != 0)
    throw Error(Errc::invalid_input, "phase denominator does not divide n");
  add(p.num * (n_ / p.den), coeff);
}

CyclotomicSum& CyclotomicSum::operator+=(const CyclotomicSum& o) {
  if (o.n_ != n_) throw Error(Errc::invalid_input, "cyclotomic order mismatch");
  for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
  return *this;
}

bool CyclotomicSum::is_zero() const {
  const auto& phi = cyclotomic_polynomial(n_);
  int dd = static_cast<int>(phi.size()) - 1;
  std::vector<long long> r = c_;
  for (int i = n_ - 1; i >= dd; --i) {
    long long c = r[i];
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= c * phi[j];
  }
  return std::all_of(r.begin(), r.end(), [](long long v) { return v == 0; });
}

std::complex<double> CyclotomicSum::value() const {
  long double re = 0, im = 0;
  for (int k = 0; k < n_; ++k) {
    if (!c_[k]) continue;
    long double a = 2.0L * std::numbers::pi_v<long double> * k / n_;
    re += c_[k] * std::cos(a);
    im += c_[k] * std::sin(a);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace racelab
