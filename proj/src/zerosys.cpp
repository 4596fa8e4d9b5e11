#include "racelab/zerosys.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "racelab/error.hpp"

namespace racelab {

ZeroSystem::ZeroSystem(std::shared_ptr<const ResidueGroup> group,
                       std::vector<ZeroEntry> entries, Kind kind,
                       double base_gamma)
    : group_(std::move(group)), kind_(kind), base_gamma_(base_gamma) {
  const int phi = group_->phi();
  for (auto& e : entries) {
    if (e.label <= 0 || e.label >= phi)
      throw Error(Errc::invalid_system,
                  "label " + std::to_string(e.label) +
                      " is not a non-principal character mod " +
                      std::to_string(group_->q()));
    if (e.mult <= 0) throw Error(Errc::invalid_system, "multiplicity must be positive");
    if (e.gamma < 0) throw Error(Errc::invalid_system, "gamma must be >= 0");
    if (kind_ == Kind::hypothetical && !(e.beta > 0.5 && e.beta <= 1))
      throw Error(Errc::invalid_system, "real parts must satisfy 1/2 < beta <= 1");
    if (kind_ == Kind::observed && !(e.beta > 0 && e.beta < 1))
      throw Error(Errc::invalid_system, "observed zeros need 0 < beta < 1");
    if (base_gamma_ > 0 && e.k < 0) {
      double k = std::round(e.gamma / base_gamma_);
      if (std::abs(e.gamma - k * base_gamma_) <= 1e-9 * std::max(1.0, e.gamma))
        e.k = static_cast<long long>(k);
    }
  }
  std::sort(entries.begin(), entries.end(), [](const ZeroEntry& x, const ZeroEntry& y) {
    if (x.label != y.label) return x.label < y.label;
    if (x.beta != y.beta) return x.beta > y.beta;
    return x.gamma < y.gamma;
  });
  for (const auto& e : entries) {
    if (!entries_.empty()) {
      auto& last = entries_.back();
      if (last.label == e.label && last.beta == e.beta && last.gamma == e.gamma) {
        last.mult += e.mult;
        continue;
      }
    }
    entries_.push_back(e);
  }
  for (const auto& e : entries_)
    if (!chars_.count(e.label))
      chars_.emplace(e.label, character_by_label(group_, e.label));
  for (const auto& e : entries_) {
    if (e.gamma != 0) continue;
    int conj = character(e.label).conjugate().label();
    if (multiplicity(conj, e.beta, 0) != e.mult)
      throw Error(Errc::invalid_system,
                  "real zero multiplicities differ between chi and its conjugate");
  }
}

long long ZeroSystem::size() const {
  long long n = 0;
  for (const auto& e : entries_) n += e.mult;
  return n;
}

double ZeroSystem::r_minus() const {
  double r = 1;
  for (const auto& e : entries_) r = std::min(r, e.beta);
  return r;
}

double ZeroSystem::r_plus() const {
  double r = 0;
  for (const auto& e : entries_) r = std::max(r, e.beta);
  return r;
}

int ZeroSystem::multiplicity(int label, double beta, double gamma) const {
  for (const auto& e : entries_)
    if (e.label == label && e.beta == beta && e.gamma == gamma) return e.mult;
  return 0;
}

const DirichletCharacter& ZeroSystem::character(int label) const {
  auto it = chars_.find(label);
  if (it == chars_.end())
    throw Error(Errc::unknown_character_label, std::to_string(label));
  return it->second;
}

std::vector<DistinctZero> distinct_zeros(const ZeroSystem& B) {
  std::vector<DistinctZero> out;
  for (const auto& e : B.entries()) out.push_back({e.beta, e.gamma, e.k});
  std::sort(out.begin(), out.end(), [](const DistinctZero& x, const DistinctZero& y) {
    if (x.beta != y.beta) return x.beta > y.beta;
    return x.gamma < y.gamma;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const DistinctZero& x, const DistinctZero& y) {
                          return x.beta == y.beta && x.gamma == y.gamma;
                        }),
            out.end());
  return out;
}

CyclotomicSum g_rho_exact(const ZeroSystem& B, double beta, double gamma,
                          long long a, long long b) {
  const auto& G = B.group();
  if (!G.is_unit(a) || !G.is_unit(b))
    throw Error(Errc::invalid_residue, "a and b must be units");
  CyclotomicSum s(G.lambda());
  for (const auto& e : B.entries()) {
    if (e.beta != beta || e.gamma != gamma) continue;
    const auto& chi = B.character(e.label);
    s.add(static_cast<long long>(chi.phase_num(a)), e.mult);
    s.add(static_cast<long long>(chi.phase_num(b)), -e.mult);
  }
  return s;
}

std::complex<double> g_rho(const ZeroSystem& B, std::complex<double> rho,
                           long long a, long long b) {
  auto s = g_rho_exact(B, rho.real(), rho.imag(), a, b);
  if (s.is_zero()) return 0;
  return s.value();
}

DominantData dominant_data(const ZeroSystem& B, long long a, long long b) {
  DominantData d;
  for (const auto& z : distinct_zeros(B)) {
    auto s = g_rho_exact(B, z.beta, z.gamma, a, b);
    if (s.is_zero()) continue;
    d.nonzero.push_back({z.beta, z.gamma, z.k, s.value()});
  }
  if (d.nonzero.empty()) return d;
  d.empty = false;
  d.beta = d.nonzero.front().beta;
  for (const auto& z : d.nonzero) d.beta = std::max(d.beta, z.beta);
  for (const auto& z : d.nonzero)
    if (z.beta == d.beta) d.z.push_back(z);
  for (const auto& e : B.entries()) {
    if (e.beta != d.beta) continue;
    bool dominant = std::any_of(d.z.begin(), d.z.end(), [&](const DominantZero& z) {
      return z.gamma == e.gamma;
    });
    if (dominant) d.z_chi[e.label].push_back({e.beta, e.gamma, e.k});
  }
  return d;
}

KtReport is_kt_candidate(const ZeroSystem& B, const std::vector<long long>& D) {
  KtReport r;
  for (const auto& e : B.entries())
    if (e.gamma == 0) r.has_real = true;
  for (std::size_t i = 0; i < D.size(); ++i)
    for (std::size_t j = i + 1; j < D.size(); ++j) {
      auto d = dominant_data(B, D[i], D[j]);
      KtPairReport p{D[i], D[j], !d.empty && !d.z.empty(), false};
      for (const auto& z : d.z)
        if (z.gamma == 0) p.has_real = true;
      if (!p.z_nonempty || p.has_real) r.all_pass = false;
      r.pairs.push_back(p);
    }
  if (r.has_real) r.all_pass = false;
  return r;
}

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

bool parse_int(const std::string& s, long long& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

}  // namespace

std::map<int, ZeroSystem> parse_zero_data(const std::string& text) {
  std::map<int, std::vector<ZeroEntry>> per_q;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    long long q = -1, chi = -1, mult = 1;
    double gamma = -1, beta = 0.5;
    bool any = false, have_gamma = false;
    auto bad = [&](const std::string& why) {
      return Error(Errc::malformed_line,
                   "line " + std::to_string(lineno) + ": " + why);
    };
    while (ls >> tok) {
      any = true;
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw bad("expected key=value, got '" + tok + "'");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      bool ok = false;
      if (key == "q") ok = parse_int(val, q);
      else if (key == "chi") ok = parse_int(val, chi);
      else if (key == "mult") ok = parse_int(val, mult);
      else if (key == "gamma") ok = have_gamma = parse_double(val, gamma);
      else if (key == "beta") ok = parse_double(val, beta);
      else throw bad("unknown key '" + key + "'");
      if (!ok) throw bad("bad value for " + key);
    }
    if (!any) continue;
    if (q < 3 || chi < 0 || !have_gamma || gamma < 0 || mult < 1)
      throw bad("q, chi and gamma are required");
    per_q[static_cast<int>(q)].push_back(
        {static_cast<int>(chi), beta, gamma, static_cast<int>(mult), -1});
  }
  std::map<int, ZeroSystem> out;
  for (auto& [q, entries] : per_q) {
    auto G = std::make_shared<const ResidueGroup>(q);
    for (const auto& e : entries)
      if (e.label <= 0 || e.label >= G->phi())
        throw Error(Errc::unknown_character_label,
                    "chi=" + std::to_string(e.label) + " mod " + std::to_string(q));
    out.emplace(q, ZeroSystem(G, entries, ZeroSystem::Kind::observed));
  }
  return out;
}

std::map<int, ZeroSystem> load_zero_data(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::invalid_input, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_zero_data(ss.str());
}

ZeroSystem load_zero_data(const std::string& path, int q) {
  auto all = load_zero_data(path);
  auto it = all.find(q);
  if (it != all.end()) return it->second;
  return ZeroSystem(std::make_shared<const ResidueGroup>(q));
}

}  // namespace racelab
