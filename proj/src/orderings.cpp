#include "racelab/orderings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "racelab/error.hpp"

namespace racelab {

namespace {

int sgn(double d, double tol) { return d > tol ? 1 : (d < -tol ? -1 : 0); }

// Tie groups of one sample: indices sorted by value descending, grouped by
// chains of gaps below tol.
std::vector<std::vector<int>> tie_groups(const Eigen::VectorXd& v, double tol) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && v[idx[k - 1]] - v[idx[k]] < tol)
      groups.back().push_back(idx[k]);
    else
      groups.push_back({idx[k]});
  }
  return groups;
}

std::vector<Ordering> expand(const std::vector<std::vector<int>>& groups) {
  std::vector<Ordering> out{{}};
  for (auto g : groups) {
    std::sort(g.begin(), g.end());
    std::vector<Ordering> next;
    do {
      for (const auto& o : out) {
        Ordering x = o;
        x.insert(x.end(), g.begin(), g.end());
        next.push_back(std::move(x));
      }
    } while (std::next_permutation(g.begin(), g.end()));
    out = std::move(next);
  }
  return out;
}

// Refined sample points: original grid, localized pairwise roots and the
// midpoints between consecutive roots.
std::vector<double> refined_points(const OrderingTrace& t) {
  std::vector<double> pts(t.u.begin(), t.u.end());
  if (!t.evaluator || t.u.size() < 2) return pts;
  const int m = static_cast<int>(t.members.size());
  Eigen::VectorXd va(m), vb(m), vm(m);
  std::vector<double> roots;
  for (std::size_t s = 0; s + 1 < t.u.size(); ++s) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double d0 = t.values(s, i) - t.values(s, j);
        double d1 = t.values(s + 1, i) - t.values(s + 1, j);
        if (!((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0))) continue;
        double a = t.u[s], b = t.u[s + 1];
        for (int it = 0; it < 60 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
          double c = 0.5 * (a + b);
          t.evaluator(c, vm);
          double dc = vm[i] - vm[j];
          if ((dc > 0) == (d0 > 0))
            a = c;
          else
            b = c;
        }
        roots.push_back(0.5 * (a + b));
      }
  }
  std::sort(roots.begin(), roots.end());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    pts.push_back(roots[k]);
    if (k + 1 < roots.size() && roots[k + 1] > roots[k])
      pts.push_back(0.5 * (roots[k] + roots[k + 1]));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::vector<Crossing> detect_crossings(const OrderingTrace& t) {
  std::vector<Crossing> out;
  const int m = static_cast<int>(t.members.size());
  const std::size_t n = t.u.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::size_t s = 0;
      int last = 0;
      std::size_t last_at = 0;
      while (s < n) {
        int sg = sgn(t.values(s, i) - t.values(s, j), t.tol);
        if (sg == 0) {
          std::size_t e = s;
          while (e + 1 < n && sgn(t.values(e + 1, i) - t.values(e + 1, j), t.tol) == 0) ++e;
          int after = e + 1 < n ? sgn(t.values(e + 1, i) - t.values(e + 1, j), t.tol) : 0;
          out.push_back({i, j, s == 0 ? 0 : s - 1, std::min(e + 1, n - 1), last, after});
          s = e + 1;
          continue;
        }
        if (last != 0 && sg != last && last_at + 1 == s)
          out.push_back({i, j, s - 1, s, last, sg});
        last = sg;
        last_at = s;
        ++s;
      }
    }
  return out;
}

Census census(const OrderingTrace& t) {
  Census c;
  const int m = static_cast<int>(t.members.size());
  std::vector<double> pts = refined_points(t);
  std::map<Ordering, std::size_t> index;
  std::set<std::vector<std::vector<int>>> weak;
  Eigen::VectorXd v(m);
  std::size_t grid = 0;
  for (double u : pts) {
    while (grid < t.u.size() && t.u[grid] < u) ++grid;
    if (grid < t.u.size() && t.u[grid] == u)
      v = t.values.row(grid).transpose();
    else
      t.evaluator(u, v);
    auto groups = tie_groups(v, t.tol);
    auto canon = groups;
    for (auto& g : canon) std::sort(g.begin(), g.end());
    weak.insert(canon);
    auto orders = expand(groups);
    for (const auto& o : orders) {
      auto it = index.find(o);
      if (it == index.end()) {
        index.emplace(o, c.orderings.size());
        c.orderings.push_back({o, u, u, 1});
      } else {
        auto& st = c.orderings[it->second];
        st.last_u = u;
        ++st.samples;
      }
    }
    c.sample_u.push_back(u);
    c.sample_orders.push_back(std::move(orders));
  }
  c.weak_orderings = static_cast<long long>(weak.size());
  return c;
}

std::string ordering_string(const Ordering& o, const std::vector<long long>& members) {
  std::ostringstream s;
  for (std::size_t k = 0; k < o.size(); ++k) {
    if (k) s << '>';
    s << 'a' << members[o[k]];
  }
  return s.str();
}

namespace {

// Label {k, l} if b is a obtained by transposing one adjacent pair, else -1.
bool adjacent_transposition(const Ordering& a, const Ordering& b, int& k, int& l) {
  if (a.size() != b.size()) return false;
  int first = -1;
  for (std::size_t p = 0; p < a.size(); ++p)
    if (a[p] != b[p]) {
      first = static_cast<int>(p);
      break;
    }
  if (first < 0 || first + 1 >= static_cast<int>(a.size())) return false;
  if (a[first] != b[first + 1] || a[first + 1] != b[first]) return false;
  for (std::size_t p = first + 2; p < a.size(); ++p)
    if (a[p] != b[p]) return false;
  k = std::min(a[first], a[first + 1]);
  l = std::max(a[first], a[first + 1]);
  return true;
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

TuranResult turan_graph_bound(const Census& c, int members) {
  TuranResult r;
  std::map<Ordering, int> id;
  for (const auto& st : c.orderings) {
    id.emplace(st.order, static_cast<int>(r.vertices.size()));
    r.vertices.push_back(st.order);
  }
  std::set<std::pair<int, int>> seen;
  auto add = [&](const Ordering& a, const Ordering& b) {
    int k, l;
    if (!adjacent_transposition(a, b, k, l)) return;
    int x = id.at(a), y = id.at(b);
    auto key = std::minmax(x, y);
    if (!seen.insert(key).second) return;
    r.edges.push_back({key.first, key.second, k, l});
  };
  for (std::size_t s = 0; s < c.sample_orders.size(); ++s) {
    const auto& here = c.sample_orders[s];
    for (std::size_t x = 0; x < here.size(); ++x)
      for (std::size_t y = x + 1; y < here.size(); ++y) add(here[x], here[y]);
    if (s + 1 < c.sample_orders.size())
      for (const auto& a : here)
        for (const auto& b : c.sample_orders[s + 1]) add(a, b);
  }
  std::set<std::pair<int, int>> labels;
  for (const auto& e : r.edges) labels.insert({e.k, e.l});
  for (int k = 0; k < members; ++k)
    for (int l = k + 1; l < members; ++l)
      if (!labels.count({k, l}))
        throw Error(Errc::missing_label,
                    "members " + std::to_string(k) + " and " + std::to_string(l) +
                        " never exchange places in the window");
  // Every cycle carries each label an even number of times, so an edge that
  // closes a cycle always has a twin label on the retained path.
  auto sorted = r.edges;
  std::sort(sorted.begin(), sorted.end(), [](const TuranEdge& a, const TuranEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  std::vector<int> parent(r.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : sorted) {
    int a = find(parent, e.from), b = find(parent, e.to);
    if (a == b) continue;
    parent[a] = b;
    r.forest.push_back(e);
  }
  r.lower_bound = static_cast<long long>(r.forest.size()) + 1;
  return r;
}

TuranResult turan_graph_bound(const OrderingTrace& trace) {
  return turan_graph_bound(census(trace), static_cast<int>(trace.members.size()));
}

Verdict verdict(const OrderingTrace& trace, Claim claim, int lead_member) {
  Verdict v;
  Census c = census(trace);
  v.census = static_cast<long long>(c.size());
  const long long r = static_cast<long long>(trace.members.size());
  if (!trace.periodic && !c.sample_u.empty() && r > 1) {
    const double lo = c.sample_u.front(), hi = c.sample_u.back();
    const double edge = hi - 0.1 * (hi - lo);
    for (const auto& st : c.orderings)
      if (st.first_u > edge)
        throw Error(Errc::inconclusive_window,
                    "a new ordering first appears in the last tenth of the window");
  }
  switch (claim) {
    case Claim::extremal_exact:
      v.bound = r * (r - 1) / 2 + 1;
      v.holds = v.census == v.bound;
      v.detail = "census " + std::to_string(v.census) + " vs r(r-1)/2+1 = " +
                 std::to_string(v.bound);
      break;
    case Claim::thm51_upper:
      v.bound = std::max<long long>(1, r * (r - 1));
      v.holds = v.census <= v.bound;
      v.detail = "census " + std::to_string(v.census) + " vs r(r-1) = " +
                 std::to_string(v.bound);
      break;
    case Claim::kt_all_pairs: {
      v.holds = true;
      std::set<std::pair<int, int>> changed;
      for (const auto& cr : detect_crossings(trace))
        if (cr.sign_before != 0 && cr.sign_after != 0 && cr.sign_before != cr.sign_after)
          changed.insert({cr.i, cr.j});
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          if (!changed.count({i, j})) v.holds = false;
      v.bound = r * (r - 1) / 2;
      v.detail = std::to_string(changed.size()) + " of " + std::to_string(v.bound) +
                 " pairs change sign";
      break;
    }
    case Claim::lead_trail: {
      bool leads = false, trails = false;
      for (Eigen::Index s = 0; s < trace.values.rows(); ++s) {
        double me = trace.values(s, lead_member);
        bool all_below = true, all_above = true;
        for (int k = 0; k < r; ++k) {
          if (k == lead_member) continue;
          double d = me - trace.values(s, k);
          if (!(d > trace.tol)) all_below = false;
          if (!(d < -trace.tol)) all_above = false;
        }
        leads = leads || all_below;
        trails = trails || all_above;
      }
      v.holds = r == 1 || (leads && trails);
      v.detail = std::string("leads: ") + (leads ? "yes" : "no") +
                 ", trails: " + (trails ? "yes" : "no");
      break;
    }
  }
  return v;
}

}  // namespace racelab
