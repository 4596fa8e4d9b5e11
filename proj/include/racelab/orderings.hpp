#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace racelab {

// A pairwise sign change or tie run between samples begin..end (inclusive).
struct Crossing {
  int i;
  int j;
  std::size_t begin;
  std::size_t end;
  int sign_before;
  int sign_after;
};

using MemberEvaluator = std::function<void(double, Eigen::VectorXd&)>;

struct OrderingTrace {
  std::vector<long long> members;
  std::vector<double> u;
  Eigen::MatrixXd values;  // samples x members
  double tol = 1e-9;
  bool periodic = false;   // window covers exactly one period
  double period = 0;
  // Optional exact evaluator; enables root localization in census().
  MemberEvaluator evaluator;
  std::vector<Crossing> crossings;
};

std::vector<Crossing> detect_crossings(const OrderingTrace& trace);

// Strict ordering: member indices from largest to smallest.
using Ordering = std::vector<int>;

struct OrderingStat {
  Ordering order;
  double first_u;
  double last_u;
  long long samples;
};

struct Census {
  std::vector<OrderingStat> orderings;  // strict orderings after tie expansion
  long long weak_orderings = 0;         // distinct tie patterns seen
  std::vector<double> sample_u;         // sample points used (refined)
  std::vector<std::vector<Ordering>> sample_orders;
  std::size_t size() const { return orderings.size(); }
};

Census census(const OrderingTrace& trace);

std::string ordering_string(const Ordering& o,
                            const std::vector<long long>& members);

struct TuranEdge {
  int from;
  int to;
  int k;  // label {k, l} as member indices, k < l
  int l;
};

struct TuranResult {
  std::vector<Ordering> vertices;
  std::vector<TuranEdge> edges;   // graph G
  std::vector<TuranEdge> forest;  // label-preserving forest G'
  long long lower_bound = 0;
};

TuranResult turan_graph_bound(const OrderingTrace& trace);
TuranResult turan_graph_bound(const Census& c, int members);

enum class Claim { extremal_exact, thm51_upper, kt_all_pairs, lead_trail };

struct Verdict {
  bool holds = false;
  long long census = 0;
  long long bound = 0;
  std::string detail;
};

// lead_member indexes trace.members for Claim::lead_trail.
Verdict verdict(const OrderingTrace& trace, Claim claim, int lead_member = 0);

}  // namespace racelab
