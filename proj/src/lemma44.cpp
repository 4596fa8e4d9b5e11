#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "racelab/barriers.hpp"
#include "racelab/error.hpp"

namespace racelab {

Eigen::VectorXd solve_lemma44(int r, const Eigen::VectorXd& c, const Eigen::VectorXd& d) {
  if (r < 2) throw Error(Errc::invalid_input, "r must be >= 2");
  if (c.size() != r || d.size() != r) throw Error(Errc::invalid_input, "c and d need r entries");
  const double scale = std::max({1.0, c.cwiseAbs().maxCoeff(), d.cwiseAbs().maxCoeff()});
  const double tol = 1e-12 * scale;
  if (std::abs(d[0]) > tol) throw Error(Errc::precondition_violated, "d_0 must be 0");
  for (int v = 1; v < r; ++v) {
    if (std::abs(c[v] - c[r - v]) > tol)
      throw Error(Errc::precondition_violated, "c_v must equal c_{r-v}");
    if (std::abs(d[v] + d[r - v]) > tol)
      throw Error(Errc::precondition_violated, "d_v must equal -d_{r-v}");
  }
  const double w = 2 * std::numbers::pi / r;
  const int hc = r / 2, hs = (r - 1) / 2;
  // Cosine system: sum_{j=0}^{[r/2]} mu_j cos(w j v) = c_v, v = 0..[r/2].
  Eigen::MatrixXd A(hc + 1, hc + 1);
  Eigen::VectorXd rhs(hc + 1);
  for (int v = 0; v <= hc; ++v) {
    for (int j = 0; j <= hc; ++j) A(v, j) = std::cos(w * j * v);
    rhs[v] = c[v];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (lu.rank() < A.rows()) throw Error(Errc::singular_system, "cosine system (4.5)");
  Eigen::VectorXd mu = lu.solve(rhs);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(hs + 1);
  if (hs > 0) {
    Eigen::MatrixXd S(hs, hs);
    Eigen::VectorXd rs(hs);
    for (int v = 1; v <= hs; ++v) {
      for (int j = 1; j <= hs; ++j) S(v - 1, j - 1) = std::sin(w * j * v);
      rs[v - 1] = d[v];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> slu(S);
    if (slu.rank() < S.rows()) throw Error(Errc::singular_system, "sine system (4.6)");
    lambda.tail(hs) = slu.solve(rs);
  }
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(r);
  nu[0] = mu[0];
  for (int j = 1; j <= hs; ++j) {
    nu[j] = (mu[j] + lambda[j]) / 2;
    nu[r - j] = (mu[j] - lambda[j]) / 2;
  }
  if (r % 2 == 0) nu[r / 2] = mu[r / 2];
  return nu;
}

}  // namespace racelab
