#pragma once

#include <complex>
#include <functional>

namespace racelab {

struct QuadResult {
  std::complex<double> value;
  double error = 0;
  long long evaluations = 0;
};

// Adaptive Gauss-Kronrod (7,15) for complex integrands.
QuadResult integrate_gk15(const std::function<std::complex<double>(double)>& f,
                          double a, double b, double rel_tol = 1e-9,
                          double abs_tol = 0, int max_depth = 40);

// Splits [a, b] into panels no longer than pi/omega before adapting, so an
// integrand oscillating like e^{i omega s} is resolved panel by panel.
QuadResult integrate_oscillatory(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double omega, double rel_tol = 1e-9);

}  // namespace racelab
