#pragma once

#include <complex>
#include <functional>

namespace qgraph {

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b].
QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                              double b, double abs_tol, double rel_tol, int max_intervals = 4000);

QuadResult integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                                   double abs_tol, double rel_tol, int max_intervals = 4000);

}  // namespace qgraph
