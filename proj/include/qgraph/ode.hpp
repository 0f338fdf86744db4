#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "qgraph/errors.hpp"

namespace qgraph {

struct OdeOptions {
  double atol = 1e-12;
  double rtol = 1e-11;
  double initial_step = 0.0;  // 0: span / 200
  long max_steps = 4000000;
};

namespace detail {
inline double abs_of(double x) { return std::fabs(x); }
inline double abs_of(const std::complex<double>& x) { return std::abs(x); }
}  // namespace detail

// Embedded Dormand-Prince 5(4) pair with FSAL.  Integrates y' = f(x, y)
// from x0 to x1 (either direction).  AfterStep is called with (x, y) after
// every accepted step and may rescale the state in place.
template <typename State, typename Rhs, typename AfterStep>
void integrate_dopri5(Rhs&& f, double x0, double x1, State& y, const OdeOptions& opt,
                      AfterStep&& after_step) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const double span = x1 - x0;
  if (span == 0.0) return;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = opt.initial_step != 0.0 ? std::copysign(opt.initial_step, dir) : span / 200.0;
  const double h_min = std::fabs(span) * 1e-15;

  double x = x0;
  State k1 = f(x, y);
  State k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ytmp{}, ynew{};
  const size_t n = y.size();

  for (long step = 0; step < opt.max_steps; ++step) {
    if ((x - x1) * dir >= 0.0) return;
    if ((x + h - x1) * dir > 0.0) h = x1 - x;

    for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
    k2 = f(x + c2 * h, ytmp);
    for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(x + c3 * h, ytmp);
    for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(x + c4 * h, ytmp);
    for (size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(x + c5 * h, ytmp);
    for (size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(x + h, ytmp);
    for (size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = f(x + h, ynew);

    double err = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double ei = detail::abs_of(h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                            e6 * k6[i] + e7 * k7[i]));
      const double sc =
          opt.atol + opt.rtol * std::max(detail::abs_of(y[i]), detail::abs_of(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / static_cast<double>(n));

    if (err <= 1.0) {
      x += h;
      y = ynew;
      k1 = k7;  // FSAL
      after_step(x, y, k1);
      double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, fac));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (std::fabs(h) < h_min) throw NumericError("ODE step size underflow");
    }
  }
  throw NumericError("ODE integration exceeded the step budget");
}

template <typename State, typename Rhs>
void integrate_dopri5(Rhs&& f, double x0, double x1, State& y, const OdeOptions& opt = {}) {
  integrate_dopri5(std::forward<Rhs>(f), x0, x1, y, opt,
                   [](double, State&, State&) {});
}

}  // namespace qgraph
