#include "qgraph/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

// QUADPACK 15-point Kronrod / 7-point Gauss pair on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329,
                            0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926,
                            0.741531185599394439863864773280788,
                            0.586087235467691130294144838258730,
                            0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245,
                            0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970,
                            0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518,
                            0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550,
                            0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649,
                            0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::complex<double> resk{0.0, 0.0}, resg{0.0, 0.0};
  const std::complex<double> f0 = f(c);
  resk += kWgk[7] * f0;
  resg += kWg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const std::complex<double> f1 = f(c - dx);
    const std::complex<double> f2 = f(c + dx);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  p.error = std::abs(resk - resg) * std::fabs(h);
  return p;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                              double b, double abs_tol, double rel_tol, int max_intervals) {
  QuadResult out;
  if (a == b) return out;

  std::priority_queue<Panel> queue;
  Panel whole = evaluate_panel(f, a, b);
  out.evaluations = 15;
  std::complex<double> total = whole.value;
  double total_err = whole.error;
  queue.push(whole);

  int panels = 1;
  while (panels < max_intervals) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= tol) break;
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      queue.push(worst);  // interval exhausted at machine precision
      break;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  out.value = total;
  out.error = total_err;
  return out;
}

QuadResult integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                                   double abs_tol, double rel_tol, int max_intervals) {
  return integrate_adaptive([&f](double x) { return std::complex<double>(f(x), 0.0); }, a, b,
                            abs_tol, rel_tol, max_intervals);
}

}  // namespace qgraph
