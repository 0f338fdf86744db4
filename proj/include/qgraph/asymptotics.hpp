#pragma once

#include <complex>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/laurent.hpp"
#include "qgraph/matching.hpp"
#include "qgraph/polynomial.hpp"
#include "qgraph/potential.hpp"

namespace qgraph {

// Coefficients s_j(x) of the large-t expansion of the logarithmic
// derivative S_t(x): S_t' = t^2 + V - S_t^2, S_t = sum_{j>=-1} s_j(x) t^{-j}.
// branch = -1 picks the decaying branch (s_{-1} = -1) entering f'(0; t^2).
struct SeriesCoefficients {
  std::vector<RationalPoly> s;  // s[j + 1] holds s_j, j = -1 .. order
  int order = 0;
  int branch = -1;
  const RationalPoly& at(int j) const { return s.at(j + 1); }
};

SeriesCoefficients s_coefficients(const Potential& v, int order, int branch = -1);

// Truncated evaluation of f'(0; t^2) ~ -t + sum s_j(0) t^-j.
double fprime_asymptotic(const Potential& v, int order, double t);

// Normalization data of the secular function: F(i t) ~ sum_j c_j t^{2B-j},
// N is the index of the first nonzero coefficient (so F ~ c_N t^{2B-N}).
struct AsymptoticProfile {
  int N = 0;
  GaussianRational c_n;
  int P = 0;           // order data filled by the spectral layer
  int truncation = 0;  // J used for the expansion
  std::vector<GaussianRational> c;  // c_0 .. c_{j_known}
  int j_known = 0;

  std::complex<double> c_n_complex() const { return c_n.to_complex(); }
};

// Exact expansion of det(A + B(-t I + D(t))).  order = 0 picks the default
// 2B + 8 and doubles toward 2B + 64 if every known coefficient vanishes.
AsymptoticProfile leading_coefficient(const MetricGraph& graph, const MatchingConditions& mc,
                                      int order = 0);

// Order P of the zero of F(z) = det(A + B M(-z^2)) at z = 0; 0 in the
// generic case, otherwise a least-squares slope of log|F| vs log gamma
// snapped to the nearest integer.
int zero_order_p(const MetricGraph& graph, const MatchingConditions& mc);

// Asymptotic series of log(2 t u(L; t^2) e^{-tL}) in powers of 1/t, used for
// the analytic tail of the wire zeta integrals.
LaurentSeries wire_log_u_series(const Potential& v, const Rational& length, int order);

// Asymptotic series of log(F(i t) t^{N-2B} / c_N) from the profile data.
LaurentSeries secular_log_ratio_series(const AsymptoticProfile& profile);

}  // namespace qgraph
