#pragma once

#include <complex>

#include "qgraph/asymptotics.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/interval.hpp"
#include "qgraph/matching.hpp"

namespace qgraph {

// S_Dir(gamma) = prod_b -2 / f'_b(L_b; gamma) = prod_b 2 u_b(L_b; gamma).
double dirichlet_determinant(const MetricGraph& graph, double gamma,
                             const SolverOptions& opt = {});

// det(-d^2/dx^2 + phi^2 + phi') = 2 e^{int phi} int_0^L e^{-2 int phi}.
double susy_dirichlet_determinant(const RationalPoly& phi, double length);

// Cached normalization data (N, c_N exact, P) per (graph, conditions).
const AsymptoticProfile& spectral_profile(const MetricGraph& graph,
                                          const MatchingConditions& mc);

struct DeterminantResult {
  double value = 0.0;
  double imag_residual = 0.0;
  double gamma = 0.0;
  double dirichlet_factor = 0.0;
  std::complex<double> secular_factor{0.0, 0.0};
  AsymptoticProfile profile;
  bool extrapolated = false;
};

struct DetOptions {
  bool allow_limit = false;  // gamma = 0 with P > 0 via Richardson extrapolation
  SolverOptions solver;
};

// Theorem-1 spectral determinant
//   S(gamma) = (prod_b -2/f'_b(L_b;gamma)) det(A + B M(gamma)) / (c_N gamma^P).
DeterminantResult spectral_determinant(const MetricGraph& graph, const MatchingConditions& mc,
                                       double gamma, const DetOptions& opt = {});

struct ZetaOptions {
  // The integrand carries ~1e-11 relative ODE/finite-difference noise;
  // pushing the quadrature much below that only burns panels.
  double quad_abs_tol = 1e-10;
  double quad_rel_tol = 1e-9;
  double cutoff = 0.0;  // upper quadrature limit T; 0 = automatic
  int order = 0;        // tail series order; 0 = automatic
  SolverOptions solver;
};

// Wire Dirichlet zeta in the strip -1/2 < Re s < 1 (gamma > 0): subtracted
// integrand quadrature plus the two closed-form terms.
std::complex<double> zeta_dirichlet_wire(const Potential& v, double length,
                                         std::complex<double> s, double gamma,
                                         const ZetaOptions& opt = {});

// Closed form zeta'_Dir(0, gamma) = -log(2 u(L; gamma)); regular at gamma = 0.
double zeta_dirichlet_wire_prime0(const Potential& v, double length, double gamma,
                                  const SolverOptions& opt = {});

struct ZetaResult {
  std::complex<double> value{0.0, 0.0};
  std::complex<double> zeta_im{0.0, 0.0};
  std::complex<double> zeta_pole{0.0, 0.0};  // = sum of wire Dirichlet zetas
  double error_estimate = 0.0;
  std::complex<double> s{0.0, 0.0};
  double gamma = 0.0;
};

// Graph zeta: contour split zeta = zeta_Im + zeta_P with the gamma^P-adjusted
// secular function; valid in the strip -1/2 < Re s < 1, gamma > 0.
ZetaResult zeta(const MetricGraph& graph, const MatchingConditions& mc, std::complex<double> s,
                double gamma, const ZetaOptions& opt = {});

// zeta'(0, gamma) through the closed-form identity
// zeta'_Im(0) = log(c_N gamma^P) - log det(A + B M(gamma)).
double zeta_prime_zero(const MetricGraph& graph, const MatchingConditions& mc, double gamma,
                       const SolverOptions& opt = {});

}  // namespace qgraph
