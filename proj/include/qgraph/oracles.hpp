#pragma once

#include "qgraph/interval.hpp"

namespace qgraph {

// Closed-form interval solutions used to validate the ODE solver.  They are
// built on the local special-function evaluators, never on solve_bond.

// V = 0: trigonometric / hyperbolic closed forms, branch-safe at mu = 0.
BondSolution oracle_free(double length, const SpectralPoint& mu);

// V = omega * x: Ai/Bi combinations.  Requires real mu with the Airy
// arguments inside the evaluator's range (mu <= 0 covers the paper's use).
BondSolution oracle_airy(double omega, double length, const SpectralPoint& mu);

// V = phi^2 + phi': u(L; 0) = psi0(0) psi0(L) int_0^L dy / psi0(y)^2 with
// psi0 = exp(int phi); adaptive quadrature at relative tolerance 1e-10.
double oracle_susy_u(const RationalPoly& phi, double length);

}  // namespace qgraph
