#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/interval.hpp"
#include "qgraph/matching.hpp"

namespace qgraph {

// The 2B x 2B matrix M of Eq.-level entry rule
//   M_ab = delta_{a,b} f'_b(0) - delta_{a,bbar} f'_bbar(L_b) e^{i A_b L_b},
// expressing inward derivatives of the f-basis coefficients.  Optionally
// hands back the per-bond solutions it was assembled from.
Eigen::MatrixXcd build_m(const MetricGraph& graph, const SpectralPoint& sp,
                         std::vector<BondSolution>* bonds_out = nullptr,
                         const SolverOptions& opt = {});

// F(z) = det(A + B M(-z^2)).  Throws PoleError near a bond Dirichlet point.
std::complex<double> secular_value(const MetricGraph& graph, const MatchingConditions& mc,
                                   std::complex<double> z, const SolverOptions& opt = {});

// Column-scaled, pole-free variant: det(A diag(u) + B M diag(u)), both
// columns of bond b scaled by u_b(L_b).  Entire in k; its zero set contains
// every graph eigenvalue (plus removable scaling zeros).
std::complex<double> regularized_secular(const MetricGraph& graph, const MatchingConditions& mc,
                                         double k, const SolverOptions& opt = {});

// Pencil in the entire solution basis (v_b, u_b) per bond: T(k) = A Phi +
// B Phihat.  Null vectors correspond one-to-one to eigenfunctions, so
// dim null T is the true multiplicity even at bond Dirichlet points.
// scale_out, when given, receives the magnitude scale |A||Phi| + |B||Phihat|
// against which small singular values should be judged (T itself vanishes
// entirely at a maximally degenerate eigenvalue).
Eigen::MatrixXcd solution_pencil(const MetricGraph& graph, const MatchingConditions& mc,
                                 const SpectralPoint& sp, const SolverOptions& opt = {},
                                 double* scale_out = nullptr);

// log F(it) with |.| and arg parts, safe for large t; used by the zeta
// quadrature through branch-free ratio differences.
std::complex<double> secular_log_f_it(const MetricGraph& graph, const MatchingConditions& mc,
                                      double t, const SolverOptions& opt = {});

struct EigenvalueEntry {
  double energy = 0.0;  // E_j = k^2
  int multiplicity = 1;
  double secular_residual = 0.0;   // |scaled determinant| at the root
  double null_sigma_ratio = 0.0;   // sigma_min(T)/sigma_max(T)
};

struct Spectrum {
  std::vector<EigenvalueEntry> entries;  // ascending in energy
  double k_max = 0.0;
  std::vector<std::string> warnings;
};

struct EigenSearchOptions {
  double grid_step = 0.0;   // 0: pi/(8 max L_b), clamped to [1e-4, 1e-2 k_max]
  double refine_tol = 1e-10;
  double null_tol = 1e-8;   // relative singular-value threshold
  double dip_accept = 0.5;  // normalized sigma_min pre-filter for dip refinement
  SolverOptions solver;
};

Spectrum find_eigenvalues(const MetricGraph& graph, const MatchingConditions& mc, double k_max,
                          const EigenSearchOptions& opt = {});

}  // namespace qgraph
