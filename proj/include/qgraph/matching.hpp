#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/rational.hpp"

namespace qgraph {

using ExactMatrix = std::vector<std::vector<GaussianRational>>;

// Matching conditions A*phi + B*phihat = 0 in the directed-end convention
// (origin ends first, then terminal ends).  Entries are kept exact so the
// asymptotic expansion downstream never sees floating point.
struct MatchingConditions {
  ExactMatrix a;
  ExactMatrix b;
  // Builder metadata: ends grouped by vertex, i.e. the relabeling under which
  // (a, b) is block diagonal.  Empty for explicit user matrices.
  std::vector<int> end_permutation;

  int size() const { return static_cast<int>(a.size()); }
  Eigen::MatrixXcd a_complex() const;
  Eigen::MatrixXcd b_complex() const;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

ExactMatrix exact_zero_matrix(int n);
ExactMatrix exact_from_complex(const Eigen::MatrixXcd& m);

// Theorem-level self-adjointness test: rank(A|B) = 2B, A B^dag Hermitian,
// plus the locality check against the graph's vertex map.
ValidationReport validate_self_adjoint(const MatchingConditions& mc, const MetricGraph& graph);

MatchingConditions build_dirichlet(const MetricGraph& graph);
// Delta-type (continuous function) conditions; lambda maps vertex -> coupling,
// missing vertices default to 0 (Kirchhoff).
MatchingConditions build_delta(const MetricGraph& graph, const std::map<int, double>& lambda);
// delta'_s conditions (continuous derivative); mu maps vertex -> coupling.
MatchingConditions build_delta_prime(const MetricGraph& graph, const std::map<int, double>& mu);

// (A, B) -> (U A, U B); rejects singular U.
MatchingConditions transform_conditions(const MatchingConditions& mc, const Eigen::MatrixXcd& u);

}  // namespace qgraph
