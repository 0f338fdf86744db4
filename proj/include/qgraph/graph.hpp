#pragma once

#include <vector>

#include "qgraph/potential.hpp"

namespace qgraph {

// One physical bond, stored in the canonical direction o(b) <= t(b).
// The reversed label bbar carries magnetic -A_b and the reflected potential
// V(L - x); both are derived, never stored independently.
struct Bond {
  int origin = 1;    // 1-based vertex indices
  int terminus = 1;
  Rational length{1};
  double magnetic = 0.0;
  Potential potential;

  double length_d() const { return to_double(length); }
};

// Metric graph with the directed-end index convention used everywhere else:
// ends 0..B-1 are origin ends (x_b = 0), ends B..2B-1 are terminal ends
// (x_b = L_b).  Immutable after construction.
class MetricGraph {
 public:
  MetricGraph(int vertex_count, std::vector<Bond> bonds);

  int vertex_count() const { return vertex_count_; }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  int end_count() const { return 2 * bond_count(); }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const Bond& bond(int b) const { return bonds_.at(b); }
  double total_length() const { return total_length_; }

  int degree(int v) const;  // valency m_v, 1-based vertex index

  int end_vertex(int end) const;
  std::vector<int> ends_at_vertex(int v) const;  // ascending end indices

  // Potential seen from the directed end: V_b for origin ends,
  // V(L - x) for terminal ends.
  const Potential& directed_potential(int end) const;

 private:
  int vertex_count_ = 0;
  std::vector<Bond> bonds_;
  std::vector<Potential> reflected_;  // cached V_bbar per bond
  double total_length_ = 0.0;
};

}  // namespace qgraph
