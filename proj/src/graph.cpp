#include "qgraph/graph.hpp"

#include <algorithm>

#include "qgraph/errors.hpp"

namespace qgraph {

MetricGraph::MetricGraph(int vertex_count, std::vector<Bond> bonds)
    : vertex_count_(vertex_count), bonds_(std::move(bonds)) {
  if (vertex_count_ <= 0) throw ValidationError("vertex count must be positive");
  for (auto& b : bonds_) {
    if (b.origin < 1 || b.origin > vertex_count_ || b.terminus < 1 || b.terminus > vertex_count_)
      throw ValidationError("bond endpoint outside 1..V");
    if (b.length <= 0) throw ValidationError("bond length must be positive");
    if (b.origin > b.terminus) {
      // Normalize to o(b) <= t(b): reversing the label flips the magnetic
      // potential and reflects the scalar potential.
      std::swap(b.origin, b.terminus);
      b.magnetic = -b.magnetic;
      b.potential = b.potential.reflected(b.length);
    }
  }
  reflected_.reserve(bonds_.size());
  for (const auto& b : bonds_) {
    reflected_.push_back(b.potential.reflected(b.length));
    total_length_ += b.length_d();
  }
}

int MetricGraph::degree(int v) const {
  int m = 0;
  for (const auto& b : bonds_) {
    if (b.origin == v) ++m;
    if (b.terminus == v) ++m;  // loops count twice
  }
  return m;
}

int MetricGraph::end_vertex(int end) const {
  const int B = bond_count();
  if (end < 0 || end >= 2 * B) throw ValidationError("end index out of range");
  return end < B ? bonds_[end].origin : bonds_[end - B].terminus;
}

std::vector<int> MetricGraph::ends_at_vertex(int v) const {
  std::vector<int> ends;
  for (int e = 0; e < end_count(); ++e)
    if (end_vertex(e) == v) ends.push_back(e);
  return ends;
}

const Potential& MetricGraph::directed_potential(int end) const {
  const int B = bond_count();
  if (end < B) return bonds_.at(end).potential;
  return reflected_.at(end - B);
}

}  // namespace qgraph
