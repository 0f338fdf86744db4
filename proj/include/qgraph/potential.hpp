#pragma once

#include "qgraph/polynomial.hpp"

namespace qgraph {

// Per-bond scalar potential.  The Susy variant keeps V = phi^2 + phi'
// factored; expanded() produces the exact polynomial on demand.
class Potential {
 public:
  enum class Kind { Zero, Polynomial, Susy };

  Potential() = default;
  static Potential zero() { return {}; }
  static Potential polynomial(RationalPoly p);
  static Potential susy(RationalPoly phi);

  Kind kind() const { return kind_; }
  bool is_zero() const { return poly_.is_zero(); }
  const RationalPoly& expanded() const { return poly_; }
  const RationalPoly& susy_phi() const;

  double evaluate(double x) const { return poly_(x); }
  Rational evaluate(const Rational& x) const { return poly_(x); }

  Potential derivative() const;
  Potential reflected(const Rational& length) const;  // V(L - x)

  friend bool operator==(const Potential& a, const Potential& b) { return a.poly_ == b.poly_; }

 private:
  Kind kind_ = Kind::Zero;
  RationalPoly poly_;  // expanded form, canonical
  RationalPoly phi_;   // Susy only
};

// phi^2 + phi', expanded.
Potential susy_to_potential(const RationalPoly& phi);

}  // namespace qgraph
