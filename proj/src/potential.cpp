#include "qgraph/potential.hpp"

#include "qgraph/errors.hpp"

namespace qgraph {

Potential Potential::polynomial(RationalPoly p) {
  Potential v;
  v.kind_ = p.is_zero() ? Kind::Zero : Kind::Polynomial;
  v.poly_ = std::move(p);
  return v;
}

Potential Potential::susy(RationalPoly phi) {
  Potential v;
  v.kind_ = Kind::Susy;
  v.poly_ = phi * phi + phi.derivative();
  v.phi_ = std::move(phi);
  return v;
}

const RationalPoly& Potential::susy_phi() const {
  if (kind_ != Kind::Susy) throw ValidationError("potential is not of Susy form");
  return phi_;
}

Potential Potential::derivative() const { return polynomial(poly_.derivative()); }

Potential Potential::reflected(const Rational& length) const {
  if (is_zero()) return zero();
  return polynomial(poly_.compose_affine(length, Rational(-1)));
}

Potential susy_to_potential(const RationalPoly& phi) {
  return Potential::polynomial(phi * phi + phi.derivative());
}

}  // namespace qgraph
