#pragma once

#include <vector>

#include "qgraph/rational.hpp"

namespace qgraph {

// Dense univariate polynomial over the rationals, coefficients ascending,
// canonical form (no trailing zeros).
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RationalPoly constant(Rational v) { return RationalPoly({std::move(v)}); }
  static RationalPoly variable() { return RationalPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
  }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  RationalPoly derivative() const;
  RationalPoly antiderivative() const;  // vanishes at 0
  // p(a + b*x); reflect across an interval of length L is compose_affine(L, -1).
  RationalPoly compose_affine(const Rational& a, const Rational& b) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  RationalPoly scaled(const Rational& s) const;
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace qgraph
