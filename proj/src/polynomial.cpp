#include "qgraph/polynomial.hpp"

namespace qgraph {

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<Rational> a(c_.size() + 1);
  a[0] = 0;
  for (size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / Rational(static_cast<long>(k + 1));
  return RationalPoly(std::move(a));
}

RationalPoly RationalPoly::compose_affine(const Rational& a, const Rational& b) const {
  // Horner in the affine argument a + b*x.
  RationalPoly lin({a, b});
  RationalPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * lin;
    acc += RationalPoly::constant(*it);
  }
  return acc;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> p(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
  return RationalPoly(std::move(p));
}

RationalPoly RationalPoly::scaled(const Rational& s) const {
  if (s == 0) return {};
  std::vector<Rational> p(c_);
  for (auto& v : p) v *= s;
  return RationalPoly(std::move(p));
}

}  // namespace qgraph
