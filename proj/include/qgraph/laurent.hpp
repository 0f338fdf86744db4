#pragma once

#include <map>
#include <vector>

#include "qgraph/rational.hpp"

namespace qgraph {

// Truncated Laurent polynomial in t over the Gaussian rationals.  Terms with
// exponent >= known_from are exact; everything below is unknown (dropped).
// Arithmetic propagates the truncation horizon so a product of series is
// never trusted past its valid order.
struct LaurentSeries {
  std::map<int, GaussianRational> coef;  // exponent -> coefficient
  int known_from = INT_MIN_SENTINEL;     // horizon; INT_MIN_SENTINEL = exact

  static constexpr int INT_MIN_SENTINEL = -(1 << 28);

  static LaurentSeries zero(int known_from = INT_MIN_SENTINEL);
  static LaurentSeries constant(GaussianRational c);
  static LaurentSeries monomial(GaussianRational c, int exponent);

  bool is_zero() const { return coef.empty(); }
  int max_exponent() const;  // degree; INT_MIN_SENTINEL when zero
  GaussianRational at(int exponent) const;

  void set(int exponent, GaussianRational c);
  void drop_unknown();  // remove terms below the horizon

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries scaled(const GaussianRational& s) const;
};

// log(1 + x) of a series whose terms all have negative exponents, expanded
// to the series' own truncation horizon.
LaurentSeries log1p_series(const LaurentSeries& x);

// Exact determinant of an n x n matrix of truncated Laurent series via
// dynamic programming over column subsets (no divisions).
LaurentSeries laurent_det(const std::vector<std::vector<LaurentSeries>>& m);

}  // namespace qgraph
