#include "qgraph/laurent.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qgraph/errors.hpp"

namespace qgraph {

LaurentSeries LaurentSeries::zero(int known_from) {
  LaurentSeries s;
  s.known_from = known_from;
  return s;
}

LaurentSeries LaurentSeries::constant(GaussianRational c) {
  return monomial(std::move(c), 0);
}

LaurentSeries LaurentSeries::monomial(GaussianRational c, int exponent) {
  LaurentSeries s;
  if (!c.is_zero()) s.coef.emplace(exponent, std::move(c));
  return s;
}

int LaurentSeries::max_exponent() const {
  return coef.empty() ? INT_MIN_SENTINEL : coef.rbegin()->first;
}

GaussianRational LaurentSeries::at(int exponent) const {
  auto it = coef.find(exponent);
  return it == coef.end() ? GaussianRational() : it->second;
}

void LaurentSeries::set(int exponent, GaussianRational c) {
  if (c.is_zero())
    coef.erase(exponent);
  else
    coef[exponent] = std::move(c);
}

void LaurentSeries::drop_unknown() {
  for (auto it = coef.begin(); it != coef.end();) {
    if (it->first < known_from || it->second.is_zero())
      it = coef.erase(it);
    else
      ++it;
  }
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  known_from = std::max(known_from, o.known_from);
  for (const auto& [e, c] : o.coef) {
    auto it = coef.find(e);
    if (it == coef.end())
      coef.emplace(e, c);
    else {
      it->second += c;
      if (it->second.is_zero()) coef.erase(it);
    }
  }
  drop_unknown();
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
  known_from = std::max(known_from, o.known_from);
  for (const auto& [e, c] : o.coef) {
    auto it = coef.find(e);
    if (it == coef.end())
      coef.emplace(e, GaussianRational() - c);
    else {
      it->second -= c;
      if (it->second.is_zero()) coef.erase(it);
    }
  }
  drop_unknown();
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries p;
  // Unknown tail of one factor couples to the known top of the other, and
  // the two unknown tails couple to each other.
  constexpr int kExact = LaurentSeries::INT_MIN_SENTINEL;
  int horizon = kExact;
  auto bump = [&horizon](int h) { horizon = std::max(horizon, h); };
  if (a.known_from != kExact && !b.is_zero()) bump(a.known_from + b.max_exponent());
  if (b.known_from != kExact && !a.is_zero()) bump(b.known_from + a.max_exponent());
  if (a.known_from != kExact && b.known_from != kExact)
    bump(a.known_from + b.known_from - 1);
  p.known_from = horizon;
  for (const auto& [ea, ca] : a.coef) {
    for (const auto& [eb, cb] : b.coef) {
      const int e = ea + eb;
      if (e < p.known_from) continue;
      auto it = p.coef.find(e);
      if (it == p.coef.end())
        p.coef.emplace(e, ca * cb);
      else
        it->second += ca * cb;
    }
  }
  p.drop_unknown();
  return p;
}

LaurentSeries LaurentSeries::scaled(const GaussianRational& s) const {
  LaurentSeries out;
  out.known_from = known_from;
  if (s.is_zero()) return out;
  for (const auto& [e, c] : coef) out.coef.emplace(e, c * s);
  out.drop_unknown();
  return out;
}

LaurentSeries log1p_series(const LaurentSeries& x) {
  if (!x.is_zero() && x.max_exponent() >= 0)
    throw NumericError("log1p_series requires strictly negative exponents");
  LaurentSeries acc = LaurentSeries::zero(x.known_from);
  LaurentSeries power = LaurentSeries::constant(GaussianRational(Rational(1)));
  power.known_from = x.known_from;
  const int top = x.is_zero() ? -1 : x.max_exponent();
  const int max_k = x.known_from == LaurentSeries::INT_MIN_SENTINEL
                        ? 64
                        : std::max(1, x.known_from / top);
  Rational sign(1);
  for (int k = 1; k <= max_k; ++k) {
    power = power * x;
    if (power.is_zero()) break;
    acc += power.scaled(GaussianRational(sign / Rational(k)));
    sign = -sign;
  }
  return acc;
}

LaurentSeries laurent_det(const std::vector<std::vector<LaurentSeries>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return LaurentSeries::constant(GaussianRational(Rational(1)));
  if (n > 24) throw NumericError("laurent_det limited to 24x24 matrices");

  // f[mask] = det of the minor with rows 0..popcount-1 and columns in mask.
  std::vector<LaurentSeries> f(size_t(1) << n);
  f[0] = LaurentSeries::constant(GaussianRational(Rational(1)));
  std::vector<uint32_t> by_count;
  by_count.reserve(f.size());
  for (uint32_t mask = 1; mask < f.size(); ++mask) by_count.push_back(mask);
  std::sort(by_count.begin(), by_count.end(), [](uint32_t a, uint32_t b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  for (uint32_t mask : by_count) {
    const int row = __builtin_popcount(mask) - 1;
    LaurentSeries acc;
    bool first = true;
    int parity = 0;
    for (int col = 0; col < n; ++col) {
      if (!(mask & (1u << col))) continue;
      const LaurentSeries& entry = m[row][col];
      if (!entry.is_zero() || entry.known_from != LaurentSeries::INT_MIN_SENTINEL) {
        LaurentSeries term = entry * f[mask & ~(1u << col)];
        if ((parity + row) % 2 == 1) term = term.scaled(GaussianRational(Rational(-1)));
        if (first) {
          acc = std::move(term);
          first = false;
        } else {
          acc += term;
        }
      }
      ++parity;
    }
    f[mask] = std::move(acc);
  }
  return f[(size_t(1) << n) - 1];
}

}  // namespace qgraph
