#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace qgraph {

using Rational = mpq_class;

// Accepts "p/q", integers, decimal literals and scientific notation
// ("0.125", "-3", "1/3", "1.5e-3").  Decimal strings convert exactly.
Rational rational_from_string(const std::string& text);

// Exact conversion; every finite double is a rational p / 2^k.
Rational rational_from_double(double x);

// Canonicalized p/q (the two-argument mpq constructor does not reduce).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Canonical "p/q", or just "p" when q == 1.
std::string rational_to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact complex rational, used for matching-condition entries and the
// Laurent coefficients of the secular expansion.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational from_complex(const std::complex<double>& z) {
    return {rational_from_double(z.real()), rational_from_double(z.imag())};
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const GaussianRational& z);

}  // namespace qgraph
