#include "qgraph/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

// "-12.345e-6" -> exact rational.  GMP handles "p/q" and plain integers.
Rational parse_decimal(const std::string& text) {
  std::string s = text;
  int exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::atoi(s.c_str() + epos + 1);
    s = s.substr(0, epos);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) throw ParseError("bad numeric literal: " + text);
      seen_dot = true;
    } else {
      digits += c;
      if (seen_dot) ++frac_digits;
    }
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw ParseError("bad numeric literal: " + text);
  mpz_class num;
  if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
    throw ParseError("bad numeric literal: " + text);
  Rational r(num);
  int shift = exp10 - frac_digits;
  if (shift > 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, shift);
    r *= Rational(p);
  } else if (shift < 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, -shift);
    r /= Rational(p);
  }
  r.canonicalize();
  return r;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty numeric literal");
  if (text.find('/') != std::string::npos) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
      throw ParseError("bad rational literal: " + text);
    if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos) {
    return parse_decimal(text);
  }
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw ParseError("bad integer literal: " + text);
  r.canonicalize();
  return r;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw NumericError("non-finite value cannot become a rational");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw NumericError("division by zero Gaussian rational");
  Rational n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return rational_to_string(z.re);
  return rational_to_string(z.re) + (z.im > 0 ? "+" : "") + rational_to_string(z.im) + "i";
}

}  // namespace qgraph
