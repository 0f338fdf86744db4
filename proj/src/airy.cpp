#include "qgraph/airy.hpp"

#include <cmath>
#include <stdexcept>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

// Ai(0), -Ai'(0); Bi(0) = sqrt(3) c1, Bi'(0) = sqrt(3) c2.
constexpr long double kC1 = 0.35502805388781723926L;
constexpr long double kC2 = 0.25881940379280679841L;
constexpr long double kSqrt3 = 1.73205080756887729353L;

struct AiryPair {
  long double value;
  long double deriv;
};

struct AirySet {
  long double ai, bi, aip, bip;
};

// Maclaurin sums of the two standard series f, g and their derivatives.
AirySet airy_maclaurin(double zd) {
  const long double z = zd;
  const long double z3 = z * z * z;

  long double f = 1.0L, g = z, fp = 0.0L, gp = 1.0L;
  long double tf = 1.0L, tg = z, tfp = 0.5L * z * z, tgp = 0.0L;
  fp = 0.0L;
  for (int k = 1; k < 200; ++k) {
    tf *= z3 / ((3.0L * k) * (3.0L * k - 1.0L));
    tg *= z3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (k == 1) {
      // f' starts at z^2/2, g' = 1 + z^3/3 + ...
      fp = tfp;
      tgp = z3 / 3.0L;
      gp += tgp;
    } else {
      tfp *= z3 / (3.0L * (k - 1.0L) * (3.0L * k - 1.0L));
      tgp *= z3 / ((3.0L * k) * (3.0L * k - 2.0L));
      fp += tfp;
      gp += tgp;
    }
    const long double mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
    const long double acc = std::fabs(f) + std::fabs(g) + 1.0L;
    if (mag < 1e-25L * acc && k > 4) break;
  }
  AirySet out;
  out.ai = kC1 * f - kC2 * g;
  out.aip = kC1 * fp - kC2 * gp;
  out.bi = kSqrt3 * (kC1 * f + kC2 * g);
  out.bip = kSqrt3 * (kC1 * fp + kC2 * gp);
  return out;
}

// Asymptotic expansions for z >> 1; optimal truncation.
AiryPair airy_ai_asymptotic(double zd) {
  const long double z = zd;
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  long double u = 1.0L, su = 1.0L, sv = 1.0L;
  long double prev = 1.0L;
  long double sign = -1.0L;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
         ((2.0L * k - 1.0L) * 216.0L * k);
    const long double term = u / std::pow(zeta, (long double)k);
    if (std::fabs(term) > prev) break;  // divergence onset
    prev = std::fabs(term);
    su += sign * term;
    sv += sign * term * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
    sign = -sign;
    if (std::fabs(term) < 1e-20L) break;
  }
  const long double pref = std::exp(-zeta) / (2.0L * std::sqrt((long double)M_PI));
  const long double q = std::pow(z, 0.25L);
  return {pref / q * su, -pref * q * sv};
}

AiryPair airy_bi_asymptotic(double zd) {
  const long double z = zd;
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  long double u = 1.0L, su = 1.0L, sv = 1.0L;
  long double prev = 1.0L;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
         ((2.0L * k - 1.0L) * 216.0L * k);
    const long double term = u / std::pow(zeta, (long double)k);
    if (std::fabs(term) > prev) break;
    prev = std::fabs(term);
    su += term;
    sv += term * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
    if (std::fabs(term) < 1e-20L) break;
  }
  const long double pref = std::exp(zeta) / std::sqrt((long double)M_PI);
  const long double q = std::pow(z, 0.25L);
  return {pref / q * su, pref * q * sv};
}

// Taylor-step continuation of y'' = z y from z0 down to z; Ai grows in that
// direction, so the recurrence is stable.
AiryPair continue_down(AiryPair y, double z0, double z) {
  constexpr int kTerms = 28;
  while (z0 > z + 1e-14) {
    const double h = std::max(z - z0, -0.5);
    long double a[kTerms + 2];
    a[0] = y.value;
    a[1] = y.deriv;
    for (int n = 0; n + 2 <= kTerms + 1; ++n) {
      const long double am1 = n >= 1 ? a[n - 1] : 0.0L;
      a[n + 2] = ((long double)z0 * a[n] + am1) / ((n + 2.0L) * (n + 1.0L));
    }
    long double val = 0.0L;
    for (int n = kTerms + 1; n >= 1; --n) val = (val + a[n]) * h;
    val += a[0];
    long double der = 0.0L;
    for (int n = kTerms + 1; n >= 2; --n) der = (der + a[n] * n) * h;
    der += a[1];
    y.value = val;
    y.deriv = der;
    z0 += h;
  }
  return y;
}

}  // namespace

double airy_ai(double z) {
  if (z < -8.0) throw NumericError("airy_ai: argument below supported range");
  if (z <= 5.0) return static_cast<double>(airy_maclaurin(z).ai);
  if (z >= 9.0) return static_cast<double>(airy_ai_asymptotic(z).value);
  const AiryPair seed = airy_ai_asymptotic(12.0);
  return static_cast<double>(continue_down(seed, 12.0, z).value);
}

double airy_ai_prime(double z) {
  if (z < -8.0) throw NumericError("airy_ai_prime: argument below supported range");
  if (z <= 5.0) return static_cast<double>(airy_maclaurin(z).aip);
  if (z >= 9.0) return static_cast<double>(airy_ai_asymptotic(z).deriv);
  const AiryPair seed = airy_ai_asymptotic(12.0);
  return static_cast<double>(continue_down(seed, 12.0, z).deriv);
}

double airy_bi(double z) {
  if (z < -8.0) throw NumericError("airy_bi: argument below supported range");
  if (z <= 9.0) return static_cast<double>(airy_maclaurin(z).bi);
  return static_cast<double>(airy_bi_asymptotic(z).value);
}

double airy_bi_prime(double z) {
  if (z < -8.0) throw NumericError("airy_bi_prime: argument below supported range");
  if (z <= 9.0) return static_cast<double>(airy_maclaurin(z).bip);
  return static_cast<double>(airy_bi_asymptotic(z).deriv);
}

double airy_ai_log_deriv(double z) {
  if (z < 9.0) return airy_ai_prime(z) / airy_ai(z);
  const long double zl = z;
  const long double zeta = 2.0L / 3.0L * zl * std::sqrt(zl);
  long double u = 1.0L, su = 1.0L, sv = 1.0L;
  long double prev = 1.0L, sign = -1.0L;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
         ((2.0L * k - 1.0L) * 216.0L * k);
    const long double term = u / std::pow(zeta, (long double)k);
    if (std::fabs(term) > prev) break;
    prev = std::fabs(term);
    su += sign * term;
    sv += sign * term * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
    sign = -sign;
    if (std::fabs(term) < 1e-20L) break;
  }
  return static_cast<double>(-std::sqrt(zl) * sv / su);
}

}  // namespace qgraph
