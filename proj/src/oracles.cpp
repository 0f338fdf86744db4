#include "qgraph/oracles.hpp"

#include <cmath>
#include <limits>

#include "qgraph/airy.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/quadrature.hpp"

namespace qgraph {

BondSolution oracle_free(double length, const SpectralPoint& mu) {
  BondSolution out;
  const std::complex<double> m = mu.mu;
  const double L = length;

  if (std::abs(m) * L * L < 1e-8) {
    // series around mu = 0: u(L) = L - mu L^3/6 + mu^2 L^5/120, v = 1 - mu L^2/2 + ...
    const std::complex<double> u = L * (1.0 - m * L * L / 6.0 + m * m * L * L * L * L / 120.0);
    const std::complex<double> v = 1.0 - m * L * L / 2.0 + m * m * L * L * L * L / 24.0;
    const std::complex<double> up = 1.0 - m * L * L / 2.0 + m * m * L * L * L * L / 24.0;
    const std::complex<double> vp = -m * L * (1.0 - m * L * L / 6.0);
    out.u_end = u;
    out.v_end_fwd = out.v_end_rev = v;
    out.uprime_end = up;
    out.vprime_end = vp;
  } else {
    const std::complex<double> k = std::sqrt(m);  // branch-free: formulas even/odd in k
    if (m.imag() == 0.0 && m.real() < 0.0) {
      // hyperbolic regime in overflow-safe form
      const double g = std::sqrt(-m.real());
      const double e = std::exp(-2.0 * g * L);
      out.log_abs_u_end = g * L + std::log1p(-e) - std::log(2.0 * g);
      out.sign_u_end = 1.0;
      const double uval = out.log_abs_u_end < 700.0 ? std::exp(out.log_abs_u_end)
                                                    : std::numeric_limits<double>::infinity();
      out.log_form = !std::isfinite(uval);
      out.u_end = uval;
      const double logv = g * L + std::log1p(e) - std::log(2.0);
      out.v_end_fwd = out.v_end_rev =
          logv < 700.0 ? std::exp(logv) : std::numeric_limits<double>::infinity();
      out.uprime_end = out.v_end_fwd;  // u' = cosh, v' = g^2 u
      out.vprime_end = g * g * (std::isfinite(uval) ? uval : 0.0);
      out.fprime_origin_fwd = out.fprime_origin_rev = -g / std::tanh(g * L);
      out.fprime_end = -std::exp(-out.log_abs_u_end);
      out.wronskian_residual = 0.0;
      return out;
    }
    out.u_end = std::sin(k * L) / k;
    out.v_end_fwd = out.v_end_rev = std::cos(k * L);
    out.uprime_end = std::cos(k * L);
    out.vprime_end = -k * std::sin(k * L);
  }

  const double uscale = std::max(L, 1.0 / (std::abs(std::sqrt(m)) + 1.0));
  out.dirichlet_flag = std::abs(out.u_end) < 1e-10 * uscale;
  out.log_abs_u_end = std::log(std::abs(out.u_end));
  out.sign_u_end = out.u_end.real() >= 0.0 ? 1.0 : -1.0;
  out.fprime_origin_fwd = -out.v_end_fwd / out.u_end;
  out.fprime_origin_rev = -out.v_end_rev / out.u_end;
  out.fprime_end = -1.0 / out.u_end;
  return out;
}

BondSolution oracle_airy(double omega, double length, const SpectralPoint& mu) {
  if (omega == 0.0) throw ValidationError("oracle_airy requires omega != 0");
  if (!mu.is_real()) throw ValidationError("oracle_airy requires a real spectral point");
  const double m = mu.mu.real();
  const double w13 = std::cbrt(omega);
  const double a = -m / (w13 * w13);           // z(0)
  const double b = w13 * length + a;           // z(L)

  const double ai_a = airy_ai(a), bi_a = airy_bi(a);
  const double ai_b = airy_ai(b), bi_b = airy_bi(b);
  const double aip_a = airy_ai_prime(a), bip_a = airy_bi_prime(a);
  const double aip_b = airy_ai_prime(b), bip_b = airy_bi_prime(b);

  BondSolution out;
  out.u_end = M_PI / w13 * (ai_a * bi_b - bi_a * ai_b);
  out.uprime_end = M_PI * (ai_a * bip_b - bi_a * aip_b);
  out.v_end_fwd = M_PI * (bip_a * ai_b - aip_a * bi_b);
  out.vprime_end = M_PI * w13 * (bip_a * aip_b - aip_a * bip_b);
  out.v_end_rev = M_PI * (bip_b * ai_a - aip_b * bi_a);

  const std::complex<double> w =
      out.v_end_fwd * out.uprime_end - out.vprime_end * out.u_end;
  out.wronskian_residual = std::abs(w - 1.0);

  out.dirichlet_flag = std::abs(out.u_end) < 1e-10 * length;
  out.log_abs_u_end = std::log(std::abs(out.u_end));
  out.sign_u_end = out.u_end.real() >= 0.0 ? 1.0 : -1.0;
  out.fprime_origin_fwd = -out.v_end_fwd / out.u_end;
  out.fprime_origin_rev = -out.v_end_rev / out.u_end;
  out.fprime_end = -1.0 / out.u_end;
  return out;
}

double oracle_susy_u(const RationalPoly& phi, double length) {
  const RationalPoly capital_phi = phi.antiderivative();
  auto integrand = [&](double y) { return std::exp(-2.0 * capital_phi(y)); };
  QuadResult q = integrate_adaptive_real(integrand, 0.0, length, 1e-14, 1e-11);
  if (q.error > 1e-9 * std::abs(q.value))
    throw NumericError("oracle_susy_u quadrature failed to converge");
  return std::exp(capital_phi(length)) * q.value.real();
}

}  // namespace qgraph
