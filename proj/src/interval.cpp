#include "qgraph/interval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qgraph/errors.hpp"
#include "qgraph/ode.hpp"

namespace qgraph {

namespace {

constexpr int kCheckpoints = 5;

struct DirectResult {
  std::complex<double> u, up, v, vp;  // values at L
  double wronskian_residual;
  double u_scale;  // max |u| along the interval, for the Dirichlet flag
};

// Direct integration of (u, u', v, v') with checkpointed Wronskian.
template <typename Scalar>
DirectResult integrate_direct(const RationalPoly& vpoly, double length,
                              std::complex<double> mu_c, const SolverOptions& opt) {
  using State = std::array<Scalar, 4>;
  Scalar mu;
  if constexpr (std::is_same_v<Scalar, double>)
    mu = mu_c.real();
  else
    mu = mu_c;

  auto rhs = [&](double x, const State& y) -> State {
    const Scalar q = Scalar(vpoly(x)) - mu;
    return {y[1], q * y[0], y[3], q * y[2]};
  };

  State y{Scalar(0), Scalar(1), Scalar(1), Scalar(0)};
  OdeOptions oopt;
  oopt.atol = opt.atol;
  oopt.rtol = opt.rtol;

  double wres = 0.0;
  double uscale = 0.0;
  for (int leg = 0; leg < kCheckpoints; ++leg) {
    const double xa = length * leg / kCheckpoints;
    const double xb = length * (leg + 1) / kCheckpoints;
    integrate_dopri5(rhs, xa, xb, y, oopt);
    // v u' - v' u == 1, judged relative to the size of the products (the
    // difference cancels catastrophically once solutions grow like e^{tL}).
    const Scalar w = y[2] * y[1] - y[3] * y[0];
    const double wscale = std::max(1.0, std::abs(std::complex<double>(y[2] * y[1])) +
                                            std::abs(std::complex<double>(y[3] * y[0])));
    wres = std::max(wres, std::abs(std::complex<double>(w) - 1.0) / wscale);
    uscale = std::max(uscale, std::abs(std::complex<double>(y[0])));
  }
  return {std::complex<double>(y[0]), std::complex<double>(y[1]), std::complex<double>(y[2]),
          std::complex<double>(y[3]), wres, uscale};
}

struct RiccatiResult {
  double log_u;   // log u(L)
  double log_v;   // log v(L)
  double s_u;     // u'(L)/u(L)
  double s_v;     // v'(L)/v(L)
  double wronskian_residual;
};

// Log-derivative form for mu = -t^2 with t*L large: integrate S = y'/y and
// w = log y past a short direct leg.  All solutions are positive and grow
// like e^{t x}; the growing Riccati branch is forward-attracting.
RiccatiResult integrate_riccati(const RationalPoly& vpoly, double length, double t,
                                const SolverOptions& opt) {
  const double x0 = std::min(5.0 / t, 0.5 * length);
  const double mu = -t * t;

  using State4 = std::array<double, 4>;
  auto rhs_direct = [&](double x, const State4& y) -> State4 {
    const double q = vpoly(x) - mu;
    return {y[1], q * y[0], y[3], q * y[2]};
  };
  State4 y{0.0, 1.0, 1.0, 0.0};
  OdeOptions oopt;
  oopt.atol = opt.atol;
  oopt.rtol = opt.rtol;
  integrate_dopri5(rhs_direct, 0.0, x0, y, oopt);
  const double w0 = y[2] * y[1] - y[3] * y[0];
  const double wres = std::abs(w0 - 1.0);

  if (y[0] <= 0.0 || y[2] <= 0.0)
    throw NumericError("Riccati switch requires positive solutions; potential too negative");

  using State = std::array<double, 4>;  // (S_u, w_u, S_v, w_v)
  auto rhs = [&](double x, const State& s) -> State {
    const double q = t * t + vpoly(x);
    return {q - s[0] * s[0], s[0], q - s[2] * s[2], s[2]};
  };
  State s{y[1] / y[0], std::log(y[0]), y[3] / y[2], std::log(y[2])};
  integrate_dopri5(rhs, x0, length, s, oopt);
  return {s[1], s[3], s[0], s[2], wres};
}

// f'(0; t^2) for the decaying branch via a backward sweep: a short direct
// leg from the Dirichlet end seeds the Riccati equation, which contracts
// onto the decaying branch going backward, so the answer is insensitive to
// accumulated error.  Tight tolerances keep the final local error small.
double riccati_fprime0(const RationalPoly& vpoly, double length, double t) {
  const double x1 = std::max(0.0, length - std::min(5.0 / t, 0.5 * length));

  using State2 = std::array<double, 2>;
  auto rhs_direct = [&](double x, const State2& y) -> State2 {
    const double q = vpoly(x) + t * t;
    return {y[1], q * y[0]};
  };
  State2 f{0.0, -1.0};  // any scale; only the ratio survives
  OdeOptions tight;
  tight.atol = 1e-14;
  tight.rtol = 5e-13;
  integrate_dopri5(rhs_direct, length, x1, f, tight);
  if (f[0] == 0.0) throw NumericError("degenerate backward seed in Riccati f'(0)");

  using State1 = std::array<double, 1>;
  auto rhs = [&](double x, const State1& s) -> State1 {
    return {t * t + vpoly(x) - s[0] * s[0]};
  };
  State1 s{f[1] / f[0]};
  integrate_dopri5(rhs, x1, 0.0, s, tight);
  return s[0];
}

}  // namespace

BondSolution solve_bond(const Potential& v, double length, const SpectralPoint& mu,
                        const SolverOptions& opt) {
  if (!(length > 0.0)) throw ValidationError("bond length must be positive");

  const Rational len_exact = rational_from_double(length);
  const Potential v_rev = v.reflected(len_exact);
  const RationalPoly& pf = v.expanded();
  const RationalPoly& pr = v_rev.expanded();

  BondSolution out;

  const bool real_mu = mu.is_real();
  double vmin = 0.0;
  if (real_mu && mu.mu.real() < 0.0) {
    for (int i = 0; i <= 32; ++i) vmin = std::min(vmin, pf(length * i / 32.0));
  }
  const double t = real_mu && mu.mu.real() < 0.0 ? std::sqrt(-mu.mu.real()) : 0.0;
  const bool riccati = real_mu && t * length > opt.riccati_threshold && t * t + vmin > 0.25 * t * t;

  if (riccati) {
    const RiccatiResult fwd = integrate_riccati(pf, length, t, opt);
    const RiccatiResult rev = integrate_riccati(pr, length, t, opt);

    out.log_abs_u_end = fwd.log_u;
    out.sign_u_end = 1.0;
    out.direction_residual =
        std::abs(fwd.log_u - rev.log_u) / std::max(1.0, std::abs(fwd.log_u));
    out.wronskian_residual = std::max(fwd.wronskian_residual, rev.wronskian_residual);

    const double umag = fwd.log_u < 700.0 ? std::exp(fwd.log_u)
                                          : std::numeric_limits<double>::infinity();
    out.log_form = !std::isfinite(umag);
    out.u_end = umag;
    out.v_end_fwd = fwd.log_v < 700.0 ? std::exp(fwd.log_v)
                                      : std::numeric_limits<double>::infinity();
    out.v_end_rev = rev.log_v < 700.0 ? std::exp(rev.log_v)
                                      : std::numeric_limits<double>::infinity();
    out.uprime_end = fwd.s_u * out.u_end;
    out.vprime_end = fwd.s_v * out.v_end_fwd;

    out.fprime_origin_fwd = riccati_fprime0(pf, length, t);
    out.fprime_origin_rev = riccati_fprime0(pr, length, t);
    out.fprime_end = -std::exp(-fwd.log_u);  // underflow to 0 is genuine
    return out;
  }

  DirectResult fwd, rev;
  if (real_mu) {
    fwd = integrate_direct<double>(pf, length, mu.mu, opt);
    rev = integrate_direct<double>(pr, length, mu.mu, opt);
  } else {
    fwd = integrate_direct<std::complex<double>>(pf, length, mu.mu, opt);
    rev = integrate_direct<std::complex<double>>(pr, length, mu.mu, opt);
  }

  out.u_end = fwd.u;
  out.v_end_fwd = fwd.v;
  out.v_end_rev = rev.v;
  out.uprime_end = fwd.up;
  out.vprime_end = fwd.vp;
  out.wronskian_residual = std::max(fwd.wronskian_residual, rev.wronskian_residual);
  const double uscale = std::max({fwd.u_scale, rev.u_scale, 1e-300});
  out.direction_residual = std::abs(fwd.u - rev.u) / uscale;
  out.dirichlet_flag = std::abs(fwd.u) < opt.dirichlet_tol * uscale;

  const double au = std::abs(fwd.u);
  out.log_abs_u_end = au > 0.0 ? std::log(au) : -std::numeric_limits<double>::infinity();
  out.sign_u_end = fwd.u.real() >= 0.0 ? 1.0 : -1.0;

  out.fprime_origin_fwd = -fwd.v / fwd.u;
  out.fprime_origin_rev = -rev.v / fwd.u;
  out.fprime_end = -1.0 / fwd.u;
  return out;
}

}  // namespace qgraph
