#include "qgraph/spectral.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "qgraph/errors.hpp"
#include "qgraph/gammafn.hpp"
#include "qgraph/oracles.hpp"
#include "qgraph/quadrature.hpp"
#include "qgraph/secular.hpp"

namespace qgraph {

namespace {

using Complex = std::complex<double>;

std::string poly_key(const RationalPoly& p) {
  std::string s;
  for (const auto& c : p.coeffs()) s += rational_to_string(c) + ",";
  return s;
}

std::string content_key(const MetricGraph& graph, const MatchingConditions& mc) {
  std::ostringstream os;
  os << graph.vertex_count() << ";";
  for (const auto& b : graph.bonds()) {
    os << b.origin << "," << b.terminus << "," << rational_to_string(b.length) << ",";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", b.magnetic);
    os << buf << ",[" << poly_key(b.potential.expanded()) << "];";
  }
  os << "A:";
  for (const auto& row : mc.a)
    for (const auto& e : row) os << to_string(e) << ",";
  os << "B:";
  for (const auto& row : mc.b)
    for (const auto& e : row) os << to_string(e) << ",";
  return os.str();
}

std::map<std::string, AsymptoticProfile>& profile_cache() {
  static std::map<std::string, AsymptoticProfile> cache;
  return cache;
}
std::shared_mutex& profile_mutex() {
  static std::shared_mutex m;
  return m;
}

// log u(L; t^2) for one bond, forward direction only (quadrature hot path).
double log_u_forward(const Potential& v, double length, double t, const SolverOptions& opt) {
  return solve_bond(v, length, SpectralPoint::from_t(t), opt).log_abs_u_end;
}

// Richardson-refined central difference of a (possibly complex) log value,
// branch-safe: the imaginary part is differenced modulo 2 pi.
Complex fd_log_derivative(const std::function<Complex(double)>& logf, double t) {
  const double h = std::max(1e-5, 1e-5 * t);
  auto diff = [&](double hh) -> Complex {
    const Complex l2 = logf(t + hh);
    const Complex l1 = logf(t - hh);
    const double dim = std::remainder(l2.imag() - l1.imag(), 2.0 * M_PI);
    return {(l2.real() - l1.real()) / (2.0 * hh), dim / (2.0 * hh)};
  };
  const Complex d1 = diff(h);
  const Complex d2 = diff(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

// integral_{sqrt(gamma)}^{T} (t^2 - gamma)^{-s} w(t) dt with the endpoint
// singularity absorbed by t = sqrt(gamma) cosh(eta^2).
QuadResult strip_quadrature(Complex s, double gamma, double T,
                            const std::function<Complex(double)>& w, double atol, double rtol) {
  const double rg = std::sqrt(gamma);
  const double theta_max = std::acosh(T / rg);
  const double eta_max = std::sqrt(theta_max);
  const double lg = std::log(gamma);
  auto f = [&](double eta) -> Complex {
    if (eta <= 0.0) return {0.0, 0.0};
    const double theta = eta * eta;
    const double sh = std::sinh(theta);
    const double ch = std::cosh(theta);
    if (sh <= 0.0) return {0.0, 0.0};
    const Complex weight = std::exp(-s * (lg + 2.0 * std::log(sh)));
    return weight * w(rg * ch) * (rg * sh) * (2.0 * eta);
  };
  return integrate_adaptive(f, 0.0, eta_max, atol, rtol, 300);
}

// integral_T^inf (t^2-gamma)^{-s} d/dt[series](t) dt, exact in the series
// coefficients; the binomial expansion in gamma/t^2 converges for T > sqrt(2 gamma).
Complex tail_from_series(const LaurentSeries& series, Complex s, double gamma, double T,
                         double* err_out) {
  Complex acc{0.0, 0.0};
  double last_mag = 0.0;
  const double logT = std::log(T);
  for (const auto& [e, c] : series.coef) {
    const int m = -e;
    if (m <= 0) throw NumericError("tail series must have negative exponents");
    Complex im{0.0, 0.0};
    Complex binom{1.0, 0.0};
    for (int p = 0; p < 80; ++p) {
      if (p > 0) binom *= (s + static_cast<double>(p - 1)) / static_cast<double>(p);
      const Complex expo = -(2.0 * s + static_cast<double>(m + 2 * p));
      const Complex term =
          binom * std::pow(gamma, p) * std::exp(expo * logT) / (-expo);
      im += term;
      if (std::abs(term) < 1e-18 * (std::abs(im) + 1e-30) && p > 2) break;
    }
    const Complex contrib = -static_cast<double>(m) * c.to_complex() * im;
    acc += contrib;
    last_mag = std::abs(contrib);
  }
  if (err_out) *err_out = last_mag;  // omitted orders are below the deepest kept term
  return acc;
}

double min_bond_length(const MetricGraph& graph) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : graph.bonds()) m = std::min(m, b.length_d());
  return m;
}

double auto_cutoff(double gamma, double min_len, double cutoff_opt) {
  if (cutoff_opt > 0.0) return std::max(cutoff_opt, 2.0 * std::sqrt(gamma) + 1.0);
  // exp(-2 T Lmin) below 1e-14 and comfortably past the gamma corner
  return std::max({2.0 * std::sqrt(gamma) + 2.0, 17.0 / min_len, 12.0});
}

}  // namespace

double dirichlet_determinant(const MetricGraph& graph, double gamma, const SolverOptions& opt) {
  if (gamma < 0.0) throw ValidationError("dirichlet_determinant requires gamma >= 0");
  double log_acc = 0.0;
  for (const auto& b : graph.bonds()) {
    const BondSolution sol = solve_bond(b.potential, b.length_d(),
                                        SpectralPoint::from_gamma(gamma), opt);
    if (sol.sign_u_end <= 0.0)
      throw NumericError("negative u(L; gamma) in a Dirichlet determinant factor");
    log_acc += std::log(2.0) + sol.log_abs_u_end;
  }
  return std::exp(log_acc);
}

double susy_dirichlet_determinant(const RationalPoly& phi, double length) {
  return 2.0 * oracle_susy_u(phi, length);
}

const AsymptoticProfile& spectral_profile(const MetricGraph& graph,
                                          const MatchingConditions& mc) {
  const std::string key = content_key(graph, mc);
  {
    std::shared_lock lock(profile_mutex());
    auto it = profile_cache().find(key);
    if (it != profile_cache().end()) return it->second;
  }
  AsymptoticProfile profile = leading_coefficient(graph, mc);
  profile.P = zero_order_p(graph, mc);
  std::unique_lock lock(profile_mutex());
  return profile_cache().emplace(key, std::move(profile)).first->second;
}

DeterminantResult spectral_determinant(const MetricGraph& graph, const MatchingConditions& mc,
                                       double gamma, const DetOptions& opt) {
  if (gamma < 0.0) throw ValidationError("spectral_determinant requires gamma >= 0");
  const AsymptoticProfile& profile = spectral_profile(graph, mc);

  if (gamma == 0.0 && profile.P > 0) {
    if (!opt.allow_limit)
      throw NumericError("gamma = 0 with P > 0: pass the limit flag for extrapolation");
    // Richardson/Neville extrapolation over an analytic-in-gamma sequence.
    const std::vector<double> gs = {1e-3, 5e-4, 2.5e-4, 1.25e-4};
    std::vector<double> val(gs.size());
    DetOptions inner = opt;
    inner.allow_limit = false;
    DeterminantResult last;
    for (size_t i = 0; i < gs.size(); ++i) {
      last = spectral_determinant(graph, mc, gs[i], inner);
      val[i] = last.value;
    }
    std::vector<double> neville = val;
    for (size_t m = 1; m < gs.size(); ++m)
      for (size_t i = 0; i + m < gs.size(); ++i)
        neville[i] = neville[i + 1] + (neville[i + 1] - neville[i]) * gs[i + m] /
                                          (gs[i] - gs[i + m]);
    DeterminantResult out = last;
    out.gamma = 0.0;
    out.value = neville[0];
    out.extrapolated = true;
    return out;
  }

  DeterminantResult out;
  out.gamma = gamma;
  out.profile = profile;

  double log_dir = 0.0;
  for (const auto& b : graph.bonds()) {
    const BondSolution sol = solve_bond(b.potential, b.length_d(),
                                        SpectralPoint::from_gamma(gamma), opt.solver);
    log_dir += std::log(2.0) + sol.log_abs_u_end;
  }
  out.dirichlet_factor = std::exp(log_dir);

  const Eigen::MatrixXcd m = build_m(graph, SpectralPoint::from_gamma(gamma), nullptr,
                                     opt.solver);
  out.secular_factor = (mc.a_complex() + mc.b_complex() * m).determinant();

  const Complex denom = profile.c_n_complex() * std::pow(gamma, profile.P);
  const Complex value = out.dirichlet_factor * out.secular_factor / denom;
  out.value = value.real();
  out.imag_residual = std::abs(value.imag());
  return out;
}

std::complex<double> zeta_dirichlet_wire(const Potential& v, double length,
                                         std::complex<double> s, double gamma,
                                         const ZetaOptions& opt) {
  if (!(gamma > 0.0)) throw ValidationError("zeta_dirichlet_wire requires gamma > 0");
  if (s.real() <= -0.5 || s.real() >= 1.0)
    throw ValidationError("zeta_dirichlet_wire: s outside the strip -1/2 < Re s < 1");

  const double T = auto_cutoff(gamma, length, opt.cutoff);
  const int order = opt.order > 0 ? opt.order : 16;
  const LaurentSeries series = wire_log_u_series(v, rational_from_double(length), order);

  auto logu = [&](double t) -> Complex {
    return {log_u_forward(v, length, t, opt.solver), 0.0};
  };
  auto wprime = [&](double t) -> Complex {
    return fd_log_derivative(logu, t) - length + 1.0 / t;
  };
  const QuadResult quad =
      strip_quadrature(s, gamma, T, wprime, opt.quad_abs_tol, opt.quad_rel_tol);

  double tail_err = 0.0;
  const Complex tail = tail_from_series(series, s, gamma, T, &tail_err);

  const Complex sin_factor = std::sin(M_PI * s) / M_PI;
  const Complex closed = static_cast<double>(length) * gamma_ratio_half(s) /
                             (2.0 * std::sqrt(M_PI)) * std::pow(gamma, 0.5 - s) -
                         0.5 * std::pow(gamma, -s);
  return sin_factor * (quad.value + tail) + closed;
}

double zeta_dirichlet_wire_prime0(const Potential& v, double length, double gamma,
                                  const SolverOptions& opt) {
  if (gamma < 0.0) throw ValidationError("gamma must be >= 0");
  const BondSolution sol =
      solve_bond(v, length, SpectralPoint::from_gamma(gamma), opt);
  return -(std::log(2.0) + sol.log_abs_u_end);
}

ZetaResult zeta(const MetricGraph& graph, const MatchingConditions& mc, std::complex<double> s,
                double gamma, const ZetaOptions& opt) {
  if (!(gamma > 0.0)) throw ValidationError("zeta requires gamma > 0");
  if (s.real() <= -0.5 || s.real() >= 1.0)
    throw ValidationError("zeta: s outside the strip -1/2 < Re s < 1");

  const AsymptoticProfile& profile = spectral_profile(graph, mc);
  const int n = graph.end_count();
  const double T = auto_cutoff(gamma, min_bond_length(graph), opt.cutoff);

  ZetaResult out;
  out.s = s;
  out.gamma = gamma;

  // Imaginary-axis part with the gamma^P-adjusted secular function: the
  // integrand is unchanged, only the subtracted-power constant shifts.
  auto logf = [&](double t) -> Complex { return secular_log_f_it(graph, mc, t, opt.solver); };
  auto gprime = [&](double t) -> Complex {
    return fd_log_derivative(logf, t) + static_cast<double>(profile.N - n) / t;
  };
  const QuadResult quad =
      strip_quadrature(s, gamma, T, gprime, opt.quad_abs_tol, opt.quad_rel_tol);

  const LaurentSeries ratio_series = secular_log_ratio_series(profile);
  double tail_err = 0.0;
  const Complex tail = ratio_series.is_zero()
                           ? Complex{0.0, 0.0}
                           : tail_from_series(ratio_series, s, gamma, T, &tail_err);

  const Complex sin_factor = std::sin(M_PI * s) / M_PI;
  out.zeta_im = sin_factor * (quad.value + tail) +
                0.5 * static_cast<double>(n - profile.N - 2 * profile.P) *
                    std::pow(gamma, -s);

  double pole_err = 0.0;
  for (const auto& b : graph.bonds()) {
    ZetaOptions wopt = opt;
    wopt.cutoff = T;
    out.zeta_pole += zeta_dirichlet_wire(b.potential, b.length_d(), s, gamma, wopt);
    pole_err += 10.0 * opt.quad_abs_tol;
  }

  out.value = out.zeta_im + out.zeta_pole;
  out.error_estimate = quad.error + tail_err + pole_err +
                       1e-9 * std::abs(sin_factor) * (1.0 + std::log(T / std::sqrt(gamma)));
  return out;
}

double zeta_prime_zero(const MetricGraph& graph, const MatchingConditions& mc, double gamma,
                       const SolverOptions& opt) {
  if (!(gamma > 0.0)) throw ValidationError("zeta_prime_zero requires gamma > 0");
  const AsymptoticProfile& profile = spectral_profile(graph, mc);

  double zp_dir = 0.0;
  for (const auto& b : graph.bonds())
    zp_dir += zeta_dirichlet_wire_prime0(b.potential, b.length_d(), gamma, opt);

  const Eigen::MatrixXcd m = build_m(graph, SpectralPoint::from_gamma(gamma), nullptr, opt);
  const Complex det = (mc.a_complex() + mc.b_complex() * m).determinant();
  const double zp_im = std::log(std::abs(profile.c_n_complex())) +
                       profile.P * std::log(gamma) - std::log(std::abs(det));
  return zp_dir + zp_im;
}

}  // namespace qgraph
