#include <doctest.h>

#include <cmath>
#include <random>

#include "qgraph/airy.hpp"
#include "qgraph/oracles.hpp"

using namespace qgraph;

namespace {

Potential linear_potential(double slope = 1.0) {
  return Potential::polynomial(RationalPoly({Rational(0), rational_from_double(slope)}));
}

RationalPoly poly(std::initializer_list<const char*> coeffs) {
  std::vector<Rational> c;
  for (const char* s : coeffs) c.push_back(rational_from_string(s));
  return RationalPoly(std::move(c));
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("airy evaluator reproduces published 10-digit values") {
  CHECK(rel(airy_ai(0.0), 0.3550280539) < 1e-9);
  CHECK(rel(airy_bi(0.0), 0.6149266274) < 1e-9);
  CHECK(rel(airy_ai(1.0), 0.1352924163) < 1e-9);
  CHECK(rel(airy_bi(1.0), 1.2074235949) < 1e-9);
  CHECK(rel(airy_ai_prime(0.0), -0.2588194038) < 1e-9);
  CHECK(rel(airy_bi_prime(0.0), 0.4482883574) < 1e-9);
  // Wronskian Ai Bi' - Ai' Bi = 1/pi across the evaluation bands
  for (double z : {-5.0, -1.0, 0.5, 3.0, 5.5, 6.5, 8.0, 9.5, 14.0}) {
    const double w = airy_ai(z) * airy_bi_prime(z) - airy_ai_prime(z) * airy_bi(z);
    CHECK(rel(w, 1.0 / M_PI) < 1e-11);
  }
}

TEST_CASE("solve_bond matches the free closed forms") {
  const Potential zero;
  // k = pi/2: u(1) = sin(pi/2)/(pi/2)
  const auto s1 = solve_bond(zero, 1.0, SpectralPoint::from_k(M_PI / 2));
  CHECK(rel(s1.u_end.real(), std::sin(M_PI / 2) / (M_PI / 2)) < 1e-10);
  // gamma = 1: u(1) = sinh(1)
  const auto s2 = solve_bond(zero, 1.0, SpectralPoint::from_gamma(1.0));
  CHECK(rel(s2.u_end.real(), std::sinh(1.0)) < 1e-10);
  // mu = 0: u(L) = L, f'(0) = f'(L) = -1/L
  const auto s3 = solve_bond(zero, 2.0, SpectralPoint::from_gamma(0.0));
  CHECK(rel(s3.u_end.real(), 2.0) < 1e-12);
  CHECK(rel(s3.fprime_origin_fwd.real(), -0.5) < 1e-10);
  CHECK(rel(s3.fprime_end.real(), -0.5) < 1e-10);
}

TEST_CASE("solve_bond agrees with oracle_free on the spec grid") {
  const Potential zero;
  for (double mu : {-100.0, -1.0, 0.0, 1.0, 100.0}) {
    for (double L : {0.3, 1.0, 2.7}) {
      const SpectralPoint sp = SpectralPoint::from_energy(mu);
      const auto got = solve_bond(zero, L, sp);
      const auto want = oracle_free(L, sp);
      CHECK(std::abs(got.u_end - want.u_end) <= 1e-10 * std::abs(want.u_end));
      CHECK(std::abs(got.fprime_origin_fwd - want.fprime_origin_fwd) <=
            1e-9 * std::abs(want.fprime_origin_fwd));
    }
  }
}

TEST_CASE("oracle_free flags bond Dirichlet eigenvalues") {
  const auto flagged = oracle_free(1.0, SpectralPoint::from_k(M_PI));
  CHECK(flagged.dirichlet_flag);
  const auto s = oracle_free(2.0, SpectralPoint::from_gamma(0.0));
  CHECK(s.u_end.real() == doctest::Approx(2.0));
  const auto h = oracle_free(1.0, SpectralPoint::from_gamma(4.0));
  CHECK(rel(h.u_end.real(), std::sinh(2.0) / 2.0) < 1e-12);
}

TEST_CASE("oracle_airy closed form and solver cross-validation") {
  // u(1; 0) = pi [Ai(0) Bi(1) - Bi(0) Ai(1)] for V = x
  const auto o = oracle_airy(1.0, 1.0, SpectralPoint::from_gamma(0.0));
  const double want = M_PI * (airy_ai(0.0) * airy_bi(1.0) - airy_bi(0.0) * airy_ai(1.0));
  CHECK(rel(o.u_end.real(), want) < 1e-12);

  const Potential v = linear_potential(1.0);
  for (double gamma : {0.0, 0.5, 1.0, 2.5, 5.0, 7.0, 10.0}) {
    const SpectralPoint sp = SpectralPoint::from_gamma(gamma);
    const auto got = solve_bond(v, 1.0, sp);
    const auto oracle = oracle_airy(1.0, 1.0, sp);
    CHECK(std::abs(got.u_end - oracle.u_end) <= 1e-8 * std::abs(oracle.u_end));
    CHECK(std::abs(got.fprime_origin_fwd - oracle.fprime_origin_fwd) <=
          1e-8 * std::abs(oracle.fprime_origin_fwd));
    CHECK(std::abs(got.fprime_origin_rev - oracle.fprime_origin_rev) <=
          1e-8 * std::abs(oracle.fprime_origin_rev));
  }

  // omega -> 0 approaches the free solution to O(omega); evaluated at
  // gamma = 0 where the Airy arguments stay inside double range
  const auto small = oracle_airy(1e-4, 1.0, SpectralPoint::from_gamma(0.0));
  const auto free = oracle_free(1.0, SpectralPoint::from_gamma(0.0));
  CHECK(std::abs(small.u_end - free.u_end) < 1e-4);
}

TEST_CASE("oracle_susy_u examples") {
  CHECK(rel(oracle_susy_u(RationalPoly(), 1.7), 1.7) < 1e-12);  // phi = 0: u = L

  // phi = x: V = x^2 + 1, and u(L;0) = (1/2) sqrt(pi) e^{L^2/2} erf(L)
  const double closed = 0.5 * std::sqrt(M_PI) * std::exp(0.5) * std::erf(1.0);
  CHECK(rel(oracle_susy_u(poly({"0", "1"}), 1.0), closed) < 1e-10);

  const Potential v = Potential::polynomial(poly({"1", "0", "1"}));  // x^2 + 1
  const auto sol = solve_bond(v, 1.0, SpectralPoint::from_gamma(0.0));
  CHECK(rel(oracle_susy_u(poly({"0", "1"}), 1.0), sol.u_end.real()) < 1e-8);
}

TEST_CASE("interval invariants over random potentials and spectral points") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_real_distribution<double> len(0.4, 2.2);
  std::uniform_real_distribution<double> mu_dist(-30.0, 60.0);
  for (int it = 0; it < 50; ++it) {
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& v : c) v = frac(num(rng), 2);
    const Potential v = Potential::polynomial(RationalPoly(std::move(c)));
    const double L = len(rng);
    const double mu = mu_dist(rng);
    const auto sol = solve_bond(v, L, SpectralPoint::from_energy(mu));
    if (sol.dirichlet_flag) continue;
    // direction independence of u(L)
    CHECK(sol.direction_residual < 1e-9);
    // f'(L) u(L) = -1
    CHECK(std::abs(sol.fprime_end * sol.u_end + 1.0) < 1e-9);
    // Wronskian constancy
    CHECK(sol.wronskian_residual < 1e-9);
  }
}

TEST_CASE("symmetric potentials give direction-independent f'(0)") {
  // x(L - x) with L = 1
  const Potential sym = Potential::polynomial(poly({"0", "1", "-1"}));
  const auto sol = solve_bond(sym, 1.0, SpectralPoint::from_gamma(2.0));
  CHECK(std::abs(sol.fprime_origin_fwd - sol.fprime_origin_rev) <
        1e-10 * std::abs(sol.fprime_origin_fwd));
  // while a generic potential does not
  const auto asym = solve_bond(linear_potential(2.0), 1.0, SpectralPoint::from_gamma(2.0));
  CHECK(std::abs(asym.fprime_origin_fwd - asym.fprime_origin_rev) > 1e-3);
}

TEST_CASE("riccati large-t path matches closed forms and stays finite") {
  const Potential zero;
  // t = 60, L = 1: log u = 60 - log(2*60) + log(1 - e^{-120})
  const auto sol = solve_bond(zero, 1.0, SpectralPoint::from_t(60.0));
  const double want_log = 60.0 + std::log1p(-std::exp(-120.0)) - std::log(120.0);
  CHECK(std::fabs(sol.log_abs_u_end - want_log) < 1e-8);
  CHECK(rel(sol.fprime_origin_fwd.real(), -60.0 / std::tanh(60.0)) < 1e-10);

  // t L > 700: double range exceeded, log form still valid
  const auto big = solve_bond(zero, 1.0, SpectralPoint::from_t(800.0));
  CHECK(big.log_form);
  const double want_big = 800.0 + std::log1p(-std::exp(-1600.0)) - std::log(1600.0);
  CHECK(std::fabs(big.log_abs_u_end - want_big) < 1e-7);

  // linear potential against the Airy log-derivative at t = 50
  const auto lin = solve_bond(linear_potential(1.0), 1.0, SpectralPoint::from_t(50.0));
  const double airy_ratio = airy_ai_log_deriv(2500.0);
  CHECK(std::fabs(lin.fprime_origin_fwd.real() - airy_ratio) < 1e-10);
}

TEST_CASE("complex spectral points integrate against the free oracle") {
  const Potential zero;
  const std::complex<double> z(0.8, 0.35);
  const auto got = solve_bond(zero, 1.3, SpectralPoint::from_z(z));
  const auto want = oracle_free(1.3, SpectralPoint::from_z(z));
  CHECK(std::abs(got.u_end - want.u_end) < 1e-10 * std::abs(want.u_end));
  CHECK(std::abs(got.v_end_fwd - want.v_end_fwd) < 1e-10 * std::abs(want.v_end_fwd));
}
