#include <doctest.h>

#include <cmath>
#include <random>

#include "qgraph/asymptotics.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/interval.hpp"
#include "qgraph/secular.hpp"

using namespace qgraph;

namespace {

RationalPoly poly(std::initializer_list<const char*> coeffs) {
  std::vector<Rational> c;
  for (const char* s : coeffs) c.push_back(rational_from_string(s));
  return RationalPoly(std::move(c));
}

Bond bond(int from, int to, double length = 1.0) {
  Bond b;
  b.origin = from;
  b.terminus = to;
  b.length = rational_from_double(length);
  return b;
}

const Potential kLinear = Potential::polynomial(RationalPoly({Rational(0), Rational(1)}));

}  // namespace

TEST_CASE("s_coefficients for V = w x: low orders match the displayed table") {
  // generic rational omega to exercise exactness
  const Rational w = frac(3, 7);
  const Potential v = Potential::polynomial(RationalPoly({Rational(0), w}));
  const auto sc = s_coefficients(v, 6, -1);
  CHECK(sc.at(-1) == RationalPoly::constant(Rational(-1)));
  CHECK(sc.at(0).is_zero());
  CHECK(sc.at(1) == RationalPoly({Rational(0), Rational(-w / 2)}));
  CHECK(sc.at(2) == RationalPoly::constant(Rational(-w / 4)));
  CHECK(sc.at(3) == RationalPoly({Rational(0), Rational(0), w * w / 8}));
  CHECK(sc.at(4) == RationalPoly({Rational(0), w * w / 4}));
}

TEST_CASE("s5 and s6 follow the recursion (and the Airy asymptotics), not the misprint") {
  const Rational w(1);
  const auto sc = s_coefficients(kLinear, 6, -1);
  // s5 = 5 w^2/32 - w^3 x^3/16, s6 = -w^3 x^2 / 4
  CHECK(sc.at(5) == RationalPoly({Rational(5, 32), Rational(0), Rational(0), Rational(-1, 16)}));
  CHECK(sc.at(6) == RationalPoly({Rational(0), Rational(0), Rational(-1, 4)}));
}

TEST_CASE("s_coefficients trivial potentials") {
  const auto zero = s_coefficients(Potential::zero(), 8, -1);
  for (int j = 0; j <= 8; ++j) CHECK(zero.at(j).is_zero());

  // V = c: s1 = -c/2, s2 = 0, s3 = c^2/8
  const Rational c = frac(5, 3);
  const auto constant = s_coefficients(Potential::polynomial(RationalPoly({c})), 3, -1);
  CHECK(constant.at(1) == RationalPoly::constant(-c / 2));
  CHECK(constant.at(2).is_zero());
  CHECK(constant.at(3) == RationalPoly::constant(c * c / 8));
}

TEST_CASE("recursion residual: t^2 + V - S^2 - S' vanishes identically") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> num(-4, 4);
  for (int it = 0; it < 20; ++it) {
    std::vector<Rational> cs(deg(rng) + 1);
    for (auto& v : cs) v = frac(num(rng), 3);
    const Potential v = Potential::polynomial(RationalPoly(std::move(cs)));
    const int J = 7;
    for (int branch : {-1, +1}) {
      const auto sc = s_coefficients(v, J, branch);
      // coefficient of t^{-m} in S' + S^2 - t^2 - V must vanish for m <= J - 1
      for (int m = -2; m < J; ++m) {
        RationalPoly acc = (m >= -1 && m <= J) ? sc.at(m).derivative() : RationalPoly();
        for (int j = -1; j <= m + 1; ++j) {
          const int k = m - j;
          if (k < -1 || k > J) continue;
          acc += sc.at(j) * sc.at(k);
        }
        if (m == -2) acc -= RationalPoly::constant(Rational(1));
        if (m == 0) acc -= v.expanded();
        CHECK(acc.is_zero());
      }
    }
  }
}

TEST_CASE("fprime_asymptotic values and convergence") {
  CHECK(fprime_asymptotic(Potential::zero(), 6, 3.7) == doctest::Approx(-3.7).epsilon(1e-15));

  // V = x at t = 10: -t - 1/(4 t^2) + 5/(32 t^5) - 15/(64 t^8)
  const double t = 10.0;
  const double want = -t - 1.0 / (4 * t * t) + 5.0 / (32.0 * std::pow(t, 5));
  CHECK(fprime_asymptotic(kLinear, 6, t) == doctest::Approx(want).epsilon(1e-14));

  // truncation error shrinks with J against the ODE solver at large t
  const double s11 = std::fabs(to_double(s_coefficients(kLinear, 11, -1).at(11).coeff(0)));
  for (double tt : {20.0, 40.0, 80.0}) {
    const auto sol = solve_bond(kLinear, 1.0, SpectralPoint::from_t(tt));
    const double exact = sol.fprime_origin_fwd.real();
    const double err4 = std::fabs(fprime_asymptotic(kLinear, 4, tt) - exact);
    const double err8 = std::fabs(fprime_asymptotic(kLinear, 8, tt) - exact);
    CHECK(err8 < err4);
    // first omitted nonzero term after J = 8 is |s_11(0)| t^-11; allow solver noise
    CHECK(err8 < 2.0 * s11 * std::pow(tt, -11.0) + 1e-9);
  }
}

TEST_CASE("leading_coefficient: Dirichlet gives (2B, 1)") {
  const MetricGraph g(3, {bond(1, 2), bond(2, 3, 0.5)});
  const auto profile = leading_coefficient(g, build_dirichlet(g));
  CHECK(profile.N == 4);
  CHECK(profile.c_n == GaussianRational(Rational(1)));
  CHECK(profile.c[0].is_zero());  // det B = 0
}

TEST_CASE("leading_coefficient reduces to det(A - tB) for V = 0") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> num(-3, 3);
  for (int it = 0; it < 10; ++it) {
    const MetricGraph g(2, {bond(1, 2)});
    MatchingConditions mc{exact_zero_matrix(2), exact_zero_matrix(2), {}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        mc.a[i][j] = GaussianRational(Rational(num(rng)));
        mc.b[i][j] = GaussianRational(Rational(num(rng)));
      }
    AsymptoticProfile profile;
    try {
      profile = leading_coefficient(g, mc);
    } catch (const ProfileError&) {
      continue;  // det(A - tB) identically zero for this draw
    }
    // compare against Eigen's determinant of A - tB at a few sample points
    for (double t : {1.0, 2.0, 3.5}) {
      const std::complex<double> direct =
          (mc.a_complex() - t * mc.b_complex()).determinant();
      std::complex<double> series{0.0, 0.0};
      for (int j = 0; j <= profile.j_known; ++j)
        series += profile.c[j].to_complex() * std::pow(t, 2 - j);
      CHECK(std::abs(series - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("leading_coefficient for delta and delta-prime families") {
  // 3-star: V = 4 vertices, B = 3, m = (3, 1, 1, 1)
  const MetricGraph star(4, {bond(1, 2), bond(1, 3, 0.75), bond(1, 4, 1.25)});
  const GaussianRational want_c(Rational(3));  // prod(-m_v) = (-3)(-1)^3 = 3

  const auto delta = leading_coefficient(star, build_delta(star, {{1, 0.5}}));
  CHECK(delta.N == 2 * 3 - 4);  // index: F ~ c t^V
  CHECK(delta.c_n == want_c);

  const auto dp = leading_coefficient(star, build_delta_prime(star, {}));
  CHECK(dp.N == 4);  // index: F ~ c t^{2B - V}
  CHECK(dp.c_n == want_c);

  // polynomial potentials do not change the leading data
  std::vector<Bond> bonds = {bond(1, 2), bond(1, 3, 0.75), bond(1, 4, 1.25)};
  bonds[0].potential = kLinear;
  bonds[2].potential = Potential::polynomial(poly({"1/2", "0", "1/3"}));
  const MetricGraph star_v(4, bonds);
  const auto delta_v = leading_coefficient(star_v, build_delta(star_v, {{1, 0.5}}));
  CHECK(delta_v.N == 2);
  CHECK(delta_v.c_n == want_c);
}

TEST_CASE("c_N scales by det U under transform_conditions") {
  const MetricGraph star(3, {bond(1, 2), bond(1, 3, 0.5)});
  const auto mc = build_delta(star, {{1, 1.0}});
  const auto base = leading_coefficient(star, mc);

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u << 2, 1, 0, 0, 0, 1, 0.5, 0, 0, 0, 3, 1, 1, 0, 0, 1;
  const auto moved = leading_coefficient(star, transform_conditions(mc, u));
  CHECK(moved.N == base.N);
  const std::complex<double> det_u = u.determinant();
  CHECK(std::abs(moved.c_n.to_complex() - det_u * base.c_n.to_complex()) < 1e-9);
}

TEST_CASE("zero_order_p distinguishes generic and degenerate cases") {
  const MetricGraph wire(2, {bond(1, 2)});
  CHECK(zero_order_p(wire, build_dirichlet(wire)) == 0);
  CHECK(zero_order_p(wire, build_delta(wire, {})) == 1);  // Neumann ends
  CHECK(zero_order_p(wire, build_delta(wire, {{1, 1.0}, {2, 2.0}})) == 0);
}

TEST_CASE("wire_log_u_series matches measured log(2 t u e^{-tL})") {
  const Rational L(1);
  for (const Potential& v :
       {kLinear, Potential::polynomial(poly({"1/2", "-1", "2/3"}))}) {
    const auto series = wire_log_u_series(v, L, 12);
    for (double t : {15.0, 30.0}) {
      double predicted = 0.0;
      for (const auto& [e, c] : series.coef) predicted += to_double(c.re) * std::pow(t, e);
      const auto sol = solve_bond(v, 1.0, SpectralPoint::from_t(t));
      const double measured = std::log(2.0 * t) + sol.log_abs_u_end - t;
      CHECK(std::fabs(predicted - measured) < 1e-8);  // truncation ~t^-13, solver ~1e-10
    }
  }
}

TEST_CASE("secular_log_ratio_series vanishes for the Neumann wire") {
  const MetricGraph wire(2, {bond(1, 2)});
  const auto profile = leading_coefficient(wire, build_delta(wire, {}));
  CHECK(profile.N == 0);
  CHECK(profile.c_n == GaussianRational(Rational(1)));  // det B = 1
  CHECK(secular_log_ratio_series(profile).is_zero());
}
