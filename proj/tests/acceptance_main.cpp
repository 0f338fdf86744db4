// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "qgraph/airy.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/oracles.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/selftest.hpp"
#include "qgraph/spectral.hpp"

using namespace qgraph;

namespace {

Bond bond(int from, int to, double length = 1.0, double magnetic = 0.0) {
  Bond b;
  b.origin = from;
  b.terminus = to;
  b.length = rational_from_double(length);
  b.magnetic = magnetic;
  return b;
}

RationalPoly poly(std::initializer_list<const char*> coeffs) {
  std::vector<Rational> c;
  for (const char* s : coeffs) c.push_back(rational_from_string(s));
  return RationalPoly(std::move(c));
}

MetricGraph wire(double length = 1.0) { return MetricGraph(2, {bond(1, 2, length)}); }

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::string fail(const std::string& what) { return what; }

// The 4-vertex / 5-bond test graph with mixed polynomial potentials.
MetricGraph test_graph() {
  std::vector<Bond> bonds = {bond(1, 2, 1.0), bond(1, 3, 0.5), bond(1, 4, 0.75),
                             bond(2, 3, 1.25), bond(3, 4, 2.0)};
  bonds[0].potential = Potential::polynomial(poly({"0", "1"}));            // x
  bonds[2].potential = Potential::polynomial(poly({"1/2", "0", "1/3"}));   // 1/2 + x^2/3
  bonds[3].potential = Potential::susy(poly({"0", "1/2"}));                // phi = x/2
  bonds[4].potential = Potential::polynomial(poly({"0", "2", "-1"}));      // x(2 - x)
  return MetricGraph(4, bonds);
}

Eigen::MatrixXcd random_invertible(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  Eigen::MatrixXcd u(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u(i, j) = std::complex<double>(re(rng), re(rng));
  u += 2.5 * Eigen::MatrixXcd::Identity(n, n);
  return u;
}

// Kirchhoff center (vertex 1), Dirichlet leaves for a B-arm star.
MatchingConditions star_kirchhoff_dirichlet(const MetricGraph& g) {
  const int B = g.bond_count();
  MatchingConditions mc{exact_zero_matrix(2 * B), exact_zero_matrix(2 * B), {}};
  for (int e = 0; e < B; ++e) mc.b[0][e] = GaussianRational(Rational(1));
  for (int e = 1; e < B; ++e) {
    mc.a[e][e - 1] = GaussianRational(Rational(-1));
    mc.a[e][e] = GaussianRational(Rational(1));
  }
  for (int e = B; e < 2 * B; ++e) mc.a[e][e] = GaussianRational(Rational(1));
  return mc;
}

// Independent oracle for the star spectrum: sign-change scan of the classical
// secular function G(k) = sum_i cos(k L_i) prod_{j != i} sin(k L_j).
std::vector<double> star_oracle_roots(const std::vector<double>& lengths, double k_max) {
  auto g = [&](double k) {
    double acc = 0.0;
    for (size_t i = 0; i < lengths.size(); ++i) {
      double term = std::cos(k * lengths[i]);
      for (size_t j = 0; j < lengths.size(); ++j)
        if (j != i) term *= std::sin(k * lengths[j]);
      acc += term;
    }
    return acc;
  };
  std::vector<double> roots;
  const double dk = 1e-3;
  double prev = g(dk);
  for (double k = dk; k < k_max; k += dk) {
    const double next = g(k + dk);
    if ((prev > 0) != (next > 0)) {
      double a = k, b = k + dk, fa = prev;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = g(mid);
        if ((fm > 0) == (fa > 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev = next;
  }
  return roots;
}

struct Criterion {
  int id;
  std::string name;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1, "free Dirichlet wire: S(gamma) = 2 sinh(sqrt g)/sqrt g and the g->0 limit", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const MetricGraph g = wire();
    const auto mc = build_dirichlet(g);
    for (int i = 0; i < 20; ++i) {
      const double gamma = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
      const double want = 2.0 * std::sinh(std::sqrt(gamma)) / std::sqrt(gamma);
      const double got = spectral_determinant(g, mc, gamma).value;
      if (rel(got, want) > 1e-8) {
        std::ostringstream os;
        os << "gamma=" << gamma << ": rel err " << rel(got, want);
        return fail(os.str());
      }
    }
    DetOptions opt;
    opt.allow_limit = true;
    const double limit = spectral_determinant(g, mc, 0.0, opt).value;
    if (std::fabs(limit - 2.0) > 1e-6) return fail("gamma->0 limit " + std::to_string(limit));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) return fail("runtime " + std::to_string(secs) + " s exceeds 5 s");
    return std::string();
  }});

  criteria.push_back({2, "linear potential: S_Dir matches the Airy closed form", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Bond b = bond(1, 2);
    b.potential = Potential::polynomial(poly({"0", "1"}));
    const MetricGraph g(2, {b});
    for (double gamma : {0.0, 1.0, 10.0}) {
      const double want = 2.0 * M_PI *
                          (airy_ai(gamma) * airy_bi(1.0 + gamma) -
                           airy_bi(gamma) * airy_ai(1.0 + gamma));
      const double got = dirichlet_determinant(g, gamma);
      if (rel(got, want) > 1e-6)
        return fail("gamma=" + std::to_string(gamma) + " rel err " +
                    std::to_string(rel(got, want)));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) return fail("runtime " + std::to_string(secs) + " s exceeds 5 s");
    return std::string();
  }});

  criteria.push_back({3, "susy/harmonic: erf closed form and quadrature oracle agree", [] {
    Bond b = bond(1, 2);
    b.potential = Potential::polynomial(poly({"1", "0", "1"}));  // x^2 + 1 (omega = 1)
    const MetricGraph g(2, {b});
    const double closed = std::sqrt(M_PI) * std::exp(0.5) * std::erf(1.0);
    const double via_ode = dirichlet_determinant(g, 0.0);
    if (rel(via_ode, closed) > 1e-6)
      return fail("ODE path rel err " + std::to_string(rel(via_ode, closed)));
    const double via_quad = susy_dirichlet_determinant(poly({"0", "1"}), 1.0);
    if (rel(via_ode, via_quad) > 1e-7)
      return fail("quadrature oracle rel err " + std::to_string(rel(via_ode, via_quad)));
    return std::string();
  }});

  criteria.push_back({4, "appendix series: s_{-1}..s_6 exact and f'(0;t^2) numeric cross-check", [] {
    const Potential v = Potential::polynomial(poly({"0", "1"}));  // omega = 1
    const auto sc = s_coefficients(v, 6, -1);
    // displayed table (recursion-consistent part)
    if (!(sc.at(-1) == RationalPoly::constant(Rational(-1)))) return fail("s_{-1}");
    if (!sc.at(0).is_zero()) return fail("s_0");
    if (!(sc.at(1) == poly({"0", "-1/2"}))) return fail("s_1");
    if (!(sc.at(2) == poly({"-1/4"}))) return fail("s_2");
    if (!(sc.at(3) == poly({"0", "0", "1/8"}))) return fail("s_3");
    if (!(sc.at(4) == poly({"0", "1/4"}))) return fail("s_4");
    // recursion-true values where the displayed table carries misprints
    if (!(sc.at(5) == poly({"5/32", "0", "0", "-1/16"}))) return fail("s_5");
    if (!(sc.at(6) == poly({"0", "0", "-1/4"}))) return fail("s_6");

    // numeric adjudication against the ODE solver; |s_8(0)| = 15/64 is the
    // first omitted nonzero term after J = 6 (s_7(0) = 0).  Tight ODE
    // tolerances keep the solver noise below the truncation term.
    SolverOptions tight;
    tight.atol = 1e-14;
    tight.rtol = 1e-13;
    const double t50 = 50.0;
    const double got50 = fprime_asymptotic(v, 6, t50);
    const double ode50 =
        solve_bond(v, 1.0, SpectralPoint::from_t(t50), tight).fprime_origin_fwd.real();
    const double bound50 = 2.0 * (15.0 / 64.0) * std::pow(t50, -8.0) + 1e-10;
    if (std::fabs(got50 - ode50) > bound50)
      return fail("t=50 deviation " + std::to_string(std::fabs(got50 - ode50)));
    // At t = 10 the exponentially suppressed boundary term ~2t e^{-2tL}
    // (which the asymptotic branch legitimately omits) still dominates the
    // t^-8 series term, so it enters the bound; a wrong s_5 coefficient
    // would overshoot this bound by almost an order of magnitude.
    const double t10 = 10.0;
    const double got10 = fprime_asymptotic(v, 6, t10);
    const double ode10 =
        solve_bond(v, 1.0, SpectralPoint::from_t(t10), tight).fprime_origin_fwd.real();
    const double bound10 = 2.0 * (15.0 / 64.0) * std::pow(t10, -8.0) +
                           5.0 * t10 * std::exp(-2.0 * t10) + 5e-10;
    if (std::fabs(got10 - ode10) > bound10)
      return fail("t=10 deviation " + std::to_string(std::fabs(got10 - ode10)));
    return std::string();
  }});

  criteria.push_back({5, "normalization data (N, c_N, P) on the 4-vertex/5-bond graph", [] {
    const MetricGraph g = test_graph();
    const int two_b = g.end_count();  // 10
    const int v = g.vertex_count();   // 4
    GaussianRational want_c(Rational(1));
    for (int vert = 1; vert <= v; ++vert) want_c *= GaussianRational(Rational(-g.degree(vert)));

    const auto dir = leading_coefficient(g, build_dirichlet(g));
    if (dir.N != two_b || !(dir.c_n == GaussianRational(Rational(1))))
      return fail("Dirichlet profile: N=" + std::to_string(dir.N));

    const auto delta = leading_coefficient(
        g, build_delta(g, {{1, 0.5}, {2, -1.0}, {3, 2.0}, {4, 0.25}}));
    if (delta.N != two_b - v || !(delta.c_n == want_c))
      return fail("delta profile: N=" + std::to_string(delta.N) + " c_N=" +
                  to_string(delta.c_n));

    const auto dp = leading_coefficient(g, build_delta_prime(g, {}));
    if (dp.N != v || !(dp.c_n == want_c))
      return fail("delta' profile: N=" + std::to_string(dp.N) + " c_N=" + to_string(dp.c_n));

    const MetricGraph w = wire();
    if (zero_order_p(w, build_delta(w, {})) != 1) return fail("Neumann wire P != 1");
    if (zero_order_p(g, build_delta(g, {{1, 0.5}, {2, -1.0}, {3, 2.0}, {4, 0.25}})) != 0)
      return fail("generic delta P != 0");
    return std::string();
  }});

  criteria.push_back({6, "eigenvalues: wire roots, star oracle, U-invariance", [] {
    const MetricGraph g = wire();
    const auto spec = find_eigenvalues(g, build_dirichlet(g), 10.5 * M_PI);
    if (spec.entries.size() != 10)
      return fail("wire root count " + std::to_string(spec.entries.size()));
    for (int j = 0; j < 10; ++j)
      if (rel(spec.entries[j].energy, std::pow((j + 1) * M_PI, 2)) > 1e-8)
        return fail("wire root " + std::to_string(j));

    const std::vector<double> arms = {1.0, 1.3, 0.7};
    const MetricGraph star(4, {bond(1, 2, arms[0]), bond(1, 3, arms[1]), bond(1, 4, arms[2])});
    const auto mc = star_kirchhoff_dirichlet(star);
    const double k_max = 6.0;
    const auto got = find_eigenvalues(star, mc, k_max);
    const auto oracle = star_oracle_roots(arms, k_max);
    if (got.entries.size() != oracle.size())
      return fail("star root count " + std::to_string(got.entries.size()) + " vs oracle " +
                  std::to_string(oracle.size()));
    for (size_t i = 0; i < oracle.size(); ++i)
      if (std::fabs(std::sqrt(got.entries[i].energy) - oracle[i]) > 1e-8)
        return fail("star root " + std::to_string(i));

    std::mt19937 rng(2025);
    for (int it = 0; it < 5; ++it) {
      const auto u = random_invertible(star.end_count(), rng);
      const auto moved = find_eigenvalues(star, transform_conditions(mc, u), k_max);
      if (moved.entries.size() != got.entries.size())
        return fail("transformed root count differs");
      for (size_t i = 0; i < got.entries.size(); ++i)
        if (std::fabs(std::sqrt(moved.entries[i].energy) -
                      std::sqrt(got.entries[i].energy)) > 1e-8)
          return fail("transformed root " + std::to_string(i) + " moved");
    }
    return std::string();
  }});

  criteria.push_back({7, "U-invariance of Theorem 1 on the delta-type test graph", [] {
    const MetricGraph g = test_graph();
    const auto mc = build_delta(g, {{1, 0.5}, {2, -1.0}, {3, 2.0}, {4, 0.25}});
    std::mt19937 rng(424242);
    for (int it = 0; it < 5; ++it) {
      const auto u = random_invertible(g.end_count(), rng);
      const auto moved = transform_conditions(mc, u);
      for (double gamma : {0.5, 2.0, 8.0}) {
        const double s0 = spectral_determinant(g, mc, gamma).value;
        const double s1 = spectral_determinant(g, moved, gamma).value;
        if (std::fabs(s1 / s0 - 1.0) > 1e-8) {
          std::ostringstream os;
          os << "U " << it << " gamma " << gamma << ": ratio off by " << s1 / s0 - 1.0;
          return fail(os.str());
        }
      }
    }
    return std::string();
  }});

  criteria.push_back({8, "zeta consistency on wires", [] {
    const MetricGraph g = wire();
    const auto neumann = build_delta(g, {});
    const double gamma = 1.0;

    // truncated eigenvalue sum, J = 1e4 terms + Euler-Maclaurin tail
    double direct = 0.0;
    const int terms = 10000;
    const double s = 0.75;
    for (int j = 1; j <= terms; ++j)
      direct += std::pow(std::pow(j * M_PI, 2) + gamma, -s);
    auto f = [&](double x) { return std::pow(std::pow(x * M_PI, 2) + gamma, -s); };
    double x0 = terms + 0.5;
    for (int i = 0; i < 4000; ++i, x0 += 10.0)
      direct += 10.0 / 6.0 * (f(x0) + 4.0 * f(x0 + 5.0) + f(x0 + 10.0));
    direct += std::pow(M_PI, -2.0 * s) * std::pow(x0, 1.0 - 2.0 * s) / (2.0 * s - 1.0);

    const auto z = zeta(g, neumann, {s, 0.0}, gamma);
    if (rel(z.value.real(), direct) > 1e-4)
      return fail("zeta(0.75) rel err " + std::to_string(rel(z.value.real(), direct)));

    const double h = 1e-4;
    const double fd = (zeta(g, neumann, {h, 0.0}, gamma).value.real() -
                       zeta(g, neumann, {-h, 0.0}, gamma).value.real()) /
                      (2.0 * h);
    const double want = -std::log(spectral_determinant(g, neumann, gamma).value);
    if (std::fabs(fd - want) > 1e-4)
      return fail("finite-difference zeta'(0) off by " + std::to_string(fd - want));

    const double zp0 = zeta_dirichlet_wire_prime0(Potential::zero(), 1.0, 1e-9);
    if (std::fabs(zp0 - (-std::log(2.0))) > 1e-5)
      return fail("gamma->0 zeta'(0) limit " + std::to_string(zp0));
    return std::string();
  }});

  criteria.push_back({9, "property suites over randomized instances", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(8675309);
    std::uniform_real_distribution<double> len(0.4, 2.0);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_real_distribution<double> mud(-25.0, 50.0);

    auto random_potential = [&](std::mt19937& r) {
      std::uniform_int_distribution<int> deg(0, 3);
      std::vector<Rational> c(deg(r) + 1);
      for (auto& v : c) v = frac(num(r), 2);
      return Potential::polynomial(RationalPoly(std::move(c)));
    };

    // interval identities: direction independence, f'(L) u(L) = -1, Wronskian
    for (int it = 0; it < 50; ++it) {
      const Potential v = random_potential(rng);
      const double L = len(rng);
      const auto sol = solve_bond(v, L, SpectralPoint::from_energy(mud(rng)));
      if (sol.dirichlet_flag) continue;
      if (sol.direction_residual > 1e-9)
        return fail("direction residual " + std::to_string(sol.direction_residual));
      if (std::abs(sol.fprime_end * sol.u_end + 1.0) > 1e-9)
        return fail("f'(L) u(L) != -1 at iteration " + std::to_string(it));
      if (sol.wronskian_residual > 1e-9)
        return fail("Wronskian residual " + std::to_string(sol.wronskian_residual));
    }

    // builder self-adjointness and secular symmetry on random graphs
    int secular_checks = 0;
    for (int it = 0; it < 50; ++it) {
      const int v = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<Bond> bonds;
      for (int i = 2; i <= v; ++i)
        bonds.push_back(bond(std::uniform_int_distribution<int>(1, i - 1)(rng), i, len(rng)));
      const int extra = std::uniform_int_distribution<int>(v == 1 ? 1 : 0, 1)(rng);
      for (int i = 0; i < extra; ++i) {
        const int a = std::uniform_int_distribution<int>(1, v)(rng);
        const int b2 = std::uniform_int_distribution<int>(1, v)(rng);
        bonds.push_back(bond(a, b2, len(rng)));
      }
      for (auto& b : bonds) b.potential = random_potential(rng);
      const MetricGraph graph(v, bonds);
      std::map<int, double> lam;
      for (int vv = 1; vv <= v; ++vv) lam[vv] = coupling(rng);
      const auto d = build_delta(graph, lam);
      const auto dp = build_delta_prime(graph, lam);
      if (!validate_self_adjoint(d, graph).valid) return fail("delta builder invalid");
      if (!validate_self_adjoint(dp, graph).valid) return fail("delta' builder invalid");
      if (!validate_self_adjoint(build_dirichlet(graph), graph).valid)
        return fail("dirichlet builder invalid");

      if (secular_checks < 50) {
        std::uniform_real_distribution<double> re(-1.5, 1.5);
        for (int zi = 0; zi < 2; ++zi, ++secular_checks) {
          const std::complex<double> z(re(rng), re(rng));
          try {
            const auto fp = secular_value(graph, d, z);
            const auto fm = secular_value(graph, d, -z);
            if (std::abs(fp - fm) > 1e-8 * std::max(1.0, std::abs(fp)))
              return fail("F(z) != F(-z)");
          } catch (const PoleError&) {
            continue;
          }
        }
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) return fail("runtime " + std::to_string(secs) + " s exceeds 60 s");
    return std::string();
  }});

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (detail.empty()) {
      std::printf("PASS criterion %d: %s  [%.2f s]\n", c.id, c.name.c_str(), secs);
    } else {
      std::printf("FAIL criterion %d: %s  [%.2f s]  -- %s\n", c.id, c.name.c_str(), secs,
                  detail.c_str());
      ++failures;
    }
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
