#include "qgraph/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qgraph/airy.hpp"
#include "qgraph/asymptotics.hpp"
#include "qgraph/oracles.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

namespace {

MetricGraph free_wire(double length = 1.0) {
  Bond b;
  b.origin = 1;
  b.terminus = 2;
  b.length = rational_from_double(length);
  return MetricGraph(2, {b});
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

}  // namespace

std::vector<SelfTestCase> run_selftest(std::ostream* out) {
  std::vector<SelfTestCase> cases;
  auto check = [&](const std::string& name, const std::function<std::string()>& run) {
    SelfTestCase c;
    c.name = name;
    try {
      c.detail = run();
      c.passed = c.detail.empty();
    } catch (const std::exception& ex) {
      c.passed = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    if (out) {
      *out << (c.passed ? "PASS" : "FAIL") << "  " << c.name
           << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    }
    cases.push_back(std::move(c));
  };

  check("dirichlet wire determinant 2 sinh(sqrt(g))/sqrt(g)", [] {
    const MetricGraph g = free_wire();
    const auto mc = build_dirichlet(g);
    for (double gamma : {0.1, 1.0, 10.0}) {
      const double want = 2.0 * std::sinh(std::sqrt(gamma)) / std::sqrt(gamma);
      const double got = spectral_determinant(g, mc, gamma).value;
      if (rel_err(got, want) > 1e-9) {
        std::ostringstream os;
        os << "gamma=" << gamma << " got " << got << " want " << want;
        return os.str();
      }
    }
    return std::string();
  });

  check("dirichlet determinant at gamma=0 equals 2L", [] {
    const MetricGraph g = free_wire(1.0);
    const double got = dirichlet_determinant(g, 0.0);
    return rel_err(got, 2.0) < 1e-10 ? "" : "got " + std::to_string(got);
  });

  check("secular function is 1 under Dirichlet conditions", [] {
    const MetricGraph g = free_wire();
    const auto mc = build_dirichlet(g);
    const auto f = secular_value(g, mc, std::complex<double>(0.7, 0.0));
    return std::abs(f - 1.0) < 1e-12 ? "" : "got " + std::to_string(std::abs(f));
  });

  check("free M matrix matches -k cot / +k csc at mu=0", [] {
    const MetricGraph g = free_wire();
    const auto m = build_m(g, SpectralPoint::from_gamma(0.0));
    const double want[2][2] = {{-1.0, 1.0}, {1.0, -1.0}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (std::abs(m(i, j) - want[i][j]) > 1e-9) return std::string("entry mismatch");
    return std::string();
  });

  check("delta vertex blocks satisfy det(A_v - t B_v) = -(lambda + m t)", [] {
    Bond b1, b2, b3;
    b1.origin = 1, b1.terminus = 2;
    b2.origin = 1, b2.terminus = 3;
    b3.origin = 1, b3.terminus = 4;
    const MetricGraph star(4, {b1, b2, b3});
    const auto mc = build_delta(star, {{1, 2.0}});
    const double t = 1.7;
    Eigen::MatrixXcd pencil = mc.a_complex() - t * mc.b_complex();
    // center block only: rows/cols of the three origin ends
    Eigen::MatrixXcd block(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) block(i, j) = pencil(i, j);
    const double want = -(2.0 + 3.0 * t);
    return std::abs(block.determinant() - want) < 1e-12 ? ""
                                                        : "block determinant mismatch";
  });

  check("linear-potential s_j(0) series matches Airy log-derivative", [] {
    const Potential v = Potential::polynomial(RationalPoly({Rational(0), Rational(1)}));
    const double t = 10.0;
    const double series = fprime_asymptotic(v, 8, t);
    const double airy = std::cbrt(1.0) * airy_ai_prime(t * t) / airy_ai(t * t);
    return std::fabs(series - airy) < 1e-9 ? ""
                                           : "series " + std::to_string(series) + " vs airy " +
                                                 std::to_string(airy);
  });

  check("airy S_Dir closed form for V = x at gamma = 1", [] {
    Bond b;
    b.origin = 1, b.terminus = 2;
    b.potential = Potential::polynomial(RationalPoly({Rational(0), Rational(1)}));
    const MetricGraph g(2, {b});
    const double gamma = 1.0;
    const double want =
        2.0 * M_PI * (airy_ai(gamma) * airy_bi(1.0 + gamma) - airy_bi(gamma) * airy_ai(1.0 + gamma));
    const double got = dirichlet_determinant(g, gamma);
    return rel_err(got, want) < 1e-8 ? "" : "got " + std::to_string(got);
  });

  check("susy harmonic-oscillator determinant sqrt(pi/w) e^{wL^2/2} erf(sqrt(w)L)", [] {
    const RationalPoly phi({Rational(0), Rational(1)});  // phi = x
    const double want = std::sqrt(M_PI) * std::exp(0.5) * std::erf(1.0);
    const double got = susy_dirichlet_determinant(phi, 1.0);
    return rel_err(got, want) < 1e-9 ? "" : "got " + std::to_string(got);
  });

  check("neumann wire P = 1 and delta-type P = 0", [] {
    const MetricGraph g = free_wire();
    const auto neumann = build_delta(g, {});
    if (zero_order_p(g, neumann) != 1) return std::string("neumann wire P != 1");
    const auto delta = build_delta(g, {{1, 1.0}, {2, 1.0}});
    if (zero_order_p(g, delta) != 0) return std::string("generic delta P != 0");
    return std::string();
  });

  check("dirichlet leading coefficient (N, c_N) = (2B, 1)", [] {
    const MetricGraph g = free_wire();
    const auto profile = leading_coefficient(g, build_dirichlet(g));
    return (profile.N == 2 && profile.c_n == GaussianRational(Rational(1)))
               ? ""
               : "got N=" + std::to_string(profile.N);
  });

  check("exp(-zeta'_Dir(0,1)) = 2 u(L;1) on the free wire", [] {
    const Potential v;
    const double zp = zeta_dirichlet_wire_prime0(v, 1.0, 1.0);
    const double want = 2.0 * std::sinh(1.0);
    return rel_err(std::exp(-zp), want) < 1e-10 ? "" : "identity violated";
  });

  check("U-invariance of the spectral determinant (wire, Neumann)", [] {
    const MetricGraph g = free_wire();
    const auto mc = build_delta(g, {});
    Eigen::MatrixXcd u(2, 2);
    u << 2.0, 1.0, 0.5, 3.0;
    const auto mc2 = transform_conditions(mc, u);
    const double s1 = spectral_determinant(g, mc, 2.0).value;
    const double s2 = spectral_determinant(g, mc2, 2.0).value;
    return rel_err(s1, s2) < 1e-9 ? "" : "transformed determinant differs";
  });

  check("eigenvalues of the free Dirichlet wire are (j pi)^2", [] {
    const MetricGraph g = free_wire();
    const auto spec = find_eigenvalues(g, build_dirichlet(g), 10.0);
    if (spec.entries.size() != 3) return std::string("expected 3 roots below 100");
    for (size_t j = 0; j < spec.entries.size(); ++j) {
      const double want = std::pow((j + 1) * M_PI, 2);
      if (rel_err(spec.entries[j].energy, want) > 1e-8)
        return "root " + std::to_string(j) + " off";
    }
    return std::string();
  });

  return cases;
}

}  // namespace qgraph
