#include "qgraph/asymptotics.hpp"

#include <cmath>

#include "qgraph/errors.hpp"
#include "qgraph/secular.hpp"

namespace qgraph {

SeriesCoefficients s_coefficients(const Potential& v, int order, int branch) {
  if (order < 1) throw ValidationError("s_coefficients requires order >= 1");
  if (branch != 1 && branch != -1) throw ValidationError("branch must be +1 or -1");
  SeriesCoefficients out;
  out.order = order;
  out.branch = branch;
  out.s.resize(order + 2);
  const Rational b(branch);
  out.s[0] = RationalPoly::constant(b);       // s_{-1}
  out.s[1] = RationalPoly();                  // s_0 = 0
  out.s[2] = v.expanded().scaled(Rational(1) / (2 * b));  // s_1 = V / (2 s_{-1})
  for (int j = 1; j < order; ++j) {
    // 2 s_{-1} s_{j+1} = -( s_j' + sum_{k=0}^{j} s_k s_{j-k} )
    RationalPoly acc = out.at(j).derivative();
    for (int k = 0; k <= j; ++k) acc += out.at(k) * out.at(j - k);
    out.s[j + 2] = acc.scaled(Rational(-1) / (2 * b));
  }
  return out;
}

double fprime_asymptotic(const Potential& v, int order, double t) {
  if (!(t > 0.0)) throw ValidationError("fprime_asymptotic requires t > 0");
  const SeriesCoefficients sc = s_coefficients(v, order, -1);
  double acc = -t;
  double tp = 1.0;
  for (int j = 1; j <= order; ++j) {
    tp /= t;
    const RationalPoly& sj = sc.at(j);
    if (!sj.is_zero()) acc += to_double(sj.coeff(0)) * tp;
  }
  return acc;
}

namespace {

// Diagonal entry Lambda_e(t) = -t + sum_j s_{e,j}(0) t^{-j} of the
// asymptotic pencil, for the potential seen from directed end e.
LaurentSeries lambda_series(const Potential& v, int order) {
  LaurentSeries lam = LaurentSeries::monomial(GaussianRational(Rational(-1)), 1);
  lam.known_from = -order;
  const SeriesCoefficients sc = s_coefficients(v, order, -1);
  for (int j = 1; j <= order; ++j) {
    const Rational c0 = sc.at(j).coeff(0);
    if (c0 != 0) lam.set(-j, GaussianRational(c0));
  }
  return lam;
}

}  // namespace

AsymptoticProfile leading_coefficient(const MetricGraph& graph, const MatchingConditions& mc,
                                      int order) {
  const int n = graph.end_count();
  if (mc.size() != n) throw ValidationError("matching conditions do not fit the graph");
  const int cap = n + 64;
  int j_requested = order > 0 ? order : n + 8;

  while (true) {
    const int J = std::min(j_requested, cap);
    std::vector<LaurentSeries> lambdas(n);
    for (int e = 0; e < n; ++e) lambdas[e] = lambda_series(graph.directed_potential(e), J);

    std::vector<std::vector<LaurentSeries>> pencil(n, std::vector<LaurentSeries>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        LaurentSeries entry = LaurentSeries::constant(mc.a[i][j]);
        if (!mc.b[i][j].is_zero()) entry += lambdas[j].scaled(mc.b[i][j]);
        pencil[i][j] = std::move(entry);
      }
    }

    LaurentSeries f = laurent_det(pencil);

    AsymptoticProfile profile;
    profile.truncation = J;
    const int lowest_known =
        f.known_from == LaurentSeries::INT_MIN_SENTINEL ? -J + n : f.known_from;
    profile.j_known = n - lowest_known;
    profile.c.assign(profile.j_known + 1, GaussianRational());
    for (int j = 0; j <= profile.j_known; ++j) profile.c[j] = f.at(n - j);

    for (int j = 0; j <= profile.j_known; ++j) {
      if (!profile.c[j].is_zero()) {
        profile.N = j;
        profile.c_n = profile.c[j];
        return profile;
      }
    }
    if (J >= cap)
      throw ProfileError(
          "leading coefficient undetermined: every known expansion coefficient vanishes; "
          "raise the truncation order");
    j_requested = std::min(2 * J, cap);
  }
}

int zero_order_p(const MetricGraph& graph, const MatchingConditions& mc) {
  const Eigen::MatrixXcd a = mc.a_complex();
  const Eigen::MatrixXcd b = mc.b_complex();
  const Eigen::MatrixXcd m0 = build_m(graph, SpectralPoint::from_gamma(0.0));
  const Eigen::MatrixXcd pencil = a + b * m0;

  double hadamard = 1.0;
  for (int i = 0; i < pencil.rows(); ++i) hadamard *= std::max(pencil.row(i).norm(), 1e-30);
  const std::complex<double> det0 = pencil.determinant();
  if (std::abs(det0) > 1e-8 * hadamard) return 0;

  // Slope of log|F(i sqrt(gamma))| against log gamma near zero.
  std::vector<double> lg, lf;
  for (double gamma : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
    const Eigen::MatrixXcd mg = build_m(graph, SpectralPoint::from_gamma(gamma));
    const std::complex<double> det = (a + b * mg).determinant();
    if (det == std::complex<double>(0.0, 0.0))
      throw ProfileError("P undetermined: secular function vanishes identically near 0");
    lg.push_back(std::log(gamma));
    lf.push_back(std::log(std::abs(det)));
  }
  const size_t n = lg.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += lg[i];
    sy += lf[i];
    sxx += lg[i] * lg[i];
    sxy += lg[i] * lf[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const int p = static_cast<int>(std::lround(slope));
  if (std::abs(slope - p) > 0.05 || p < 1) {
    throw ProfileError("P undetermined: log|F| slope " + std::to_string(slope) +
                       " does not snap to a positive integer");
  }
  return p;
}

LaurentSeries wire_log_u_series(const Potential& v, const Rational& length, int order) {
  // log u(L; t^2) = t L - log 2t + sum_j (int_0^L s_j^+) t^-j
  //                 - log(1 + sum_j (s_j^+(0) - s_j^-(0))/2 t^{-j-1}) + e.s.t.
  const SeriesCoefficients sm = s_coefficients(v, order, -1);

  LaurentSeries main = LaurentSeries::zero(-order);
  LaurentSeries bracket = LaurentSeries::zero(-order);
  for (int j = 1; j <= order; ++j) {
    // s_j^+ = (-1)^j s_j^-
    const Rational sign((j % 2 == 0) ? 1 : -1);
    const RationalPoly sp = sm.at(j).scaled(sign);
    const Rational integral = sp.antiderivative()(length);
    if (integral != 0) main.set(-j, GaussianRational(integral));
    if (j % 2 == 1) {
      // (s_j^+ - s_j^-)/2 = -s_j^-(0) for odd j
      const Rational w = -sm.at(j).coeff(0);
      if (w != 0 && -j - 1 >= -order) bracket.set(-j - 1, GaussianRational(w));
    }
  }
  return main - log1p_series(bracket);
}

LaurentSeries secular_log_ratio_series(const AsymptoticProfile& profile) {
  LaurentSeries x = LaurentSeries::zero(profile.N - profile.j_known);
  for (int j = profile.N + 1; j <= profile.j_known; ++j) {
    const GaussianRational r = profile.c[j] / profile.c_n;
    if (!r.is_zero()) x.set(profile.N - j, r);
  }
  return log1p_series(x);
}

}  // namespace qgraph
