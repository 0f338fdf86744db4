#include "qgraph/secular.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>

#include "qgraph/errors.hpp"
#include "qgraph/parallel.hpp"

namespace qgraph {

namespace {

std::vector<BondSolution> solve_all(const MetricGraph& graph, const SpectralPoint& sp,
                                    const SolverOptions& opt) {
  std::vector<BondSolution> sols(graph.bond_count());
  parallel_for(graph.bond_count(), [&](int b) {
    const Bond& bond = graph.bond(b);
    sols[b] = solve_bond(bond.potential, bond.length_d(), sp, opt);
  });
  return sols;
}

std::complex<double> bond_phase(const Bond& b) {
  return std::exp(std::complex<double>(0.0, b.magnetic * b.length_d()));
}

}  // namespace

Eigen::MatrixXcd build_m(const MetricGraph& graph, const SpectralPoint& sp,
                         std::vector<BondSolution>* bonds_out, const SolverOptions& opt) {
  const int B = graph.bond_count();
  const auto sols = solve_all(graph, sp, opt);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * B, 2 * B);
  for (int b = 0; b < B; ++b) {
    const std::complex<double> phase = bond_phase(graph.bond(b));
    m(b, b) = sols[b].fprime_origin_fwd;
    m(B + b, B + b) = sols[b].fprime_origin_rev;
    // -f'(L) e^{+-i A L}; the two off-diagonals carry conjugate phases.
    m(B + b, b) = -sols[b].fprime_end * phase;
    m(b, B + b) = -sols[b].fprime_end * std::conj(phase);
  }
  if (bonds_out) *bonds_out = sols;
  return m;
}

std::complex<double> secular_value(const MetricGraph& graph, const MatchingConditions& mc,
                                   std::complex<double> z, const SolverOptions& opt) {
  std::vector<BondSolution> sols;
  const Eigen::MatrixXcd m = build_m(graph, SpectralPoint::from_z(z), &sols, opt);
  for (int b = 0; b < graph.bond_count(); ++b) {
    if (sols[b].dirichlet_flag)
      throw PoleError("secular function has a pole: bond " + std::to_string(b + 1) +
                      " is at a Dirichlet eigenvalue; use regularized_secular");
  }
  return (mc.a_complex() + mc.b_complex() * m).determinant();
}

namespace {

std::complex<double> regularized_from_sols(const MetricGraph& graph,
                                           const MatchingConditions& mc,
                                           const std::vector<BondSolution>& sols) {
  const int B = graph.bond_count();
  // M diag(u) with the identities u f'(0) = -v(L) and u f'(L) = -1
  // substituted, so every entry is entire in k.
  Eigen::MatrixXcd mu = Eigen::MatrixXcd::Zero(2 * B, 2 * B);
  for (int b = 0; b < B; ++b) {
    const std::complex<double> phase = bond_phase(graph.bond(b));
    mu(b, b) = -sols[b].v_end_fwd;
    mu(B + b, B + b) = -sols[b].v_end_rev;
    mu(B + b, b) = phase;
    mu(b, B + b) = std::conj(phase);
  }
  Eigen::MatrixXcd scaled_a = mc.a_complex();
  for (int b = 0; b < B; ++b) {
    scaled_a.col(b) *= sols[b].u_end;
    scaled_a.col(B + b) *= sols[b].u_end;
  }
  return (scaled_a + mc.b_complex() * mu).determinant();
}

Eigen::MatrixXcd pencil_from_sols(const MetricGraph& graph, const MatchingConditions& mc,
                                  const std::vector<BondSolution>& sols, double* scale_out) {
  const int B = graph.bond_count();
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(2 * B, 2 * B);
  Eigen::MatrixXcd phihat = Eigen::MatrixXcd::Zero(2 * B, 2 * B);
  for (int b = 0; b < B; ++b) {
    const std::complex<double> e = bond_phase(graph.bond(b));
    phi(b, b) = 1.0;                       // psi_b(0) = alpha_b
    phi(B + b, b) = e * sols[b].v_end_fwd; // psi_b(L) = e^{iAL}(alpha v(L) + beta u(L))
    phi(B + b, B + b) = e * sols[b].u_end;
    phihat(b, B + b) = 1.0;                // inward covariant derivative at 0 = beta_b
    phihat(B + b, b) = -e * sols[b].vprime_end;
    phihat(B + b, B + b) = -e * sols[b].uprime_end;
  }
  if (scale_out) {
    *scale_out = (mc.a_complex().cwiseAbs() * phi.cwiseAbs() +
                  mc.b_complex().cwiseAbs() * phihat.cwiseAbs())
                     .maxCoeff();
  }
  return mc.a_complex() * phi + mc.b_complex() * phihat;
}

}  // namespace

std::complex<double> regularized_secular(const MetricGraph& graph, const MatchingConditions& mc,
                                         double k, const SolverOptions& opt) {
  return regularized_from_sols(graph, mc, solve_all(graph, SpectralPoint::from_k(k), opt));
}

Eigen::MatrixXcd solution_pencil(const MetricGraph& graph, const MatchingConditions& mc,
                                 const SpectralPoint& sp, const SolverOptions& opt,
                                 double* scale_out) {
  return pencil_from_sols(graph, mc, solve_all(graph, sp, opt), scale_out);
}

std::complex<double> secular_log_f_it(const MetricGraph& graph, const MatchingConditions& mc,
                                      double t, const SolverOptions& opt) {
  const Eigen::MatrixXcd m = build_m(graph, SpectralPoint::from_t(t), nullptr, opt);
  const Eigen::MatrixXcd pencil = mc.a_complex() + mc.b_complex() * m;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pencil);
  std::complex<double> log_det{0.0, 0.0};
  for (int i = 0; i < pencil.rows(); ++i) {
    const std::complex<double> d = lu.matrixLU()(i, i);
    if (d == std::complex<double>(0.0, 0.0)) throw NumericError("singular secular pencil");
    log_det += std::log(d);
  }
  if (lu.permutationP().determinant() < 0) log_det += std::complex<double>(0.0, M_PI);
  // Normalize the phase to (-pi, pi]; derivatives use branch-free ratios.
  double im = std::remainder(log_det.imag(), 2.0 * M_PI);
  return {log_det.real(), im};
}

namespace {

struct Candidate {
  double k;
  double residual;
  bool from_sign_change;
};

double golden_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Spectrum find_eigenvalues(const MetricGraph& graph, const MatchingConditions& mc, double k_max,
                          const EigenSearchOptions& opt) {
  if (!(k_max > 0.0)) throw ValidationError("k_max must be positive");

  double max_len = 0.0;
  for (const auto& b : graph.bonds()) max_len = std::max(max_len, b.length_d());
  double dk = opt.grid_step;
  if (dk <= 0.0) dk = std::clamp(M_PI / (8.0 * max_len), 1e-4, 1e-2 * k_max);

  const int npts = static_cast<int>(std::ceil(k_max / dk)) + 1;
  std::vector<double> ks(npts);
  for (int i = 0; i < npts; ++i) ks[i] = std::min(i * dk, k_max);

  // One bond-solve sweep feeds both scan functions: the column-scaled
  // determinant G (sign changes) and the normalized smallest singular value
  // of the solution pencil (dips exactly at eigenvalues, no spurious zeros).
  std::vector<std::complex<double>> g(npts);
  std::vector<double> sig(npts);
  parallel_for(npts, [&](int i) {
    const auto sols = solve_all(graph, SpectralPoint::from_k(ks[i]), opt.solver);
    g[i] = regularized_from_sols(graph, mc, sols);
    double scale = 0.0;
    const Eigen::MatrixXcd t = pencil_from_sols(graph, mc, sols, &scale);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
    const auto& sv = svd.singularValues();
    sig[i] = sv(sv.size() - 1) / std::max({sv(0), scale, 1e-300});
  });

  double max_abs = 0.0, max_im = 0.0;
  for (const auto& v : g) {
    max_abs = std::max(max_abs, std::abs(v));
    max_im = std::max(max_im, std::fabs(v.imag()));
  }
  const bool real_mode = max_im <= 1e-9 * std::max(max_abs, 1e-300);

  auto gval = [&](double k) { return regularized_secular(graph, mc, k, opt.solver); };
  auto sigma_min = [&](double k) {
    const Eigen::MatrixXcd t = solution_pencil(graph, mc, SpectralPoint::from_k(k), opt.solver);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
    return svd.singularValues()(t.rows() - 1);
  };

  std::vector<Candidate> candidates;
  candidates.push_back({0.0, std::abs(g[0]), false});

  if (real_mode) {
    for (int i = 0; i + 1 < npts; ++i) {
      double fa = g[i].real(), fb = g[i + 1].real();
      if (fa == 0.0) continue;  // grid hit; the minimum pass will catch it
      if ((fa > 0) == (fb > 0)) continue;
      double a = ks[i], b = ks[i + 1];
      while (b - a > opt.refine_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = gval(mid).real();
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fm > 0) == (fa > 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      candidates.push_back({root, std::abs(gval(root)), true});
    }
  }

  // Dips of sigma_min: catches even-order zeros, the complex-valued case,
  // and roots masked in |G| by adjacent bond-Dirichlet scaling zeros.
  for (int i = 1; i + 1 < npts; ++i) {
    if (!(sig[i] <= sig[i - 1] && sig[i] <= sig[i + 1] &&
          (sig[i] < sig[i - 1] || sig[i] < sig[i + 1])))
      continue;
    if (sig[i] > opt.dip_accept) continue;
    const double kstar =
        golden_minimize(sigma_min, ks[i - 1], ks[i + 1], opt.refine_tol * 0.1);
    candidates.push_back({kstar, std::abs(gval(kstar)), false});
  }

  // Polish sign-change candidates on sigma_min too: it vanishes linearly in
  // k regardless of the root order of the scaled determinant, so its
  // refinement does not stall in the |G| noise floor.
  for (auto& cand : candidates) {
    if (cand.k <= 0.0 || !cand.from_sign_change) continue;
    const double half = 5e-4 * std::max(1.0, cand.k);
    const double lo = std::max(0.0, cand.k - half);
    cand.k = golden_minimize(sigma_min, lo, cand.k + half, 1e-11);
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.k < b.k; });

  Spectrum spec;
  spec.k_max = k_max;
  double last_accepted = -1.0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    double k = candidates[i].k;
    if (i + 1 < candidates.size() && candidates[i + 1].k - k < 10 * opt.refine_tol &&
        candidates[i + 1].k - k > 1e-13) {
      spec.warnings.push_back("unresolved cluster near k = " + std::to_string(k) +
                              "; multiplicities merged");
    }
    if (last_accepted >= 0.0 && k - last_accepted < 1e-8 * std::max(1.0, k)) continue;

    double pencil_scale = 0.0;
    const Eigen::MatrixXcd t =
        solution_pencil(graph, mc, SpectralPoint::from_k(k), opt.solver, &pencil_scale);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
    const auto& sv = svd.singularValues();
    const double smax = std::max(sv(0), pencil_scale);
    int mult = 0;
    for (int j = 0; j < sv.size(); ++j)
      if (sv(j) <= opt.null_tol * smax) ++mult;
    if (mult == 0) continue;  // spurious scaling zero

    EigenvalueEntry entry;
    entry.energy = k * k;
    entry.multiplicity = mult;
    entry.secular_residual = candidates[i].residual;
    entry.null_sigma_ratio = sv(sv.size() - 1) / smax;
    spec.entries.push_back(entry);
    last_accepted = k;
  }
  return spec;
}

}  // namespace qgraph
