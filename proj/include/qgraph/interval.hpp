#pragma once

#include <complex>

#include "qgraph/potential.hpp"

namespace qgraph {

// Spectral parameter of the interval problem (-d^2/dx^2 + V) psi = mu * psi.
// The frame tag records which of the paper's parametrizations produced the
// point (mu = k^2, mu = -gamma, mu = -t^2, mu = z^2); it is reporting-only.
struct SpectralPoint {
  std::complex<double> mu{0.0, 0.0};
  enum class Frame { Energy, Gamma, ImagAxis, ComplexZ } frame = Frame::Energy;

  static SpectralPoint from_energy(double e) { return {{e, 0.0}, Frame::Energy}; }
  static SpectralPoint from_k(double k) { return {{k * k, 0.0}, Frame::Energy}; }
  static SpectralPoint from_gamma(double gamma) { return {{-gamma, 0.0}, Frame::Gamma}; }
  static SpectralPoint from_t(double t) { return {{-t * t, 0.0}, Frame::ImagAxis}; }
  static SpectralPoint from_z(std::complex<double> z) { return {z * z, Frame::ComplexZ}; }

  bool is_real() const { return mu.imag() == 0.0; }
};

// Endpoint data of the two interval bases at one spectral point.
// u solves u(0)=0, u'(0)=1; v solves v(0)=1, v'(0)=0.  The f-basis values
// follow from the constant Wronskian: f'(0) = -v(L)/u(L), f'(L) = -1/u(L).
// For real mu the logarithmic representation (log_abs_u_end, sign_u_end)
// stays finite even when u(L) ~ e^{tL} overflows the double range.
struct BondSolution {
  std::complex<double> u_end{};
  std::complex<double> v_end_fwd{};
  std::complex<double> v_end_rev{};
  std::complex<double> uprime_end{};
  std::complex<double> vprime_end{};
  std::complex<double> fprime_origin_fwd{};
  std::complex<double> fprime_origin_rev{};
  std::complex<double> fprime_end{};
  double log_abs_u_end = 0.0;
  double sign_u_end = 1.0;
  bool log_form = false;        // u(L) not representable as a double
  bool dirichlet_flag = false;  // |u(L)| ~ 0: bond Dirichlet eigenvalue
  double wronskian_residual = 0.0;
  double direction_residual = 0.0;  // relative u(L) mismatch fwd vs reversed
};

struct SolverOptions {
  double atol = 1e-12;
  double rtol = 1e-11;
  double riccati_threshold = 40.0;  // switch to log-derivative form when t*L exceeds this
  double dirichlet_tol = 1e-10;     // relative flag threshold on |u(L)|
};

// Solves both interval IVPs in both bond directions and assembles the
// f-basis boundary data.  Flagged (dirichlet_flag) results are ordinary
// values, not errors; u_end and v_end stay usable for pole-free products.
BondSolution solve_bond(const Potential& v, double length, const SpectralPoint& mu,
                        const SolverOptions& opt = {});

}  // namespace qgraph
