#pragma once

#include <complex>

namespace qgraph {

// Lanczos log-gamma for complex arguments (principal branch), with the
// reflection formula for Re z < 1/2.  Relative accuracy ~1e-13 on the
// strips this project uses.
std::complex<double> lgamma_complex(std::complex<double> z);

// Gamma(s - 1/2) / Gamma(s), computed as s * Gamma(s-1/2) / Gamma(1+s) so
// the s = 0 point is regular (the ratio vanishes there).
std::complex<double> gamma_ratio_half(std::complex<double> s);

}  // namespace qgraph
