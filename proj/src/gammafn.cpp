#include "qgraph/gammafn.hpp"

#include <cmath>

namespace qgraph {

namespace {

// Godfrey's 15-term Lanczos set, g = 607/128.
constexpr double kG = 607.0 / 128.0;
constexpr double kCoef[15] = {0.99999999999999709182,
                              57.156235665862923517,
                              -59.597960355475491248,
                              14.136097974741747174,
                              -0.49191381609762019978,
                              0.33994649984811888699e-4,
                              0.46523628927048575665e-4,
                              -0.98374475304879564677e-4,
                              0.15808870322491248884e-3,
                              -0.21026444172410488319e-3,
                              0.21743961811521264320e-3,
                              -0.16431810653676389022e-3,
                              0.84418223983852743293e-4,
                              -0.26190838401581408670e-4,
                              0.36899182659531622704e-5};

std::complex<double> lgamma_core(std::complex<double> z) {
  // valid for Re z >= 1/2
  std::complex<double> acc = kCoef[0];
  for (int k = 1; k < 15; ++k) acc += kCoef[k] / (z - 1.0 + static_cast<double>(k));
  const std::complex<double> t = z + kG - 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
  if (z.real() >= 0.5) return lgamma_core(z);
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  const std::complex<double> s = std::sin(M_PI * z);
  return std::log(M_PI / s) - lgamma_core(1.0 - z);
}

std::complex<double> gamma_ratio_half(std::complex<double> s) {
  return s * std::exp(lgamma_complex(s - 0.5) - lgamma_complex(1.0 + s));
}

}  // namespace qgraph
