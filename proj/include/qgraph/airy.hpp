#pragma once

namespace qgraph {

// Locally implemented Airy functions on z >= -8 (the range the oracles
// probe).  Maclaurin series in long double for small |z|, a Taylor-step
// continuation of the ODE y'' = z y for Ai on the cancellation band, and
// the standard asymptotic expansions for large positive z.
double airy_ai(double z);
double airy_bi(double z);
double airy_ai_prime(double z);
double airy_bi_prime(double z);

// Ai'(z)/Ai(z), overflow-free for large positive z (the exponential prefactors
// cancel in the ratio).
double airy_ai_log_deriv(double z);

}  // namespace qgraph
