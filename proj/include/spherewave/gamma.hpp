#ifndef SPHEREWAVE_GAMMA_HPP
#define SPHEREWAVE_GAMMA_HPP

#include <complex>

namespace spherewave {

// Gamma function for complex argument, Lanczos approximation (g = 7, 9
// terms) with reflection for Re z < 1/2. Relative accuracy ~1e-14 away
// from the poles.
std::complex<double> cgamma(std::complex<double> z);

// 1/Gamma, entire: evaluates to exactly 0 at nonpositive integers.
std::complex<double> crgamma(std::complex<double> z);

bool is_nonpositive_integer(std::complex<double> z, double tol = 1e-12);

}  // namespace spherewave

#endif
