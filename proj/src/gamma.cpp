#include "spherewave/gamma.hpp"

#include <cmath>

namespace spherewave {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> lanczos_core(std::complex<double> z) {
  // valid for Re z >= 0.5; argument shifted down by 1 internally
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  std::complex<double> t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

bool is_nonpositive_integer(std::complex<double> z, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  if (z.real() > tol) return false;
  return std::abs(z.real() - std::round(z.real())) <= tol;
}

std::complex<double> cgamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return M_PI / (std::sin(M_PI * z) * lanczos_core(1.0 - z));
  }
  return lanczos_core(z);
}

std::complex<double> crgamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
      return 0.0;  // exact pole of Gamma
    return std::sin(M_PI * z) * lanczos_core(1.0 - z) / M_PI;
  }
  return 1.0 / lanczos_core(z);
}

}  // namespace spherewave
