#ifndef SPHEREWAVE_BESSEL_HPP
#define SPHEREWAVE_BESSEL_HPP

#include <complex>

namespace spherewave {

// Bessel functions J_{a+ib} of complex order. Two evaluation paths are kept:
// the ascending power series (double-double accumulation, reliable up to
// moderate argument) and the large-argument expansion in inverse powers.
// An automatic dispatcher switches between them at switchover_rho().

struct BesselOrder {
  double a = 0.0;  // real part of the order
  double b = 0.0;  // imaginary part of the order
  std::complex<double> value() const { return {a, b}; }
};

// Hankel bracket symbol [ord, m] = Gamma(1/2+ord+m) / (m! Gamma(1/2+ord-m)),
// computed as a finite product so Gamma poles collapse to exact zeros.
std::complex<double> hankel_bracket(BesselOrder order, int m);

struct AsymptoticCoeffs {
  int k = 0;
  std::complex<double> a_k;           // cosine-series coefficient
  std::complex<double> b_k;           // sine-series coefficient
  std::complex<double> bracket_even;  // [ord, 2k]
  std::complex<double> bracket_odd;   // [ord, 2k-1]
};

// a_k = (-1)^k [ord,2k] 2^{-2k},  b_k = (-1)^{k+1} [ord,2k-1] 2^{-2k+1}
AsymptoticCoeffs asymptotic_coeffs(BesselOrder order, int k);

// Partial sum of sum_k (-1)^k (rho/2)^{ord+2k} / (k! Gamma(ord+k+1)).
// `terms` caps the number of summed terms; convergence is declared when the
// last term falls below 1e-16 of the running sum.
std::complex<double> bessel_series(BesselOrder order, double rho, int terms = 400);

// Large-argument expansion with `terms` = N sine-type corrections. The
// truncation keeps all corrections of order below rho^{-2N}: sine terms
// k = 1..N and cosine terms k = 1..N-1, so the remainder is O(rho^{-2N-1/2})
// relative to the rho^{-1/2} prefactor. Requires rho >= switchover_rho.
std::complex<double> bessel_asymptotic(BesselOrder order, double rho, int terms);

// rho* = max(12, 2 (|a|+|b|)^2)
double switchover_rho(BesselOrder order);

enum class BesselMethod { series, asymptotic, automatic };

std::complex<double> bessel_j(BesselOrder order, double rho,
                              BesselMethod method = BesselMethod::automatic,
                              int terms = 0);

// |J_{ord-1}(rho) + J_{ord+1}(rho) - 2 (ord/rho) J_ord(rho)| with all three
// values produced by the automatic evaluator.
double recurrence_residual(BesselOrder order, double rho);

// Max relative disagreement of the two paths over a sample of [rho*, 2 rho*].
// The library considers itself miscalibrated when this exceeds 1e-6.
double switchover_disagreement(BesselOrder order, int samples = 17);

}  // namespace spherewave

#endif
