#include "spherewave/bessel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spherewave/common.hpp"
#include "spherewave/detail/ddouble.hpp"
#include "spherewave/gamma.hpp"

namespace spherewave {

using detail::dd;
using detail::ddc;
using std::complex;

complex<double> hankel_bracket(BesselOrder order, int m) {
  if (m < 0) throw std::domain_error("hankel_bracket: m must be >= 0");
  // Gamma(x+m)/Gamma(x-m) = prod_{l=0}^{2m-1} (x - m + l),  x = ord + 1/2
  complex<double> x = order.value() + 0.5;
  complex<double> prod = 1.0;
  for (int l = 0; l < 2 * m; ++l) prod *= x - static_cast<double>(m) + static_cast<double>(l);
  double mfact = 1.0;
  for (int i = 2; i <= m; ++i) mfact *= i;
  return prod / mfact;
}

AsymptoticCoeffs asymptotic_coeffs(BesselOrder order, int k) {
  if (k < 1) throw std::domain_error("asymptotic_coeffs: k must be >= 1");
  AsymptoticCoeffs c;
  c.k = k;
  c.bracket_even = hankel_bracket(order, 2 * k);
  c.bracket_odd = hankel_bracket(order, 2 * k - 1);
  double sign_even = (k % 2 == 0) ? 1.0 : -1.0;
  c.a_k = sign_even * c.bracket_even * std::pow(2.0, -2 * k);
  c.b_k = -sign_even * c.bracket_odd * std::pow(2.0, -2 * k + 1);
  return c;
}

complex<double> bessel_series(BesselOrder order, double rho, int terms) {
  if (rho < 0.0) throw std::domain_error("bessel_series: rho must be >= 0");
  if (terms < 1) throw std::domain_error("bessel_series: terms must be >= 1");
  const complex<double> nu = order.value();

  if (rho == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu.real() > 0.0) return 0.0;
    throw std::domain_error("bessel_series: rho = 0 undefined for Re order <= 0");
  }

  // Index of the first term whose Gamma factor is finite. Negative integer
  // orders start later because 1/Gamma vanishes there.
  int k0 = 0;
  while (is_nonpositive_integer(nu + static_cast<double>(k0) + 1.0) && k0 < 1024) ++k0;

  const double half = 0.5 * rho;
  if ((nu.real() + 2.0 * k0) * std::log(half) > 690.0)
    throw std::range_error(
        "bessel_series: leading term overflows; use the asymptotic path");

  complex<double> lead = std::pow(complex<double>(half), nu + 2.0 * static_cast<double>(k0)) *
                         crgamma(nu + static_cast<double>(k0) + 1.0);
  double k0fact = 1.0;
  for (int i = 2; i <= k0; ++i) k0fact *= i;
  lead /= k0fact;
  if (k0 % 2 == 1) lead = -lead;

  // sum = lead * S with S accumulated in double-double; the term recurrence
  //   t_{k+1} = -t_k (rho/2)^2 / ((k+1)(nu+k+1))
  // keeps every ingredient exact or correctly rounded at dd precision, so
  // the huge alternating partial sums cancel without losing the result.
  const dd half_sq = detail::two_prod(half, half);
  ddc term{{1.0, 0.0}, {0.0, 0.0}};
  ddc sum = term;
  double sum_peak = 1.0;
  for (int k = k0 + 1; k < k0 + terms; ++k) {
    double kk = static_cast<double>(k);
    // denominator k * (nu + k), assembled from exact products
    dd dre = detail::two_prod(kk, nu.real() + kk);
    dd dim = detail::two_prod(kk, nu.imag());
    ddc ratio = detail::ddc_div({{-half_sq.hi, -half_sq.lo}, {0.0, 0.0}}, {dre, dim});
    term = detail::ddc_mul(term, ratio);
    sum = detail::ddc_add(sum, term);
    double tmag = detail::ddc_abs(term);
    sum_peak = std::max(sum_peak, tmag);
    if (tmag > 1e280)
      throw std::range_error(
          "bessel_series: terms overflow before convergence; use the asymptotic path");
    if (tmag < 1e-16 * std::max(detail::ddc_abs(sum), 1e-300)) break;
  }
  return lead * detail::to_complex(sum);
}

double switchover_rho(BesselOrder order) {
  double s = std::abs(order.a) + std::abs(order.b);
  return std::max(12.0, 2.0 * s * s);
}

complex<double> bessel_asymptotic(BesselOrder order, double rho, int terms) {
  if (rho <= 0.0) throw std::domain_error("bessel_asymptotic: rho must be > 0");
  if (rho < switchover_rho(order)) {
    std::ostringstream msg;
    msg << "bessel_asymptotic: rho = " << rho << " below switchover "
        << switchover_rho(order) << "; use the series path";
    throw regime_error(msg.str());
  }
  if (terms < 0) throw std::domain_error("bessel_asymptotic: terms must be >= 0");

  const complex<double> nu = order.value();
  const complex<double> omega = rho - nu * (M_PI / 2.0) - M_PI / 4.0;
  const complex<double> c = std::cos(omega);
  const complex<double> s = std::sin(omega);

  complex<double> cos_sum = 1.0;
  complex<double> sin_sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    AsymptoticCoeffs cf = asymptotic_coeffs(order, k);
    if (k <= terms - 1) cos_sum += cf.a_k * std::pow(rho, -2 * k);
    sin_sum += cf.b_k * std::pow(rho, -2 * k + 1);
  }
  double pref = std::sqrt(2.0 / (M_PI * rho));
  return pref * (c * cos_sum - s * sin_sum);
}

namespace {

// grow the correction count until the next sine-type correction stops
// shrinking (asymptotic-series optimal truncation), capped at 18
int auto_terms(BesselOrder order, double rho) {
  double prev = std::numeric_limits<double>::max();
  int best = 0;
  for (int k = 1; k <= 18; ++k) {
    AsymptoticCoeffs cf = asymptotic_coeffs(order, k);
    double mag = std::abs(cf.b_k) * std::pow(rho, -2 * k + 1) +
                 std::abs(cf.a_k) * std::pow(rho, -2 * k);
    if (mag >= prev || mag < 1e-18) {
      best = k - (mag >= prev ? 1 : 0);
      break;
    }
    prev = mag;
    best = k;
  }
  return std::max(best, 1);
}

}  // namespace

complex<double> bessel_j(BesselOrder order, double rho, BesselMethod method, int terms) {
  switch (method) {
    case BesselMethod::series:
      return bessel_series(order, rho, terms > 0 ? terms : 400);
    case BesselMethod::asymptotic:
      return bessel_asymptotic(order, rho, terms > 0 ? terms : auto_terms(order, rho));
    case BesselMethod::automatic:
    default:
      if (rho < switchover_rho(order)) return bessel_series(order, rho, terms > 0 ? terms : 400);
      return bessel_asymptotic(order, rho, terms > 0 ? terms : auto_terms(order, rho));
  }
}

double recurrence_residual(BesselOrder order, double rho) {
  if (rho <= 0.0) throw std::domain_error("recurrence_residual: rho must be > 0");
  BesselOrder below{order.a - 1.0, order.b};
  BesselOrder above{order.a + 1.0, order.b};
  complex<double> lhs = bessel_j(below, rho) + bessel_j(above, rho);
  complex<double> rhs = 2.0 * (order.value() / rho) * bessel_j(order, rho);
  return std::abs(lhs - rhs);
}

double switchover_disagreement(BesselOrder order, int samples) {
  double lo = switchover_rho(order), hi = 2.0 * lo;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double rho = lo + (hi - lo) * i / (samples - 1.0);
    complex<double> s = bessel_series(order, rho, 600);
    complex<double> a = bessel_asymptotic(order, rho, auto_terms(order, rho));
    double scale = std::max({std::abs(s), std::abs(a), 1e-300});
    worst = std::max(worst, std::abs(s - a) / scale);
  }
  return worst;
}

}  // namespace spherewave
