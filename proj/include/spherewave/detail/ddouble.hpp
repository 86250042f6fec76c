#ifndef SPHEREWAVE_DETAIL_DDOUBLE_HPP
#define SPHEREWAVE_DETAIL_DDOUBLE_HPP

#include <cmath>
#include <complex>

// Double-double (~31 decimal digit) arithmetic for the alternating Bessel
// series, whose partial sums can exceed the final value by many orders of
// magnitude before cancelling.

namespace spherewave::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double v = s - a;
  return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return quick_two_sum(s.hi, lo);
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, {-b.hi, -b.lo}); }

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, {q3, 0.0});
}

inline double to_double(dd a) { return a.hi + a.lo; }

// Complex value with double-double real and imaginary parts.
struct ddc {
  dd re, im;
};

inline ddc ddc_from(std::complex<double> z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }

inline ddc ddc_add(ddc a, ddc b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline ddc ddc_mul(ddc a, ddc b) {
  dd re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
  dd im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
  return {re, im};
}

inline ddc ddc_mul(ddc a, dd b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline ddc ddc_div(ddc a, ddc b) {
  dd denom = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
  dd re = dd_add(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
  dd im = dd_sub(dd_mul(a.im, b.re), dd_mul(a.re, b.im));
  return {dd_div(re, denom), dd_div(im, denom)};
}

inline std::complex<double> to_complex(ddc a) { return {to_double(a.re), to_double(a.im)}; }

inline double ddc_abs(ddc a) { return std::abs(to_complex(a)); }

}  // namespace spherewave::detail

#endif
