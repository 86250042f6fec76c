#include "doctest.h"

#include <cmath>
#include <complex>

#include "spherewave/gamma.hpp"
#include "spherewave/grid.hpp"
#include "spherewave/multipliers.hpp"

using namespace spherewave;
using std::complex;

TEST_SUITE_BEGIN("multipliers");

TEST_CASE("omega transform profile values") {
  // N=2, alpha=1, limit at xi -> 0 is pi / Gamma(2) = pi
  CHECK(std::abs(omega_hat(complex<double>(1.0), 0.0, 2) - complex<double>(M_PI)) < 1e-13);
  CHECK(std::abs(omega_hat(complex<double>(1.0), 1e-9, 2) - complex<double>(M_PI)) < 1e-6);
  // N=3, alpha=0: closed form sin(2 pi xi)/(pi xi), zero at xi = 0.5
  CHECK(std::abs(omega_hat(complex<double>(0.0), 0.5, 3)) < 1e-13);
  double xi = 0.25;
  CHECK(omega_hat(complex<double>(0.0), xi, 3).real() ==
        doctest::Approx(std::sin(2.0 * M_PI * xi) / (M_PI * xi)).epsilon(1e-12));
  // radial by construction: function of |xi| only, nothing to rotate
  CHECK(omega_hat(complex<double>(0.7), 1.3, 2) == omega_hat(complex<double>(0.7), 1.3, 2));
  // real for real order
  for (double alpha : {-0.5, 0.0, 1.0, 2.5})
    for (double xi : {0.0, 0.3, 1.0, 4.0})
      CHECK(omega_hat(complex<double>(alpha), xi, 3).imag() == 0.0);
}

TEST_CASE("series route reproduces the transform") {
  // z arbitrary, xi = 0: pi^{N/2 - z} / Gamma(N/2 + 1 - z)
  complex<double> z{0.4, -0.2};
  for (int N : {2, 3}) {
    complex<double> expected =
        std::pow(complex<double>(M_PI), N / 2.0 - z) * crgamma(N / 2.0 + 1.0 - z);
    CHECK(std::abs(omega_hat_series(z, 0.0, N, 40) - expected) < 1e-12 * std::abs(expected));
  }
  // N=3, z=1 equals the alpha = 0 transform
  for (double xi : {0.1, 0.5, 1.0, 1.7, 2.0}) {
    complex<double> a = omega_hat_series({1.0, 0.0}, xi, 3, 60);
    complex<double> b = omega_hat(complex<double>(0.0), xi, 3);
    CHECK(std::abs(a - b) < 1e-8);
  }
}

TEST_CASE("series partial sums alternate and converge for small xi") {
  // consecutive partial sums bracket the limit for an alternating series
  const int N = 2;
  const double xi = 0.8;
  complex<double> limit = omega_hat_series({0.5, 0.0}, xi, N, 80);
  double prev_err = 1e300;
  for (int terms = 2; terms <= 12; ++terms) {
    double err = std::abs(omega_hat_series({0.5, 0.0}, xi, N, terms) - limit);
    CHECK(err < prev_err + 1e-15);
    prev_err = err;
  }
}

TEST_CASE("kernel side values and regime") {
  // alpha = 1 is the unit-ball indicator
  CHECK(omega_kernel(1.0, 0.3).real() == doctest::Approx(1.0));
  CHECK(omega_kernel(1.0, 0.999).real() == doctest::Approx(1.0));
  CHECK(omega_kernel(1.0, 1.5) == complex<double>(0.0));
  CHECK(omega_kernel({2.0, 0.0}, 1.5) == complex<double>(0.0));
  // alpha = 1/2 at the origin: 1/pi
  CHECK(omega_kernel(0.5, 0.0).real() == doctest::Approx(1.0 / M_PI).epsilon(1e-13));
  CHECK_THROWS_AS(omega_kernel({-0.5, 0.0}, 0.3), regime_error);
}

TEST_CASE("sampled kernel transform matches the profile for alpha >= 1") {
  GridSpec spec = make_grid(2, {1, 1}, 128, 4.0);
  for (double alpha : {1.0, 2.0}) {
    Field kernel = sample_omega_kernel(spec, alpha);
    Field hat = transform(kernel, Direction::forward);
    std::vector<int> idx;
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < spec.point_count(); ++i) {
      spec.decode(i, idx);
      double xi2 = 0.0;
      for (int d = 0; d < 2; ++d) xi2 += spec.freq(idx[d]) * spec.freq(idx[d]);
      double xin = std::sqrt(xi2);
      if (xin > spec.max_freq() / 2.0) continue;  // aliasing-controlled zone
      complex<double> exact = omega_hat(complex<double>(alpha), xin, 2);
      worst = std::max(worst, std::abs(hat.values[static_cast<Eigen::Index>(i)] - exact));
      scale = std::max(scale, std::abs(exact));
    }
    CHECK(worst / scale < 0.03);
  }
}

TEST_CASE("product weight values") {
  CHECK(b_s_hat({1.0}, {0.0}) == doctest::Approx(1.0));
  CHECK(b_s_hat({1.0}, {1.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(b_s_hat({0.0, 0.0}, {3.0, 7.0}) == doctest::Approx(1.0));
}

TEST_CASE("composite symbol cutoff and decay") {
  // vanishes on |xi| <= 1
  OmegaParams params{{0.5, 0.0}, 0.0};
  CHECK(sigma_symbol(params, {0.0, 0.0}, 3, {0.3, 0.4}, 2) == complex<double>(0.0));
  CHECK(sigma_symbol(params, {0.0, 0.0}, 3, {1.0, 0.0}, 2) == complex<double>(0.0));

  // alpha - r = -(N-1)/2 makes |sigma| flat at large |xi| (log-log slope 0)
  const int N = 2;
  OmegaParams flat{{-0.25, 0.0}, 0.25};  // alpha - r = -0.5 = -(N-1)/2
  std::vector<double> xs, ys;
  for (double xi : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    double v = std::abs(sigma_symbol(flat, {0.0, 0.0}, 0, {xi / M_SQRT2, xi / M_SQRT2}, N));
    xs.push_back(std::log(xi));
    ys.push_back(std::log(v));
  }
  LinFit fit = linear_fit(xs, ys);
  CHECK(std::abs(fit.slope) < 0.02);
}

TEST_CASE("symbol class checker") {
  GridSpec spec = make_grid(2, {1, 1}, 32, 2.0);

  // constant symbol passes with rho = 0 and unit ratios
  auto one = [](const std::vector<double>&) { return complex<double>(1.0); };
  ClassCheckReport rep = symbol_class_check(one, spec, SymbolClass{{0.0, 0.0}}, 2);
  CHECK(rep.pass);
  CHECK(rep.worst_ratio <= 1.0 + 1e-12);

  // (1 + |xi_1|^2)^{-rho/2} lands in its own class
  double rho1 = 0.3;
  auto decay = [rho1](const std::vector<double>& xi) {
    return complex<double>(std::pow(1.0 + xi[0] * xi[0], -0.5 * rho1));
  };
  CHECK(symbol_class_check(decay, spec, SymbolClass{{rho1, 0.0}}, 2).pass);

  // |xi| grows: fails every class
  auto grow = [](const std::vector<double>& xi) {
    return complex<double>(std::hypot(xi[0], xi[1]));
  };
  CHECK_FALSE(symbol_class_check(grow, spec, SymbolClass{{0.0, 0.0}}, 2).pass);
}

TEST_CASE("composite symbol sits in the expected class") {
  // generic (alpha, r, s): m = r - alpha + |s| clipped to (N-1)/2
  GridSpec spec = make_grid(2, {1, 1}, 32, 2.0);
  OmegaParams params{{0.1, 0.0}, 0.2};
  std::vector<double> s{0.2, 0.2};
  double m = std::min(params.r - params.alpha.real() + 0.4, 0.5);
  SymbolClass cls{{m / 2.0, m / 2.0}};
  auto fn = [&](const std::vector<double>& xi) {
    return sigma_symbol(params, s, 2, {std::abs(xi[0]), std::abs(xi[1])}, 2);
  };
  CHECK(symbol_class_check(fn, spec, cls, 2).pass);
}

TEST_CASE("symbol class admissibility window") {
  SymbolClass good{{0.26, 0.26}};
  CHECK(good.violations({1, 1}).empty());
  SymbolClass ok2{{0.45, 0.05}};  // m = 0.5: both window bounds hold
  CHECK(ok2.violations({1, 1}).empty());
  SymbolClass cap{{0.6, 0.1}};  // the size cap rho_i < N_i/2 applies unconditionally
  CHECK(cap.violations({1, 1}).size() == 1);
  SymbolClass edge{{0.5, 0.0}};  // m = 0.5: rho_1 hits the cap, rho_2 misses the lower bound
  CHECK(edge.violations({1, 1}).size() == 2);
}

TEST_CASE("apply multiplier basics") {
  GridSpec spec = make_grid(2, {1, 1}, 24, 2.0);
  Rng rng(5);
  Field f = make_field(spec);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = {rng.normal(), rng.normal()};

  MultiplierTable onetab = make_table(spec, Provenance::custom,
                                      [](const std::vector<double>&) {
                                        return complex<double>(1.0);
                                      });
  Field same = apply_multiplier(f, onetab);
  CHECK((same.values - f.values).abs().maxCoeff() < 1e-12);

  MultiplierTable bs = make_b_s_table(spec, {0.4, 0.7});
  MultiplierTable bs_inv = make_b_s_table(spec, {0.4, 0.7}, true);
  Field round = apply_multiplier(apply_multiplier(f, bs), bs_inv);
  double rel = (round.values - f.values).abs().maxCoeff() / f.values.abs().maxCoeff();
  CHECK(rel < 1e-10);

  // Plancherel bound against the sup of the table
  double sup = bs.values.abs().maxCoeff();
  CHECK(norm_lp(apply_multiplier(f, bs), 2.0) <= sup * norm_lp(f, 2.0) * (1.0 + 1e-10));

  GridSpec other = make_grid(2, {1, 1}, 16, 2.0);
  CHECK_THROWS_AS(apply_multiplier(make_field(other), bs), contract_error);
}

TEST_CASE("phase factor preserves the L2 operator ratio") {
  GridSpec spec = make_grid(2, {1, 1}, 24, 2.0);
  MultiplierTable sigma = make_b_s_table(spec, {0.3, 0.3}, true);
  MultiplierTable phased = with_phase(sigma, PhaseSign::plus);
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Field f = make_field(spec);
    for (Eigen::Index i = 0; i < f.values.size(); ++i)
      f.values[i] = {rng.normal(), rng.normal()};
    double bare = norm_lp(apply_multiplier(f, sigma), 2.0);
    double carried = norm_lp(apply_multiplier(f, phased), 2.0);
    CHECK(carried == doctest::Approx(bare).epsilon(1e-10));
  }
}

TEST_SUITE_END();
