#include "doctest.h"

#include <cmath>

#include "spherewave/grid.hpp"
#include "spherewave/sobolev.hpp"

using namespace spherewave;

TEST_SUITE_BEGIN("sobolev");

TEST_CASE("parameter admissibility") {
  // N=2, factors (1,1): 0 < s_i < 1/2 when 0 < |s| <= 1/2
  CHECK(validate_s_params({1, 1}, {0.25, 0.25}, 2.0).valid);
  // the size cap applies regardless of |s|: 0.6 >= N_i/2 = 0.5
  SValidation bad = validate_s_params({1, 1}, {0.6, 0.6}, 2.0);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violations.size() == 2);
  SValidation bad2 = validate_s_params({1, 1}, {0.45, 0.05}, 2.0);
  CHECK(bad2.valid);
  SValidation bad3 = validate_s_params({1, 1}, {0.5, 0.0}, 2.0);
  CHECK_FALSE(bad3.valid);
  CHECK(bad3.violations.size() == 2);
  // zero orders are always fine
  CHECK(validate_s_params({2, 1}, {0.0, 0.0}, 1.5).valid);
  // p out of range
  CHECK_FALSE(validate_s_params({1, 1}, {0.2, 0.2}, 1.0).valid);
}

TEST_CASE("s = 0 collapses to the plain norm") {
  GridSpec spec = make_grid(2, {1, 1}, 32, 4.0);
  Rng rng(2);
  Field f = make_field(spec);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = {rng.normal(), 0.0};
  for (double p : {1.5, 2.0, 3.0})
    CHECK(sobolev_norm(f, {{0.0, 0.0}, p}) == doctest::Approx(norm_lp(f, p)).epsilon(1e-12));
}

TEST_CASE("single mode weighted norm") {
  GridSpec spec = make_grid(2, {1, 1}, 64, 8.0);
  const int k0 = 1, k1 = 2;  // integer frequencies, exactly on the lattice
  Field f = sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
    return std::polar(1.0, 2.0 * M_PI * (k0 * x[0] + k1 * x[1]));
  });
  std::vector<double> s{0.3, 0.45};
  double expected = std::pow(2.0 * spec.half_width, 1.0) *  // (2L)^{N/2} with N=2
                    std::pow(1.0 + k0 * k0, 0.5 * s[0]) * std::pow(1.0 + k1 * k1, 0.5 * s[1]);
  CHECK(sobolev_norm(f, {s, 2.0}) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("monotonicity in s at p = 2") {
  GridSpec spec = make_grid(2, {1, 1}, 24, 3.0);
  Rng rng(9);
  Field f = make_field(spec);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = {rng.normal(), rng.normal()};
  double lo = sobolev_norm(f, {{0.1, 0.2}, 2.0});
  double hi = sobolev_norm(f, {{0.3, 0.2}, 2.0});
  CHECK(hi >= lo * (1.0 - 1e-12));
}

TEST_CASE("homogeneity") {
  GridSpec spec = make_grid(1, {1}, 32, 2.0);
  Rng rng(4);
  Field f = make_field(spec);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = {rng.normal(), rng.normal()};
  double base = sobolev_norm(f, {{0.3}, 2.5});
  Field g = f;
  g.values *= std::complex<double>(-2.5, 0.0);
  CHECK(sobolev_norm(g, {{0.3}, 2.5}) == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("pointwise embedding of the isotropic weight") {
  // prod_i (1+|xi_i|^2)^{s_i/2} <= (1+|xi|^2)^{|s|/2} on the whole lattice
  GridSpec spec = make_grid(3, {2, 1}, 16, 2.0);
  std::vector<double> s{0.4, 0.3};
  MultiplierTable product = make_b_s_table(spec, s);
  MultiplierTable isotropic =
      make_table(spec, Provenance::custom, [&](const std::vector<double>& xi) {
        double n2 = 0.0;
        for (double v : xi) n2 += v * v;
        return std::complex<double>(std::pow(1.0 + n2, 0.5 * (s[0] + s[1])));
      });
  for (Eigen::Index i = 0; i < product.values.size(); ++i)
    CHECK(product.values[i].real() <= isotropic.values[i].real() * (1.0 + 1e-12));
}

TEST_SUITE_END();
