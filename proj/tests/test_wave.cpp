#include "doctest.h"

#include <cmath>

#include "spherewave/grid.hpp"
#include "spherewave/wave.hpp"

using namespace spherewave;

TEST_SUITE_BEGIN("wave");

namespace {

// zero-data-compatible manufactured pair: u* = sin(2 pi k.x)(1 - cos wt)
struct Manufactured {
  GridSpec spec;
  std::vector<double> k;
  double omega;
  double csq;

  Manufactured(const GridSpec& s, std::vector<double> kk, double w)
      : spec(s), k(std::move(kk)), omega(w) {
    double k2 = 0.0;
    for (double v : k) k2 += v * v;
    csq = 4.0 * M_PI * M_PI * k2;
  }
  Field u(double t) const {
    return sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
      double phase = 0.0;
      for (std::size_t d = 0; d < k.size(); ++d) phase += k[d] * x[d];
      return std::complex<double>(std::sin(2.0 * M_PI * phase) * (1.0 - std::cos(omega * t)));
    });
  }
  Field g(double t) const {
    return sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
      double phase = 0.0;
      for (std::size_t d = 0; d < k.size(); ++d) phase += k[d] * x[d];
      return std::complex<double>(
          std::sin(2.0 * M_PI * phase) *
          (omega * omega * std::cos(omega * t) + csq * (1.0 - std::cos(omega * t))));
    });
  }
};

double rel_l2(const Field& a, const Field& b) {
  return std::sqrt((a.values - b.values).abs2().sum() / std::max(b.values.abs2().sum(), 1e-300));
}

}  // namespace

TEST_CASE("propagator profile") {
  CHECK(propagator_hat(0.0, 3.7) == 0.0);
  CHECK(propagator_hat(1.3, 0.0) == doctest::Approx(1.3));
  CHECK(propagator_hat(1.3, 1e-12) == doctest::Approx(1.3).epsilon(1e-6));
  // tau = 1: sin(2 pi xi)/(2 pi xi), the half-order transform profile over 2 pi
  double xi = 0.4;
  CHECK(propagator_hat(1.0, xi) ==
        doctest::Approx(std::sin(2.0 * M_PI * xi) / (2.0 * M_PI * xi)).epsilon(1e-13));
  CHECK_THROWS_AS(propagator_hat(-1.0, 1.0), std::domain_error);
}

TEST_CASE("zero forcing gives zero solution") {
  GridSpec spec = make_grid(2, {1, 1}, 8, 1.0);
  WaveConfig config = make_wave_config(spec, 1.0, 4);
  std::vector<Field> g(config.steps + 1, make_field(spec));
  std::vector<Field> u = solve_wave(g, config);
  for (const auto& slice : u) CHECK(slice.values.abs().maxCoeff() == 0.0);
}

TEST_CASE("single constant-in-time mode matches the oscillator closed form") {
  GridSpec spec = make_grid(2, {1, 1}, 16, 1.0);
  const int kx = 1, ky = 0;
  const double c = 2.0 * M_PI * std::hypot(static_cast<double>(kx), static_cast<double>(ky));
  WaveConfig config = make_wave_config(spec, 1.0, 128);
  std::vector<Field> g(config.steps + 1);
  for (int m = 0; m <= config.steps; ++m)
    g[m] = sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
      return std::polar(1.0, 2.0 * M_PI * (kx * x[0] + ky * x[1]));
    });
  std::vector<Field> u = solve_wave(g, config);
  // u_hat(t) = (1 - cos(c t)) / c^2 for that mode; compare at an interior
  // slice where the closed form is well away from zero
  const int m = (3 * config.steps) / 4;
  double t = m * config.dt();
  Field expected = sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
    return std::polar(1.0, 2.0 * M_PI * (kx * x[0] + ky * x[1])) *
           ((1.0 - std::cos(c * t)) / (c * c));
  });
  CHECK(rel_l2(u[m], expected) < 5e-4);  // trapezoid error at dt = 1/128
}

TEST_CASE("manufactured solution convergence order") {
  GridSpec spec = make_grid(2, {1, 1}, 16, 1.0);
  Manufactured mms(spec, {1.0, 1.0}, 2.0);
  auto run = [&](int steps) {
    WaveConfig config = make_wave_config(spec, 1.0, steps);
    std::vector<Field> g(steps + 1);
    for (int m = 0; m <= steps; ++m) g[m] = mms.g(m * config.dt());
    std::vector<Field> u = solve_wave(g, config);
    CHECK(u[0].values.abs().maxCoeff() == 0.0);
    return rel_l2(u[steps], mms.u(1.0));
  };
  double e64 = run(64), e128 = run(128);
  CHECK(e64 < 2e-3);
  double ratio = e64 / e128;
  CHECK(ratio > 2.8);
  CHECK(ratio < 5.2);

  // zero initial data also holds in the discrete time derivative:
  // (u_1 - u_0)/dt = O(dt), here bounded through g(., 0)
  WaveConfig config = make_wave_config(spec, 1.0, 64);
  std::vector<Field> g(config.steps + 1);
  for (int m = 0; m <= config.steps; ++m) g[m] = mms.g(m * config.dt());
  std::vector<Field> u = solve_wave(g, config);
  double dudt0 = norm_lp(u[1], 2.0) / config.dt();
  CHECK(dudt0 <= 2.0 * config.dt() * norm_lp(g[0], 2.0));
}

TEST_CASE("residual oracle: small, quartering, linear") {
  GridSpec spec = make_grid(2, {1, 1}, 16, 1.0);
  Manufactured mms(spec, {1.0, 0.0}, 2.0);
  auto residual_size = [&](int steps) {
    WaveConfig config = make_wave_config(spec, 1.0, steps);
    std::vector<Field> g(steps + 1);
    for (int m = 0; m <= steps; ++m) g[m] = mms.g(m * config.dt());
    std::vector<Field> u = solve_wave(g, config);
    std::vector<Field> res = wave_residual(u, g, config);
    double num = 0.0, den = 0.0;
    for (int m = 1; m < steps; ++m) {
      num = std::max(num, norm_lp(res[m], 2.0));
      den = std::max(den, norm_lp(g[m], 2.0));
    }
    return num / den;
  };
  double r64 = residual_size(64), r128 = residual_size(128);
  CHECK(r64 < 0.05);
  CHECK(r64 / r128 > 2.8);
  CHECK(r64 / r128 < 5.2);

  // linearity in (u, g) jointly
  WaveConfig config = make_wave_config(spec, 1.0, 8);
  std::vector<Field> g(config.steps + 1), u(config.steps + 1);
  Rng rng(3);
  for (int m = 0; m <= config.steps; ++m) {
    g[m] = make_field(spec);
    u[m] = make_field(spec);
    for (Eigen::Index i = 0; i < g[m].values.size(); ++i) {
      g[m].values[i] = {rng.normal(), 0.0};
      u[m].values[i] = {rng.normal(), 0.0};
    }
  }
  std::vector<Field> r1 = wave_residual(u, g, config);
  std::vector<Field> u2 = u, g2 = g;
  for (int m = 0; m <= config.steps; ++m) {
    u2[m].values *= 2.0;
    g2[m].values *= 2.0;
  }
  std::vector<Field> r2 = wave_residual(u2, g2, config);
  for (int m = 1; m < config.steps; ++m)
    CHECK((r2[m].values - 2.0 * r1[m].values).abs().maxCoeff() < 1e-10);

  // zero everything -> zero residual
  std::vector<Field> zero(config.steps + 1, make_field(spec));
  std::vector<Field> rz = wave_residual(zero, zero, config);
  for (const auto& slice : rz) CHECK(slice.values.abs().maxCoeff() == 0.0);
}

TEST_CASE("discrete causality: delaying the forcing delays the solution") {
  GridSpec spec = make_grid(1, {1}, 16, 1.0);
  WaveConfig config = make_wave_config(spec, 1.0, 16);
  Rng rng(8);
  std::vector<Field> g(config.steps + 1, make_field(spec));
  for (int m = 1; m <= config.steps; ++m) {  // g(., 0) = 0 so the shift is exact
    g[m] = make_field(spec);
    for (Eigen::Index i = 0; i < g[m].values.size(); ++i) g[m].values[i] = {rng.normal(), 0.0};
  }
  std::vector<Field> delayed(config.steps + 1, make_field(spec));
  for (int m = 1; m <= config.steps; ++m) delayed[m] = g[m - 1];
  std::vector<Field> u = solve_wave(g, config);
  std::vector<Field> v = solve_wave(delayed, config);
  for (int m = 1; m <= config.steps; ++m)
    CHECK((v[m].values - u[m - 1].values).abs().maxCoeff() < 1e-12);
}

TEST_CASE("a priori probe validation and scaling") {
  GridSpec spec = make_grid(3, {2, 1}, 8, 2.0);
  WaveConfig config = make_wave_config(spec, 0.5, 8);
  std::vector<Field> g(config.steps + 1);
  Rng rng(21);
  for (int m = 0; m <= config.steps; ++m) {
    g[m] = make_field(spec);
    for (Eigen::Index i = 0; i < g[m].values.size(); ++i) g[m].values[i] = {rng.normal(), 0.0};
  }
  SobolevParams params{{0.4, 0.3}, 2.0};
  std::vector<AprioriRow> rows = apriori_check(g, params, config);
  CHECK(rows.size() == static_cast<std::size_t>(config.steps));

  // doubling g doubles both sides, ratio invariant
  std::vector<Field> g2 = g;
  for (auto& slice : g2) slice.values *= 2.0;
  std::vector<AprioriRow> rows2 = apriori_check(g2, params, config);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows2[i].lhs == doctest::Approx(2.0 * rows[i].lhs).epsilon(1e-10));
    CHECK(rows2[i].rhs == doctest::Approx(2.0 * rows[i].rhs).epsilon(1e-10));
    CHECK(rows2[i].ratio == doctest::Approx(rows[i].ratio).epsilon(1e-10));
  }

  // zero forcing: both sides vanish
  std::vector<Field> zero(config.steps + 1, make_field(spec));
  std::vector<AprioriRow> zrows = apriori_check(zero, params, config);
  CHECK(zrows.back().lhs == 0.0);
  CHECK(zrows.back().rhs == 0.0);

  // |s| too large for the corollary window
  CHECK_THROWS_AS(apriori_check(g, SobolevParams{{0.7, 0.4}, 2.0}, config), std::domain_error);
  // p outside |1/2 - 1/p| <= |s|/(N-1)
  CHECK_THROWS_AS(apriori_check(g, SobolevParams{{0.4, 0.3}, 20.0}, config), std::domain_error);
}

TEST_CASE("time-grid contracts") {
  GridSpec spec = make_grid(1, {1}, 8, 1.0);
  WaveConfig config = make_wave_config(spec, 1.0, 4);
  std::vector<Field> wrong(3, make_field(spec));
  CHECK_THROWS_AS(solve_wave(wrong, config), contract_error);
  CHECK_THROWS_AS(make_wave_config(spec, 1.0, 1), validation_error);
  CHECK_THROWS_AS(make_wave_config(spec, -1.0, 8), validation_error);
}

TEST_SUITE_END();
