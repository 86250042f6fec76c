#include "doctest.h"

#include <cmath>

#include "spherewave/grid.hpp"
#include "spherewave/kernelcheck.hpp"

using namespace spherewave;

TEST_SUITE_BEGIN("kernelcheck");

namespace {
const KernelSymbol kSymbol{{0.26, 0.26}, PhaseSign::plus};
}

TEST_CASE("nyquist guard names the required resolution") {
  GridSpec tiny = make_grid(2, {1, 1}, 32, 2.0);  // max freq 4 < 2^{j+1} for j = 3
  CHECK_THROWS_AS(lambda_kernel(3, {0}, kSymbol, tiny), resolution_error);
  GridSpec ok = scan_grid(2, {1, 1}, 3, 1.25);
  CHECK(ok.max_freq() >= 16.0);
  Field k = lambda_kernel(3, {0}, kSymbol, ok);
  CHECK(norm_lp(k, 1.0) > 0.0);
}

TEST_CASE("kernel has zero mean: the shell excludes the zero frequency") {
  GridSpec spec = scan_grid(2, {1, 1}, 3, 1.25);
  Field k = lambda_kernel(3, {0}, kSymbol, spec);
  std::complex<double> mean = 0.0;
  for (Eigen::Index i = 0; i < k.values.size(); ++i) mean += k.values[i];
  mean *= std::pow(spec.spacing(), 2);
  CHECK(std::abs(mean) < 1e-10);
}

TEST_CASE("translation equals lattice shift by phase structure") {
  // Lambda(x, y) = K(x - y): synthesizing with a modulated symbol
  // e^{-2 pi i y.xi} must equal the shifted x-slice
  GridSpec spec = scan_grid(2, {1, 1}, 3, 1.0);
  Field k = lambda_kernel(3, {0}, kSymbol, spec);
  const int shift = 3;  // cells along axis 0
  double y0 = shift * spec.spacing();
  MultiplierTable table = make_kernel_table(3, {0}, kSymbol, spec);
  std::vector<int> idx;
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    double xi0 = spec.freq(idx[0]);
    table.values[static_cast<Eigen::Index>(i)] *= std::polar(1.0, -2.0 * M_PI * y0 * xi0);
  }
  Field hat;
  hat.spec = spec;
  hat.side = Side::frequency;
  hat.values = table.values;
  Field translated = transform(hat, Direction::inverse);

  const int M = spec.samples_per_axis;
  double worst = 0.0;
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      int src = ((a - shift) % M + M) % M;
      worst = std::max(worst, std::abs(translated.values[a * M + b] -
                                       k.values[src * M + b]));
    }
  }
  CHECK(worst < 1e-12 * k.values.abs().maxCoeff());
}

TEST_CASE("summed localized kernels reconstruct the truncated symbol operator") {
  GridSpec spec = scan_grid(2, {1, 1}, 4, 1.0);
  Rng rng(12);
  Field f = make_field(spec);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = {rng.normal(), rng.normal()};

  // sum of per-(t, j) products against the assembled truncated symbol
  const int j_lo = 2, j_hi = 4;
  ArrayXc total = ArrayXc::Zero(f.values.size());
  MultiplierTable sum_table = make_table(spec, Provenance::custom,
                                         [](const std::vector<double>&) {
                                           return std::complex<double>(0.0);
                                         });
  for (int j = j_lo; j <= j_hi; ++j) {
    int t_cap = (j - 1) / 2;
    for (int t = 0; t <= t_cap; ++t) {
      MultiplierTable part = make_kernel_table(j, {t}, kSymbol, spec);
      sum_table.values += part.values;
      Field applied = apply_multiplier(f, part);
      total += applied.values;
    }
  }
  Field direct = apply_multiplier(f, sum_table);
  double rel = (direct.values - total).abs().maxCoeff() /
               std::max(direct.values.abs().maxCoeff(), 1e-300);
  CHECK(rel < 1e-10);

  // and the same reconstruction through physical-side convolution with the
  // synthesized kernels (frequency product vs. circular convolution)
  Field k = lambda_kernel(4, {0}, kSymbol, spec);
  Field khat = transform(k, Direction::forward);
  MultiplierTable via_kernel{spec, Provenance::custom, khat.values};
  MultiplierTable direct_tab = make_kernel_table(4, {0}, kSymbol, spec);
  double tab_rel = (via_kernel.values - direct_tab.values).abs().maxCoeff() /
                   direct_tab.values.abs().maxCoeff();
  CHECK(tab_rel < 1e-10);
}

TEST_CASE("l1 scan rows carry partitions and refinement-stable masses") {
  std::vector<KernelScanRow> rows = l1_scan(5, 5, kSymbol, 2, {1, 1}, 1.25);
  CHECK(rows.size() == 2);  // t in {0, 1}
  for (const auto& row : rows) {
    CHECK(row.l1_mass > 0.0);
    CHECK(row.partition.I.size() == 1);
    CHECK(row.partition.II.empty());
  }
  // doubling the resolution moves each mass by < 5%
  GridSpec fine = scan_grid(2, {1, 1}, 5, 1.25, 2);
  for (const auto& row : rows) {
    Field k = lambda_kernel(row.j, row.t, kSymbol, fine);
    double refined = norm_lp(k, 1.0);
    CHECK(std::abs(refined - row.l1_mass) / refined < 0.05);
  }
}

TEST_CASE("difference scan: zero shift, triangle bound, bounded ratios") {
  std::vector<DiffScanRow> rows = diff_scan(5, {0}, kSymbol, 2, {1, 1}, 2.0);
  CHECK(rows.size() == 12);  // 3 directions x 4 magnitudes
  // recompute the l1 mass on the diff grid for the triangle inequality
  long M = static_cast<long>(std::llround(2.0 * 2.0 * std::ldexp(1.0, 5 + 3)));
  GridSpec dspec = make_grid(2, {1, 1}, static_cast<int>(M), 2.0);
  double l1 = norm_lp(lambda_kernel(5, {0}, kSymbol, dspec), 1.0);
  double lo = 1e300, hi = 0.0;
  for (const auto& row : rows) {
    CHECK(row.diff_mass <= 2.0 * l1 * (1.0 + 1e-12));
    CHECK(row.diff_mass > 0.0);
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
  }
  CHECK(hi / lo < 10.0);
}

TEST_CASE("tail scan respects the regime and the region shrinks it monotonically") {
  CHECK_THROWS_AS(tail_scan(3, {0}, 0.125, 4.0, kSymbol, 2, {1, 1}, 2.5),
                  std::domain_error);
  TailScanRow loose = tail_scan(4, {0}, 0.125, 2.0, kSymbol, 2, {1, 1}, 2.5);
  TailScanRow tight = tail_scan(4, {0}, 0.125, 4.0, kSymbol, 2, {1, 1}, 2.5);
  CHECK(tight.tail_mass <= loose.tail_mass * (1.0 + 1e-12));
  CHECK(tight.tail_mass <= tight.l1_mass);
  CHECK(tight.tail_mass >= 0.0);
}

TEST_CASE("t = 0 kernels decay at the far-field polynomial rate") {
  // |K(x)| (1 + |x|)^{N+1} bounded outside B_3, stable under refinement
  auto fitted = [&](int oversample) {
    GridSpec spec = scan_grid(2, {1, 1}, 3, 4.0, oversample);
    Field k = lambda_kernel(3, {0}, kSymbol, spec);
    std::vector<int> idx;
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.point_count(); ++i) {
      spec.decode(i, idx);
      double x0 = spec.coord(idx[0]), x1 = spec.coord(idx[1]);
      double r = std::hypot(x0, x1);
      if (r < 3.0) continue;
      worst = std::max(worst, std::abs(k.values[static_cast<Eigen::Index>(i)]) *
                                  std::pow(1.0 + r, 3.0));
    }
    return worst;
  };
  double coarse = fitted(1), fine = fitted(2);
  CHECK(std::isfinite(coarse));
  CHECK(fine < 2.0 * coarse + 1e-12);
}

TEST_SUITE_END();
