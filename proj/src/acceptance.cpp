#include "spherewave/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "spherewave/bessel.hpp"
#include "spherewave/decomp.hpp"
#include "spherewave/grid.hpp"
#include "spherewave/kernelcheck.hpp"
#include "spherewave/multipliers.hpp"
#include "spherewave/prober.hpp"
#include "spherewave/sobolev.hpp"
#include "spherewave/wave.hpp"

namespace spherewave::acceptance {

using std::complex;

namespace {

// Reference values for J_0 and J_1 at 40 log-spaced arguments in [20, 200],
// computed to 18 digits with an independent arbitrary-precision series
// evaluation and frozen here. They anchor the remainder-decay fits.
struct RefPoint {
  double rho;
  double value;
};

const RefPoint kJ0Refs[] = {
    {20.0, 0.167024664340583155},
    {21.2163671027889695, -0.00081953518182599462},
    {22.5067116520153005, -0.161826859031256646},
    {23.8755328342887301, -0.0749674951020450907},
    {25.3276034693480649, 0.131241627773618833},
    {26.8679866519780028, 0.0901307230576984401},
    {28.5020534060599621, -0.126450411714678721},
    {30.2355014123132439, -0.0563901393320167061},
    {32.0743748750266067, 0.139671021036171508},
    {34.0250855970517781, -0.0337457038633808817},
    {36.0944353365434063, -0.0973442873498975149},
    {38.2896395233991616, 0.126415405880092648},
    {40.6183524180947144, -0.0664948814503932307},
    {43.0886938006376744, -0.0134767428642517269},
    {45.7092772826998083, 0.069711604459326984},
    {48.4892403416465696, -0.09600572779353909},
    {51.4382761811869025, 0.103104564073377388},
    {54.566667529735361, -0.100626889552304448},
    {57.8853224943350177, 0.0894529547493560299},
    {61.4058125951569902, -0.0610242071946986076},
    {65.1404131131956661, 0.00489668183224844288},
    {69.1021458918443865, 0.0668642789532712164},
    {73.3048247415925588, -0.0900315827769445525},
    {77.7631036061617642, -0.000640417517123200496},
    {82.4925276580270367, 0.0878216373070459764},
    {87.5095875014837007, 0.0275546169755761331},
    {92.8317766722555778, -0.0489181983619181507},
    {98.4776526341347858, -0.0767728170640172829},
    {104.466901485336839, -0.078061191842355246},
    {110.820406600189832, -0.0755615467881426113},
    {117.560321445498257, -0.0633081087168583564},
    {124.71014682547829, -0.0120287541564815035},
    {132.294812824602991, 0.06280851762614452},
    {140.340765734076559, 0.016427723734954076},
    {148.876060265033768, -0.0593031771557297967},
    {157.930457369994525, 0.0633575274527131512},
    {167.53552801365838, -0.0598028344151891128},
    {177.724763254868074, 0.0318586400343514695},
    {188.533691023577043, 0.0425997725118466414},
    {200.0, -0.0154374399305650916}};

const RefPoint kJ1Refs[] = {
    {20.0, 0.0668331241758500456},
    {21.2163671027889695, 0.173225323953831629},
    {22.5067116520153005, 0.0421441317806626666},
    {23.8755328342887301, -0.146646345349329499},
    {25.3276034693480649, -0.0863440147687874228},
    {26.8679866519780028, 0.126464931457951338},
    {28.5020534060599621, 0.077436278720836811},
    {30.2355014123132439, -0.134639147812677473},
    {32.0743748750266067, -0.0162057324565333738},
    {34.0250855970517781, 0.132068557531098516},
    {36.0944353365434063, -0.091689667468883783},
    {38.2896395233991616, -0.0237318330546587542},
    {40.6183524180947144, 0.105257756887934531},
    {43.0886938006376744, -0.120961921302428695},
    {45.7092772826998083, 0.095989177759943558},
    {48.4892403416465696, -0.0635335441744722876},
    {51.4382761811869025, 0.0427802461954954822},
    {54.566667529735361, -0.0401736534117368892},
    {57.8853224943350177, 0.0555077085011659223},
    {61.4058125951569902, -0.0820049061786332039},
    {65.1404131131956661, 0.0987763675313052381},
    {69.1021458918443865, -0.0683777491056443235},
    {73.3048247415925588, -0.0246701198805059525},
    {77.7631036061617642, 0.0904746918211713145},
    {82.4925276580270367, 0.00265848689145265469},
    {87.5095875014837007, -0.0805624190766074144},
    {92.8317766722555778, -0.0670827675615437882},
    {98.4776526341347858, -0.024274459366333833},
    {104.466901485336839, -0.000978543761690592597},
    {110.820406600189832, -0.0062572199237359763},
    {117.560321445498257, -0.0377835225772286196},
    {124.71014682547829, -0.070476509310809804},
    {132.294812824602991, -0.0292108421681813271},
    {140.340765734076559, 0.0653761966942290707},
    {148.876060265033768, -0.0277543940091446342},
    {157.930457369994525, 0.00430143492493710733},
    {167.53552801365838, -0.0151288990290800985},
    {177.724763254868074, 0.0507560631849115596},
    {188.533691023577043, -0.0394085144961864151},
    {200.0, -0.0543045381823782227}};

double spread(const std::vector<double>& v) {
  double lo = v[0], hi = v[0];
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

// envelope regression: log-bin x, keep the max y per bin, fit a line
LinFit envelope_fit(const std::vector<double>& x, const std::vector<double>& y, int bins) {
  double lo = std::log(x.front()), hi = std::log(x.back()) + 1e-12;
  std::vector<double> bx(bins, 0.0), by(bins, -1e300);
  std::vector<bool> seen(bins, false);
  for (std::size_t i = 0; i < x.size(); ++i) {
    int b = std::min(bins - 1, static_cast<int>((std::log(x[i]) - lo) / (hi - lo) * bins));
    if (y[i] > by[b]) {
      by[b] = y[i];
      bx[b] = std::log(x[i]);
      seen[b] = true;
    }
  }
  std::vector<double> fx, fy;
  for (int b = 0; b < bins; ++b)
    if (seen[b] && by[b] > -1e299) {
      fx.push_back(bx[b]);
      fy.push_back(by[b]);
    }
  return linear_fit(fx, fy);
}

CriterionResult criterion_1(int threads) {
  (void)threads;
  CriterionResult res{1, "bessel recurrence residual", false, 0, ""};
  double worst = 0.0;
  for (double a : {0.0, 0.5, 1.0, 2.5}) {
    for (double b : {0.0, 1.0}) {
      for (int i = 0; i < 20; ++i) {
        double rho = 0.5 * std::pow(100.0, i / 19.0);  // 0.5 .. 50 log-spaced
        worst = std::max(worst, recurrence_residual({a, b}, rho));
      }
    }
  }
  res.pass = worst < 1e-9;
  std::ostringstream d;
  d << "max residual " << worst << " (tol 1e-9)";
  res.detail = d.str();
  return res;
}

CriterionResult criterion_2(int threads) {
  (void)threads;
  CriterionResult res{2, "asymptotic remainder decay", false, 0, ""};
  bool pass = true;
  std::ostringstream d;
  for (int nu = 0; nu <= 1; ++nu) {
    const RefPoint* refs = nu == 0 ? kJ0Refs : kJ1Refs;
    for (int N = 1; N <= 3; ++N) {
      std::vector<double> xs, ys;
      for (int i = 0; i < 40; ++i) {
        double err = std::abs(bessel_asymptotic({static_cast<double>(nu), 0.0},
                                                refs[i].rho, N) -
                              refs[i].value);
        if (err <= 0.0) err = 1e-18;
        xs.push_back(refs[i].rho);
        ys.push_back(std::log(err));
      }
      // envelope over 10 log bins tames the oscillation zeros of the error
      std::vector<double> lx = xs;
      LinFit fit = envelope_fit(lx, ys, 10);
      double target = -(2.0 * N + 0.5);
      bool ok = std::abs(fit.slope - target) <= 0.3;
      pass = pass && ok;
      d << "nu=" << nu << " N=" << N << " slope " << fit.slope << " (target " << target
        << "); ";
    }
  }
  res.pass = pass;
  res.detail = d.str();
  return res;
}

CriterionResult criterion_3(int threads) {
  (void)threads;
  CriterionResult res{3, "transform-series identity", false, 0, ""};
  bool pass = true;
  std::ostringstream d;
  const complex<double> alphas[] = {{1, 0}, {0.5, 0}, {0, 0}, {-0.5, 0.3}};
  for (int N : {2, 3}) {
    for (const auto& alpha : alphas) {
      double worst = 0.0, scale = 0.0;
      for (int i = 0; i <= 80; ++i) {
        double xi = 2.0 * i / 80.0;
        complex<double> bessel_route = omega_hat(alpha, xi, N);
        complex<double> series_route = omega_hat_series(1.0 - alpha, xi, N, 60);
        worst = std::max(worst, std::abs(bessel_route - series_route));
        scale = std::max(scale, std::abs(bessel_route));
      }
      double rel = worst / scale;
      pass = pass && rel < 1e-8;
      d << "N=" << N << " alpha=(" << alpha.real() << "," << alpha.imag() << ") rel " << rel
        << "; ";
    }
  }
  res.pass = pass;
  res.detail = d.str();
  return res;
}

CriterionResult criterion_4(int threads) {
  CriterionResult res{4, "ball-indicator transform", false, 0, ""};
  GridSpec spec = make_grid(2, {1, 1}, 256, 8.0);
  Field kernel = sample_omega_kernel(spec, 1.0, threads);
  Field hat = transform(kernel, Direction::forward, threads);
  double cutoff = spec.samples_per_axis / (8.0 * spec.half_width);  // = 4
  double worst = 0.0, scale = 0.0;
  std::vector<int> idx;
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    double xi2 = 0.0;
    for (int dgt = 0; dgt < spec.dim_total; ++dgt) {
      double f = spec.freq(idx[dgt]);
      xi2 += f * f;
    }
    double xin = std::sqrt(xi2);
    if (xin > cutoff) continue;
    complex<double> exact = omega_hat(complex<double>(1.0), xin, 2);
    worst = std::max(worst,
                     std::abs(hat.values[static_cast<Eigen::Index>(i)] - exact));
    scale = std::max(scale, std::abs(exact));
  }
  double rel = worst / scale;
  res.pass = rel < 0.02;
  std::ostringstream d;
  d << "sup-relative error " << rel << " over |xi| <= " << cutoff << " (tol 0.02)";
  res.detail = d.str();
  return res;
}

CriterionResult criterion_5(int threads) {
  (void)threads;
  CriterionResult res{5, "cap partition of unity and counts", false, 0, ""};
  bool pass = true;
  std::ostringstream d;
  for (int sphere_dim : {2, 3}) {
    double worst = 0.0;
    for (int j : {4, 6, 8}) {
      std::vector<CapIndex> grid = sphere_grid(j, sphere_dim);
      Rng rng(1000 + j + sphere_dim);
      Eigen::VectorXd xi(sphere_dim);
      for (int trial = 0; trial < 10000 / 3 + 1; ++trial) {
        for (int k = 0; k < sphere_dim; ++k) xi[k] = rng.normal();
        if (xi.norm() == 0.0) continue;
        xi *= (0.5 + 4.0 * rng.uniform()) / xi.norm();  // scale invariance too
        std::vector<double> w = cap_partition(j, grid, xi);
        double sum = 0.0;
        for (double v : w) sum += v;
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
    pass = pass && worst < 1e-12;
    d << "S^" << sphere_dim - 1 << " partition err " << worst << "; ";

    std::vector<double> js, counts;
    for (int j = 4; j <= 10; ++j) {
      js.push_back(j);
      counts.push_back(std::log2(static_cast<double>(sphere_grid(j, sphere_dim).size())));
    }
    LinFit fit = linear_fit(js, counts);
    double target = (sphere_dim - 1) / 2.0;
    bool ok = std::abs(fit.slope - target) <= 0.15;
    pass = pass && ok;
    d << "count slope " << fit.slope << " (target " << target << "); ";
  }
  res.pass = pass;
  res.detail = d.str();
  return res;
}

CriterionResult criterion_6(int threads) {
  (void)threads;
  CriterionResult res{6, "region-of-influence volume law", false, 0, ""};
  bool pass = true;
  std::ostringstream d;
  for (int N : {2, 3}) {
    std::vector<double> ratios, log_inv_r;
    for (int k = 3; k <= 8; ++k) {
      double r = std::ldexp(1.0, -k);
      InfluenceRegion region = influence_region(r, 1.0, N, 4);
      std::uint64_t samples = N == 2 ? 1000000 : 400000;
      double vol = region_volume_mc(region, samples, 9000 + 10 * N + k);
      ratios.push_back(vol / r);
      log_inv_r.push_back(static_cast<double>(k));
    }
    double sp = spread(ratios);
    // trend of the normalized ratio against log2(1/r); increasing means the
    // law |Q_r| <= C r would fail at small r
    double mean = 0.0;
    for (double v : ratios) mean += v;
    mean /= ratios.size();
    std::vector<double> normed;
    for (double v : ratios) normed.push_back(v / mean);
    LinFit trend = linear_fit(log_inv_r, normed);
    bool ok = sp < 4.0 && trend.slope <= 0.03;
    pass = pass && ok;
    d << "N=" << N << " spread " << sp << " trend " << trend.slope << " (|Q_r|/r mean " << mean
      << "); ";
  }
  res.pass = pass;
  res.detail = d.str();
  return res;
}

CriterionResult criterion_7(int threads) {
  CriterionResult res{7, "kernel L1 size law", false, 0, ""};
  KernelSymbol symbol{{0.26, 0.26}, PhaseSign::plus};
  std::vector<KernelScanRow> rows = l1_scan(5, 8, symbol, 2, {1, 1}, 1.25, threads);

  std::vector<int> group;
  std::vector<double> ts, logmass;
  std::vector<double> j0_js, j0_mass;
  for (const auto& row : rows) {
    group.push_back(row.j);
    ts.push_back(row.t[0]);
    logmass.push_back(std::log2(row.l1_mass));
    if (row.t[0] == 0) {
      j0_js.push_back(row.j);
      j0_mass.push_back(std::log2(row.l1_mass));
    }
  }
  // common t-slope with one intercept per shell; the shell drift itself is
  // gated separately through the t = 0 rows
  LinFit fit = grouped_fit(group, ts, logmass);
  LinFit jfit = linear_fit(j0_js, j0_mass);
  bool ok_slope = fit.slope >= -0.8 && fit.slope <= -0.2;
  bool ok_r2 = fit.r2 > 0.9;
  bool ok_j = std::abs(jfit.slope) <= 0.1;
  res.pass = ok_slope && ok_r2 && ok_j;
  std::ostringstream d;
  d << "t-slope " << fit.slope << " (window [-0.8,-0.2]), R2 " << fit.r2
    << " (>0.9), t=0 j-slope " << jfit.slope << " (|.| <= 0.1), rows " << rows.size();
  res.detail = d.str();
  return res;
}

CriterionResult criterion_8(int threads) {
  CriterionResult res{8, "kernel difference law", false, 0, ""};
  KernelSymbol symbol{{0.26, 0.26}, PhaseSign::plus};
  std::vector<double> ratios;
  for (int j : {5, 6, 7}) {
    std::vector<DiffScanRow> rows = diff_scan(j, {0}, symbol, 2, {1, 1}, 2.0, threads);
    for (const auto& row : rows) ratios.push_back(row.ratio);
  }
  double sp = spread(ratios);
  res.pass = sp < 10.0;
  std::ostringstream d;
  d << "ratio spread " << sp << " over " << ratios.size() << " (j, y) rows (tol 10)";
  res.detail = d.str();
  return res;
}

CriterionResult criterion_9(int threads) {
  CriterionResult res{9, "kernel tail law", false, 0, ""};
  KernelSymbol symbol{{0.26, 0.26}, PhaseSign::plus};
  // one row per r at the first shell inside the regime 2^j > 1/r; the
  // normalized tail ratio is compared across the self-similar family
  std::vector<double> ratios;
  std::ostringstream d;
  for (int k : {3, 4, 5}) {
    double r = std::ldexp(1.0, -k);
    int j = k + 1;
    TailScanRow row = tail_scan(j, {0}, r, 4.0, symbol, 2, {1, 1}, 2.5, threads);
    ratios.push_back(row.ratio);
    d << "r=2^-" << k << " j=" << j << " ratio " << row.ratio << "; ";
  }
  double sp = spread(ratios);
  res.pass = sp < 10.0;
  d << "spread " << sp << " (tol 10)";
  res.detail = d.str();
  return res;
}

CriterionResult criterion_10(int threads) {
  CriterionResult res{10, "wave solver manufactured solution", false, 0, ""};
  GridSpec spec = make_grid(2, {1, 1}, 64, 1.0);
  const double omega = 2.0;
  const int kx = 1, ky = 1;
  const double csq = 4.0 * M_PI * M_PI * (kx * kx + ky * ky);

  auto exact_u = [&](const std::vector<double>& x, double t) {
    return std::sin(2.0 * M_PI * (kx * x[0] + ky * x[1])) * (1.0 - std::cos(omega * t));
  };
  auto forcing = [&](const std::vector<double>& x, double t) {
    double sp = std::sin(2.0 * M_PI * (kx * x[0] + ky * x[1]));
    return sp * (omega * omega * std::cos(omega * t) + csq * (1.0 - std::cos(omega * t)));
  };

  auto solve_error = [&](int steps) {
    WaveConfig config = make_wave_config(spec, 1.0, steps);
    std::vector<Field> g(steps + 1);
    for (int k = 0; k <= steps; ++k) {
      double t = k * config.dt();
      g[k] = sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
        return complex<double>(forcing(x, t));
      });
    }
    std::vector<Field> u = solve_wave(g, config, threads);
    Field ref = sample_field(spec, Side::physical, [&](const std::vector<double>& x) {
      return complex<double>(exact_u(x, 1.0));
    });
    double err = std::sqrt((u[steps].values - ref.values).abs2().sum() /
                           ref.values.abs2().sum());
    // residual on the middle slices, relative to the forcing size
    std::vector<Field> rsd = wave_residual(u, g, config, threads);
    double rnum = 0.0, rden = 0.0;
    int mid = steps / 2;
    rnum = norm_lp(rsd[mid], 2.0);
    rden = norm_lp(g[mid], 2.0);
    return std::pair<double, double>(err, rnum / rden);
  };

  auto [err256, res256] = solve_error(256);
  auto [err512, res512] = solve_error(512);
  double err_ratio = err256 / err512;
  double res_ratio = res256 / res512;
  bool ok_err = err256 < 1e-3;
  bool ok_order = err_ratio > 4.0 * 0.7 && err_ratio < 4.0 * 1.3;
  bool ok_res = res_ratio > 4.0 * 0.7 && res_ratio < 4.0 * 1.3 && res256 < 0.05;
  res.pass = ok_err && ok_order && ok_res;
  std::ostringstream d;
  d << "rel L2 err " << err256 << " (tol 1e-3), halving ratio " << err_ratio
    << " (4 +- 30%), residual " << res256 << " ratio " << res_ratio;
  res.detail = d.str();
  return res;
}

CriterionResult criterion_11(int threads) {
  CriterionResult res{11, "a priori estimate probe", false, 0, ""};
  GridSpec spec = make_grid(3, {2, 1}, 24, 3.0);
  WaveConfig config = make_wave_config(spec, 1.0, 48);
  SobolevParams params{{0.4, 0.3}, 2.0};
  std::vector<double> ratios;
  for (int draw = 0; draw < 20; ++draw) {
    Rng rng(777 + draw);
    std::vector<Field> g(config.steps + 1);
    Field base = random_band_limited(spec, 2, rng);
    Field base2 = random_band_limited(spec, 2, rng);
    for (int k = 0; k <= config.steps; ++k) {
      double t = k * config.dt();
      g[k] = base;
      // mild deterministic time modulation keeps the forcing band-limited
      g[k].values = base.values * std::cos(1.7 * t) + base2.values * std::sin(2.3 * t);
    }
    std::vector<AprioriRow> rows = apriori_check(g, params, config, threads);
    ratios.push_back(rows.back().ratio);
  }
  double sp = spread(ratios);
  res.pass = sp < 10.0;
  std::ostringstream d;
  d << "final-time ratio spread " << sp << " over 20 draws (tol 10)";
  res.detail = d.str();
  return res;
}

CriterionResult criterion_12(int threads) {
  CriterionResult res{12, "L2 multiplier bound", false, 0, ""};
  GridSpec spec = make_grid(2, {1, 1}, 32, 4.0);
  // three order-zero symbols: constant, product-decay, smooth oscillation
  std::vector<MultiplierTable> tables;
  tables.push_back(make_table(spec, Provenance::custom,
                              [](const std::vector<double>&) { return complex<double>(0.9); }));
  tables.push_back(make_table(spec, Provenance::custom, [](const std::vector<double>& xi) {
    return complex<double>(std::pow(1.0 + xi[0] * xi[0], -0.13) *
                           std::pow(1.0 + xi[1] * xi[1], -0.13));
  }));
  tables.push_back(make_table(spec, Provenance::custom, [](const std::vector<double>& xi) {
    return complex<double>(0.5 + 0.3 * std::cos(xi[0] / (1.0 + std::abs(xi[1]))));
  }));
  bool pass = true;
  double worst_excess = 0.0;
  for (const auto& table : tables) {
    MultiplierTable op = with_phase(table, PhaseSign::plus);
    double sup = table.values.abs().maxCoeff();
    Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
      Field f = make_field(spec);
      for (Eigen::Index i = 0; i < f.values.size(); ++i)
        f.values[i] = {rng.normal(), rng.normal()};
      double ratio = norm_lp(apply_multiplier(f, op, threads), 2.0) / norm_lp(f, 2.0);
      worst_excess = std::max(worst_excess, ratio / sup);
      pass = pass && ratio <= sup * (1.0 + 1e-9);
    }
  }
  res.pass = pass;
  std::ostringstream d;
  d << "max ratio/sup " << worst_excess << " (tol 1 + 1e-9) over 150 trials";
  res.detail = d.str();
  return res;
}

CriterionResult criterion_13(int threads) {
  (void)threads;
  CriterionResult res{13, "atom constraints", false, 0, ""};
  bool pass = true;
  double worst_mean = 0.0, worst_size = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    GridSpec spec = make_grid(2, {1, 1}, 64, 8.0);
    Field a = h1_atom(r, {0.0, 0.0}, spec);
    double ball = M_PI * r * r;
    long double sum = 0.0L;
    double sup = 0.0;
    std::vector<int> idx;
    bool support_ok = true;
    for (std::size_t i = 0; i < spec.point_count(); ++i) {
      double v = a.values[static_cast<Eigen::Index>(i)].real();
      sum += v;
      sup = std::max(sup, std::abs(v));
      if (v != 0.0) {
        spec.decode(i, idx);
        double d2 = 0.0;
        for (int k = 0; k < 2; ++k) d2 += spec.coord(idx[k]) * spec.coord(idx[k]);
        support_ok = support_ok && d2 < r * r;
      }
    }
    worst_mean = std::max(worst_mean, std::abs(static_cast<double>(sum)));
    worst_size = std::max(worst_size, sup * ball);
    pass = pass && support_ok && std::abs(static_cast<double>(sum)) < 1e-14 &&
           sup <= (1.0 / ball) * (1.0 + 1e-12);
  }
  res.pass = pass;
  std::ostringstream d2;
  d2 << "max |sum| " << worst_mean << " (tol 1e-14), max sup*|B_r| " << worst_size
     << " (tol 1+1e-12)";
  res.detail = d2.str();
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, int threads) {
  auto start = std::chrono::steady_clock::now();
  CriterionResult res;
  switch (id) {
    case 1: res = criterion_1(threads); break;
    case 2: res = criterion_2(threads); break;
    case 3: res = criterion_3(threads); break;
    case 4: res = criterion_4(threads); break;
    case 5: res = criterion_5(threads); break;
    case 6: res = criterion_6(threads); break;
    case 7: res = criterion_7(threads); break;
    case 8: res = criterion_8(threads); break;
    case 9: res = criterion_9(threads); break;
    case 10: res = criterion_10(threads); break;
    case 11: res = criterion_11(threads); break;
    case 12: res = criterion_12(threads); break;
    case 13: res = criterion_13(threads); break;
    default:
      throw validation_error("run_criterion: id must be 1..13");
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // runtime ceilings are part of the contract where stated
  double ceiling = 0.0;
  switch (id) {
    case 1: ceiling = 5.0; break;
    case 2: ceiling = 10.0; break;
    case 3: ceiling = 5.0; break;
    case 4: ceiling = 10.0; break;
    case 7: ceiling = 180.0; break;
    case 10: ceiling = 30.0; break;
    default: ceiling = 0.0; break;
  }
  if (ceiling > 0.0 && res.seconds > ceiling) {
    res.pass = false;
    res.detail += " [runtime " + std::to_string(res.seconds) + "s exceeds " +
                  std::to_string(ceiling) + "s]";
  }
  return res;
}

std::vector<CriterionResult> run_all(int threads) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 13; ++id) out.push_back(run_criterion(id, threads));
  return out;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream line;
  line << "criterion " << result.id << (result.id < 10 ? "  " : " ")
       << (result.pass ? "PASS" : "FAIL") << "  " << result.name << "  [" << result.detail
       << "]  (" << result.seconds << " s)";
  return line.str();
}

}  // namespace spherewave::acceptance
