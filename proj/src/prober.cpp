#include "spherewave/prober.hpp"

#include <cmath>
#include <sstream>

namespace spherewave {

Field h1_atom(double r, const std::vector<double>& center, const GridSpec& spec) {
  if (!(r > 0.0 && r < spec.half_width / 2.0))
    throw std::domain_error("h1_atom: need 0 < r < L/2");
  if (static_cast<int>(center.size()) != spec.dim_total)
    throw validation_error("h1_atom: center dimension mismatch");

  const int N = spec.dim_total;
  // exact ball volume pi^{N/2} r^N / Gamma(N/2+1)
  double ball = std::pow(M_PI, 0.5 * N) * std::pow(r, N) / std::tgamma(0.5 * N + 1.0);
  const double height = 1.0 / ball;

  Field f = make_field(spec, Side::physical);
  std::vector<int> idx;
  std::vector<Eigen::Index> support;
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    double d2 = 0.0, first = 0.0;
    for (int d = 0; d < N; ++d) {
      double dx = spec.coord(idx[d]) - center[d];
      if (d == 0) first = dx;
      d2 += dx * dx;
    }
    if (d2 >= r * r) continue;
    support.push_back(static_cast<Eigen::Index>(i));
    f.values[support.back()] = first < 0.0 ? height : -height;
  }
  if (support.size() < 2)
    throw std::domain_error("h1_atom: radius unresolved by the grid");

  // two exact mean-removal sweeps over the support, then rescale so the sup
  // bound holds with a hair of slack
  for (int pass = 0; pass < 2; ++pass) {
    long double sum = 0.0L;
    for (Eigen::Index i : support) sum += static_cast<long double>(f.values[i].real());
    long double mean = sum / static_cast<long double>(support.size());
    for (Eigen::Index i : support) f.values[i] -= static_cast<double>(mean);
  }
  double peak = 0.0;
  for (Eigen::Index i : support) peak = std::max(peak, std::abs(f.values[i].real()));
  if (peak > 0.0) {
    double scale = height * (1.0 - 1e-13) / peak;
    if (scale < 1.0)
      for (Eigen::Index i : support) f.values[i] *= scale;
  }
  return f;
}

Field knapp_profile(const CapIndex& cap, const GridSpec& spec, int threads) {
  const int j = cap.j;
  if (spec.max_freq() < std::ldexp(1.0, j + 1)) {
    std::ostringstream msg;
    msg << "knapp_profile: shell 2^" << j + 1 << " exceeds the grid limit M/(4L) = "
        << spec.max_freq();
    throw resolution_error(msg.str());
  }
  if (cap.center.size() != spec.dim_total)
    throw validation_error("knapp_profile: cap dimension must match the grid");

  const double scale = std::pow(2.0, 0.5 * j);
  Field hat = sample_field(spec, Side::frequency, [&](const std::vector<double>& xi) {
    double n2 = 0.0;
    for (double v : xi) n2 += v * v;
    double n = std::sqrt(n2);
    double shell = shell_cutoff(j, n);
    if (shell == 0.0 || n == 0.0) return std::complex<double>(0.0);
    double ang2 = 0.0;
    for (int d = 0; d < spec.dim_total; ++d) {
      double diff = xi[d] / n - cap.center[d];
      ang2 += diff * diff;
    }
    return std::complex<double>(shell * bump(scale * std::sqrt(ang2)));
  });
  Field f = transform(hat, Direction::inverse, threads);
  double l2 = norm_lp(f, 2.0);
  if (l2 == 0.0) throw resolution_error("knapp_profile: cap unresolved by the grid");
  f.values /= l2;
  return f;
}

double norm_ratio(const MultiplierTable& op_table, PhaseSign sign, const Field& f,
                  const SobolevParams& in_params, double out_order, double p, int threads) {
  double in_norm = sobolev_norm(f, SobolevParams{in_params.s, p}, threads);
  if (in_norm == 0.0) throw std::domain_error("norm_ratio: zero input field");
  MultiplierTable op = with_phase(op_table, sign);
  Field out = apply_multiplier(f, op, threads);
  // output side measured in the unmixed order-r norm: weight (1+|xi|^2)^{r/2}
  MultiplierTable out_weight =
      make_table(f.spec, Provenance::custom, [&](const std::vector<double>& xi) {
        double n2 = 0.0;
        for (double v : xi) n2 += v * v;
        return std::complex<double>(std::pow(1.0 + n2, 0.5 * out_order));
      });
  Field out_weighted = apply_multiplier(out, out_weight, threads);
  return norm_lp(out_weighted, p) / in_norm;
}

bool inside_theory_region(double alpha_minus_r_plus_s, int dim_total, double p) {
  return std::abs(1.0 / p - 0.5) <= alpha_minus_r_plus_s / (dim_total - 1) + 0.5 + 1e-15;
}

Field random_band_limited(const GridSpec& spec, int band, Rng& rng) {
  Field hat = make_field(spec, Side::frequency);
  std::vector<int> idx;
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    bool inside = true;
    for (int d = 0; d < spec.dim_total && inside; ++d)
      if (std::abs(spec.freq_int(idx[d])) > band) inside = false;
    if (!inside) continue;
    hat.values[static_cast<Eigen::Index>(i)] = {rng.normal(), rng.normal()};
  }
  Field f = transform(hat, Direction::inverse);
  // keep it real-valued: fold in the conjugate and renormalize
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    f.values[i] = std::complex<double>(f.values[i].real(), 0.0);
  double l2 = norm_lp(f, 2.0);
  if (l2 > 0.0) f.values /= l2;
  return f;
}

std::vector<SweepRow> region_sweep(const SweepConfig& config, int threads) {
  const GridSpec& spec = config.spec;
  const int N = spec.dim_total;

  // assemble the test family once per grid
  std::vector<Field> family;
  Rng rng(config.seed);
  auto want = [&](TestFamily f) {
    return config.family == f || config.family == TestFamily::all;
  };
  if (want(TestFamily::random)) {
    int band = std::max(2, static_cast<int>(spec.max_freq() / spec.freq_spacing() / 8.0));
    for (int d = 0; d < config.random_draws; ++d)
      family.push_back(random_band_limited(spec, band, rng));
  }
  if (want(TestFamily::knapp)) {
    int j_hi = static_cast<int>(std::floor(std::log2(spec.max_freq()))) - 1;
    int used = 0;
    for (int j = j_hi; j >= 1 && used < config.knapp_levels; --j, ++used) {
      std::vector<CapIndex> grid = sphere_grid(j, N);
      family.push_back(knapp_profile(grid[0], spec, threads));
    }
  }
  if (want(TestFamily::atoms)) {
    std::vector<double> center(N, 0.0);
    for (int k = 0; k < config.atom_radii; ++k) {
      double r = spec.half_width / 4.0 * std::pow(0.5, k);
      if (r < 2.0 * spec.spacing()) break;
      family.push_back(h1_atom(r, center, spec));
    }
  }
  if (family.empty() && !config.p_grid.empty())
    throw validation_error("region_sweep: empty test family");

  std::vector<SweepRow> rows;
  for (const auto& alpha : config.alpha_list) {
    OmegaParams params{alpha, 0.0};
    MultiplierTable omega = make_omega_table(spec, params);
    for (double r : config.r_list) {
      for (const auto& s : config.s_list) {
        double s_total = 0.0;
        for (double v : s) s_total += v;
        for (double p : config.p_grid) {
          SweepRow row;
          row.alpha = alpha;
          row.r = r;
          row.s = s;
          row.s_total = s_total;
          row.p = p;
          row.inside_theory = inside_theory_region(alpha.real() - r + s_total, N, p);
          double worst = 0.0;
          for (const Field& f : family)
            worst = std::max(worst,
                             norm_ratio(omega, config.sign, f, SobolevParams{s, p}, r, p,
                                        threads));
          row.ratio_max = worst;
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace spherewave
