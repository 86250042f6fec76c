#include "spherewave/wave.hpp"

#include <cmath>
#include <sstream>

namespace spherewave {

WaveConfig make_wave_config(const GridSpec& spec, double T, int steps, PhaseSign sign) {
  if (steps < 2) throw validation_error("steps: must be >= 2");
  if (!(T > 0.0)) throw validation_error("T: must be > 0");
  return WaveConfig{spec, T, steps, sign};
}

double propagator_hat(double tau, double xi_norm) {
  if (tau < 0.0) throw std::domain_error("propagator_hat: tau must be >= 0");
  double w = 2.0 * M_PI * xi_norm;
  if (w == 0.0) return tau;
  return std::sin(tau * w) / w;
}

namespace {

void check_time_grid(const std::vector<Field>& g, const WaveConfig& config,
                     const char* who) {
  if (static_cast<int>(g.size()) != config.steps + 1) {
    std::ostringstream msg;
    msg << who << ": need steps+1 = " << config.steps + 1 << " time slices, got " << g.size();
    throw contract_error(msg.str());
  }
  for (const Field& slice : g) {
    if (!(slice.spec == config.spec) || slice.side != Side::physical)
      throw contract_error(std::string(who) + ": slices must be physical fields on the config grid");
  }
}

// angular frequencies 2 pi |xi| for every grid node
Eigen::ArrayXd mode_frequencies(const GridSpec& spec) {
  Eigen::ArrayXd w(static_cast<Eigen::Index>(spec.point_count()));
  std::vector<int> idx;
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    double acc = 0.0;
    for (int d = 0; d < spec.dim_total; ++d) {
      double f = spec.freq(idx[d]);
      acc += f * f;
    }
    w[static_cast<Eigen::Index>(i)] = 2.0 * M_PI * std::sqrt(acc);
  }
  return w;
}

}  // namespace

std::vector<Field> solve_wave(const std::vector<Field>& g, const WaveConfig& config,
                              int threads) {
  check_time_grid(g, config, "solve_wave");
  const int S = config.steps;
  const double dt = config.dt();
  const GridSpec& spec = config.spec;

  std::vector<Field> g_hat(g.size());
  for (int k = 0; k <= S; ++k) g_hat[k] = transform(g[k], Direction::forward, threads);

  const Eigen::ArrayXd w = mode_frequencies(spec);
  std::vector<Field> u(g.size());
  u[0] = make_field(spec, Side::physical);

  std::vector<Field> u_hat(g.size());
  for (int m = 0; m <= S; ++m) {
    u_hat[m] = make_field(spec, Side::frequency);
  }
  // trapezoid in tau with the exact per-mode kernel sin(w (t_m - t_k))/w;
  // the sine ladder over the uniform lags comes from one angle-addition
  // recurrence per mode
  parallel_for(spec.point_count(), threads, [&](std::size_t i) {
    thread_local std::vector<double> kern;
    kern.resize(S + 1);
    Eigen::Index e = static_cast<Eigen::Index>(i);
    double wi = w[e];
    if (wi == 0.0) {
      for (int l = 0; l <= S; ++l) kern[l] = l * dt;
    } else {
      double s1 = std::sin(wi * dt), c1 = std::cos(wi * dt);
      double sl = 0.0, cl = 1.0;
      kern[0] = 0.0;
      for (int l = 1; l <= S; ++l) {
        double sn = sl * c1 + cl * s1;
        cl = cl * c1 - sl * s1;
        sl = sn;
        kern[l] = sl / wi;
      }
    }
    for (int m = 1; m <= S; ++m) {
      std::complex<double> acc = 0.5 * kern[m] * g_hat[0].values[e];
      for (int k = 1; k < m; ++k) acc += kern[m - k] * g_hat[k].values[e];
      u_hat[m].values[e] = acc * dt;  // k = m endpoint drops: kern[0] = 0
    }
  });
  for (int m = 1; m <= S; ++m) u[m] = transform(u_hat[m], Direction::inverse, threads);
  return u;
}

std::vector<Field> wave_residual(const std::vector<Field>& u, const std::vector<Field>& g,
                                 const WaveConfig& config, int threads) {
  check_time_grid(u, config, "wave_residual");
  check_time_grid(g, config, "wave_residual");
  if (config.steps < 2)
    throw contract_error("wave_residual: need at least 3 time slices");
  const int S = config.steps;
  const double dt = config.dt();
  const GridSpec& spec = config.spec;
  const Eigen::ArrayXd w = mode_frequencies(spec);

  std::vector<Field> res(u.size());
  res[0] = make_field(spec, Side::physical);
  res[S] = make_field(spec, Side::physical);
  for (int m = 1; m < S; ++m) {
    // spectral Laplacian of the middle slice
    Field hat = transform(u[m], Direction::forward, threads);
    for (Eigen::Index e = 0; e < hat.values.size(); ++e)
      hat.values[e] *= -w[e] * w[e];
    Field lap = transform(hat, Direction::inverse, threads);
    Field r = make_field(spec, Side::physical);
    r.values = (u[m + 1].values - 2.0 * u[m].values + u[m - 1].values) / (dt * dt) -
               lap.values - g[m].values;
    res[m] = std::move(r);
  }
  return res;
}

std::vector<AprioriRow> apriori_check(const std::vector<Field>& g, const SobolevParams& params,
                                      const WaveConfig& config, int threads) {
  check_time_grid(g, config, "apriori_check");
  const GridSpec& spec = config.spec;
  const int N = spec.dim_total;

  SValidation val = validate_s_params(spec.factors, params.s, params.p);
  if (!val.valid)
    throw std::domain_error("apriori_check: invalid s parameters: " + val.violations.front());
  double s_total = 0.0;
  for (double v : params.s) s_total += v;
  if (!(s_total < (N - 1) / 2.0)) {
    std::ostringstream msg;
    msg << "apriori_check: requires |s| < (N-1)/2, got |s| = " << s_total << " with N = " << N;
    throw std::domain_error(msg.str());
  }
  if (std::abs(0.5 - 1.0 / params.p) > s_total / (N - 1) + 1e-15) {
    std::ostringstream msg;
    msg << "apriori_check: requires |1/2 - 1/p| <= |s|/(N-1); p = " << params.p
        << " violates it for |s| = " << s_total;
    throw std::domain_error(msg.str());
  }

  std::vector<Field> u = solve_wave(g, config, threads);
  const int S = config.steps;
  const double dt = config.dt();

  // || g(., t_k) ||_{L^p_s} once per slice, then prefix trapezoid sums
  std::vector<double> gnorm(S + 1);
  for (int k = 0; k <= S; ++k) gnorm[k] = sobolev_norm(g[k], params, threads);

  std::vector<AprioriRow> rows;
  const Eigen::ArrayXd w2 = mode_frequencies(spec).square();
  for (int m = 1; m <= S; ++m) {
    AprioriRow row;
    row.t = m * dt;
    // |grad u| via per-axis spectral derivatives
    Field hat = transform(u[m], Direction::forward, threads);
    Eigen::ArrayXd grad_sq = Eigen::ArrayXd::Zero(hat.values.size());
    std::vector<int> idx;
    for (int axis = 0; axis < N; ++axis) {
      Field dhat = hat;
      for (std::size_t i = 0; i < spec.point_count(); ++i) {
        spec.decode(i, idx);
        dhat.values[static_cast<Eigen::Index>(i)] *=
            std::complex<double>(0.0, 2.0 * M_PI * spec.freq(idx[axis]));
      }
      Field d = transform(dhat, Direction::inverse, threads);
      grad_sq += d.values.abs2();
    }
    Field gmag = make_field(spec, Side::physical);
    gmag.values = grad_sq.sqrt().cast<std::complex<double>>();
    row.lhs = norm_lp(gmag, params.p);

    double acc = 0.5 * (gnorm[0] + gnorm[m]);
    for (int k = 1; k < m; ++k) acc += gnorm[k];
    row.rhs = acc * dt;
    row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spherewave
