#include "spherewave/kernelcheck.hpp"

#include <cmath>
#include <sstream>

namespace spherewave {

MultiplierTable make_kernel_table(int j, const std::vector<int>& t, const KernelSymbol& symbol,
                                  const GridSpec& spec) {
  const double sg = symbol.sign == PhaseSign::plus ? 1.0 : -1.0;
  return make_table(spec, Provenance::custom, [&](const std::vector<double>& xi) {
    std::vector<double> blocks(spec.block_count(), 0.0);
    int axis = 0;
    double xi2 = 0.0;
    for (int b = 0; b < spec.block_count(); ++b) {
      double acc = 0.0;
      for (int d = 0; d < spec.factors[b]; ++d, ++axis) acc += xi[axis] * xi[axis];
      blocks[b] = std::sqrt(acc);
      xi2 += acc;
    }
    double cone = cone_cutoff(t, blocks);
    if (cone == 0.0) return std::complex<double>(0.0);
    double shell = shell_cutoff(j, std::sqrt(xi2));
    if (shell == 0.0) return std::complex<double>(0.0);
    double sigma = 1.0;
    for (int b = 0; b < spec.block_count(); ++b)
      sigma *= std::pow(1.0 + blocks[b] * blocks[b], -0.5 * symbol.rho[b]);
    return std::polar(cone * shell * sigma, sg * 2.0 * M_PI * std::sqrt(xi2));
  });
}

Field lambda_kernel(int j, const std::vector<int>& t, const KernelSymbol& symbol,
                    const GridSpec& spec, int threads) {
  if (spec.max_freq() < std::ldexp(1.0, j + 1)) {
    std::ostringstream msg;
    msg << "lambda_kernel: shell 2^" << j + 1 << " exceeds the grid limit M/(4L) = "
        << spec.max_freq() << "; need samples_per_axis >= "
        << static_cast<long>(std::ceil(4.0 * spec.half_width * std::ldexp(1.0, j + 1)));
    throw resolution_error(msg.str());
  }
  MultiplierTable table = make_kernel_table(j, t, symbol, spec);
  Field hat;
  hat.spec = spec;
  hat.side = Side::frequency;
  hat.values = std::move(table.values);
  return transform(hat, Direction::inverse, threads);
}

GridSpec scan_grid(int dim_total, const std::vector<int>& factors, int j, double half_width,
                   int oversample) {
  long needed = static_cast<long>(
      std::ceil(4.0 * half_width * std::ldexp(1.0, j + 1))) * oversample;
  if (needed % 2) ++needed;
  return make_grid(dim_total, factors, static_cast<int>(needed), half_width);
}

std::vector<KernelScanRow> l1_scan(int j_min, int j_max, const KernelSymbol& symbol,
                                   int dim_total, const std::vector<int>& factors,
                                   double half_width, int threads) {
  if (j_min < 1 || j_max < j_min) throw validation_error("l1_scan: need 1 <= j_min <= j_max");
  const int blocks = static_cast<int>(factors.size());

  // enumerate rows (j, t) with 0 <= t_i < j/2 for every trailing block
  struct Job {
    int j;
    std::vector<int> t;
  };
  std::vector<Job> jobs;
  for (int j = j_min; j <= j_max; ++j) {
    int t_cap = std::max(0, j / 2 - 1);
    std::vector<int> t(blocks - 1, 0);
    for (;;) {
      jobs.push_back({j, t});
      int d = blocks - 2;
      while (d >= 0 && ++t[d] > t_cap) t[d--] = 0;
      if (d < 0) break;
    }
  }

  std::vector<KernelScanRow> rows(jobs.size());
  // rows run sequentially; the transform inside each is already parallel
  for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
    const Job& job = jobs[idx];
    GridSpec spec = scan_grid(dim_total, factors, job.j, half_width);
    Field kernel = lambda_kernel(job.j, job.t, symbol, spec, threads);
    KernelScanRow row;
    row.j = job.j;
    row.t = job.t;
    row.partition = classify_partition(job.j, job.t, factors);
    row.l1_mass = norm_lp(kernel, 1.0);
    row.predicted = 1.0;
    for (std::size_t b = 0; b + 1 < factors.size(); ++b)
      row.predicted *= std::pow(2.0, -0.5 * factors[b + 1] * job.t[b]);
    row.ratio = row.l1_mass / row.predicted;
    rows[idx] = std::move(row);
  }
  return rows;
}

std::vector<DiffScanRow> diff_scan(int j, const std::vector<int>& t, const KernelSymbol& symbol,
                                   int dim_total, const std::vector<int>& factors,
                                   double half_width, int threads) {
  // lattice spacing 2^{-j-3} so the y ladder {2^{-j-3},...,2^{-j}} is exact
  long M = static_cast<long>(std::llround(2.0 * half_width * std::ldexp(1.0, j + 3)));
  if (M % 2) ++M;
  GridSpec spec = make_grid(dim_total, factors, static_cast<int>(M), half_width);
  Field kernel = lambda_kernel(j, t, symbol, spec, threads);

  const double h = spec.spacing();
  const double cell = std::pow(h, dim_total);
  double predicted_t = 1.0;
  for (std::size_t b = 0; b + 1 < factors.size(); ++b)
    predicted_t *= std::pow(2.0, -0.5 * factors[b + 1] * t[b]);

  // shift directions: first axis, last axis, and the diagonal of the two
  std::vector<std::vector<int>> dirs;
  {
    std::vector<int> e1(dim_total, 0), en(dim_total, 0), diag(dim_total, 0);
    e1[0] = 1;
    en[dim_total - 1] = 1;
    diag[0] = 1;
    diag[dim_total - 1] = 1;
    dirs = {e1, en, diag};
    if (dim_total == 1) dirs = {e1};
  }

  const int Mi = spec.samples_per_axis;
  std::vector<std::size_t> strides(dim_total);
  {
    std::size_t s = 1;
    for (int d = dim_total - 1; d >= 0; --d) {
      strides[d] = s;
      s *= Mi;
    }
  }

  std::vector<DiffScanRow> rows;
  for (const auto& dir : dirs) {
    for (int steps : {1, 2, 4, 8}) {
      DiffScanRow row;
      row.j = j;
      row.t = t;
      row.y.assign(dim_total, 0.0);
      double y2 = 0.0;
      for (int d = 0; d < dim_total; ++d) {
        row.y[d] = dir[d] * steps * h;
        y2 += row.y[d] * row.y[d];
      }
      row.y_norm = std::sqrt(y2);

      // circular shift by the lattice vector; exact on the torus
      double acc = 0.0;
      std::vector<int> idx(dim_total);
      const auto& v = kernel.values;
      for (std::size_t i = 0; i < spec.point_count(); ++i) {
        std::size_t srci = 0;
        std::size_t rem = i;
        for (int d = 0; d < dim_total; ++d) {
          int id = static_cast<int>(rem / strides[d]);
          rem %= strides[d];
          int shifted = id - dir[d] * steps;
          shifted = ((shifted % Mi) + Mi) % Mi;
          srci += static_cast<std::size_t>(shifted) * strides[d];
        }
        acc += std::abs(v[static_cast<Eigen::Index>(srci)] - v[static_cast<Eigen::Index>(i)]);
      }
      row.diff_mass = acc * cell;
      row.predicted = std::ldexp(1.0, j) * row.y_norm * predicted_t;
      row.ratio = row.diff_mass / row.predicted;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

TailScanRow tail_scan(int j, const std::vector<int>& t, double r, double c,
                      const KernelSymbol& symbol, int dim_total,
                      const std::vector<int>& factors, double half_width, int threads) {
  if (!(std::ldexp(1.0, j) > 1.0 / r)) {
    std::ostringstream msg;
    msg << "tail_scan: outside the scan regime, need 2^j > 1/r (j = " << j
        << ", 1/r = " << 1.0 / r << ")";
    throw std::domain_error(msg.str());
  }
  GridSpec spec = scan_grid(dim_total, factors, j, half_width);
  Field kernel = lambda_kernel(j, t, symbol, spec, threads);

  const int sign = symbol.sign == PhaseSign::plus ? +1 : -1;
  // union levels reach a few shells past the scanned one; deeper boxes are
  // thinner than a lattice cell and carry no further excluded mass
  const int j_union_min = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / r))));
  InfluenceRegion region = influence_region(r, c, dim_total, j + 3 - j_union_min, sign);

  const double pad = region.c * (std::pow(2.0, -0.5 * region.j_min) +
                                 std::pow(2.0, -region.j_min));
  const double h = spec.spacing();
  const double cell = std::pow(h, dim_total);
  double tail = 0.0, total = 0.0;
  std::vector<int> idx;
  Eigen::VectorXd x(dim_total);
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    double mag = std::abs(kernel.values[static_cast<Eigen::Index>(i)]);
    total += mag;
    if (mag == 0.0) continue;
    spec.decode(i, idx);
    for (int d = 0; d < dim_total; ++d) x[d] = spec.coord(idx[d]);
    double nr = x.norm();
    if (nr < 1.0 - pad || nr > 1.0 + pad) {
      tail += mag;  // outside the bounding shell of every box
    } else if (!region_contains(region, x)) {
      tail += mag;
    }
  }

  TailScanRow row;
  row.j = j;
  row.t = t;
  row.r = r;
  row.c = c;
  row.tail_mass = tail * cell;
  row.l1_mass = total * cell;
  row.predicted = std::ldexp(1.0, -j) / r;
  for (std::size_t b = 0; b + 1 < factors.size(); ++b)
    row.predicted *= std::pow(2.0, -0.5 * factors[b + 1] * t[b]);
  row.ratio = row.tail_mass / row.predicted;
  return row;
}

}  // namespace spherewave
