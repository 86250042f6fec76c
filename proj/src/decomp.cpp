#include "spherewave/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spherewave {

double bump(double t) {
  t = std::abs(t);
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  double h_out = std::exp(-1.0 / (2.0 - t));
  double h_in = std::exp(-1.0 / (t - 1.0));
  return h_out / (h_out + h_in);
}

double cone_cutoff(const std::vector<int>& t, const std::vector<double>& xi_block_norms) {
  if (t.size() + 1 != xi_block_norms.size())
    throw validation_error("cone_cutoff: need one t per block beyond the first");
  const double xi1 = xi_block_norms[0];
  double prod = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0) throw std::domain_error("cone_cutoff: t entries must be >= 0");
    const double xii = xi_block_norms[i + 1];
    double factor;
    if (xii == 0.0) {
      factor = 0.0;  // ratio +inf, both bumps vanish
    } else {
      double ratio = xi1 / xii;
      factor = bump(std::ldexp(ratio, -t[i])) - bump(std::ldexp(ratio, -t[i] + 1));
    }
    prod *= factor;
    if (prod == 0.0) return 0.0;
  }
  return prod;
}

double shell_cutoff(int j, double xi_norm) {
  return bump(std::ldexp(xi_norm, -j)) - bump(std::ldexp(xi_norm, -j + 1));
}

PartitionSplit classify_partition(int j, const std::vector<int>& t,
                                  const std::vector<int>& factors) {
  if (j <= 0) throw std::domain_error("classify_partition: j must be > 0");
  if (t.size() + 1 != factors.size())
    throw validation_error("classify_partition: need one t per block beyond the first");
  PartitionSplit split;
  split.M = factors[0];
  for (std::size_t k = 0; k < t.size(); ++k) {
    int i = static_cast<int>(k) + 2;  // block label, first block is 1
    if (2.0 * t[k] < j) {
      split.I.push_back(i);
      split.M += factors[k + 1];
    } else if (t[k] < j) {
      split.II.push_back(i);
    } else {
      split.III.push_back(i);
    }
  }
  split.m = 1 + static_cast<int>(split.I.size());
  return split;
}

namespace {

std::vector<Eigen::VectorXd> circle_points(int count) {
  std::vector<Eigen::VectorXd> pts(count, Eigen::VectorXd(2));
  for (int i = 0; i < count; ++i) {
    double a = 2.0 * M_PI * i / count;
    pts[i] << std::cos(a), std::sin(a);
  }
  return pts;
}

std::vector<Eigen::VectorXd> fibonacci_sphere(int count) {
  // offset spiral; the 0.36 end offset evens out the polar caps
  const double eps = 0.36;
  const double golden = M_PI * (1.0 + std::sqrt(5.0));
  std::vector<Eigen::VectorXd> pts(count, Eigen::VectorXd(3));
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * (i + eps) / (count - 1.0 + 2.0 * eps);
    z = std::clamp(z, -1.0, 1.0);
    double rxy = std::sqrt(1.0 - z * z);
    double a = golden * i;
    pts[i] << rxy * std::cos(a), rxy * std::sin(a), z;
    pts[i].normalize();
  }
  return pts;
}

// Lat-long bins over the unit sphere (angle bins on the circle). Bin size is
// chosen no smaller than the query radius so a fixed neighbor stencil works.
class SphereBins {
 public:
  SphereBins(const std::vector<Eigen::VectorXd>& pts, double cell_chord) {
    dim_ = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    cell_ = std::max(cell_chord, 1e-6);
    if (dim_ == 2) {
      n_phi_ = std::max(4, static_cast<int>(std::floor(2.0 * M_PI / cell_)));
      bins_.resize(n_phi_);
      for (std::size_t i = 0; i < pts.size(); ++i) bins_[phi_bin(pts[i])].push_back(i);
    } else {
      n_z_ = std::max(2, static_cast<int>(std::floor(2.0 / cell_)));
      n_phi_ = std::max(4, static_cast<int>(std::floor(2.0 * M_PI / cell_)));
      bins_.resize(static_cast<std::size_t>(n_z_) * n_phi_);
      for (std::size_t i = 0; i < pts.size(); ++i) bins_[flat_bin(pts[i])].push_back(i);
    }
  }

  // visit candidate indices within chord distance `radius` of u
  template <class Fn>
  void visit(const Eigen::VectorXd& u, double radius, Fn&& fn) const {
    int span = static_cast<int>(std::ceil(radius / cell_)) + 1;
    if (dim_ == 2) {
      int b = phi_bin(u);
      for (int d = -span; d <= span; ++d)
        for (std::size_t i : bins_[wrap(b + d, n_phi_)]) fn(i);
      return;
    }
    int zb = z_bin(u);
    for (int dz = -span; dz <= span; ++dz) {
      int z = zb + dz;
      if (z < 0 || z >= n_z_) continue;
      // latitude circle radius bounds the phi stencil; near the poles scan all
      double z_lo = -1.0 + z * (2.0 / n_z_), z_hi = z_lo + 2.0 / n_z_;
      double sin_min = std::min(std::sqrt(std::max(0.0, 1.0 - z_lo * z_lo)),
                                std::sqrt(std::max(0.0, 1.0 - z_hi * z_hi)));
      if (z_lo < 0.0 && z_hi > 0.0) sin_min = 1.0;
      int pspan;
      double arc = 2.0 * M_PI / n_phi_;
      if (sin_min * arc < 1e-12 || sin_min < radius)
        pspan = n_phi_ / 2;
      else
        pspan = static_cast<int>(std::ceil(radius / (sin_min * arc))) + 1;
      int pb = phi_bin(u);
      for (int dp = -std::min(pspan, n_phi_ / 2); dp <= std::min(pspan, n_phi_ / 2); ++dp)
        for (std::size_t i : bins_[static_cast<std::size_t>(z) * n_phi_ + wrap(pb + dp, n_phi_)])
          fn(i);
    }
  }

 private:
  static int wrap(int b, int n) { return ((b % n) + n) % n; }
  int phi_bin(const Eigen::VectorXd& u) const {
    double a = std::atan2(u[1], u[0]);
    if (a < 0) a += 2.0 * M_PI;
    return std::min(n_phi_ - 1, static_cast<int>(a / (2.0 * M_PI) * n_phi_));
  }
  int z_bin(const Eigen::VectorXd& u) const {
    double z = std::clamp(u[2], -1.0, 1.0);
    return std::min(n_z_ - 1, static_cast<int>((z + 1.0) / 2.0 * n_z_));
  }
  std::size_t flat_bin(const Eigen::VectorXd& u) const {
    return static_cast<std::size_t>(z_bin(u)) * n_phi_ + phi_bin(u);
  }

  int dim_ = 0;
  int n_z_ = 1, n_phi_ = 1;
  double cell_ = 1.0;
  std::vector<std::vector<std::size_t>> bins_;
};

SpacingStats spacing_of(const std::vector<Eigen::VectorXd>& pts, double guess) {
  SpacingStats st;
  st.min = std::numeric_limits<double>::max();
  double acc = 0.0;
  SphereBins bins(pts, 2.5 * guess);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::max();
    bins.visit(pts[i], 2.5 * guess, [&](std::size_t k) {
      if (k == i) return;
      best = std::min(best, (pts[i] - pts[k]).norm());
    });
    st.min = std::min(st.min, best);
    st.max = std::max(st.max, best);
    acc += best;
  }
  st.mean = acc / static_cast<double>(pts.size());
  return st;
}

}  // namespace

std::vector<CapIndex> sphere_grid(int j, int sphere_dim) {
  if (j < 1) throw std::domain_error("sphere_grid: j must be >= 1");
  if (sphere_dim < 2 || sphere_dim > 3)
    throw validation_error("sphere_grid: sphere_dim must be 2 or 3");
  const double target_hi = std::pow(2.0, -0.5 * j);
  const double target_lo = 0.5 * target_hi;

  std::vector<Eigen::VectorXd> pts;
  if (sphere_dim == 2) {
    // chord spacing 2 sin(pi/K); aim below the upper edge
    int count = std::max(4, static_cast<int>(std::ceil(2.0 * M_PI / (0.8 * target_hi))));
    for (int iter = 0; iter < 64; ++iter) {
      double chord = 2.0 * std::sin(M_PI / count);
      if (chord > target_hi)
        ++count;
      else if (chord <= target_lo)
        --count;
      else
        break;
    }
    pts = circle_points(count);
  } else {
    // the Fibonacci spiral has nearest-neighbor spread ~1.15, well inside the
    // dyadic window; retune the count until the measured extremes land in it
    const double aim = 0.78 * target_hi;
    int count = std::max(16, static_cast<int>(std::round(4.0 * M_PI / (0.85 * aim * aim))));
    for (int iter = 0; iter < 40; ++iter) {
      pts = fibonacci_sphere(count);
      SpacingStats st = spacing_of(pts, target_hi);
      if (st.max <= target_hi && st.min > target_lo) break;
      double scale = st.max / aim;
      int next = static_cast<int>(std::round(count * scale * scale));
      if (next == count) next += (st.max > target_hi) ? 1 : -1;
      count = std::max(16, next);
    }
  }

  SpacingStats st = spacing_of(pts, target_hi);
  if (st.max > target_hi || st.min <= target_lo) {
    std::ostringstream msg;
    msg << "sphere_grid: spacing window (" << target_lo << ", " << target_hi
        << "] not attainable at j=" << j << " (got [" << st.min << ", " << st.max << "])";
    throw std::runtime_error(msg.str());
  }

  std::vector<CapIndex> grid(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    grid[i] = CapIndex{j, static_cast<int>(i), pts[i]};
  return grid;
}

SpacingStats nearest_neighbor_stats(const std::vector<CapIndex>& grid) {
  std::vector<Eigen::VectorXd> pts(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pts[i] = grid[i].center;
  double guess = std::pow(2.0, -0.5 * grid.front().j);
  return spacing_of(pts, guess);
}

std::vector<double> cap_partition(int j, const std::vector<CapIndex>& grid,
                                  const Eigen::VectorXd& xi) {
  double n = xi.norm();
  if (n == 0.0) throw std::domain_error("cap_partition: xi must be nonzero");
  Eigen::VectorXd dir = xi / n;
  const double scale = std::pow(2.0, 0.5 * j);
  std::vector<double> w(grid.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = bump(scale * (dir - grid[i].center).norm());
    w[i] = v;
    total += v;
  }
  if (total == 0.0)
    throw coverage_error("cap_partition: xi lies outside the covered set U_j");
  for (double& v : w) v /= total;
  return w;
}

// ---------------------------------------------------------------------------
// Region of influence

InfluenceRegion influence_region(double r, double c, int sphere_dim, int level_span,
                                 int sign) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("influence_region: need 0 < r < 1");
  if (!(c > 0.0)) throw std::domain_error("influence_region: need c > 0");
  InfluenceRegion region;
  region.r = r;
  region.c = c;
  region.sphere_dim = sphere_dim;
  region.sign = sign;
  region.j_min = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / r))));
  region.j_max = region.j_min + level_span;
  for (int j = region.j_min; j <= region.j_max; ++j) {
    std::vector<CapIndex> grid = sphere_grid(j, sphere_dim);
    for (const CapIndex& cap : grid)
      region.boxes.push_back(InfluenceBox{j, cap.nu, cap.center});
    region.grids.push_back(std::move(grid));
  }
  return region;
}

namespace {

bool box_contains(const InfluenceRegion& region, int j, const Eigen::VectorXd& center,
                  const Eigen::VectorXd& x) {
  const double s = static_cast<double>(region.sign);
  if (std::abs(x.dot(center) + s) > region.c * std::pow(2.0, -j)) return false;
  return (x + s * center).norm() <= region.c * std::pow(2.0, -0.5 * j);
}

}  // namespace

bool region_contains(const InfluenceRegion& region, const Eigen::VectorXd& x) {
  const double s = static_cast<double>(region.sign);
  double nr = x.norm();
  if (nr == 0.0) return false;
  Eigen::VectorXd u = (-s / nr) * x;  // candidate centers cluster near -s x
  for (std::size_t lvl = 0; lvl < region.grids.size(); ++lvl) {
    int j = region.j_min + static_cast<int>(lvl);
    double ball_r = region.c * std::pow(2.0, -0.5 * j);
    // |x + s center| <= ball_r forces |center - u| <= ball_r + | |x| - 1 |
    double radius = ball_r + std::abs(nr - 1.0);
    for (const CapIndex& cap : region.grids[lvl]) {
      if ((cap.center - u).squaredNorm() > radius * radius) continue;
      if (box_contains(region, j, cap.center, x)) return true;
    }
  }
  return false;
}

double region_volume_mc(const InfluenceRegion& region, std::uint64_t samples,
                        std::uint64_t seed) {
  const int N = region.sphere_dim;
  const double s = static_cast<double>(region.sign);
  const double pad = region.c * (std::pow(2.0, -0.5 * region.j_min) +
                                 std::pow(2.0, -region.j_min));
  const double lo = std::max(0.0, 1.0 - pad), hi = 1.0 + pad;

  // per-level bins make each membership query near-constant cost
  std::vector<SphereBins> bins;
  std::vector<double> ball_r(region.grids.size());
  std::vector<std::vector<Eigen::VectorXd>> centers(region.grids.size());
  for (std::size_t lvl = 0; lvl < region.grids.size(); ++lvl) {
    int j = region.j_min + static_cast<int>(lvl);
    ball_r[lvl] = region.c * std::pow(2.0, -0.5 * j);
    centers[lvl].reserve(region.grids[lvl].size());
    for (const CapIndex& cap : region.grids[lvl]) centers[lvl].push_back(cap.center);
    bins.emplace_back(centers[lvl], std::max(ball_r[lvl], 1e-4));
  }

  Rng rng(seed);
  std::uint64_t hits = 0;
  Eigen::VectorXd x(N), u(N);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (int d = 0; d < N; ++d) x[d] = -hi + 2.0 * hi * rng.uniform();
    double nr = x.norm();
    if (nr < lo || nr > hi || nr == 0.0) continue;
    u = (-s / nr) * x;
    bool inside = false;
    for (std::size_t lvl = 0; lvl < bins.size() && !inside; ++lvl) {
      int j = region.j_min + static_cast<int>(lvl);
      double radius = ball_r[lvl] + std::abs(nr - 1.0);
      bins[lvl].visit(u, radius, [&](std::size_t k) {
        if (inside) return;
        if (box_contains(region, j, centers[lvl][k], x)) inside = true;
      });
    }
    if (inside) ++hits;
  }
  return std::pow(2.0 * hi, N) * static_cast<double>(hits) / static_cast<double>(samples);
}

double box_volume_grid(const InfluenceRegion& region, const InfluenceBox& box,
                       int cells_per_slab) {
  const int N = region.sphere_dim;
  const double s = static_cast<double>(region.sign);
  const double ball_r = region.c * std::pow(2.0, -0.5 * box.j);
  const double slab = region.c * std::pow(2.0, -box.j);
  const double cell = std::min(2.0 * slab / cells_per_slab, ball_r / cells_per_slab);
  Eigen::VectorXd anchor = -s * box.center;
  int side = static_cast<int>(std::ceil(2.0 * ball_r / cell));
  std::vector<int> idx(N, 0);
  std::uint64_t hits = 0;
  Eigen::VectorXd x(N);
  for (;;) {
    for (int d = 0; d < N; ++d) x[d] = anchor[d] - ball_r + (idx[d] + 0.5) * cell;
    if (box_contains(region, box.j, box.center, x)) ++hits;
    int d = N - 1;
    while (d >= 0 && ++idx[d] == side) idx[d--] = 0;
    if (d < 0) break;
  }
  return static_cast<double>(hits) * std::pow(cell, N);
}

}  // namespace spherewave
