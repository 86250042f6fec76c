#ifndef SPHEREWAVE_DECOMP_HPP
#define SPHEREWAVE_DECOMP_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "spherewave/common.hpp"

namespace spherewave {

// Smooth even bump: exactly 1 on |t| <= 1, exactly 0 on |t| >= 2, glued by
// h(2-|t|) / (h(2-|t|) + h(|t|-1)) with h(u) = e^{-1/u}.
double bump(double t);

struct DyadicIndex {
  int j = 0;             // shell index
  std::vector<int> t;    // cone indices t_2..t_n (nonnegative)
};

// Product of per-block bump differences in the ratios |xi_1|/|xi_i|:
//   prod_{i>=2} phi(2^{-t_i} R_i) - phi(2^{-t_i+1} R_i),  R_i = |xi_1|/|xi_i|.
// A vanishing block norm |xi_i| sends R_i to +inf and the factor to 0, and
// xi_1 = 0 gives 0 through phi(0)-phi(0).
double cone_cutoff(const std::vector<int>& t, const std::vector<double>& xi_block_norms);

// phi(2^{-j}|xi|) - phi(2^{-j+1}|xi|), supported in 2^{j-1} <= |xi| <= 2^{j+1}
double shell_cutoff(int j, double xi_norm);

struct PartitionSplit {
  std::vector<int> I, II, III;  // indices 2..n, disjoint cover
  int m = 0;                    // 1 + |I|
  int M = 0;                    // N_1 + sum_{i in I} N_i
};

// t_i < j/2 -> I;  j/2 <= t_i < j -> II;  t_i >= j -> III
PartitionSplit classify_partition(int j, const std::vector<int>& t,
                                  const std::vector<int>& factors);

struct CapIndex {
  int j = 0;
  int nu = 0;
  Eigen::VectorXd center;  // unit vector on S^{sphere_dim - 1}
};

// Equally distributed points with nearest-neighbor spacing inside
// [2^{-j/2-1}, 2^{-j/2}]: uniform angles on the circle, a retuned offset
// Fibonacci spiral on the 2-sphere.
std::vector<CapIndex> sphere_grid(int j, int sphere_dim);

struct SpacingStats {
  double min = 0.0, max = 0.0, mean = 0.0;
};
SpacingStats nearest_neighbor_stats(const std::vector<CapIndex>& grid);

// Normalized cap weights phi(2^{j/2} |xi/|xi| - center_nu|) / (sum over nu).
// Throws coverage_error when no cap reaches xi (xi outside U_j).
std::vector<double> cap_partition(int j, const std::vector<CapIndex>& grid,
                                  const Eigen::VectorXd& xi);

// Slab-and-ball neighborhoods of the wave front:
//   R^nu_j = { |x . c_nu + s| <= c 2^{-j},  |x + s c_nu| <= c 2^{-j/2} }
// with s = +1 for the plus phase; the union runs over 2^{-j} <= r.
struct InfluenceBox {
  int j = 0;
  int nu = 0;
  Eigen::VectorXd center;
};

struct InfluenceRegion {
  double r = 0.0;
  double c = 1.0;
  int sphere_dim = 0;
  int sign = +1;  // the phase branch the front belongs to
  int j_min = 0, j_max = 0;
  std::vector<InfluenceBox> boxes;
  std::vector<std::vector<CapIndex>> grids;  // per level j_min..j_max
};

// j_max extends j_min by `level_span` levels; deeper levels contribute
// volume below r/2^{level_span}.
InfluenceRegion influence_region(double r, double c, int sphere_dim, int level_span = 4,
                                 int sign = +1);

bool region_contains(const InfluenceRegion& region, const Eigen::VectorXd& x);

// Monte-Carlo volume over the bounding shell around |x| = 1.
double region_volume_mc(const InfluenceRegion& region, std::uint64_t samples,
                        std::uint64_t seed);

// Volume of one box by uniform counting on a local grid with at least
// `cells_per_slab` cells across the 2^{-j} slab thickness.
double box_volume_grid(const InfluenceRegion& region, const InfluenceBox& box,
                       int cells_per_slab = 8);

}  // namespace spherewave

#endif
