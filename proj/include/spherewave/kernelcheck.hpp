#ifndef SPHEREWAVE_KERNELCHECK_HPP
#define SPHEREWAVE_KERNELCHECK_HPP

#include <vector>

#include "spherewave/decomp.hpp"
#include "spherewave/grid.hpp"
#include "spherewave/multipliers.hpp"

namespace spherewave {

// Localized wave-front kernels: Lambda(x, y) = K(x - y) with
//   K(x) = int e^{2 pi i (x.xi +- |xi|)} delta_t(xi) phi_j(xi) sigma(xi) dxi
// synthesized by an inverse transform on the grid. The symbol sigma is the
// product model prod_i (1 + |xi_i|^2)^{-rho_i/2}.

struct KernelSymbol {
  std::vector<double> rho;
  PhaseSign sign = PhaseSign::plus;
};

// frequency-side table delta_t . phi_j . sigma . e^{+-2 pi i |xi|}
MultiplierTable make_kernel_table(int j, const std::vector<int>& t, const KernelSymbol& symbol,
                                  const GridSpec& spec);

// y = 0 slice of Lambda; throws resolution_error unless M/(4L) >= 2^{j+1}
Field lambda_kernel(int j, const std::vector<int>& t, const KernelSymbol& symbol,
                    const GridSpec& spec, int threads = 0);

struct KernelScanRow {
  int j = 0;
  std::vector<int> t;
  PartitionSplit partition;
  double l1_mass = 0.0;
  double predicted = 0.0;  // prod_{i in I} 2^{-N_i t_i / 2}
  double ratio = 0.0;      // measured / predicted
};

// grid chosen per j so that M/(4L) = 2^{j+1} exactly at the given half-width
GridSpec scan_grid(int dim_total, const std::vector<int>& factors, int j, double half_width,
                   int oversample = 1);

std::vector<KernelScanRow> l1_scan(int j_min, int j_max, const KernelSymbol& symbol,
                                   int dim_total, const std::vector<int>& factors,
                                   double half_width = 1.25, int threads = 0);

struct DiffScanRow {
  int j = 0;
  std::vector<int> t;
  std::vector<double> y;
  double y_norm = 0.0;
  double diff_mass = 0.0;
  double predicted = 0.0;  // 2^j |y| prod 2^{-N_i t_i/2}
  double ratio = 0.0;
};

// one kernel per (j, t); each y is an exact lattice translation so the
// difference mass needs no re-synthesis
std::vector<DiffScanRow> diff_scan(int j, const std::vector<int>& t, const KernelSymbol& symbol,
                                   int dim_total, const std::vector<int>& factors,
                                   double half_width = 2.0, int threads = 0);

struct TailScanRow {
  int j = 0;
  std::vector<int> t;
  double r = 0.0;
  double c = 0.0;
  double tail_mass = 0.0;
  double l1_mass = 0.0;
  double predicted = 0.0;  // (2^-j / r) prod 2^{-N_i t_i/2}
  double ratio = 0.0;
};

// mass of K outside the influence region Q_r; requires 2^j > 1/r
TailScanRow tail_scan(int j, const std::vector<int>& t, double r, double c,
                      const KernelSymbol& symbol, int dim_total,
                      const std::vector<int>& factors, double half_width = 2.5,
                      int threads = 0);

}  // namespace spherewave

#endif
