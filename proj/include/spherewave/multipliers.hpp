#ifndef SPHEREWAVE_MULTIPLIERS_HPP
#define SPHEREWAVE_MULTIPLIERS_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "spherewave/bessel.hpp"
#include "spherewave/grid.hpp"

namespace spherewave {

// Parameter bundle (alpha, r): alpha is the convolution-kernel order, r the
// output smoothness order.
struct OmegaParams {
  std::complex<double> alpha;
  double r = 0.0;
};

// Product-type symbol class of order -m: |d^a sigma| <= C prod_i
// (1+|xi_i|)^{-|a_i|-rho_i} with m = sum rho_i.
struct SymbolClass {
  std::vector<double> rho;
  double m() const;
  // admissibility window (N_i-1)/(N-1) m < rho_i < N_i/2, scoped to
  // 0 < m <= (N-1)/2; violations listed by index
  std::vector<std::string> violations(const std::vector<int>& factors) const;
};

enum class Provenance { omega_hat, b_s, sigma, custom };
enum class PhaseSign { plus, minus };

struct MultiplierTable {
  GridSpec spec;
  Provenance provenance = Provenance::custom;
  ArrayXc values;  // on the frequency grid, DFT index order
};

// Fourier transform of the sphere-supported kernel:
//   (1/|xi|)^{N/2+alpha-1} J_{N/2+alpha-1}(2 pi |xi|)
// with the removable singularity at xi = 0 filled by
//   pi^{N/2+alpha-1} / Gamma(N/2+alpha).
std::complex<double> omega_hat(const OmegaParams& params, double xi_norm, int dim_total);
std::complex<double> omega_hat(std::complex<double> alpha, double xi_norm, int dim_total);

// Gaussian-hypergeometric style expansion of the same transform in the
// variable z with alpha = 1 - z:
//   pi^{(N-1)/2-z} sum_k (-1)^k (2 pi |xi|)^{2k}/(2k)! Gamma(k+1/2)/Gamma(k+N/2+1-z)
std::complex<double> omega_hat_series(std::complex<double> z, double xi_norm, int dim_total,
                                      int terms);

// Physical-side kernel pi^{alpha-1} Gamma^{-1}(alpha) (1-|x|^2)_+^{alpha-1},
// defined for Re alpha > 0; radial in |x|.
std::complex<double> omega_kernel(std::complex<double> alpha, double x_norm);

// Sample the kernel on a grid; cells straddling |x| = 1 are averaged over a
// 16^N subdivision to tame the rim (singular for Re alpha < 1, discontinuous
// at alpha = 1).
Field sample_omega_kernel(const GridSpec& spec, std::complex<double> alpha, int threads = 0);

// prod_i (1 + |xi_i|^2)^{s_i/2}
double b_s_hat(const std::vector<double>& s, const std::vector<double>& xi_block_norms);

// Composite symbol of the smoothed, cutoff transform:
//   (1+|xi|^2)^{r/2} { |xi|^{-((N-1)/2+alpha)}
//     + sum_{k<=terms} (a_k/2)(2pi|xi|)^{-2k} +- (b_k/2i)(2pi|xi|)^{-2k+1} }
//   [1 - phi(|xi|)] prod_i (1+|xi_i|^2)^{-s_i/2}
// a_k, b_k taken at order N/2+alpha-1; the +- follows the phase sign.
std::complex<double> sigma_symbol(const OmegaParams& params, const std::vector<double>& s,
                                  int correction_terms,
                                  const std::vector<double>& xi_block_norms, int dim_total,
                                  PhaseSign sign = PhaseSign::plus);

using SymbolFn = std::function<std::complex<double>(const std::vector<double>& xi)>;

// Table construction (immutable once built)
MultiplierTable make_table(const GridSpec& spec, Provenance prov, const SymbolFn& fn);
MultiplierTable make_omega_table(const GridSpec& spec, const OmegaParams& params);
MultiplierTable make_b_s_table(const GridSpec& spec, const std::vector<double>& s,
                               bool reciprocal = false);
MultiplierTable make_sigma_table(const GridSpec& spec, const OmegaParams& params,
                                 const std::vector<double>& s, int correction_terms,
                                 PhaseSign sign);
// e^{+-2 pi i |xi|}; multiply into an existing table to carry the wave phase
MultiplierTable make_phase_table(const GridSpec& spec, PhaseSign sign);
MultiplierTable with_phase(const MultiplierTable& table, PhaseSign sign);

struct ClassCheckRow {
  std::vector<int> multi_index;  // per-axis derivative orders
  double sup_coarse = 0.0;
  double sup_fine = 0.0;
  double drift = 0.0;  // sup_fine / sup_coarse
};

struct ClassCheckReport {
  bool pass = false;
  std::vector<ClassCheckRow> rows;
  double worst_ratio = 0.0;
};

// Finite-difference membership check against |d^a sigma| prod (1+|xi_i|)^{|a_i|+rho_i}.
// The sup is taken on the coarse lattice and again with the frequency extent
// doubled; pass requires every sup finite with drift < 2.
ClassCheckReport symbol_class_check(const SymbolFn& fn, const GridSpec& spec,
                                    const SymbolClass& cls, int max_order);
ClassCheckReport symbol_class_check(const MultiplierTable& coarse, const MultiplierTable& fine,
                                    const SymbolClass& cls, int max_order);

// inverse-transform(table . forward-transform(f))
Field apply_multiplier(const Field& f, const MultiplierTable& table, int threads = 0);

}  // namespace spherewave

#endif
