#ifndef SPHEREWAVE_PROBER_HPP
#define SPHEREWAVE_PROBER_HPP

#include <complex>
#include <vector>

#include "spherewave/decomp.hpp"
#include "spherewave/grid.hpp"
#include "spherewave/multipliers.hpp"
#include "spherewave/sobolev.hpp"

namespace spherewave {

// Two-lobe Hardy-space atom: supported in B_r(center), sup bounded by the
// reciprocal ball volume, grid sum exactly removed.
Field h1_atom(double r, const std::vector<double>& center, const GridSpec& spec);

// Unit-L2 field whose spectrum fills one angular cap of shell j.
Field knapp_profile(const CapIndex& cap, const GridSpec& spec, int threads = 0);

// || apply(f, phase . table) ||_{L^p_r} / || f ||_{L^p_s}
double norm_ratio(const MultiplierTable& op_table, PhaseSign sign, const Field& f,
                  const SobolevParams& in_params, double out_order, double p,
                  int threads = 0);

struct SweepRow {
  std::complex<double> alpha;
  double r = 0.0;
  double s_total = 0.0;
  std::vector<double> s;
  double p = 0.0;
  double ratio_max = 0.0;
  bool inside_theory = false;  // |1/p - 1/2| <= (alpha - r + |s|)/(N-1) + 1/2
};

enum class TestFamily { atoms, knapp, random, all };

struct SweepConfig {
  GridSpec spec;
  std::vector<std::complex<double>> alpha_list;
  std::vector<double> r_list;
  std::vector<std::vector<double>> s_list;
  std::vector<double> p_grid;
  TestFamily family = TestFamily::random;
  int random_draws = 20;
  int knapp_levels = 6;
  int atom_radii = 4;
  std::uint64_t seed = 12345;
  PhaseSign sign = PhaseSign::plus;
};

bool inside_theory_region(double alpha_minus_r_plus_s, int dim_total, double p);

std::vector<SweepRow> region_sweep(const SweepConfig& config, int threads = 0);

// deterministic band-limited noise; modes with every |k_i| <= band
Field random_band_limited(const GridSpec& spec, int band, Rng& rng);

}  // namespace spherewave

#endif
