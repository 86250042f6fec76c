#ifndef SPHEREWAVE_WAVE_HPP
#define SPHEREWAVE_WAVE_HPP

#include <vector>

#include "spherewave/grid.hpp"
#include "spherewave/multipliers.hpp"
#include "spherewave/sobolev.hpp"

namespace spherewave {

// Spectral Duhamel solver for d^2_t u - Lap u = g with zero initial data on
// the torus. Each mode is propagated with the exact sine kernel; the only
// time error is the composite-trapezoid quadrature of the Duhamel integral.
struct WaveConfig {
  GridSpec spec;
  double T = 1.0;
  int steps = 2;
  PhaseSign phase_sign = PhaseSign::plus;

  double dt() const { return T / steps; }
};

WaveConfig make_wave_config(const GridSpec& spec, double T, int steps,
                            PhaseSign sign = PhaseSign::plus);

// sin(2 pi tau |xi|) / (2 pi |xi|), continued by tau at xi = 0
double propagator_hat(double tau, double xi_norm);

// g holds steps+1 physical-side slices at t_k = k dt; returns u on the same
// time grid with u(.,0) = 0.
std::vector<Field> solve_wave(const std::vector<Field>& g, const WaveConfig& config,
                              int threads = 0);

// d^2_t u (centered, second order) - Lap u (spectral) - g on the interior
// time slices; entries 0 and steps are zero fields.
std::vector<Field> wave_residual(const std::vector<Field>& u, const std::vector<Field>& g,
                                 const WaveConfig& config, int threads = 0);

struct AprioriRow {
  double t = 0.0;
  double lhs = 0.0;    // || grad_x u(., t) ||_{L^p}
  double rhs = 0.0;    // int_0^t || g(., t - r) ||_{L^p_s} dr
  double ratio = 0.0;  // lhs / rhs
};

// Validates 0 <= |s| < (N-1)/2 and |1/2 - 1/p| <= |s|/(N-1), then evaluates
// the two sides on every time slice past t = 0.
std::vector<AprioriRow> apriori_check(const std::vector<Field>& g, const SobolevParams& params,
                                      const WaveConfig& config, int threads = 0);

}  // namespace spherewave

#endif
