#ifndef SPHEREWAVE_SOBOLEV_HPP
#define SPHEREWAVE_SOBOLEV_HPP

#include <string>
#include <vector>

#include "spherewave/grid.hpp"
#include "spherewave/multipliers.hpp"

namespace spherewave {

struct SobolevParams {
  std::vector<double> s;  // per-block smoothness orders, nonnegative
  double p = 2.0;         // integrability, in (1, inf)
  double s_total() const;
};

struct SValidation {
  bool valid = false;
  std::vector<std::string> violations;
};

// Admissibility: s_i >= 0, 1 < p < inf, and when 0 < |s| <= (N-1)/2 also
// (N_i-1)/(N-1) |s| < s_i < N_i/2 for every block.
SValidation validate_s_params(const std::vector<int>& factors, const std::vector<double>& s,
                              double p);

// || f * B_s ||_{L^p} realized through the product weight table.
double sobolev_norm(const Field& f, const SobolevParams& params, int threads = 0);

}  // namespace spherewave

#endif
