#include "spherewave/sobolev.hpp"

#include <cmath>
#include <sstream>

namespace spherewave {

double SobolevParams::s_total() const {
  double acc = 0.0;
  for (double v : s) acc += v;
  return acc;
}

SValidation validate_s_params(const std::vector<int>& factors, const std::vector<double>& s,
                              double p) {
  SValidation result;
  if (s.size() != factors.size()) {
    result.violations.push_back("s: length must match the number of factors");
    return result;
  }
  if (!(p > 1.0) || std::isinf(p))
    result.violations.push_back("p: must lie in (1, inf)");
  int n_total = 0;
  for (int f : factors) n_total += f;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0.0) {
      std::ostringstream msg;
      msg << "s[" << i << "]: must be nonnegative";
      result.violations.push_back(msg.str());
    }
    total += s[i];
  }
  // the size cap s_i < N_i/2 always applies; the balancedness lower bound
  // only bites in the window 0 < |s| <= (N-1)/2
  for (std::size_t i = 0; i < s.size(); ++i) {
    double upper = factors[i] / 2.0;
    if (!(s[i] < upper)) {
      std::ostringstream msg;
      msg << "s[" << i << "] = " << s[i] << " violates s_i < N_i/2 (upper bound " << upper
          << ")";
      result.violations.push_back(msg.str());
    }
  }
  if (total > 0.0 && total <= (n_total - 1) / 2.0) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      double lower = (factors[i] - 1.0) / (n_total - 1.0) * total;
      if (!(lower < s[i])) {
        std::ostringstream msg;
        msg << "s[" << i << "] = " << s[i] << " violates (N_i-1)/(N-1)|s| < s_i (lower bound "
            << lower << ")";
        result.violations.push_back(msg.str());
      }
    }
  }
  result.valid = result.violations.empty();
  return result;
}

double sobolev_norm(const Field& f, const SobolevParams& params, int threads) {
  if (f.side != Side::physical)
    throw contract_error("sobolev_norm: field must be physical side");
  bool all_zero = true;
  for (double v : params.s) all_zero = all_zero && v == 0.0;
  if (all_zero) return norm_lp(f, params.p);
  MultiplierTable table = make_b_s_table(f.spec, params.s);
  Field weighted = apply_multiplier(f, table, threads);
  return norm_lp(weighted, params.p);
}

}  // namespace spherewave
