#ifndef SPHEREWAVE_COMMON_HPP
#define SPHEREWAVE_COMMON_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spherewave {

// Error taxonomy. Messages name the violated field or contract.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};
struct regime_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct coverage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Worker cap: explicit request wins, then SPHEREWAVE_THREADS, then hardware.
int thread_count(int requested = 0);

// Ordered parallel map; results must be written to disjoint slots so the
// output is independent of scheduling.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body);

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that a fixed seed
// produces identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();  // [0, 1)
  double normal();   // Box-Muller on uniform pairs

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Round-trip-exact decimal formatting (17 significant digits).
std::string format_g17(double v);

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Least squares with one intercept per group and a common slope.
// Returns the slope and the R^2 of the full fit.
LinFit grouped_fit(const std::vector<int>& group, const std::vector<double>& x,
                   const std::vector<double>& y);

}  // namespace spherewave

#endif
