#ifndef SPHEREWAVE_ACCEPTANCE_HPP
#define SPHEREWAVE_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace spherewave::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Criteria 1..13. Each runner pins its tolerances internally and reports the
// measured quantities in `detail`.
CriterionResult run_criterion(int id, int threads = 0);

std::vector<CriterionResult> run_all(int threads = 0);

// one line per criterion: "criterion  N  PASS|FAIL  name  [detail]  (t s)"
std::string format_result(const CriterionResult& result);

}  // namespace spherewave::acceptance

#endif
