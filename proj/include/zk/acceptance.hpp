#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zk {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // a documented impossibility (parameter set contradicts its own
  // hypotheses); reported as FAIL but does not fail the suite
  bool expected_fail = false;
  std::string detail;
};

// Runs the ten acceptance criteria end to end, printing one line per
// criterion to `log`.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

// 0 when every criterion passes or is a documented expected failure,
// 1 otherwise.
int acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace zk
