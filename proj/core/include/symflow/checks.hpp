#pragma once

// Self-checks run by `symflow check`: closed-form and cross-method agreement
// on the builtin models.

#include <string>
#include <vector>

namespace symflow {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

CheckResult check_perron_exact();
CheckResult check_pressure_closed_forms();
CheckResult check_gradient_hessian();
CheckResult check_legendre_roundtrip();
CheckResult check_entropy_extremum();
CheckResult check_trace_oracle();

std::vector<CheckResult> run_checks();

}  // namespace symflow
