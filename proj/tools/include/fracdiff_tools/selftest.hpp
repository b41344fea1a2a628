#pragma once
// Acceptance checks shared by `fracdiff selftest` and the acceptance test
// binary. Every tolerance is fixed in selftest.cpp.
#include <functional>
#include <string>
#include <vector>

namespace fracdiff::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst error (or ratio deviation) seen
  double tolerance = 0.0;  // bound it is compared against
  std::string detail;
};

struct Check {
  std::string name;
  std::function<CheckResult()> run;
};

/// The acceptance criteria in report order.
const std::vector<Check>& checks();

/// Runs every check; an exception inside a check is reported as a failure.
std::vector<CheckResult> run_all();

CheckResult run_one(const Check& check);

/// One line per check plus a summary line. Contains no timings, so two runs
/// of the same build produce identical text.
std::string format_report(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

/// Ai(z) by its Maclaurin series, accurate for |z| below about 5.
double airy_ai_maclaurin(double z);

}  // namespace fracdiff::selftest
