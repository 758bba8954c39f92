#pragma once

#include <string>
#include <vector>

#include "coset/io.hpp"
#include "coset/tolerances.hpp"

namespace coset::verify {

enum class Level { fast, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  long instances = 0;     // cases examined
  double worst_slack = 0; // most adverse (bound - value) seen; exact checks report 0
  std::string note;
};

struct Report {
  std::string level;
  bool passed = false;
  std::vector<CheckResult> checks;
};

// Runs every named verification check at the given level. Deterministic:
// identical output for any thread count.
Report run_suite(Level level, int threads = 1, const Tolerances& tol = default_tolerances());

io::Json report_to_json(const Report& rep);

}  // namespace coset::verify
