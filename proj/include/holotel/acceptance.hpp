#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "holotel/teleport.hpp"

namespace holotel {

struct CriterionResult {
  std::string id;
  std::string title;
  std::string expected;
  std::string measured;
  std::string tolerance;
  bool passed = false;
};

struct AcceptanceContext {
  TeleportOptions options;   ///< circuit and minimizer used by the fidelity criteria
  int holonomy_steps = 4096;
  double slope_step = 1e-4;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<CriterionResult(const AcceptanceContext&)> run;
};

/// Criteria 1..14 with the doubling criterion split into 5a (slopes) and
/// 5b (finite-parameter comparison).
const std::vector<Criterion>& acceptance_criteria();

/// Runs the criteria whose id is in `ids` (all when empty). Throws
/// std::invalid_argument for an unknown id.
std::vector<CriterionResult> run_acceptance(const AcceptanceContext& context,
                                            const std::vector<std::string>& ids = {});

/// One line per criterion: status, id, title, expected, measured, tolerance.
void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace holotel
