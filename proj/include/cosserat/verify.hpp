#pragma once

#include <string>
#include <vector>

namespace cosserat::verify {

enum class Level { Quick, Full };

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Run the full property suite: algebraic kernel identities, discrete
/// exactness, rigid-motion nullity, linearization order, the moving-frames
/// cross-check, compatibility and circuit identities, balance and virtual
/// work, constitutive checks, and manufactured-solution convergence.
/// Quick level shrinks sample counts and grids; tolerances are identical.
Report run(Level level, unsigned seed);

}  // namespace cosserat::verify
