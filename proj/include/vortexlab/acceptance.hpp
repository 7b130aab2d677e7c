#ifndef VORTEXLAB_ACCEPTANCE_HPP
#define VORTEXLAB_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vortexlab {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> results;
    bool all_pass() const;
};

// Runs the full verification suite and prints one pass/fail line per
// criterion to `log`.  `fine_grid`/`coarse_grid` control the solver grids
// (defaults 1024 and 512).
AcceptanceOutcome run_acceptance(std::ostream& log, int fine_grid = 1024,
                                 int coarse_grid = 512);

} // namespace vortexlab

#endif
