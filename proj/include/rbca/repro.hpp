#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rbca {

// One verification suite of the bundled battery: a named, self-contained
// check with pinned tolerances. Criteria are numbered 1..13.
struct ReproResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> lines;
};

int criterion_count();
ReproResult run_criterion(int criterion, int threads = 0);

// CLI suite names, each mapping to exactly one criterion.
const std::vector<std::pair<std::string, int>>& repro_suites();
ReproResult run_repro_suite(const std::string& name, int threads = 0);

} // namespace rbca
