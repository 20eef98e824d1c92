// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria and tolerances are pinned in the verify module.
#include <cstdio>

#include "tce/verify.hpp"

int main() {
    const auto results = tce::run_all_criteria();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s  (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds);
        if (!r.detail.empty()) std::printf("      %s\n", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
