#pragma once

#include <string>
#include <vector>

namespace tce {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// The full verification battery, in criterion order. Each entry runs one
/// self-contained check with its tolerances pinned in code.
std::vector<CriterionResult> run_all_criteria();

CriterionResult criterion_golden_closed_forms();       // 1
CriterionResult criterion_bifurcation_equivalence();   // 2
CriterionResult criterion_endpoint_formulas();         // 3
CriterionResult criterion_dynseq_closed_forms();       // 4
CriterionResult criterion_return_profile_structure();  // 5
CriterionResult criterion_renormalization();           // 6
CriterionResult criterion_islands();                   // 7
CriterionResult criterion_invariant_circles();         // 8
CriterionResult criterion_property_suites();           // 9
CriterionResult criterion_nonergodicity_witness();     // 10

}  // namespace tce
