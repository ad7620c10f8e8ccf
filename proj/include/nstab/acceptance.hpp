#pragma once

#include <string>
#include <vector>

namespace nstab::acceptance {

struct CriterionResult {
    std::string name;
    bool pass = false;
    bool informational = false;  // reported, never failing
    std::string details;
    double seconds = 0.0;
};

// Names in fixed order: maj-comparison, noise-oracle, influence-equality,
// derivative-identity, extremal-suite, monotonization, mutual-information,
// tree, same-strategy, conjecture1.
std::vector<std::string> criterion_names();

CriterionResult run_criterion(const std::string& name, int jobs = 1);
std::vector<CriterionResult> run_all(int jobs = 1);

}  // namespace nstab::acceptance
