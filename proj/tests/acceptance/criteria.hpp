#pragma once

#include <string>
#include <vector>

namespace modfront::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

int criterion_count();
std::string criterion_name(int id);

// Runs one criterion; domain errors are caught and reported as failures.
CriterionResult run_criterion(int id);

std::string format_result(const CriterionResult& r);

}  // namespace modfront::acceptance
