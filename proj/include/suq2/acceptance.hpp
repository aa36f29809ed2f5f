#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace suq2 {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;

    std::string line() const;  // "[PASS] 3 haar twisted trace: ..."
    nlohmann::json to_json() const;
};

inline constexpr int acceptance_count = 14;

CriterionResult run_criterion(int id, unsigned seed = 2024);
std::vector<CriterionResult> run_acceptance(unsigned seed = 2024);

}  // namespace suq2
