#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace levy
{

struct CriterionResult
{
    int id{0};
    std::string title;
    bool pass{false};
    double seconds{0};
    double limit{0};     //!< runtime limit in seconds, part of the criterion
    std::string detail;  //!< measured quantities, or the error that stopped the check
};

inline constexpr int kCriterionCount = 10;

// Run the listed criteria (all when empty), printing a line per criterion as
// it finishes
std::vector<CriterionResult> run_acceptance(std::ostream& os, std::span<int const> only = {});

bool all_passed(std::vector<CriterionResult> const& results);

}  // namespace levy
