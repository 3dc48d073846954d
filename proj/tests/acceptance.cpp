#include <iostream>

#include "levy/acceptance.hpp"

int main()
{
    auto const results = levy::run_acceptance(std::cout);
    int passed = 0;
    for (auto const& r : results)
        passed += r.pass;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return levy::all_passed(results) ? 0 : 1;
}
