// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <cstdlib>
#include <iostream>

#include "suq2/acceptance.hpp"

int main(int argc, char** argv) {
    unsigned seed = argc > 1 ? static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10)) : 2024;
    int failures = 0;
    for (int id = 1; id <= suq2::acceptance_count; ++id) {
        auto r = suq2::run_criterion(id, seed);
        std::cout << r.line() << std::endl;
        failures += !r.pass;
    }
    std::cout << (suq2::acceptance_count - failures) << "/" << suq2::acceptance_count << " criteria pass\n";
    return failures ? 1 : 0;
}
