// Acceptance suite: runs every catalog expectation at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include "vopt/catalog.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    std::uint64_t seed = 7;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    vopt::CatalogResult result = vopt::run_catalog(seed);
    for (const auto& c : result.criteria) {
        std::printf("[%s] criterion %2d (%s): %s\n", c.passed ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.details.c_str());
    }
    std::printf("%s\n", result.all_passed ? "ACCEPTANCE: all criteria passed"
                                          : "ACCEPTANCE: FAILURES PRESENT");
    return result.all_passed ? 0 : 1;
}
