#include "ciqc/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    int failed = 0;
    for (const auto& r : ciqc::run_acceptance(seed)) {
        std::cout << ciqc::format_line(r) << "\n";
        failed += !r.pass;
    }
    std::cout << (failed ? "FAILED " + std::to_string(failed) : std::string("ALL PASS")) << "\n";
    return failed ? 1 : 0;
}
