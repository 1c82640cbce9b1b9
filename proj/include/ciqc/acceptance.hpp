#pragma once

#include "ciqc/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ciqc {

struct CheckResult {
    int item = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

inline constexpr int kAcceptanceItems = 10;

// Checks for one acceptance item, 1..kAcceptanceItems. Exceptions become failed checks.
std::vector<CheckResult> acceptance_item(int item, std::uint64_t seed = 1);
std::vector<CheckResult> run_acceptance(std::uint64_t seed = 1);

// Ring relation, pairing inverse, gamma, F^(1) residuals and the F^(2)(0) root set for one descriptor.
std::vector<CheckResult> descriptor_checks(int n, const std::vector<int>& d);

// Term c t^t s^s of a reduced potential.
struct SyntheticTerm {
    std::vector<int> t;
    int s = 0;
    Rational c;
};

struct SyntheticWdvv {
    bool full_vanishes = false;
    bool reduced_vanishes = false;
};

// Even toy with m = 3 on the cubic n-fold ambient ring: the classical cubic plus t^0 s (optional) plus
// extra terms. Full WDVV is expanded over t^0..t^n and three orthonormal primitive variables.
SyntheticWdvv synthetic_wdvv(int n, const std::vector<SyntheticTerm>& extra, bool with_classical);

std::string format_line(const CheckResult& r); // "PASS 3 name: detail"

} // namespace ciqc
