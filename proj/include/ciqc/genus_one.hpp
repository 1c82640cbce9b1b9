#pragma once

#include "ciqc/rational.hpp"

#include <vector>

namespace ciqc {

struct GenusOneReport {
    int n = 0;
    std::vector<int> d;
    Integer chi;
    Rational hn11;   // <H_n>_{1,1}
    Rational h10;    // <H>_{1,0}
    Rational psi11;  // <psi g_b, g_c>_{1,1} = psi11 * g_{bc}
    Rational psi_point; // <psi^{n-3} H_n>_{0,1}
    Rational f1_linear;  // [q t^{n-1}] F^(1)
    Rational f1_trace;   // sum_{i=1}^{n-1} [q] F^(1)_{i,n-i}
    Rational f2;
    std::vector<Rational> roots; // root set of the degree-zero quadratic
    bool experimental = false;   // d = (2,2)
};

// <psi^{2n-2-i-j} H_i, H_j>_{0,1} on a cubic n-fold, by induction on the psi-power from the degree-one seeds.
Rational two_point_g0(int n, int i, int j);
// Binomial closed form of the same correlator.
Rational two_point_g0_closed(int n, int i, int j);

struct Hn11Report {
    int n = 0;
    Rational residue_sum;    // sum_p <psi^p c_{n-2-p}(TX), H_n>_{0,1}
    Rational residue_closed; // (2/3)((-1)^n 2^{n+1} + 1) + 3n^2 + n - 2
    Rational psi_point;      // <psi^{n-3} H_n>_{0,1}
    Rational value;
    Rational closed;         // (-(-2)^{n+2} - 9n^2 - 3n + 58) / 72
};

// Cubic n-fold; throws VerificationError when the two routes disagree.
Hn11Report hn_11(int n);

// Solves the summed genus-one TRR for F^(2)(0). d = (3), or (2,2) flagged experimental.
// Throws VerificationError when the result is not a root of the degree-zero quadratic.
GenusOneReport f2_from_genus1(int n, const std::vector<int>& d = {3});

} // namespace ciqc
