#pragma once

#include "ciqc/rational.hpp"

#include <string>
#include <vector>

namespace ciqc {

enum class Monodromy { Orthogonal, Symplectic, Z2, WeylD, WeylE6, Trivial };

std::string to_string(Monodromy m);

struct CIDescriptor {
    int n = 0;
    std::vector<int> d; // sorted ascending
    int r = 0;
    int a = 0;      // Fano index n + r + 1 - sum d
    Integer ell;    // prod d_i!
    Integer b;      // prod d_i^{d_i}
    Integer degree; // prod d_i
    Integer chi;
    Integer m;      // primitive rank
    bool exceptional = false;
    std::string exceptional_case; // empty unless exceptional
    Monodromy monodromy = Monodromy::Orthogonal;

    bool is_cubic() const { return d.size() == 1 && d[0] == 3; }
    bool is_quadric_pair() const { return d.size() == 2 && d[0] == 2 && d[1] == 2; }
    std::string label() const; // "X_4(3)"
};

CIDescriptor describe(int n, std::vector<int> d);

// Entry j is the integral of H^j c_{n-j}(TX) over X.
std::vector<Integer> chern_integrals(const CIDescriptor& desc);

// Coefficients of c(TX)/ H-powers: entry j is [x^j] (1+x)^{n+r+1} / prod (1+d_i x).
std::vector<Rational> chern_class_coefficients(const CIDescriptor& desc);

// Refuse inputs outside the reconstruction hypotheses: exceptional, n < 3, a < 1.
void require_reconstructible(const CIDescriptor& desc);

// Parses "3" or "2,2,3".
std::vector<int> parse_multidegree(const std::string& text);

} // namespace ciqc
