#pragma once

#include "ciqc/linalg.hpp"
#include "ciqc/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ciqc {

// Schubert class {l0, l1} on G(2, n + 2), n >= l0 >= l1 >= 0.
struct TwoRowPartition {
    int l0 = 0, l1 = 0;
    int size() const { return l0 + l1; }
    friend auto operator<=>(const TwoRowPartition&, const TwoRowPartition&) = default;
};

class SchubertVector {
public:
    explicit SchubertVector(int n) : n_(n) {}
    static SchubertVector basis(int n, int l0, int l1); // zero when l0 > n
    static SchubertVector sigma(int n, int k) { return basis(n, k, 0); }

    int n() const { return n_; }
    const std::map<TwoRowPartition, Rational>& terms() const { return terms_; }
    Rational coeff(int l0, int l1) const;
    void add(int l0, int l1, const Rational& c); // ignores partitions outside the box
    bool is_zero() const { return terms_.empty(); }
    // Coefficient of {n, n}.
    Rational integral() const { return coeff(n_, n_); }

    SchubertVector& operator+=(const SchubertVector& o);
    SchubertVector& operator-=(const SchubertVector& o);
    SchubertVector& operator*=(const Rational& c);
    friend SchubertVector operator+(SchubertVector a, const SchubertVector& b) { return a += b; }
    friend SchubertVector operator-(SchubertVector a, const SchubertVector& b) { return a -= b; }
    friend SchubertVector operator*(SchubertVector a, const Rational& c) { return a *= c; }
    friend SchubertVector operator*(const Rational& c, SchubertVector a) { return a *= c; }
    friend bool operator==(const SchubertVector& a, const SchubertVector& b)
    {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string to_string() const; // "2{3,1} + 3{2,2}"

private:
    int n_;
    std::map<TwoRowPartition, Rational> terms_;
};

// Pieri rules for sigma_1 and sigma_2.
SchubertVector pieri_sigma1(const SchubertVector& u);
SchubertVector pieri_sigma2(const SchubertVector& u);

SchubertVector schubert_product(const SchubertVector& u, const SchubertVector& v);

// 3 s1^4 - 4 s1^2 s2 + s2^2, and 9 times it.
SchubertVector fano_quartic(int n);
SchubertVector fano_class(int n);

struct PrimSquare {
    int n = 0;
    std::vector<Rational> z;       // coefficients of {n-2-k, k}, k = 0..floor(n/2)-1
    std::vector<Rational> closed;  // ((-2)^{n+1-k} - (-2)^{k+2}) / 9
    std::vector<Rational> kernel;  // unnormalized kernel vector, first nonzero entry 1
    int kernel_dim = 0;
    Rational normalization;        // integral of s1^{n-2} * class * [Omega] required
    SchubertVector cls{0};
};

PrimSquare prim_square_class(int n);

struct OmegaReport {
    int n = 0;
    Integer chi;
    Integer m;
    std::vector<Rational> z;
    bool z_matches_closed_form = false;
    Rational sigma_integral;           // s1^{n-2} * class * [Omega]
    Rational sigma_expected;           // (-2)^{n+3} - 4
    Rational sigma_from_chi;           // -6 (chi - n - 1)
    Rational quartic;                  // class^2 * [Omega]
    Rational quartic_short;            // 9 z0 (5 z0 + 2 z1)
    Rational quartic_expected;         // (chi - n)^2 - 1
    Rational m_form;                   // m^2 + 2m
    bool m_form_matches = false;
    bool annihilated = false;          // (s1^2 - s2) * class * [Omega] = 0
    Rational f2;                       // scalar forced by the four-point identity
    bool ok() const;
};

// Throws VerificationError with both sides when an identity fails.
OmegaReport omega_checks(int n);

struct BettiRow {
    int degree = 0;
    Integer grassmannian;
    Integer fano;
};

struct RankReport {
    int n = 0;
    std::vector<int> kernel_dim;       // index i: kernel of [Omega] on H^{2i}(G), i = 0..2n-4
    std::vector<BettiRow> betti;       // degrees 0..4n-8
    Integer sym2;                      // rank of Sym^2 of primitive cohomology (graded)
};

RankReport rank_estimates(int n);

struct Hilb2Report {
    Rational all_delta;        // (d,d,d,d)
    Rational sigma_pair;       // (s1, s1, g+d, g+d) with g.g = 0
    Rational sigma_square;     // q(s1)
    int primitive_rank = 0;
    Rational lhs_contraction;  // coefficient multiplying F^(2)(0)
    Rational rhs_contraction;
    Rational f2;
    int sampled = 0;           // quadruples checked individually
    bool samples_ok = false;
};

Hilb2Report hilb2_check(std::uint64_t seed = 1);

} // namespace ciqc
