#pragma once

#include "ciqc/qpoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace ciqc {

struct Monomial {
    std::vector<int> t; // exponents of t^0..t^{N-1}
    int s = 0;

    int tdeg() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical order: s-degree, then total t-degree, then t-exponents lexicographically.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct SeriesCaps {
    int tdeg = 4;                       // monomials of total t-degree above this are dropped
    int scap = 4;                       // monomials with s-exponent above this are dropped
    int qmax = QPoly::kUntruncated;     // coefficient truncation

    friend bool operator==(const SeriesCaps&, const SeriesCaps&) = default;
};

// Series in t^0..t^{N-1} and s with QPoly coefficients.
class TruncSeries {
public:
    using TermMap = std::map<Monomial, QPoly, MonomialLess>;

    TruncSeries() : num_t_(1), caps_{} {}
    TruncSeries(int num_t, SeriesCaps caps);

    static TruncSeries constant(int num_t, SeriesCaps caps, const QPoly& c);
    static TruncSeries t_var(int num_t, SeriesCaps caps, int i);
    static TruncSeries s_var(int num_t, SeriesCaps caps);

    int num_t() const { return num_t_; }
    const SeriesCaps& caps() const { return caps_; }
    const TermMap& terms() const { return terms_; }

    bool admits(const Monomial& m) const;
    void add_term(const Monomial& m, const QPoly& c);
    QPoly coeff(const Monomial& m) const;
    QPoly constant_term() const;
    bool is_zero() const { return terms_.empty(); }

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const QPoly& c);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const QPoly& c) { return a *= c; }
    friend TruncSeries operator*(const QPoly& c, TruncSeries a) { return a *= c; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul_truncated(a, b); }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.terms_ == b.terms_; }

    friend TruncSeries mul_truncated(const TruncSeries& a, const TruncSeries& b);

    TruncSeries d_t(int i) const;
    TruncSeries d_s() const;

    // Coefficient of s^k as a series with no s-dependence.
    TruncSeries s_coefficient(int k) const;
    // Keep only monomials of total t-degree <= d.
    TruncSeries degree_at_most(int d) const;
    TruncSeries with_caps(SeriesCaps caps) const;

    // Substitute t^i = sum_j L[i][j] t^j.
    TruncSeries linear_substitute(const std::vector<std::vector<QPoly>>& L) const;

    std::string to_string() const;

private:
    int num_t_;
    SeriesCaps caps_;
    TermMap terms_;
};

} // namespace ciqc
