#pragma once

#include "ciqc/rational.hpp"

#include <climits>
#include <map>
#include <string>
#include <string_view>

namespace ciqc {

// Polynomial in the Novikov variable q, truncated above qmax.
class QPoly {
public:
    static constexpr int kUntruncated = INT_MAX;

    QPoly() = default;
    QPoly(const Rational& c, int qmax = kUntruncated); // NOLINT: constants convert implicitly
    QPoly(long c) : QPoly(Rational(c)) {}               // NOLINT

    static QPoly monomial(const Rational& c, int exponent, int qmax = kUntruncated);

    int qmax() const { return qmax_; }
    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coeff(int exponent) const;
    void set_coeff(int exponent, const Rational& c);
    void add_to(int exponent, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    int min_degree() const; // -1 when zero
    int max_degree() const; // -1 when zero

    QPoly truncated(int qmax) const;
    QPoly q_derivative() const; // q d/dq
    Rational at_one() const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const QPoly& o);
    QPoly& operator*=(const Rational& c);

    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
    friend QPoly operator*(QPoly a, const Rational& c) { return a *= c; }
    friend QPoly operator*(const Rational& c, QPoly a) { return a *= c; }
    QPoly operator-() const;

    // Equality compares coefficients only; truncation bounds are bookkeeping.
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    // "27*q^2 - 9/2*q + 1", highest power first; "0" when zero.
    std::string to_string() const;

private:
    std::map<int, Rational> terms_;
    int qmax_ = kUntruncated;
};

// Inverse of QPoly::to_string.
QPoly parse_qpoly(std::string_view text, int qmax = QPoly::kUntruncated);

} // namespace ciqc
