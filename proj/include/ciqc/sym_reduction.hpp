#pragma once

#include "ciqc/ci_geometry.hpp"
#include "ciqc/linalg.hpp"
#include "ciqc/small_qh.hpp"
#include "ciqc/trunc_series.hpp"

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ciqc {

enum class Parity { Even, Odd };
enum class Coordinates { T, Tau };

// Largest t-degree through which a series is known exactly; kExact when known in every degree.
inline constexpr int kExact = INT_MAX / 4;

// Series in t^0..t^n and s together with, for each s-power, the t-degree through which it is trusted.
struct TrackedSeries {
    TruncSeries f;
    std::vector<int> valid; // index = s-power, size scap + 1

    TrackedSeries d_t(int i) const;
    TrackedSeries d_s(bool vanishes_beyond_cap) const;
    TrackedSeries times_s() const;
    TrackedSeries scaled(const QPoly& c) const;
};

TrackedSeries operator+(const TrackedSeries& a, const TrackedSeries& b);
TrackedSeries operator-(const TrackedSeries& a, const TrackedSeries& b);
TrackedSeries operator*(const TrackedSeries& a, const TrackedSeries& b);

struct ReducedPotential {
    int n = 0;
    Integer m;
    int a = 0;
    Parity parity = Parity::Even;
    Coordinates coords = Coordinates::T;
    QMatrix ginv;   // ambient inverse pairing in the coordinates of F
    QMatrix to_t;   // linear_substitute matrix turning F into t-coordinates
    TruncSeries F;  // F = sum_k s^k/k! F^(k)
    std::vector<int> jet; // jet[k]: F^(k) exact through this t-degree, -1 when unknown

    int scap() const { return F.caps().scap; }
    TrackedSeries tracked() const;
    // F^(k) = k! [s^k] F
    TruncSeries f_k(int k) const;
};

// Validates shapes and, in odd mode, clamps the s-cap to m/2.
ReducedPotential make_potential(const CIDescriptor& desc, Coordinates coords, const QMatrix& ginv, const QMatrix& to_t,
                                TruncSeries F, std::vector<int> jet);

// Caps sized for a reduced potential over desc.
SeriesCaps reduced_caps(const CIDescriptor& desc, int tdeg, int scap, int qmax);

// Ambient potential F^(0) through t-degree tdeg <= 4, in the chosen coordinates.
TruncSeries ambient_potential(const QuantumRingData& ring, const AmbientFourPoint& amb, SeriesCaps caps,
                              Coordinates coords);

// Classical cubic form restricted to ambient classes, in t-coordinates.
TruncSeries classical_cubic(const CIDescriptor& desc, SeriesCaps caps);

// Even: sum v^2 / 2.  Odd: -sum v_mu v_{mu + m/2}.
Rational pack_s(Parity parity, const std::vector<Rational>& values);
Rational pack_s(const CIDescriptor& desc, const std::vector<Rational>& values);

struct Residual {
    std::string name;
    TrackedSeries value;
    int max_spower = 0; // s-powers above this are not asserted

    // Monomials inside the trusted region with nonzero coefficient.
    std::vector<std::pair<Monomial, QPoly>> violations() const;
    bool vanishes() const { return violations().empty(); }
};

struct WdvvResiduals {
    std::vector<Residual> ambient; // WDVV for F^(0), one per (a,b,c,d) with a<=..; s^0 only
    std::vector<Residual> eq23;    // one per a <= b
    Residual eq24;

    bool all_vanish() const;
};

WdvvResiduals wdvv_residuals(const ReducedPotential& pot, bool include_ambient = true);

// Order-k expanded equations: the s^{k-1} coefficient of the two reduced equations, multiplied by (k-1)!,
// assembled from the F^(j) jets. Order 1 gives the F^(1) equations, order 2 the F^(2) equations.
// For order 2 the term F^(1)_{abe} g^{ef} F^(1)_f is replaced by -F^(1)_{ae} g^{ef} F^(1)_{fb},
// the second derivative of the order-1 scalar equation.
struct ExpandedResiduals {
    int order = 0;
    std::vector<std::vector<QPoly>> eq23_origin; // [a][b] value at t = 0
    QPoly eq24_origin;
    std::vector<Residual> eq23;
    Residual eq24;
    bool all_vanish() const;
};

ExpandedResiduals expand_order_k(const ReducedPotential& pot, int order);

// Residual of E F - (3 - n) F - a d/dt^1 c with E = sum (1 - i) t^i d_i + (2 - n) s d_s + a d_1,
// evaluated in t-coordinates.
Residual euler_residual(const ReducedPotential& pot, const CIDescriptor& desc);

// beta = (k(n-2) - (n-3)) / a: the q-degree a nonzero F^(k)(0) must have.
struct EulerFilter {
    Rational beta;
    bool admissible = false; // beta is a nonnegative integer
};
EulerFilter euler_filter(const CIDescriptor& desc, int k);

// J-function reconstruction. Each J is a map z-power -> series.
using ZSeries = std::map<int, TruncSeries>;

struct JRecursion {
    std::vector<std::vector<ZSeries>> ambient; // [k][a] = J_a^(k)
    std::vector<std::vector<int>> valid;       // [k][a] trusted t-degree
    ZSeries primitive;                         // tilde J = exp(F_s / z), z^0 .. z^{-zmax}
};

JRecursion j_recursion(const ReducedPotential& pot, const std::vector<ZSeries>& ambient_j0, const std::vector<int>& j0_valid,
                       int kmax, int zmax);

// Ambient J_a^(0) through t-degree 1 from one- and two-point descendants; t-coordinates, a = 0..n.
std::vector<ZSeries> ambient_j_jets(const QuantumRingData& ring, const ZJet& small, SeriesCaps caps, int zmax);

// <gamma_a psi^k, gamma_b>_{0,2,k+1} / g_{ab} by the divisor/TRR recursion, k = 0..kmax.
std::vector<Rational> primitive_two_point(const Rational& f1_origin_coeff, int kmax);

} // namespace ciqc
