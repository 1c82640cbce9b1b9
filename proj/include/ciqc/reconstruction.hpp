#pragma once

#include "ciqc/small_qh.hpp"
#include "ciqc/sym_reduction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ciqc {

// Small quantum algebra at the origin in the quantum-power basis, with the square-zero eigenvector.
struct FrobeniusOrigin {
    const QuantumRingData* ring = nullptr;
    Tensor3 C;        // C[a][b][c]: H^a H^b = sum_c C[a][b][c] H^c
    QVector lambda;   // lambda_a = F^(1)_a(0), eigenvalue of H^a on gamma
    QVector gamma;    // classical basis
    QVector gamma_tau; // quantum-power basis
};

// (1/prod d)(H~^n - b q H~^{n-a}) in the classical basis; verifies gamma*gamma = 0,
// the eigenvector property and (gamma, 1) = 1, throwing ConsistencyError otherwise.
QVector gamma_vector(const QuantumRingData& ring);
FrobeniusOrigin frobenius_origin(const QuantumRingData& ring);

struct ArtinReport {
    int n = 0, k = 0;
    Rational b;
    std::vector<Rational> eps;          // phi(eps) reduced, coefficients of w^0..w^n
    std::vector<Rational> eps_power_k;  // phi(eps)^k reduced
    std::vector<Rational> eps_power_k1; // phi(eps)^{k-1} reduced
    std::vector<Rational> expected_k1;  // (-1)^k b^{k-2} (w^n - b w^{k-1})
    bool eps_nilpotent = false;
    bool phi_formula_holds = false;     // only meaningful for k >= 2
    int semisimple_rank = 0;            // number of distinct roots of w^{n+1-k} - b
    bool semisimple_part_squarefree = false;
};

ArtinReport artin_iso(int n, int k, const Rational& b);

struct F1Jet {
    TruncSeries tau;      // degree <= 2 part in quantum-power coordinates
    TruncSeries t;        // same jet in classical coordinates
    QPoly origin;         // F^(1)(0)
    RMatrix hessian_tau_q1; // F^(1)_{ab}(0) at q = 1; complete once qmax >= q1_qmax
};

// Degree-2 jet of F^(1): hessian from F^(0)_{1,j-1,c,e} g^{e0} and the Euler relation for the (1,1) entry.
F1Jet f1_series(const QuantumRingData& ring, const AmbientFourPoint& amb);
F1Jet f1_series(const QuantumRingData& ring);

// Closed form tau^0 - (c/2) sum_k q^k b^k sum_{i+j=1+ka} tau^i tau^j, for comparison.
TruncSeries f1_closed_form(const QuantumRingData& ring, SeriesCaps caps);

struct F2Origin {
    bool integral = false;            // (n-1)/a is an integer
    int beta = 0;                     // q-degree of F^(2)(0)
    std::vector<Rational> quadratic;  // coefficients c0, c1, c2 of c2 phi^2 + c1 phi + c0
    std::vector<Rational> roots;      // rational roots, ascending
    bool degenerate = false;          // quadratic is phi^2 = 0
};

F2Origin f2_at_zero(const QuantumRingData& ring, const F1Jet& f1);
F2Origin f2_at_zero(const QuantumRingData& ring);

struct F2Gradient {
    Rational f2zero;
    QVector tau; // F^(2)_b(0) in quantum-power coordinates
    QVector t;   // in classical coordinates
};

F2Gradient f2_gradient(const QuantumRingData& ring, const F1Jet& f1, const Rational& f2zero);
F2Gradient f2_gradient(const QuantumRingData& ring, const Rational& f2zero);

// Closed form c^2/prod d * b^{(n+b-2)/a} for b = 2-n mod a, 2 <= b <= n.
QVector f2_gradient_closed_form(const QuantumRingData& ring);

enum class SolveStatus { Solved, NeedsEulerInput, Inconsistent };
std::string to_string(SolveStatus s);

// Linear constraint sum_c coeffs[c] x_c = value, in the quantum-power basis.
struct EulerInput {
    RVector coeffs;
    Rational value;
};

struct EigenSolution {
    SolveStatus status = SolveStatus::Solved;
    RVector x;                 // x_c, quantum-power basis, q = 1
    RMatrix split_basis;       // rows: 1_L, eps, ..., eps^{k-1}, 1_S, w 1_S, ..., w^{a-1} 1_S
    std::string detail;
};

// Smallest qmax for which the origin data is complete, so that q = 1 may be substituted.
int q1_qmax(const CIDescriptor& desc);

// Solves C_{ab}^c x_c - lambda_a x_b - lambda_b x_a = rhs_{ab} at q = 1.
EigenSolution eigen_solve(const FrobeniusOrigin& origin, const RMatrix& rhs, const std::optional<EulerInput>& euler);

// Euler relation for column c of the hessian of F^(1) at the origin, quantum-power basis, q = 1.
EulerInput f1_hessian_euler_input(const QuantumRingData& ring, int c);

struct HigherKEntry {
    int k = 0;         // equation index; the coefficient multiplies F^(k+1)(0)
    int target = 0;    // k + 1
    Rational beta;     // q-degree forced by the Euler filter
    bool admissible = false;
    Rational coefficient;
    bool determined = false;
};

struct HigherKReport {
    std::vector<HigherKEntry> entries;
    std::optional<int> unknown_target; // F^(target)(0) left as a free parameter
};

// Coefficient of F^(k+1)(0) after eliminating lower-order terms, for d = (3) or (2,2), k = 2..kmax.
HigherKReport higher_k_coeffs(const QuantumRingData& ring, int kmax, const Rational& f2zero = 1);

// F^(0) (t-degree 4) + s F^(1) (jet) + s^2/2 F^(2) (origin value phi and gradient), jets {4, 2, 1}.
ReducedPotential reconstructed_potential(const QuantumRingData& ring, Coordinates coords, const Rational& phi);
// Same, with phi the smallest root of the degree-zero quadratic.
ReducedPotential reconstructed_potential(const QuantumRingData& ring, Coordinates coords);

} // namespace ciqc
