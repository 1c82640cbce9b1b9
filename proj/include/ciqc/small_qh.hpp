#pragma once

#include "ciqc/ci_geometry.hpp"
#include "ciqc/linalg.hpp"

#include <array>
#include <map>
#include <memory>
#include <vector>

namespace ciqc {

// Laurent polynomial in z whose coefficients are vectors over H_0..H_n.
struct ZJet {
    int n = 0;
    int qmax = 0;
    std::map<int, QVector> coeffs; // z-power -> vector

    QVector at(int zpow) const;
    int zmin() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
    int zmax() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
};

// Small J-function at t = 0 from the hypergeometric series (shifted by exp(-l q/z) in index 1).
// zorder >= 0 keeps descendants psi^k with k <= zorder; negative keeps everything.
ZJet small_j(const CIDescriptor& desc, int qmax, int zorder = -1);

// <psi^k H_i>_{0,1,degree}
Rational one_point_descendant(const CIDescriptor& desc, const ZJet& j, int k, int i, int degree);

int default_qmax(const CIDescriptor& desc);

struct QuantumRingData {
    CIDescriptor desc;
    int qmax = 0;
    QMatrix hmul;        // quantum multiplication by H, classical basis
    QMatrix multH;       // multiplication by H~ = H (+ l q when a = 1)
    QMatrix powers;      // column i: H~^i in the classical basis
    QMatrix powers_inv;  // column i: H_i in the quantum-power basis
    RMatrix W;           // W[i][j] = W_i^j
    RMatrix M;           // M[i][j] = M_i^j
    QMatrix g_classical; // (H_i, H_j)
    QMatrix g;           // (H~^e, H~^f)
    QMatrix ginv;
    // Fundamental solution at t = 0 split by q-degree: fundamental[d][-j] is the z^{-j} matrix.
    std::vector<std::map<int, RMatrix>> fundamental;

    int dim() const { return desc.n + 1; }
    // Entry of the quantum-power change of basis with the q-weight restored.
    QPoly tau_from_t(int i, int j) const { return powers_inv[i][j]; } // d tau^i / d t^j
    QPoly t_from_tau(int i, int j) const { return powers[i][j]; }     // d t^i / d tau^j
};

QuantumRingData build_ring(const CIDescriptor& desc, int qmax);

// Pairing matrices in the quantum-power basis.
std::pair<QMatrix, QMatrix> pairings(const QuantumRingData& ring);

// <psi^k H_i, H_j>_{0,2,degree} read from the fundamental solution.
Rational two_point_descendant(const QuantumRingData& ring, int i, int k, int j, int degree);

// Quantum product of two classical-basis vectors.
QVector quantum_product(const QuantumRingData& ring, const QVector& u, const QVector& v);
QPoly classical_pairing(const QuantumRingData& ring, const QVector& u, const QVector& v);

struct CConstant {
    Rational value;
    Rational conjectured; // sum_{i=1}^{floor(n/a)} (-1)^{i-1} (l/b)^i / i!
    bool matches_conjecture = false;
};

CConstant c_constant(const QuantumRingData& ring);
// c with the double sum cut at k + l <= z (first sum) and k + l <= z - 1 (second sum).
// Equals c once z >= floor(n / a).
Rational c_truncated(const QuantumRingData& ring, int z);

// Fourth derivatives of the ambient genus-0 potential at the origin in t-coordinates,
// reconstructed from the divisor equation and differentiated WDVV.
class AmbientFourPoint {
public:
    explicit AmbientFourPoint(const QuantumRingData& ring);
    QPoly third(int i, int j, int k) const; // F_{ijk}(0)
    QPoly fourth(int i, int j, int k, int l) const;

private:
    const QuantumRingData* ring_;
    std::vector<std::vector<std::vector<QPoly>>> t3_;
    mutable std::map<std::array<int, 4>, QPoly> memo_;
    QPoly compute(std::array<int, 4> idx) const;
};

using Tensor3 = std::vector<std::vector<std::vector<QPoly>>>;

struct F0Derivs {
    Tensor3 third;              // F_{abc}(0), tau basis
    Tensor3 contracted_fourth;  // F_{abce}(0) g^{e0}, tau basis
};

F0Derivs f0_derivs(const QuantumRingData& ring);

// Closed forms used as oracles.
QPoly third_derivative_formula(const CIDescriptor& desc, int a, int b, int c, int qmax);
QPoly contracted_fourth_formula(const CIDescriptor& desc, const Rational& c_value, int a, int b, int c, int qmax);
// Degree-k value c_truncated(k) b^k q^k; agrees with the uniform form when k >= floor(n / a).
QPoly contracted_fourth_truncated(const QuantumRingData& ring, int a, int b, int c);
QPoly pairing_formula(const CIDescriptor& desc, int e, int f, int qmax);
QPoly inverse_pairing_formula(const CIDescriptor& desc, int e, int f, int qmax);

} // namespace ciqc
