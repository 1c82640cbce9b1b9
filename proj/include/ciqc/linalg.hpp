#pragma once

#include "ciqc/qpoly.hpp"
#include "ciqc/rational.hpp"

#include <optional>
#include <vector>

namespace ciqc {

using RVector = std::vector<Rational>;
using RMatrix = std::vector<RVector>;
using QVector = std::vector<QPoly>;
using QMatrix = std::vector<QVector>;

struct LinearSystem {
    RMatrix matrix; // rows x cols
    RVector rhs;    // one entry per row
};

struct LinearSolution {
    std::optional<RVector> particular;   // empty when inconsistent
    std::vector<RVector> kernel;         // first nonzero entry of each vector is 1
    std::optional<std::size_t> witness;  // original index of a row reducing to 0 = nonzero
    std::size_t rank = 0;
};

LinearSolution solve_linear(const LinearSystem& sys);

RMatrix identity_rmatrix(std::size_t n);
RMatrix mul(const RMatrix& a, const RMatrix& b);
RVector mul(const RMatrix& a, const RVector& v);
RMatrix inverse(const RMatrix& a); // throws DomainError if singular

QMatrix identity_qmatrix(std::size_t n, int qmax = QPoly::kUntruncated);
QMatrix zero_qmatrix(std::size_t rows, std::size_t cols, int qmax = QPoly::kUntruncated);
QMatrix mul(const QMatrix& a, const QMatrix& b);
QVector mul(const QMatrix& a, const QVector& v);
QMatrix transpose(const QMatrix& a);
QMatrix truncated(const QMatrix& a, int qmax);
// Inverse over truncated power series in q; needs the q^0 part invertible.
QMatrix inverse(const QMatrix& a, int qmax);
bool equal(const QMatrix& a, const QMatrix& b);

} // namespace ciqc
