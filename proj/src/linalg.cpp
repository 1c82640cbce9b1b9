#include "ciqc/linalg.hpp"

#include "ciqc/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ciqc {

LinearSolution solve_linear(const LinearSystem& sys)
{
    const std::size_t rows = sys.matrix.size();
    if (sys.rhs.size() != rows)
        throw ConfigError("rhs length differs from row count");
    const std::size_t cols = rows == 0 ? 0 : sys.matrix[0].size();
    for (const auto& r : sys.matrix)
        if (r.size() != cols)
            throw ConfigError("ragged matrix");

    // Augmented copy; origin[i] tracks which input row sits in position i.
    RMatrix a = sys.matrix;
    for (std::size_t i = 0; i < rows; ++i)
        a[i].push_back(sys.rhs[i]);
    std::vector<std::size_t> origin(rows);
    std::iota(origin.begin(), origin.end(), 0);

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            if (best == rows || abs(a[i][c].get_num()) > abs(a[best][c].get_num()))
                best = i;
        }
        if (best == rows)
            continue;
        std::swap(a[r], a[best]);
        std::swap(origin[r], origin[best]);
        Rational inv = Rational(1) / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j <= cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    LinearSolution out;
    out.rank = pivot_cols.size();
    for (std::size_t i = out.rank; i < rows; ++i)
        if (a[i][cols] != 0) {
            out.witness = origin[i];
            break;
        }
    if (!out.witness) {
        RVector x(cols, Rational(0));
        for (std::size_t i = 0; i < out.rank; ++i)
            x[pivot_cols[i]] = a[i][cols];
        out.particular = std::move(x);
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols)
        is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        RVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < out.rank; ++i)
            v[pivot_cols[i]] = -a[i][f];
        auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        Rational lead = *first;
        for (auto& x : v)
            x /= lead;
        out.kernel.push_back(std::move(v));
    }
    return out;
}

RMatrix identity_rmatrix(std::size_t n)
{
    RMatrix m(n, RVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

RMatrix mul(const RMatrix& a, const RMatrix& b)
{
    std::size_t inner = b.size();
    std::size_t cols = inner == 0 ? 0 : b[0].size();
    RMatrix r(a.size(), RVector(cols, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

RVector mul(const RMatrix& a, const RVector& v)
{
    RVector r(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k)
            r[i] += a[i][k] * v[k];
    return r;
}

RMatrix inverse(const RMatrix& a)
{
    const std::size_t n = a.size();
    RMatrix inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        RVector e(n, Rational(0));
        e[j] = 1;
        auto sol = solve_linear({a, e});
        if (!sol.particular || !sol.kernel.empty())
            throw DomainError("singular matrix");
        for (std::size_t i = 0; i < n; ++i)
            inv[i].push_back((*sol.particular)[i]);
    }
    return inv;
}

QMatrix identity_qmatrix(std::size_t n, int qmax)
{
    QMatrix m = zero_qmatrix(n, n, qmax);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = QPoly(Rational(1), qmax);
    return m;
}

QMatrix zero_qmatrix(std::size_t rows, std::size_t cols, int qmax)
{
    return QMatrix(rows, QVector(cols, QPoly(Rational(0), qmax)));
}

QMatrix mul(const QMatrix& a, const QMatrix& b)
{
    std::size_t inner = b.size();
    std::size_t cols = inner == 0 ? 0 : b[0].size();
    QMatrix r(a.size(), QVector(cols, QPoly(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                if (!b[k][j].is_zero())
                    r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

QVector mul(const QMatrix& a, const QVector& v)
{
    QVector r(a.size(), QPoly(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!a[i][k].is_zero() && !v[k].is_zero())
                r[i] += a[i][k] * v[k];
    return r;
}

QMatrix transpose(const QMatrix& a)
{
    if (a.empty())
        return {};
    QMatrix t(a[0].size(), QVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

QMatrix truncated(const QMatrix& a, int qmax)
{
    QMatrix r = a;
    for (auto& row : r)
        for (auto& x : row)
            x = x.truncated(qmax);
    return r;
}

QMatrix inverse(const QMatrix& a, int qmax)
{
    const std::size_t n = a.size();
    // Solve A X = I order by order in q: A_0 X_d = delta_{d0} I - sum_{e>=1} A_e X_{d-e}.
    RMatrix a0(n, RVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a0[i][j] = a[i][j].coeff(0);
    RMatrix a0inv = inverse(a0);
    std::vector<RMatrix> x;
    for (int d = 0; d <= qmax; ++d) {
        RMatrix rhs = d == 0 ? identity_rmatrix(n) : RMatrix(n, RVector(n, Rational(0)));
        for (int e = 1; e <= d; ++e) {
            RMatrix ae(n, RVector(n));
            bool any = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    ae[i][j] = a[i][j].coeff(e);
                    any = any || ae[i][j] != 0;
                }
            if (!any)
                continue;
            RMatrix prod = mul(ae, x[d - e]);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rhs[i][j] -= prod[i][j];
        }
        x.push_back(mul(a0inv, rhs));
    }
    QMatrix r = zero_qmatrix(n, n, qmax);
    for (int d = 0; d <= qmax; ++d)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r[i][j].set_coeff(d, x[d][i][j]);
    return r;
}

bool equal(const QMatrix& a, const QMatrix& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size())
            return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j])
                return false;
    }
    return true;
}

} // namespace ciqc
