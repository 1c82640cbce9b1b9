#include "ciqc/small_qh.hpp"

#include "ciqc/errors.hpp"

#include <algorithm>

namespace ciqc {

QVector ZJet::at(int zpow) const
{
    auto it = coeffs.find(zpow);
    if (it == coeffs.end())
        return QVector(n + 1, QPoly(Rational(0), qmax));
    return it->second;
}

namespace {

using HSeries = std::vector<Rational>; // power series in h truncated at degree n

HSeries series_mul(const HSeries& a, const HSeries& b)
{
    HSeries r(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < a.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

// (k + c h) and 1/(k + h), truncated.
HSeries linear_series(int n, const Rational& k, const Rational& c)
{
    HSeries s(n + 1, Rational(0));
    s[0] = k;
    if (n >= 1)
        s[1] = c;
    return s;
}

HSeries inverse_linear_series(int n, const Rational& k)
{
    HSeries s(n + 1, Rational(0));
    Rational term = Rational(1) / k;
    for (int i = 0; i <= n; ++i) {
        s[i] = term;
        term *= Rational(-1) / k;
    }
    return s;
}

void add_entry(std::map<int, QVector>& m, int n, int qmax, int zpow, int row, int qdeg, const Rational& c)
{
    if (c == 0 || qdeg > qmax)
        return;
    auto it = m.find(zpow);
    if (it == m.end())
        it = m.emplace(zpow, QVector(n + 1, QPoly(Rational(0), qmax))).first;
    it->second[row].add_to(qdeg, c);
}

using LaurentR = std::map<int, RMatrix>; // z-power -> rational matrix

RMatrix zero_rmatrix(std::size_t rows, std::size_t cols)
{
    return RMatrix(rows, RVector(cols, Rational(0)));
}

bool is_zero(const RMatrix& m)
{
    for (const auto& row : m)
        for (const auto& x : row)
            if (x != 0)
                return false;
    return true;
}

LaurentR laurent_mul(const LaurentR& a, const LaurentR& b)
{
    LaurentR r;
    for (const auto& [za, ma] : a)
        for (const auto& [zb, mb] : b) {
            RMatrix p = mul(ma, mb);
            auto it = r.find(za + zb);
            if (it == r.end())
                r.emplace(za + zb, std::move(p));
            else
                for (std::size_t i = 0; i < p.size(); ++i)
                    for (std::size_t j = 0; j < p[i].size(); ++j)
                        it->second[i][j] += p[i][j];
        }
    return r;
}

} // namespace

int default_qmax(const CIDescriptor& desc)
{
    if (desc.a <= 0)
        return 0;
    return (2 * desc.n + desc.a - 1) / desc.a + 1;
}

ZJet small_j(const CIDescriptor& desc, int qmax, int zorder)
{
    if (desc.a <= 0)
        throw DomainError(desc.label() + " is non-Fano: all reconstruction trivial");
    if (desc.exceptional && !(desc.d.size() == 1 && desc.d[0] == 2))
        throw DomainError(desc.label() + " is exceptional: " + desc.exceptional_case);

    const int n = desc.n;
    const int big_n = n + desc.r + 1; // number of factors (H + kz) per degree
    ZJet j;
    j.n = n;
    j.qmax = qmax;
    std::map<int, QVector> raw;
    for (int deg = 0; deg <= qmax; ++deg) {
        HSeries p(n + 1, Rational(0));
        p[0] = 1;
        for (int di : desc.d)
            for (int k = 1; k <= di * deg; ++k)
                p = series_mul(p, linear_series(n, Rational(k), Rational(di)));
        for (int k = 1; k <= deg; ++k) {
            HSeries inv = inverse_linear_series(n, Rational(k));
            for (int e = 0; e < big_n; ++e)
                p = series_mul(p, inv);
        }
        for (int row = 0; row <= n; ++row)
            add_entry(raw, n, qmax, 1 - desc.a * deg - row, row, deg, p[row]);
    }

    if (desc.a == 1) {
        // J = exp(-l q / z) I
        std::map<int, QVector> shifted;
        Rational ell(desc.ell);
        for (int e = 0; e <= qmax; ++e) {
            Rational c = pow(-ell, e) / Rational(factorial(e));
            for (const auto& [zp, vec] : raw)
                for (int row = 0; row <= n; ++row)
                    for (const auto& [qd, v] : vec[row].terms())
                        add_entry(shifted, n, qmax, zp - e, row, qd + e, c * v);
        }
        raw = std::move(shifted);
    }

    for (auto& [zp, vec] : raw) {
        bool nonzero = std::any_of(vec.begin(), vec.end(), [](const QPoly& p) { return !p.is_zero(); });
        if (!nonzero)
            continue;
        if (zp >= 1 || zorder < 0 || zp >= -(zorder + 1))
            j.coeffs.emplace(zp, vec);
    }

    // J = z + O(1/z): only the identity sits at z^1 and nothing at z^0.
    QVector top = j.at(1);
    for (int row = 0; row <= n; ++row)
        if (top[row] != (row == 0 ? QPoly(1) : QPoly(0)))
            throw ConsistencyError("small J-function has an unexpected z^1 term");
    for (const auto& p : j.at(0))
        if (!p.is_zero())
            throw ConsistencyError("small J-function has a z^0 term after the index-one shift");
    return j;
}

Rational one_point_descendant(const CIDescriptor& desc, const ZJet& j, int k, int i, int degree)
{
    if (i < 0 || i > desc.n || k < 0)
        throw DomainError("descendant index out of range");
    return Rational(desc.degree) * j.at(-k - 1)[desc.n - i].coeff(degree);
}

QuantumRingData build_ring(const CIDescriptor& desc, int qmax)
{
    require_reconstructible(desc);
    const int n = desc.n;
    const std::size_t dim = n + 1;
    QuantumRingData ring;
    ring.desc = desc;
    ring.qmax = qmax;

    // Columns D^k(J/z), k = 0..n+1, with D = H + z q d/dq, stored by q-degree.
    ZJet j = small_j(desc, qmax);
    std::map<int, QVector> col;
    for (const auto& [zp, vec] : j.coeffs)
        col.emplace(zp - 1, vec);
    std::vector<LaurentR> p(qmax + 1);
    for (std::size_t k = 0; k <= dim; ++k) {
        for (const auto& [zp, vec] : col)
            for (std::size_t row = 0; row < dim; ++row)
                for (const auto& [qd, v] : vec[row].terms()) {
                    auto& m = p[qd].try_emplace(zp, zero_rmatrix(dim, dim + 1)).first->second;
                    m[row][k] = v;
                }
        std::map<int, QVector> next;
        for (const auto& [zp, vec] : col)
            for (std::size_t row = 0; row < dim; ++row) {
                if (row + 1 < dim)
                    for (const auto& [qd, v] : vec[row].terms())
                        add_entry(next, n, qmax, zp, static_cast<int>(row + 1), qd, v);
                for (const auto& [qd, v] : vec[row].terms())
                    add_entry(next, n, qmax, zp + 1, static_cast<int>(row), qd, v * qd);
            }
        col = std::move(next);
    }

    // Birkhoff factorization P = S W, S = I + O(1/z), W polynomial in z; order by order in q.
    std::vector<LaurentR> s(qmax + 1), w(qmax + 1);
    {
        RMatrix id = identity_rmatrix(dim);
        s[0][0] = id;
        RMatrix w0 = zero_rmatrix(dim, dim + 1);
        for (std::size_t i = 0; i < dim; ++i)
            w0[i][i] = 1;
        w[0][0] = w0;
        for (const auto& [zp, m] : p[0])
            if (!(zp == 0 ? m == w0 : is_zero(m)))
                throw ConsistencyError("degree-0 part of the J-derivatives is not the identity");
    }
    for (int d = 1; d <= qmax; ++d) {
        LaurentR r = p[d];
        for (int e = 1; e < d; ++e) {
            LaurentR prod = laurent_mul(s[e], w[d - e]);
            for (auto& [zp, m] : prod) {
                auto& target = r.try_emplace(zp, zero_rmatrix(dim, dim + 1)).first->second;
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t c = 0; c <= dim; ++c)
                        target[i][c] -= m[i][c];
            }
        }
        for (auto& [zp, m] : r) {
            if (is_zero(m))
                continue;
            if (zp >= 0) {
                w[d][zp] = m;
            } else {
                RMatrix sq = zero_rmatrix(dim, dim);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t c = 0; c < dim; ++c)
                        sq[i][c] = m[i][c];
                for (std::size_t i = 0; i < dim; ++i)
                    if (m[i][dim] != 0)
                        throw ConsistencyError("Birkhoff factor has negative z-powers in the extra column");
                if (!is_zero(sq))
                    s[d][zp] = sq;
            }
        }
    }
    ring.fundamental = s;

    // H o = W_shift(0) W(0)^{-1}
    QMatrix w0 = zero_qmatrix(dim, dim, qmax), wshift = zero_qmatrix(dim, dim, qmax);
    for (int d = 0; d <= qmax; ++d) {
        auto it = w[d].find(0);
        if (it == w[d].end())
            continue;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t c = 0; c < dim; ++c) {
                w0[i][c].add_to(d, it->second[i][c]);
                wshift[i][c].add_to(d, it->second[i][c + 1]);
            }
    }
    ring.hmul = truncated(mul(wshift, inverse(w0, qmax)), qmax);

    // Consistency of the factorization: (H o) W(z) = W_shift(z) - z q d/dq W(z) at every z-power.
    int ztop = 0;
    for (int d = 0; d <= qmax; ++d)
        if (!w[d].empty())
            ztop = std::max(ztop, w[d].rbegin()->first);
    for (int zp = 0; zp <= ztop; ++zp) {
        QMatrix wz = zero_qmatrix(dim, dim, qmax), wsz = zero_qmatrix(dim, dim, qmax),
                dprev = zero_qmatrix(dim, dim, qmax);
        for (int d = 0; d <= qmax; ++d) {
            if (auto it = w[d].find(zp); it != w[d].end())
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t c = 0; c < dim; ++c) {
                        wz[i][c].add_to(d, it->second[i][c]);
                        wsz[i][c].add_to(d, it->second[i][c + 1]);
                    }
            if (auto it = w[d].find(zp - 1); it != w[d].end())
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t c = 0; c < dim; ++c)
                        dprev[i][c].add_to(d, it->second[i][c] * d);
        }
        QMatrix lhs = truncated(mul(ring.hmul, wz), qmax);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t c = 0; c < dim; ++c)
                if (lhs[i][c] != wsz[i][c] - dprev[i][c])
                    throw ConsistencyError("quantum multiplication by H depends on z");
    }

    ring.multH = ring.hmul;
    if (desc.a == 1)
        for (std::size_t i = 0; i < dim; ++i)
            ring.multH[i][i] += QPoly::monomial(Rational(desc.ell), 1, qmax);

    // Quantum powers of H~.
    ring.powers = zero_qmatrix(dim, dim, qmax);
    QVector v(dim, QPoly(Rational(0), qmax));
    v[0] = QPoly(Rational(1), qmax);
    std::vector<QVector> pw;
    for (std::size_t i = 0; i <= dim; ++i) {
        pw.push_back(v);
        v = mul(ring.multH, v);
        for (auto& x : v)
            x = x.truncated(qmax);
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t r = 0; r < dim; ++r)
            ring.powers[r][i] = pw[i][r];

    // H~^{n+1} = b q H~^{n+1-a}
    {
        QPoly bq = QPoly::monomial(Rational(desc.b), 1, qmax);
        const QVector& lhs = pw[dim];
        const QVector& base = pw[dim - desc.a];
        for (std::size_t r = 0; r < dim; ++r)
            if (lhs[r] != (bq * base[r]).truncated(qmax))
                throw ConsistencyError("ring relation fails for " + desc.label());
    }

    ring.powers_inv = inverse(ring.powers, qmax);
    ring.W = RMatrix(dim, RVector(dim, Rational(0)));
    ring.M = RMatrix(dim, RVector(dim, Rational(0)));
    for (int i = 0; i <= n; ++i)
        for (int jj = 0; jj <= n; ++jj) {
            const QPoly& pwq = ring.powers[jj][i];
            const QPoly& pinv = ring.powers_inv[jj][i];
            bool graded = jj <= i && (i - jj) % desc.a == 0;
            int k = graded ? (i - jj) / desc.a : -1;
            for (const auto* poly : {&pwq, &pinv})
                for (const auto& [e, c] : poly->terms())
                    if (e != k)
                        throw ConsistencyError("basis change is not homogeneous");
            if (graded) {
                ring.W[i][jj] = pwq.coeff(k);
                ring.M[i][jj] = pinv.coeff(k);
            }
        }
    for (int i = 0; i <= n; ++i)
        if (ring.W[i][i] != 1 || ring.M[i][i] != 1)
            throw ConsistencyError("basis change is not unitriangular");

    ring.g_classical = zero_qmatrix(dim, dim, qmax);
    for (int i = 0; i <= n; ++i)
        ring.g_classical[i][n - i] = QPoly(Rational(desc.degree), qmax);
    ring.g = truncated(mul(transpose(ring.powers), mul(ring.g_classical, ring.powers)), qmax);
    ring.ginv = inverse(ring.g, qmax);
    return ring;
}

std::pair<QMatrix, QMatrix> pairings(const QuantumRingData& ring) { return {ring.g, ring.ginv}; }

Rational two_point_descendant(const QuantumRingData& ring, int i, int k, int j, int degree)
{
    const int n = ring.desc.n;
    if (i < 0 || i > n || j < 0 || j > n || k < 0)
        throw DomainError("descendant index out of range");
    if (degree < 1 || degree > ring.qmax)
        return 0;
    auto it = ring.fundamental[degree].find(-k - 1);
    if (it == ring.fundamental[degree].end())
        return 0;
    return Rational(ring.desc.degree) * it->second[n - i][j];
}

QVector quantum_product(const QuantumRingData& ring, const QVector& u, const QVector& v)
{
    QVector ut = mul(ring.powers_inv, u);
    QVector acc(ring.dim(), QPoly(Rational(0), ring.qmax));
    QVector cur = v;
    for (int i = 0; i < ring.dim(); ++i) {
        for (int r = 0; r < ring.dim(); ++r)
            acc[r] += (ut[i] * cur[r]).truncated(ring.qmax);
        cur = mul(ring.multH, cur);
        for (auto& x : cur)
            x = x.truncated(ring.qmax);
    }
    return acc;
}

QPoly classical_pairing(const QuantumRingData& ring, const QVector& u, const QVector& v)
{
    QPoly s(Rational(0), ring.qmax);
    for (int i = 0; i < ring.dim(); ++i)
        s += u[i] * v[ring.desc.n - i];
    return (s * Rational(ring.desc.degree)).truncated(ring.qmax);
}

Rational c_truncated(const QuantumRingData& ring, int z)
{
    const int n = ring.desc.n, a = ring.desc.a;
    const Rational b(ring.desc.b);
    auto M = [&](int i, int j) -> Rational { return (i < 0 || j < 0 || i > n || j > n) ? Rational(0) : ring.M[i][j]; };
    auto W = [&](int i, int j) -> Rational { return (i < 0 || j < 0 || i > n || j > n) ? Rational(0) : ring.W[i][j]; };
    Rational c = 1;
    for (int k = 0; k * a <= n; ++k)
        for (int l = 0; (k + l) * a <= n; ++l) {
            Rational w = Rational(k) / pow(b, k + l);
            if (k + l <= z)
                c += w * M(n - l * a, n - (k + l) * a) * W(n, n - l * a);
            if (k + l <= z - 1)
                c -= w * M(n - (l + 1) * a, n - (k + l + 1) * a) * W(n - a, n - (l + 1) * a);
        }
    return c;
}

CConstant c_constant(const QuantumRingData& ring)
{
    const int n = ring.desc.n, a = ring.desc.a;
    CConstant out;
    out.value = c_truncated(ring, n / a + 1);
    Rational ratio = Rational(ring.desc.ell) / Rational(ring.desc.b);
    out.conjectured = 0;
    for (int i = 1; i <= n / a; ++i) {
        Rational term = pow(ratio, i) / Rational(factorial(i));
        out.conjectured += (i % 2 == 1) ? term : Rational(-term);
    }
    out.matches_conjecture = out.conjectured == out.value;
    return out;
}

AmbientFourPoint::AmbientFourPoint(const QuantumRingData& ring) : ring_(&ring)
{
    const int dim = ring.dim();
    t3_.assign(dim, std::vector<QVector>(dim, QVector(dim)));
    std::vector<QVector> basis;
    for (int i = 0; i < dim; ++i) {
        QVector e(dim, QPoly(Rational(0), ring.qmax));
        e[i] = QPoly(Rational(1), ring.qmax);
        basis.push_back(e);
    }
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            QVector prod = quantum_product(ring, basis[i], basis[j]);
            for (int k = 0; k < dim; ++k) {
                QPoly v = classical_pairing(ring, prod, basis[k]);
                t3_[i][j][k] = t3_[j][i][k] = v;
            }
        }
}

QPoly AmbientFourPoint::third(int i, int j, int k) const { return t3_[i][j][k]; }

QPoly AmbientFourPoint::fourth(int i, int j, int k, int l) const
{
    std::array<int, 4> idx{i, j, k, l};
    std::sort(idx.begin(), idx.end());
    if (auto it = memo_.find(idx); it != memo_.end())
        return it->second;
    QPoly v = compute(idx);
    memo_.emplace(idx, v);
    return v;
}

QPoly AmbientFourPoint::compute(std::array<int, 4> idx) const
{
    const auto& ring = *ring_;
    const int n = ring.desc.n, a = ring.desc.a, qmax = ring.qmax;
    const QPoly zero(Rational(0), qmax);
    if (idx[0] == 0)
        return zero; // string equation
    int sigma = idx[0] + idx[1] + idx[2] + idx[3];
    int excess = sigma - n - 1;
    if (excess < 0 || excess % a != 0 || excess / a > qmax)
        return zero;
    if (idx[0] == 1)
        return third(idx[1], idx[2], idx[3]).q_derivative(); // divisor equation

    // Differentiated WDVV with one slot equal to H:
    // F_{A+1,c,d,p} = sum_e F_{A c e p} (H o)^e_d + sum F_{A c e} g^{ef} F_{f 1 d p}
    //               - sum F_{A 1 e p} g^{ef} F_{f c d} - sum_{f != A+1} (H o)^f_A F_{f c d p}
    const int A = idx[0] - 1, c = idx[1], p = idx[2], d = idx[3];
    const Rational ginv = Rational(1) / Rational(ring.desc.degree);
    QPoly r = zero;
    for (int e = 0; e <= n; ++e)
        if (!ring.hmul[e][d].is_zero())
            r += ring.hmul[e][d] * fourth(A, c, e, p);
    for (int e = 0; e <= n; ++e) {
        int f = n - e;
        r += third(A, c, e) * fourth(f, 1, d, p) * ginv;
        r -= fourth(A, 1, e, p) * third(f, c, d) * ginv;
    }
    for (int f = 0; f <= n; ++f)
        if (f != A + 1 && !ring.hmul[f][A].is_zero())
            r -= ring.hmul[f][A] * fourth(f, c, d, p);
    return r.truncated(qmax);
}

F0Derivs f0_derivs(const QuantumRingData& ring)
{
    const int dim = ring.dim(), qmax = ring.qmax;
    AmbientFourPoint amb(ring);
    F0Derivs out;
    out.third.assign(dim, std::vector<QVector>(dim, QVector(dim, QPoly(Rational(0), qmax))));
    out.contracted_fourth = out.third;

    // Third derivatives in the tau basis: (H~^a o H~^b, H~^c).
    std::vector<QVector> pw(dim);
    for (int i = 0; i < dim; ++i)
        for (int r = 0; r < dim; ++r)
            pw[i].push_back(ring.powers[r][i]);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            QVector prod = quantum_product(ring, pw[a], pw[b]);
            for (int c = 0; c < dim; ++c)
                out.third[a][b][c] = classical_pairing(ring, prod, pw[c]);
        }

    // v_l = sum_e (d t^l / d tau^e) g^{e0}
    QVector v(dim, QPoly(Rational(0), qmax));
    for (int l = 0; l < dim; ++l)
        for (int e = 0; e < dim; ++e)
            v[l] += ring.powers[l][e] * ring.ginv[e][0];
    // X_{ijk} = sum_l F_{ijkl} v_l in t-coordinates, then transform three slots.
    Tensor3 x(dim, std::vector<QVector>(dim, QVector(dim, QPoly(Rational(0), qmax))));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                QPoly s(Rational(0), qmax);
                for (int l = 0; l < dim; ++l)
                    if (!v[l].is_zero())
                        s += amb.fourth(i, j, k, l) * v[l];
                x[i][j][k] = s.truncated(qmax);
            }
    auto transform_slot = [&](const Tensor3& in, int slot) {
        Tensor3 outt(dim, std::vector<QVector>(dim, QVector(dim, QPoly(Rational(0), qmax))));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    QPoly s(Rational(0), qmax);
                    for (int m = 0; m < dim; ++m) {
                        int src[3] = {i, j, k};
                        int tgt = src[slot];
                        src[slot] = m;
                        const QPoly& coef = ring.powers[m][tgt];
                        if (!coef.is_zero())
                            s += coef * in[src[0]][src[1]][src[2]];
                    }
                    outt[i][j][k] = s.truncated(qmax);
                }
        return outt;
    };
    x = transform_slot(x, 0);
    x = transform_slot(x, 1);
    x = transform_slot(x, 2);
    out.contracted_fourth = x;
    return out;
}

QPoly third_derivative_formula(const CIDescriptor& desc, int a, int b, int c, int qmax)
{
    int excess = a + b + c - desc.n;
    if (excess < 0 || excess % desc.a != 0)
        return QPoly(Rational(0), qmax);
    int k = excess / desc.a;
    return QPoly::monomial(pow(Rational(desc.b), k) * Rational(desc.degree), k, qmax);
}

QPoly contracted_fourth_formula(const CIDescriptor& desc, const Rational& c_value, int a, int b, int c, int qmax)
{
    if (a < 1 || b < 1 || c < 1)
        return QPoly(Rational(0), qmax);
    int excess = a + b + c - 1;
    if (excess % desc.a != 0)
        return QPoly(Rational(0), qmax);
    int k = excess / desc.a;
    return QPoly::monomial(c_value * pow(Rational(desc.b), k), k, qmax);
}

QPoly contracted_fourth_truncated(const QuantumRingData& ring, int a, int b, int c)
{
    const auto& desc = ring.desc;
    if (a < 1 || b < 1 || c < 1 || (a + b + c - 1) % desc.a != 0)
        return QPoly(Rational(0), ring.qmax);
    int k = (a + b + c - 1) / desc.a;
    return QPoly::monomial(c_truncated(ring, k) * pow(Rational(desc.b), k), k, ring.qmax);
}

QPoly pairing_formula(const CIDescriptor& desc, int e, int f, int qmax)
{
    return third_derivative_formula(desc, e, f, 0, qmax);
}

QPoly inverse_pairing_formula(const CIDescriptor& desc, int e, int f, int qmax)
{
    Rational inv = Rational(1) / Rational(desc.degree);
    if (e + f == desc.n)
        return QPoly(inv, qmax);
    if (e + f == desc.n - desc.a)
        return QPoly::monomial(-Rational(desc.b) * inv, 1, qmax);
    return QPoly(Rational(0), qmax);
}

} // namespace ciqc
