#include "ciqc/reconstruction.hpp"

#include "ciqc/errors.hpp"

#include <algorithm>

namespace ciqc {

namespace {

QPoly zero_q(int qmax) { return QPoly(Rational(0), qmax); }

QVector column(const QMatrix& m, int j)
{
    QVector v;
    v.reserve(m.size());
    for (const auto& row : m)
        v.push_back(row[j]);
    return v;
}

bool is_zero(const QVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const QPoly& p) { return p.is_zero(); });
}

RVector at_one(const QVector& v)
{
    RVector r;
    r.reserve(v.size());
    for (const auto& p : v)
        r.push_back(p.at_one());
    return r;
}

RMatrix at_one(const QMatrix& m)
{
    RMatrix r;
    r.reserve(m.size());
    for (const auto& row : m)
        r.push_back(at_one(row));
    return r;
}

// Polynomials in w reduced modulo w^{n+1} - b w^k.
using WPoly = std::vector<Rational>;

WPoly wpoly_reduce(WPoly p, int n, int k, const Rational& b)
{
    for (int d = static_cast<int>(p.size()) - 1; d > n; --d) {
        if (p[d] != 0) {
            p[d - (n + 1) + k] += b * p[d];
            p[d] = 0;
        }
    }
    p.resize(n + 1, Rational(0));
    return p;
}

WPoly wpoly_mul(const WPoly& x, const WPoly& y, int n, int k, const Rational& b)
{
    WPoly r(x.size() + y.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            r[i + j] += x[i] * y[j];
    }
    return wpoly_reduce(std::move(r), n, k, b);
}

void trim(WPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Remainder of x by y over Q; y nonzero and trimmed.
WPoly poly_rem(WPoly x, const WPoly& y)
{
    trim(x);
    while (x.size() >= y.size() && !x.empty()) {
        Rational f = x.back() / y.back();
        std::size_t shift = x.size() - y.size();
        for (std::size_t i = 0; i < y.size(); ++i)
            x[shift + i] -= f * y[i];
        trim(x);
    }
    return x;
}

WPoly poly_gcd(WPoly x, WPoly y)
{
    trim(x);
    trim(y);
    while (!y.empty()) {
        WPoly r = poly_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

// Rational roots of c2 x^2 + c1 x + c0.
std::vector<Rational> rational_roots(const Rational& c0, const Rational& c1, const Rational& c2)
{
    std::vector<Rational> roots;
    if (c2 == 0) {
        if (c1 != 0)
            roots.push_back(-c0 / c1);
        return roots;
    }
    Rational disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0)
        return roots;
    Integer num = disc.get_num(), den = disc.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return roots;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational sq(rn, rd);
    sq.canonicalize();
    roots.push_back((-c1 - sq) / (2 * c2));
    if (sq != 0)
        roots.push_back((-c1 + sq) / (2 * c2));
    std::sort(roots.begin(), roots.end());
    return roots;
}

// E pushed to quantum-power coordinates: E = sum_i (sum_l A[i][l] tau^l + a P[i]) d/dtau^i.
struct EulerTau {
    QMatrix A;
    QVector P;
};

EulerTau euler_tau(const QuantumRingData& ring)
{
    const int dim = ring.dim();
    QMatrix D = zero_qmatrix(dim, dim, ring.qmax);
    for (int j = 0; j < dim; ++j)
        D[j][j] = QPoly(Rational(1 - j), ring.qmax);
    EulerTau e;
    e.A = truncated(mul(mul(ring.powers_inv, D), ring.powers), ring.qmax);
    e.P = column(ring.powers_inv, 1);
    return e;
}

} // namespace

QVector gamma_vector(const QuantumRingData& ring)
{
    const int n = ring.desc.n, a = ring.desc.a;
    const Rational pd = Rational(ring.desc.degree);
    QVector g(ring.dim(), zero_q(ring.qmax));
    QPoly bq = QPoly::monomial(Rational(ring.desc.b), 1, ring.qmax);
    for (int r = 0; r < ring.dim(); ++r)
        g[r] = ((ring.powers[r][n] - bq * ring.powers[r][n - a]) * (Rational(1) / pd)).truncated(ring.qmax);

    if (!is_zero(quantum_product(ring, g, g)))
        throw ConsistencyError("gamma does not square to zero");
    QVector one(ring.dim(), zero_q(ring.qmax));
    one[0] = QPoly(Rational(1), ring.qmax);
    if (classical_pairing(ring, g, one) != QPoly(Rational(1)))
        throw ConsistencyError("(gamma, 1) is not 1");
    QVector hg = quantum_product(ring, column(ring.powers, 1), g);
    if (!is_zero(hg))
        throw ConsistencyError("H~ does not annihilate gamma");
    return g;
}

FrobeniusOrigin frobenius_origin(const QuantumRingData& ring)
{
    const int dim = ring.dim();
    FrobeniusOrigin o;
    o.ring = &ring;
    o.gamma = gamma_vector(ring);
    o.gamma_tau = mul(ring.powers_inv, o.gamma);
    for (auto& p : o.gamma_tau)
        p = p.truncated(ring.qmax);

    o.C.assign(dim, std::vector<QVector>(dim, QVector(dim, zero_q(ring.qmax))));
    for (int x = 0; x < dim; ++x) {
        QVector cur = column(ring.powers, x);
        for (int y = 0; y < dim; ++y) {
            QVector tau = mul(ring.powers_inv, cur);
            for (int c = 0; c < dim; ++c)
                o.C[x][y][c] = tau[c].truncated(ring.qmax);
            cur = mul(ring.multH, cur);
            for (auto& p : cur)
                p = p.truncated(ring.qmax);
        }
    }
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y)
            if (o.C[x][y] != o.C[y][x])
                throw ConsistencyError("structure constants are not symmetric");

    // H~^x gamma = lambda_x gamma
    int pivot = -1;
    for (int c = 0; c < dim && pivot < 0; ++c)
        if (o.gamma_tau[c].coeff(0) != 0)
            pivot = c;
    if (pivot < 0)
        throw ConsistencyError("gamma has no constant leading coordinate");
    o.lambda.assign(dim, zero_q(ring.qmax));
    for (int x = 0; x < dim; ++x) {
        QVector prod(dim, zero_q(ring.qmax));
        for (int y = 0; y < dim; ++y)
            for (int c = 0; c < dim; ++c)
                prod[c] += (o.gamma_tau[y] * o.C[x][y][c]).truncated(ring.qmax);
        Rational lam = prod[pivot].coeff(0) / o.gamma_tau[pivot].coeff(0);
        for (int c = 0; c < dim; ++c)
            if (prod[c] != (o.gamma_tau[c] * lam).truncated(ring.qmax))
                throw ConsistencyError("gamma is not an eigenvector of H~^" + std::to_string(x));
        o.lambda[x] = QPoly(lam, ring.qmax);
    }
    return o;
}

ArtinReport artin_iso(int n, int k, const Rational& b)
{
    if (n < 1 || k < 1 || k > n)
        throw DomainError("need 1 <= k <= n");
    if (b == 0)
        throw DomainError("b must be nonzero");
    ArtinReport r;
    r.n = n;
    r.k = k;
    r.b = b;
    WPoly eps(n + 3 - k, Rational(0));
    eps[n + 2 - k] += 1;
    eps[1] -= b;
    eps = wpoly_reduce(std::move(eps), n, k, b);
    r.eps = eps;

    WPoly pw(n + 1, Rational(0));
    pw[0] = 1;
    for (int i = 0; i < k; ++i) {
        if (i == k - 1)
            r.eps_power_k1 = pw;
        pw = wpoly_mul(pw, eps, n, k, b);
    }
    r.eps_power_k = pw;
    r.eps_nilpotent = std::all_of(pw.begin(), pw.end(), [](const Rational& x) { return x == 0; });

    r.expected_k1.assign(n + 1, Rational(0));
    if (k >= 2) {
        Rational f = pow(b, k - 2) * (k % 2 == 0 ? 1 : -1);
        r.expected_k1[n] += f;
        r.expected_k1[k - 1] -= f * b;
        r.phi_formula_holds = r.expected_k1 == r.eps_power_k1;
    }

    WPoly f(n + 2 - k, Rational(0));
    f[0] = -b;
    f[n + 1 - k] = 1;
    r.semisimple_rank = n + 1 - k;
    WPoly df(n + 1 - k, Rational(0));
    for (int i = 1; i <= n + 1 - k; ++i)
        df[i - 1] = f[i] * i;
    WPoly g = poly_gcd(f, df);
    r.semisimple_part_squarefree = g.size() == 1;
    return r;
}

F1Jet f1_series(const QuantumRingData& ring, const AmbientFourPoint& amb)
{
    (void)amb;
    return f1_series(ring);
}

F1Jet f1_series(const QuantumRingData& ring)
{
    const int n = ring.desc.n, a = ring.desc.a, dim = ring.dim();
    const int qmax = ring.qmax;
    FrobeniusOrigin o = frobenius_origin(ring);
    F0Derivs f0 = f0_derivs(ring);

    QMatrix H = zero_qmatrix(dim, dim, qmax);
    for (int j = 2; j <= n; ++j)
        for (int c = 0; c <= n; ++c)
            H[j][c] = -f0.contracted_fourth[1][j - 1][c];
    for (int j = 2; j <= n; ++j)
        for (int c = 2; c <= n; ++c)
            if (H[j][c] != H[c][j])
                throw ConsistencyError("hessian of F^(1) is not symmetric at (" + std::to_string(j) + "," +
                                       std::to_string(c) + ")");
    for (int c = 0; c <= n; ++c)
        if (!H[c][0].is_zero())
            throw ConsistencyError("F^(1)_{0c}(0) must vanish");
    for (int c = 2; c <= n; ++c)
        H[1][c] = H[c][1];

    // a sum_i P_i F_{i1} = F_1(0) - sum_i A_{i1} F_i(0), with P_1 = 1
    EulerTau e = euler_tau(ring);
    if (e.P[1] != QPoly(Rational(1)))
        throw ConsistencyError("d tau^1 / d t^1 is not 1");
    QPoly rhs = o.lambda[1];
    for (int i = 0; i <= n; ++i)
        rhs -= (e.A[i][1] * o.lambda[i]).truncated(qmax);
    for (int i = 0; i <= n; ++i)
        if (i != 1)
            rhs -= (e.P[i] * H[i][1] * Rational(a)).truncated(qmax);
    H[1][1] = (rhs * (Rational(1) / Rational(a))).truncated(qmax);

    F1Jet jet;
    QPoly origin = zero_q(qmax);
    for (int i = 0; i <= n; ++i)
        origin += (e.P[i] * o.lambda[i] * Rational(a)).truncated(qmax);
    jet.origin = origin;

    SeriesCaps caps{2, 0, qmax};
    TruncSeries f(dim, caps);
    f.add_term(Monomial{std::vector<int>(dim, 0), 0}, origin);
    for (int i = 0; i <= n; ++i) {
        Monomial m{std::vector<int>(dim, 0), 0};
        m.t[i] = 1;
        f.add_term(m, o.lambda[i]);
    }
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Monomial m{std::vector<int>(dim, 0), 0};
            m.t[i] += 1;
            m.t[j] += 1;
            f.add_term(m, i == j ? H[i][j] * (Rational(1) / 2) : H[i][j]);
        }
    jet.tau = f;
    jet.t = f.linear_substitute(ring.powers_inv);
    jet.hessian_tau_q1 = at_one(H);
    return jet;
}

TruncSeries f1_closed_form(const QuantumRingData& ring, SeriesCaps caps)
{
    const int n = ring.desc.n, a = ring.desc.a, dim = ring.dim();
    caps.qmax = std::min(caps.qmax, ring.qmax);
    Rational c = c_constant(ring).value;
    TruncSeries f = TruncSeries::t_var(dim, caps, 0);
    for (int k = 1; 1 + k * a <= 2 * n && k <= caps.qmax; ++k) {
        Rational coef = -c / 2 * pow(Rational(ring.desc.b), k);
        for (int i = 1; i <= n; ++i) {
            int j = 1 + k * a - i;
            if (j < 1 || j > n)
                continue;
            Monomial m{std::vector<int>(dim, 0), 0};
            m.t[i] += 1;
            m.t[j] += 1;
            f.add_term(m, QPoly::monomial(coef, k, caps.qmax));
        }
    }
    return f;
}

namespace {

struct F2Linear {
    int beta = 0;
    QVector U, V; // F^(2)_f(0) = U_f + V_f phi0, with F^(2)(0) = phi0 q^beta
};

F2Linear f2_linear(const QuantumRingData& ring, const F1Jet& f1, int beta)
{
    const int n = ring.desc.n, a = ring.desc.a, dim = ring.dim(), qmax = ring.qmax;
    QMatrix Hq = zero_qmatrix(dim, dim, qmax);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Monomial m{std::vector<int>(dim, 0), 0};
            m.t[i] += 1;
            m.t[j] += 1;
            QPoly c = f1.tau.coeff(m);
            Hq[i][j] = i == j ? c * Rational(2) : c;
        }
    auto [g, ginv] = pairings(ring);
    F2Linear r;
    r.beta = beta;
    r.U.assign(dim, zero_q(qmax));
    r.V.assign(dim, zero_q(qmax));
    r.V[1] = QPoly::monomial(make_rational(n - 1, a), beta, qmax);
    for (int b = 1; b <= n - 1; ++b) {
        QPoly A = zero_q(qmax);
        for (int e = 0; e <= n; ++e)
            for (int f = 0; f <= n; ++f)
                A += (Hq[1][e] * ginv[e][f] * Hq[f][b]).truncated(qmax);
        r.U[b + 1] = A;
        r.V[b + 1] = (Hq[1][b] * QPoly::monomial(Rational(-2), beta, qmax)).truncated(qmax);
    }
    return r;
}

} // namespace

F2Origin f2_at_zero(const QuantumRingData& ring, const F1Jet& f1)
{
    const int n = ring.desc.n, a = ring.desc.a, dim = ring.dim(), qmax = ring.qmax;
    F2Origin out;
    out.integral = (n - 1) % a == 0;
    if (!out.integral) {
        out.roots = {Rational(0)};
        out.quadratic = {Rational(0), Rational(0), Rational(1)};
        out.degenerate = true;
        return out;
    }
    out.beta = (n - 1) / a;
    if (2 * out.beta > qmax)
        throw ConfigError("qmax too small for F^(2)(0); need at least " + std::to_string(2 * out.beta));
    F2Linear lin = f2_linear(ring, f1, out.beta);
    auto [g, ginv] = pairings(ring);
    QPoly c0 = zero_q(qmax), c1 = zero_q(qmax);
    for (int f = 0; f < dim; ++f) {
        c0 += (ginv[0][f] * lin.U[f]).truncated(qmax);
        c1 += (ginv[0][f] * lin.V[f]).truncated(qmax);
    }
    for (const auto& [d, x] : c0.terms())
        if (d != 2 * out.beta)
            throw ConsistencyError("quadratic for F^(2)(0) has a stray q^" + std::to_string(d) + " term");
    for (const auto& [d, x] : c1.terms())
        if (d != 2 * out.beta)
            throw ConsistencyError("quadratic for F^(2)(0) has a stray q^" + std::to_string(d) + " term");
    out.quadratic = {c0.coeff(2 * out.beta), c1.coeff(2 * out.beta), Rational(1)};
    out.degenerate = out.quadratic[0] == 0 && out.quadratic[1] == 0;
    out.roots = rational_roots(out.quadratic[0], out.quadratic[1], out.quadratic[2]);
    return out;
}

F2Origin f2_at_zero(const QuantumRingData& ring) { return f2_at_zero(ring, f1_series(ring)); }

F2Gradient f2_gradient(const QuantumRingData& ring, const F1Jet& f1, const Rational& f2zero)
{
    const int dim = ring.dim(), qmax = ring.qmax;
    F2Origin o = f2_at_zero(ring, f1);
    if (std::find(o.roots.begin(), o.roots.end(), f2zero) == o.roots.end())
        throw DomainError("F^(2)(0) = " + to_string(f2zero) + " is not a root of the quadratic");
    F2Gradient r;
    r.f2zero = f2zero;
    r.tau.assign(dim, zero_q(qmax));
    if (o.integral) {
        F2Linear lin = f2_linear(ring, f1, o.beta);
        for (int f = 0; f < dim; ++f)
            r.tau[f] = (lin.U[f] + lin.V[f] * f2zero).truncated(qmax);
    } else {
        // phi = 0
        F2Linear lin = f2_linear(ring, f1, 0);
        for (int f = 0; f < dim; ++f)
            r.tau[f] = lin.U[f];
    }
    r.t.assign(dim, zero_q(qmax));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            r.t[i] += (ring.powers_inv[j][i] * r.tau[j]).truncated(qmax);
    return r;
}

F2Gradient f2_gradient(const QuantumRingData& ring, const Rational& f2zero)
{
    return f2_gradient(ring, f1_series(ring), f2zero);
}

QVector f2_gradient_closed_form(const QuantumRingData& ring)
{
    const int n = ring.desc.n, a = ring.desc.a, dim = ring.dim(), qmax = ring.qmax;
    Rational c = c_constant(ring).value;
    QVector v(dim, zero_q(qmax));
    for (int b = 2; b <= n; ++b) {
        if (((b + n - 2) % a) != 0)
            continue;
        int e = (n + b - 2) / a;
        v[b] = QPoly::monomial(c * c / Rational(ring.desc.degree) * pow(Rational(ring.desc.b), e), e, qmax);
    }
    return v;
}

int q1_qmax(const CIDescriptor& desc) { return (3 * desc.n - 1) / desc.a; }

std::string to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Solved:
        return "solved";
    case SolveStatus::NeedsEulerInput:
        return "needs Euler input";
    case SolveStatus::Inconsistent:
        return "inconsistent";
    }
    return "?";
}

EulerInput f1_hessian_euler_input(const QuantumRingData& ring, int c)
{
    const int dim = ring.dim();
    if (c < 0 || c >= dim)
        throw ConfigError("index out of range");
    FrobeniusOrigin o = frobenius_origin(ring);
    EulerTau e = euler_tau(ring);
    EulerInput in;
    in.coeffs.resize(dim);
    for (int i = 0; i < dim; ++i)
        in.coeffs[i] = e.P[i].at_one() * ring.desc.a;
    in.value = o.lambda[c].at_one();
    for (int i = 0; i < dim; ++i)
        in.value -= e.A[i][c].at_one() * o.lambda[i].at_one();
    return in;
}

EigenSolution eigen_solve(const FrobeniusOrigin& origin, const RMatrix& rhs, const std::optional<EulerInput>& euler)
{
    const QuantumRingData& ring = *origin.ring;
    const int n = ring.desc.n, a = ring.desc.a, dim = ring.dim();
    const int k = n + 1 - a;
    const Rational b(ring.desc.b);
    if (static_cast<int>(rhs.size()) != dim)
        throw ConfigError("rhs must be a square matrix of size n + 1");
    if (ring.qmax < q1_qmax(ring.desc))
        throw ConfigError("evaluation at q = 1 needs qmax >= " + std::to_string(q1_qmax(ring.desc)));

    std::vector<std::vector<RVector>> C(dim, std::vector<RVector>(dim));
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y)
            C[x][y] = at_one(origin.C[x][y]);
    RVector lam = at_one(origin.lambda);

    auto prod = [&](const RVector& u, const RVector& v) {
        RVector r(dim, Rational(0));
        for (int x = 0; x < dim; ++x) {
            if (u[x] == 0)
                continue;
            for (int y = 0; y < dim; ++y) {
                if (v[y] == 0)
                    continue;
                Rational f = u[x] * v[y];
                for (int c = 0; c < dim; ++c)
                    r[c] += f * C[x][y][c];
            }
        }
        return r;
    };
    auto dot = [&](const RVector& u, const RVector& v) {
        Rational s = 0;
        for (int i = 0; i < dim; ++i)
            s += u[i] * v[i];
        return s;
    };
    auto form = [&](const RVector& u, const RVector& v) {
        Rational s = 0;
        for (int x = 0; x < dim; ++x)
            for (int y = 0; y < dim; ++y)
                s += u[x] * rhs[x][y] * v[y];
        return s;
    };
    auto unit = [&](int i) {
        RVector r(dim, Rational(0));
        r[i] = 1;
        return r;
    };
    auto scaled = [&](RVector v, const Rational& f) {
        for (auto& x : v)
            x *= f;
        return v;
    };
    auto sub = [&](RVector u, const RVector& v) {
        for (int i = 0; i < dim; ++i)
            u[i] -= v[i];
        return u;
    };

    // 1_L = p(w)(w^a - b), p = (w^a - b)^{-1} mod w^k
    const RVector w = unit(1), one = unit(0);
    RVector wa = one;
    for (int i = 0; i < a; ++i)
        wa = prod(wa, w);
    RVector base = sub(wa, scaled(one, b));
    RVector p(dim, Rational(0)), wj = one;
    for (int j = 0; j * a < k; ++j) {
        for (int i = 0; i < dim; ++i)
            p[i] -= wj[i] / pow(b, j + 1);
        wj = prod(wj, wa);
    }
    RVector oneL = prod(p, base);
    RVector oneS = sub(one, oneL);
    if (prod(oneL, oneL) != oneL)
        throw ConsistencyError("local idempotent is not idempotent");

    std::vector<RVector> basis;
    basis.push_back(oneL);
    RVector eps = prod(w, oneL);
    RVector cur = eps;
    for (int j = 1; j < k; ++j) {
        basis.push_back(cur);
        cur = prod(cur, eps);
    }
    if (std::any_of(cur.begin(), cur.end(), [](const Rational& x) { return x != 0; }))
        throw ConsistencyError("eps^k is not zero");
    cur = oneS;
    for (int j = 0; j < a; ++j) {
        basis.push_back(cur);
        cur = prod(cur, w);
    }

    EigenSolution sol;
    sol.split_basis = basis;
    RMatrix Binv = inverse(basis); // rows of basis = vectors, y = basis * x

    if (dot(oneL, lam) != 1)
        throw ConsistencyError("eigenvalue of 1_L is not 1");
    for (std::size_t j = 1; j < basis.size(); ++j)
        if (dot(basis[j], lam) != 0)
            throw ConsistencyError("split basis element has nonzero eigenvalue");

    RVector y(dim, Rational(0));
    y[0] = -form(oneL, oneL);
    for (int j = 2; j < k; ++j)
        y[j] = form(eps, basis[j - 1]);
    for (int j = 0; j < a; ++j)
        y[k + j] = form(basis[k + j], oneS);

    RVector x = mul(Binv, y);
    RVector dir(dim, Rational(0)); // kernel direction: x(eps) = 1, others 0
    if (k >= 2) {
        for (int i = 0; i < dim; ++i)
            dir[i] = Binv[i][1];
    }

    sol.status = SolveStatus::Solved;
    if (k >= 2) {
        if (!euler) {
            sol.status = SolveStatus::NeedsEulerInput;
            sol.detail = "eps-direction undetermined";
        } else {
            if (static_cast<int>(euler->coeffs.size()) != dim)
                throw ConfigError("Euler input has the wrong size");
            Rational slope = dot(euler->coeffs, dir);
            if (slope == 0) {
                sol.status = SolveStatus::NeedsEulerInput;
                sol.detail = "Euler input does not see the eps-direction";
            } else {
                Rational t = (euler->value - dot(euler->coeffs, x)) / slope;
                for (int i = 0; i < dim; ++i)
                    x[i] += t * dir[i];
            }
        }
    }
    sol.x = x;

    for (int u = 0; u < dim && sol.status != SolveStatus::Inconsistent; ++u)
        for (int v = 0; v < dim; ++v) {
            Rational lhs = dot(C[u][v], x) - lam[u] * x[v] - lam[v] * x[u];
            if (lhs != rhs[u][v]) {
                sol.status = SolveStatus::Inconsistent;
                sol.detail = "equation (" + std::to_string(u) + "," + std::to_string(v) + ") fails";
                break;
            }
        }
    return sol;
}

HigherKReport higher_k_coeffs(const QuantumRingData& ring, int kmax, const Rational& f2zero)
{
    const CIDescriptor& desc = ring.desc;
    if (!desc.is_cubic() && !desc.is_quadric_pair())
        throw DomainError("higher-order coefficients are available for d = (3) and d = (2,2) only");
    require_reconstructible(desc);
    const int n = desc.n, a = desc.a;
    Rational c = c_constant(ring).value;
    Rational pd(desc.degree), ell(desc.ell), b(desc.b);
    Rational M = ring.M[n][n - a];
    HigherKReport rep;
    for (int k = 2; k <= kmax; ++k) {
        HigherKEntry e;
        e.k = k;
        e.target = k + 1;
        EulerFilter ef = euler_filter(desc, k + 1);
        e.beta = ef.beta;
        e.admissible = ef.admissible;
        e.coefficient = (2 * k * c * b + (M - ell) * e.beta) / pd + 2 * k * f2zero;
        e.determined = e.coefficient != 0;
        if (!e.determined && !rep.unknown_target)
            rep.unknown_target = e.target;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace ciqc

namespace ciqc {

ReducedPotential reconstructed_potential(const QuantumRingData& ring, Coordinates coords, const Rational& phi)
{
    const CIDescriptor& desc = ring.desc;
    const int n = desc.n;
    const bool tau = coords == Coordinates::Tau;
    AmbientFourPoint amb(ring);
    SeriesCaps caps = reduced_caps(desc, 4, 2, ring.qmax);
    TruncSeries F = ambient_potential(ring, amb, caps, coords);
    F1Jet f1 = f1_series(ring, amb);
    TruncSeries S = TruncSeries::s_var(n + 1, caps);
    F += S * (tau ? f1.tau : f1.t).with_caps(caps);
    if (caps.scap >= 2) {
        F2Origin f2o = f2_at_zero(ring, f1);
        F2Gradient grad = f2_gradient(ring, f1, phi);
        TruncSeries F2 = TruncSeries::constant(n + 1, caps, QPoly::monomial(phi, f2o.beta, ring.qmax));
        for (int i = 0; i <= n; ++i)
            F2 += TruncSeries::t_var(n + 1, caps, i) * (tau ? grad.tau[i] : grad.t[i]);
        F += S * S * F2 * QPoly(make_rational(1, 2));
    }
    QMatrix ginv = tau ? pairings(ring).second : inverse(ring.g_classical, ring.qmax);
    return make_potential(desc, coords, ginv, ring.powers_inv, F, {4, 2, 1});
}

ReducedPotential reconstructed_potential(const QuantumRingData& ring, Coordinates coords)
{
    F2Origin f2o = f2_at_zero(ring);
    Rational phi = f2o.roots.empty() ? Rational(0) : f2o.roots.front();
    return reconstructed_potential(ring, coords, phi);
}

} // namespace ciqc
