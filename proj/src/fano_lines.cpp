#include "ciqc/fano_lines.hpp"

#include "ciqc/ci_geometry.hpp"
#include "ciqc/errors.hpp"

#include <mutex>
#include <random>
#include <sstream>

namespace ciqc {

SchubertVector SchubertVector::basis(int n, int l0, int l1)
{
    SchubertVector v(n);
    v.add(l0, l1, Rational(1));
    return v;
}

Rational SchubertVector::coeff(int l0, int l1) const
{
    auto it = terms_.find({l0, l1});
    return it == terms_.end() ? Rational(0) : it->second;
}

void SchubertVector::add(int l0, int l1, const Rational& c)
{
    if (c == 0 || l0 > n_ || l1 > l0 || l1 < 0)
        return;
    auto [it, inserted] = terms_.emplace(TwoRowPartition{l0, l1}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

SchubertVector& SchubertVector::operator+=(const SchubertVector& o)
{
    if (o.n_ != n_)
        throw ConfigError("Schubert vectors live on different Grassmannians");
    for (const auto& [p, c] : o.terms_)
        add(p.l0, p.l1, c);
    return *this;
}

SchubertVector& SchubertVector::operator-=(const SchubertVector& o)
{
    if (o.n_ != n_)
        throw ConfigError("Schubert vectors live on different Grassmannians");
    for (const auto& [p, c] : o.terms_)
        add(p.l0, p.l1, -c);
    return *this;
}

SchubertVector& SchubertVector::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, x] : terms_)
        x *= c;
    return *this;
}

std::string SchubertVector::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Rational a = abs(c);
        if (a != 1)
            os << ciqc::to_string(a);
        os << "{" << it->first.l0 << "," << it->first.l1 << "}";
        first = false;
    }
    return os.str();
}

SchubertVector pieri_sigma1(const SchubertVector& u)
{
    SchubertVector r(u.n());
    for (const auto& [p, c] : u.terms()) {
        r.add(p.l0 + 1, p.l1, c);
        if (p.l1 + 1 <= p.l0)
            r.add(p.l0, p.l1 + 1, c);
    }
    return r;
}

SchubertVector pieri_sigma2(const SchubertVector& u)
{
    SchubertVector r(u.n());
    for (const auto& [p, c] : u.terms()) {
        r.add(p.l0 + 2, p.l1, c);
        if (p.l1 + 1 <= p.l0)
            r.add(p.l0 + 1, p.l1 + 1, c);
        if (p.l1 + 2 <= p.l0)
            r.add(p.l0, p.l1 + 2, c);
    }
    return r;
}

namespace {

// tab[j][b]: coefficient of s1^{d-2j} s2^j in {d-b, b}, computed without truncation.
const RMatrix& giambelli_table(int d)
{
    static std::mutex mu;
    static std::map<int, RMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end())
        return it->second;
    const int h = d / 2 + 1;
    RMatrix mono(h, RVector(h, Rational(0))); // mono[j][b]
    for (int j = 0; j < h; ++j) {
        SchubertVector v = SchubertVector::basis(d, 0, 0);
        for (int i = 0; i < d - 2 * j; ++i)
            v = pieri_sigma1(v);
        for (int i = 0; i < j; ++i)
            v = pieri_sigma2(v);
        for (int b = 0; b < h; ++b)
            mono[j][b] = v.coeff(d - b, b);
    }
    // rows of inverse(mono^T) give each basis class in monomials
    RMatrix mt(h, RVector(h));
    for (int j = 0; j < h; ++j)
        for (int b = 0; b < h; ++b)
            mt[b][j] = mono[j][b];
    RMatrix inv = inverse(mt);
    return cache.emplace(d, inv).first->second;
}

} // namespace

SchubertVector schubert_product(const SchubertVector& u, const SchubertVector& v)
{
    if (u.n() != v.n())
        throw ConfigError("Schubert vectors live on different Grassmannians");
    SchubertVector r(u.n());
    for (const auto& [p, c] : v.terms()) {
        const int d = p.size();
        const RMatrix& tab = giambelli_table(d);
        for (int j = 0; j <= d / 2; ++j) {
            Rational w = tab[j][p.l1];
            if (w == 0)
                continue;
            SchubertVector t = u;
            for (int i = 0; i < j; ++i)
                t = pieri_sigma2(t);
            for (int i = 0; i < d - 2 * j; ++i)
                t = pieri_sigma1(t);
            r += t * (w * c);
        }
    }
    return r;
}

SchubertVector fano_quartic(int n)
{
    SchubertVector one = SchubertVector::basis(n, 0, 0);
    SchubertVector s1 = SchubertVector::sigma(n, 1);
    SchubertVector s2 = SchubertVector::sigma(n, 2);
    SchubertVector s11 = schubert_product(s1, s1);
    SchubertVector s1111 = schubert_product(s11, s11);
    SchubertVector s112 = schubert_product(s11, s2);
    SchubertVector s22 = schubert_product(s2, s2);
    return s1111 * Rational(3) - s112 * Rational(4) + s22;
}

SchubertVector fano_class(int n)
{
    if (n < 3)
        throw DomainError("the Fano variety of lines needs n >= 3");
    return fano_quartic(n) * Rational(9);
}

namespace {

Rational pow2s(int e) { return pow(Rational(-2), e); }

SchubertVector sigma1_power(int n, int k)
{
    SchubertVector v = SchubertVector::basis(n, 0, 0);
    for (int i = 0; i < k; ++i)
        v = pieri_sigma1(v);
    return v;
}

} // namespace

PrimSquare prim_square_class(int n)
{
    if (n < 3)
        throw DomainError("the Fano variety of lines needs n >= 3");
    const int n0 = n / 2;
    const SchubertVector omega = fano_class(n);
    const SchubertVector s1 = SchubertVector::sigma(n, 1);
    const SchubertVector annihilator = schubert_product(s1, s1) - SchubertVector::sigma(n, 2);

    std::vector<SchubertVector> images;
    std::vector<SchubertVector> basis;
    for (int k = 0; k < n0; ++k) {
        basis.push_back(SchubertVector::basis(n, n - 2 - k, k));
        images.push_back(schubert_product(schubert_product(basis.back(), omega), annihilator));
    }
    std::map<TwoRowPartition, int> rows;
    for (const auto& im : images)
        for (const auto& [p, c] : im.terms())
            rows.emplace(p, 0);
    LinearSystem sys;
    for (const auto& [p, unused] : rows) {
        RVector row(n0);
        for (int k = 0; k < n0; ++k)
            row[k] = images[k].coeff(p.l0, p.l1);
        sys.matrix.push_back(row);
        sys.rhs.push_back(Rational(0));
    }
    PrimSquare out;
    out.n = n;
    if (sys.matrix.empty()) {
        // n = 3: no equations, the normalization alone fixes z0
        out.kernel_dim = n0;
        out.kernel.assign(n0, Rational(1));
    } else {
        LinearSolution sol = solve_linear(sys);
        out.kernel_dim = static_cast<int>(sol.kernel.size());
        if (out.kernel_dim == 1)
            out.kernel = sol.kernel[0];
    }
    if (out.kernel_dim != 1)
        throw ConsistencyError("kernel of the primitive-square system has dimension " + std::to_string(out.kernel_dim));

    CIDescriptor desc = describe(n, {3});
    out.normalization = Rational(-6) * Rational(desc.chi - n - 1);
    SchubertVector trial(n);
    for (int k = 0; k < n0; ++k)
        trial += basis[k] * out.kernel[k];
    Rational got = schubert_product(schubert_product(trial, omega), sigma1_power(n, n - 2)).integral();
    if (got == 0)
        throw ConsistencyError("normalization integral vanishes");
    Rational scale = out.normalization / got;
    out.cls = SchubertVector(n);
    for (int k = 0; k < n0; ++k) {
        out.z.push_back(out.kernel[k] * scale);
        out.closed.push_back((pow2s(n + 1 - k) - pow2s(k + 2)) / 9);
        out.cls += basis[k] * out.z.back();
    }
    return out;
}

bool OmegaReport::ok() const
{
    return z_matches_closed_form && sigma_integral == sigma_expected && sigma_expected == sigma_from_chi &&
           quartic == quartic_expected && quartic == quartic_short && annihilated && f2 == 1;
}

OmegaReport omega_checks(int n)
{
    PrimSquare ps = prim_square_class(n);
    CIDescriptor desc = describe(n, {3});
    const SchubertVector omega = fano_class(n);
    OmegaReport r;
    r.n = n;
    r.chi = desc.chi;
    r.m = desc.m;
    r.z = ps.z;
    r.z_matches_closed_form = ps.z == ps.closed;

    SchubertVector cls_omega = schubert_product(ps.cls, omega);
    r.sigma_integral = schubert_product(cls_omega, sigma1_power(n, n - 2)).integral();
    r.sigma_expected = pow2s(n + 3) - 4;
    r.sigma_from_chi = Rational(-6) * Rational(desc.chi - n - 1);

    const SchubertVector s1 = SchubertVector::sigma(n, 1);
    SchubertVector annihilator = schubert_product(s1, s1) - SchubertVector::sigma(n, 2);
    r.annihilated = schubert_product(cls_omega, annihilator).is_zero();

    r.quartic = schubert_product(cls_omega, ps.cls).integral();
    Rational z0 = ps.z.at(0), z1 = ps.z.size() > 1 ? ps.z[1] : Rational(0);
    r.quartic_short = 9 * z0 * (5 * z0 + 2 * z1);
    Rational cn = Rational(desc.chi - n);
    r.quartic_expected = cn * cn - 1;
    Rational m(desc.m);
    r.m_form = m * m + 2 * m;
    r.m_form_matches = r.m_form == r.quartic_expected;
    // 36 * quartic = F * 36 * ((chi - n)^2 - 1) after contracting both sides
    r.f2 = r.quartic / r.quartic_expected;

    auto fail = [&](const std::string& what, const Rational& lhs, const Rational& rhs) {
        throw VerificationError(desc.label() + ": " + what + ": " + to_string(lhs) + " != " + to_string(rhs));
    };
    if (!r.z_matches_closed_form)
        for (std::size_t k = 0; k < ps.z.size(); ++k)
            if (ps.z[k] != ps.closed[k])
                fail("z_" + std::to_string(k), ps.z[k], ps.closed[k]);
    if (r.sigma_integral != r.sigma_expected)
        fail("sigma_1 integral", r.sigma_integral, r.sigma_expected);
    if (r.sigma_expected != r.sigma_from_chi)
        fail("-6(chi - n - 1)", r.sigma_from_chi, r.sigma_expected);
    if (!r.annihilated)
        throw VerificationError(desc.label() + ": (s1^2 - s2) does not annihilate the primitive square");
    if (r.quartic != r.quartic_short)
        fail("quartic vs 9 z0 (5 z0 + 2 z1)", r.quartic, r.quartic_short);
    if (r.quartic != r.quartic_expected)
        fail("quartic vs (chi - n)^2 - 1", r.quartic, r.quartic_expected);
    return r;
}

RankReport rank_estimates(int n)
{
    if (n < 3)
        throw DomainError("the Fano variety of lines needs n >= 3");
    CIDescriptor desc = describe(n, {3});
    const SchubertVector quartic = fano_quartic(n);
    RankReport r;
    r.n = n;
    for (int i = 0; i <= 2 * n - 4; ++i) {
        std::vector<SchubertVector> images;
        for (int b = 0; 2 * b <= i; ++b)
            if (i - b <= n)
                images.push_back(schubert_product(SchubertVector::basis(n, i - b, b), quartic));
        if (images.empty()) {
            r.kernel_dim.push_back(0);
            continue;
        }
        std::map<TwoRowPartition, int> rows;
        for (const auto& im : images)
            for (const auto& [p, c] : im.terms())
                rows.emplace(p, 0);
        LinearSystem sys;
        for (const auto& [p, unused] : rows) {
            RVector row;
            for (const auto& im : images)
                row.push_back(im.coeff(p.l0, p.l1));
            sys.matrix.push_back(row);
            sys.rhs.push_back(Rational(0));
        }
        std::size_t dim = images.size();
        std::size_t kernel = sys.matrix.empty() ? dim : solve_linear(sys).kernel.size();
        r.kernel_dim.push_back(static_cast<int>(kernel));
    }

    const Integer m = desc.m;
    r.sym2 = n % 2 == 0 ? Integer(m * (m + 1) / 2) : Integer(m * (m - 1) / 2);
    auto grass = [&](int deg) -> Integer {
        if (deg % 2 != 0)
            return 0;
        int i = deg / 2, count = 0;
        for (int b = 0; 2 * b <= i; ++b)
            if (i - b <= n)
                ++count;
        return count;
    };
    auto par = [](int x) { return ((x % 2) + 2) % 2 == 0 ? 1 : 0; };
    for (int i = 0; i <= 4 * n - 8; ++i) {
        BettiRow row;
        row.degree = i;
        row.grassmannian = grass(i);
        Integer delta = 0;
        Integer prim = m * par(i - n);
        if (i < n - 2)
            delta = 0;
        else if (i < 2 * n - 4)
            delta = prim;
        else if (i == 2 * n - 4)
            delta = prim + r.sym2 - 1;
        else if (i <= 2 * n - 2)
            delta = prim - par(i);
        else if (i <= 3 * n - 6)
            delta = prim - 2 * par(i);
        else
            delta = -2 * par(i);
        row.fano = row.grassmannian + delta;
        r.betti.push_back(row);
    }
    return r;
}

namespace {

// H^2(S) for a K3 surface: U^3 + E8(-1)^2, with l = e1 + 7 f1.
RMatrix k3_form()
{
    static const int e8[8][8] = {
        {2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
        {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2},
    };
    RMatrix K(22, RVector(22, Rational(0)));
    for (int u = 0; u < 3; ++u) {
        K[2 * u][2 * u + 1] = 1;
        K[2 * u + 1][2 * u] = 1;
    }
    for (int blk = 0; blk < 2; ++blk)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                K[6 + 8 * blk + i][6 + 8 * blk + j] = -e8[i][j];
    return K;
}

struct LatticeVector {
    RVector gamma; // 22 coordinates in H^2(S)
    Rational a;    // delta coefficient
};

Rational k3_dot(const RMatrix& K, const RVector& x, const RVector& y)
{
    Rational s = 0;
    for (int i = 0; i < 22; ++i) {
        if (x[i] == 0)
            continue;
        for (int j = 0; j < 22; ++j)
            if (K[i][j] != 0 && y[j] != 0)
                s += x[i] * K[i][j] * y[j];
    }
    return s;
}

} // namespace

Hilb2Report hilb2_check(std::uint64_t seed)
{
    const RMatrix K = k3_form();
    auto dot = [&](const LatticeVector& x, const LatticeVector& y) -> Rational { return k3_dot(K, x.gamma, y.gamma); };
    // four-point integral on S^[2] in the split H^2(S) + C delta
    auto four = [&](const LatticeVector* v) -> Rational {
        auto g = [&](int i, int j) -> Rational { return dot(v[i], v[j]); };
        const Rational &a1 = v[0].a, &a2 = v[1].a, &a3 = v[2].a, &a4 = v[3].a;
        return g(0, 1) * g(2, 3) + g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2) -
               (2 * a1 * a2 * g(2, 3) + 2 * a3 * a4 * g(0, 1) + 2 * a1 * a3 * g(1, 3) + 2 * a2 * a4 * g(0, 2) +
                2 * a2 * a3 * g(0, 3) + 2 * a1 * a4 * g(1, 2)) +
               12 * a1 * a2 * a3 * a4;
    };
    // (s1, s1, x, y)
    auto two = [&](const LatticeVector& x, const LatticeVector& y) -> Rational { return 6 * (dot(x, y) - 2 * x.a * y.a); };

    Hilb2Report r;
    LatticeVector delta{RVector(22, Rational(0)), Rational(1)};
    LatticeVector quad[4] = {delta, delta, delta, delta};
    r.all_delta = four(quad);
    LatticeVector iso{RVector(22, Rational(0)), Rational(1)};
    iso.gamma[2] = 1; // e2, isotropic
    r.sigma_pair = two(iso, iso);

    LatticeVector l{RVector(22, Rational(0)), Rational(0)};
    l.gamma[0] = 1;
    l.gamma[1] = 7;
    LatticeVector s1 = l;
    for (auto& x : s1.gamma)
        x *= 2;
    s1.a = -5;
    r.sigma_square = dot(s1, s1) - 2 * s1.a * s1.a;

    // sigma_1-orthogonal part under q = K + (-2)
    LinearSystem sys;
    RVector row(23, Rational(0));
    for (int j = 0; j < 22; ++j)
        for (int i = 0; i < 22; ++i)
            row[j] += s1.gamma[i] * K[i][j];
    row[22] = -2 * s1.a;
    sys.matrix.push_back(row);
    sys.rhs.push_back(Rational(0));
    LinearSolution sol = solve_linear(sys);
    std::vector<LatticeVector> prim;
    for (const auto& k : sol.kernel)
        prim.push_back(LatticeVector{RVector(k.begin(), k.begin() + 22), k[22]});
    r.primitive_rank = static_cast<int>(prim.size());
    const int m = r.primitive_rank;

    RMatrix G(m, RVector(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            G[i][j] = dot(prim[i], prim[j]) - 2 * prim[i].a * prim[j].a;
    RMatrix Ginv = inverse(G);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (Ginv[i][j] != 0)
                pairs.emplace_back(i, j);

    RMatrix T(m, RVector(m)); // (beta_i, beta_j, s1^2)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            T[i][j] = two(prim[i], prim[j]);

    Rational lhs = 0, rhs = 0;
    for (const auto& [i1, i2] : pairs)
        for (const auto& [i3, i4] : pairs) {
            Rational w = Ginv[i1][i2] * Ginv[i3][i4];
            lhs += w * (T[i1][i2] * T[i3][i4] + T[i1][i3] * T[i4][i2] + T[i1][i4] * T[i2][i3]);
            LatticeVector v[4] = {prim[i1], prim[i2], prim[i3], prim[i4]};
            rhs += w * 36 * four(v);
        }
    r.lhs_contraction = lhs;
    r.rhs_contraction = rhs;
    if (lhs == 0)
        throw ConsistencyError("four-point contraction vanishes");
    r.f2 = rhs / lhs;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, m - 1);
    r.samples_ok = true;
    for (r.sampled = 0; r.sampled < 64; ++r.sampled) {
        int i[4] = {pick(rng), pick(rng), pick(rng), pick(rng)};
        LatticeVector v[4] = {prim[i[0]], prim[i[1]], prim[i[2]], prim[i[3]]};
        Rational left = r.f2 * (T[i[0]][i[1]] * T[i[2]][i[3]] + T[i[0]][i[2]] * T[i[3]][i[1]] +
                                T[i[0]][i[3]] * T[i[1]][i[2]]);
        if (left != 36 * four(v))
            r.samples_ok = false;
    }
    return r;
}

} // namespace ciqc
