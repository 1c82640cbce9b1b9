#include "ciqc/sym_reduction.hpp"

#include "ciqc/errors.hpp"

#include <algorithm>

namespace ciqc {

namespace {

int clamp_valid(int v) { return std::min(v, kExact); }

int lowest_degree(const TruncSeries& f, int spow, int valid)
{
    int low = -1;
    for (const auto& [m, c] : f.terms()) {
        if (m.s != spow)
            continue;
        int d = m.tdeg();
        if (low < 0 || d < low)
            low = d;
    }
    if (low >= 0)
        return low;
    return valid >= kExact ? kExact : valid + 1;
}

// Validity after truncation at the series cap: nonzero or inexact parts cannot be trusted past the cap.
int cap_valid(const TruncSeries& f, int spow, int v)
{
    if (v < kExact)
        return std::min(v, f.caps().tdeg);
    for (const auto& [m, c] : f.terms())
        if (m.s == spow)
            return f.caps().tdeg;
    return v;
}

TrackedSeries exact_zero_like(const TruncSeries& f)
{
    return TrackedSeries{TruncSeries(f.num_t(), f.caps()), std::vector<int>(f.caps().scap + 1, kExact)};
}

} // namespace

TrackedSeries TrackedSeries::d_t(int i) const
{
    TrackedSeries r{f.d_t(i), valid};
    for (auto& v : r.valid)
        if (v < kExact)
            v -= 1;
    return r;
}

TrackedSeries TrackedSeries::d_s(bool vanishes_beyond_cap) const
{
    TrackedSeries r{f.d_s(), valid};
    const int cap = static_cast<int>(valid.size()) - 1;
    for (int k = 0; k < cap; ++k)
        r.valid[k] = valid[k + 1];
    r.valid[cap] = vanishes_beyond_cap ? kExact : -1;
    return r;
}

TrackedSeries TrackedSeries::times_s() const
{
    TrackedSeries r{f * TruncSeries::s_var(f.num_t(), f.caps()), valid};
    for (int k = static_cast<int>(valid.size()) - 1; k > 0; --k)
        r.valid[k] = valid[k - 1];
    r.valid[0] = kExact;
    return r;
}

TrackedSeries TrackedSeries::scaled(const QPoly& c) const { return TrackedSeries{f * c, valid}; }

TrackedSeries operator+(const TrackedSeries& a, const TrackedSeries& b)
{
    TrackedSeries r{a.f + b.f, a.valid};
    for (std::size_t k = 0; k < r.valid.size(); ++k)
        r.valid[k] = std::min(a.valid[k], b.valid[k]);
    return r;
}

TrackedSeries operator-(const TrackedSeries& a, const TrackedSeries& b)
{
    TrackedSeries r{a.f - b.f, a.valid};
    for (std::size_t k = 0; k < r.valid.size(); ++k)
        r.valid[k] = std::min(a.valid[k], b.valid[k]);
    return r;
}

TrackedSeries operator*(const TrackedSeries& a, const TrackedSeries& b)
{
    TrackedSeries r{a.f * b.f, std::vector<int>(a.valid.size(), kExact)};
    const int cap = static_cast<int>(a.valid.size()) - 1;
    for (int p = 0; p <= cap; ++p) {
        int v = kExact;
        for (int i = 0; i <= p; ++i) {
            int j = p - i;
            int la = lowest_degree(a.f, i, a.valid[i]);
            int lb = lowest_degree(b.f, j, b.valid[j]);
            int left = (a.valid[i] >= kExact || lb >= kExact) ? kExact : clamp_valid(a.valid[i] + lb);
            int right = (b.valid[j] >= kExact || la >= kExact) ? kExact : clamp_valid(b.valid[j] + la);
            if (la >= kExact && a.valid[i] >= kExact)
                continue; // exact zero factor
            if (lb >= kExact && b.valid[j] >= kExact)
                continue;
            v = std::min(v, std::min(left, right));
        }
        r.valid[p] = cap_valid(r.f, p, v);
    }
    return r;
}

TrackedSeries ReducedPotential::tracked() const
{
    TrackedSeries r{F, std::vector<int>(scap() + 1, -1)};
    for (int k = 0; k <= scap(); ++k)
        r.valid[k] = k < static_cast<int>(jet.size()) ? jet[k] : -1;
    return r;
}

TruncSeries ReducedPotential::f_k(int k) const
{
    return F.s_coefficient(k) * QPoly(Rational(factorial(k)));
}

SeriesCaps reduced_caps(const CIDescriptor& desc, int tdeg, int scap, int qmax)
{
    SeriesCaps caps{tdeg, scap, qmax};
    if (desc.n % 2 == 1) {
        Integer half = desc.m / 2;
        if (half < scap)
            caps.scap = static_cast<int>(half.get_si());
    }
    return caps;
}

ReducedPotential make_potential(const CIDescriptor& desc, Coordinates coords, const QMatrix& ginv, const QMatrix& to_t,
                                TruncSeries F, std::vector<int> jet)
{
    const int dim = desc.n + 1;
    if (F.num_t() != dim)
        throw ConfigError("potential must be a series in t^0..t^n");
    if (static_cast<int>(ginv.size()) != dim || static_cast<int>(to_t.size()) != dim)
        throw ConfigError("pairing or basis-change matrix has the wrong size");
    ReducedPotential pot;
    pot.n = desc.n;
    pot.m = desc.m;
    pot.a = desc.a;
    pot.parity = desc.n % 2 == 0 ? Parity::Even : Parity::Odd;
    pot.coords = coords;
    pot.ginv = ginv;
    pot.to_t = to_t;
    if (pot.parity == Parity::Odd) {
        Integer half = desc.m / 2;
        if (half < F.caps().scap) {
            SeriesCaps caps = F.caps();
            caps.scap = static_cast<int>(half.get_si());
            F = F.with_caps(caps);
        }
    }
    pot.F = std::move(F);
    jet.resize(pot.F.caps().scap + 1, -1);
    pot.jet = std::move(jet);
    return pot;
}

TruncSeries classical_cubic(const CIDescriptor& desc, SeriesCaps caps)
{
    const int n = desc.n, dim = n + 1;
    TruncSeries c(dim, caps);
    Rational w = Rational(desc.degree) / 6;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            int k = n - i - j;
            if (k < 0)
                continue;
            Monomial m{std::vector<int>(dim, 0), 0};
            m.t[i] += 1;
            m.t[j] += 1;
            m.t[k] += 1;
            c.add_term(m, QPoly(w));
        }
    return c;
}

TruncSeries ambient_potential(const QuantumRingData& ring, const AmbientFourPoint& amb, SeriesCaps caps,
                              Coordinates coords)
{
    const int n = ring.desc.n, dim = n + 1;
    caps.qmax = std::min(caps.qmax, ring.qmax);
    TruncSeries F(dim, caps);
    const int top = std::min(caps.tdeg, 4);

    // Lower-point invariants from the divisor equation: <H_1, ...>_d = d <...>_d.
    auto divide_by_degree = [&](const QPoly& p, int times) {
        QPoly r(Rational(0), caps.qmax);
        for (const auto& [d, c] : p.terms()) {
            if (d == 0)
                continue;
            r.add_to(d, c / pow(Rational(d), times));
        }
        return r;
    };

    auto add = [&](std::vector<int> idx, const QPoly& deriv) {
        Monomial m{std::vector<int>(dim, 0), 0};
        for (int i : idx)
            m.t[i] += 1;
        Integer sym = 1;
        for (int e : m.t)
            sym *= factorial(e);
        F.add_term(m, deriv * (Rational(1) / Rational(sym)));
    };

    if (top >= 0)
        add({}, divide_by_degree(amb.third(1, 1, 1), 3));
    for (int i = 0; i <= n && top >= 1; ++i)
        add({i}, divide_by_degree(amb.third(1, 1, i), 2));
    for (int i = 0; i <= n && top >= 2; ++i)
        for (int j = i; j <= n; ++j)
            add({i, j}, divide_by_degree(amb.third(1, i, j), 1));
    for (int i = 0; i <= n && top >= 3; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                add({i, j, k}, amb.third(i, j, k));
    for (int i = 0; i <= n && top >= 4; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                for (int l = k; l <= n; ++l)
                    add({i, j, k, l}, amb.fourth(i, j, k, l));

    if (coords == Coordinates::Tau)
        return F.linear_substitute(ring.powers);
    return F;
}

Rational pack_s(Parity parity, const std::vector<Rational>& values)
{
    Rational s = 0;
    if (parity == Parity::Even) {
        for (const auto& v : values)
            s += v * v / 2;
        return s;
    }
    if (values.size() % 2 != 0)
        throw DomainError("odd-dimensional primitive rank must be even");
    const std::size_t half = values.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
        s -= values[i] * values[i + half];
    return s;
}

Rational pack_s(const CIDescriptor& desc, const std::vector<Rational>& values)
{
    if (Integer(static_cast<long>(values.size())) != desc.m)
        throw DomainError("expected " + desc.m.get_str() + " primitive coordinates, got " +
                          std::to_string(values.size()));
    return pack_s(desc.n % 2 == 0 ? Parity::Even : Parity::Odd, values);
}

std::vector<std::pair<Monomial, QPoly>> Residual::violations() const
{
    std::vector<std::pair<Monomial, QPoly>> out;
    for (const auto& [m, c] : value.f.terms()) {
        if (m.s > max_spower || m.s >= static_cast<int>(value.valid.size()))
            continue;
        if (m.tdeg() <= value.valid[m.s])
            out.emplace_back(m, c);
    }
    return out;
}

bool WdvvResiduals::all_vanish() const
{
    for (const auto& r : ambient)
        if (!r.vanishes())
            return false;
    for (const auto& r : eq23)
        if (!r.vanishes())
            return false;
    return eq24.vanishes();
}

bool ExpandedResiduals::all_vanish() const
{
    for (const auto& r : eq23)
        if (!r.vanishes())
            return false;
    return eq24.vanishes();
}

namespace {

int max_spower(const ReducedPotential& pot)
{
    if (pot.parity == Parity::Odd) {
        Integer half = pot.m / 2;
        return static_cast<int>(std::min<long>(half.get_si() - 1, pot.scap()));
    }
    return pot.scap();
}

TrackedSeries contract(const std::vector<TrackedSeries>& left, const QMatrix& ginv, const std::vector<TrackedSeries>& right)
{
    TrackedSeries acc = exact_zero_like(left[0].f);
    for (std::size_t e = 0; e < left.size(); ++e)
        for (std::size_t f = 0; f < right.size(); ++f) {
            if (ginv[e][f].is_zero())
                continue;
            acc = acc + (left[e] * right[f]).scaled(ginv[e][f]);
        }
    return acc;
}

std::string pair_name(const char* base, int a, int b) { return std::string(base) + "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

} // namespace

WdvvResiduals wdvv_residuals(const ReducedPotential& pot, bool include_ambient)
{
    const int dim = pot.n + 1;
    const bool odd = pot.parity == Parity::Odd;
    const TrackedSeries X = pot.tracked();
    const TrackedSeries Fs = X.d_s(odd);
    const TrackedSeries Fss = Fs.d_s(odd);
    const int smax = max_spower(pot);

    std::vector<TrackedSeries> D1, Fsa;
    for (int i = 0; i < dim; ++i) {
        D1.push_back(X.d_t(i));
        Fsa.push_back(Fs.d_t(i));
    }
    std::vector<std::vector<TrackedSeries>> D2(dim), Fsab(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            D2[i].push_back(D1[i].d_t(j));
            Fsab[i].push_back(Fsa[i].d_t(j));
        }
    // G[a][b][f] = F_{abe} g^{ef}
    std::vector<std::vector<std::vector<TrackedSeries>>> G(dim, std::vector<std::vector<TrackedSeries>>(dim));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int f = 0; f < dim; ++f) {
                TrackedSeries acc = exact_zero_like(X.f);
                for (int e = 0; e < dim; ++e)
                    if (!pot.ginv[e][f].is_zero())
                        acc = acc + D2[a][b].d_t(e).scaled(pot.ginv[e][f]);
                G[a][b].push_back(acc);
            }

    WdvvResiduals out;
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) {
            TrackedSeries lhs = exact_zero_like(X.f);
            for (int f = 0; f < dim; ++f)
                lhs = lhs + G[a][b][f] * Fsa[f];
            lhs = lhs + (Fsab[a][b] * Fss).times_s().scaled(QPoly(2));
            out.eq23.push_back(Residual{pair_name("eq23", a, b), lhs - Fsa[a] * Fsa[b], smax});
        }
    TrackedSeries r24 = contract(Fsa, pot.ginv, Fsa) + (Fss * Fss).times_s().scaled(QPoly(2));
    out.eq24 = Residual{"eq24", r24, smax};

    if (include_ambient) {
        // s^0 part only: the ambient potential.
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int c = b + 1; c < dim; ++c)
                    for (int d = 0; d < dim; ++d) {
                        TrackedSeries r = exact_zero_like(X.f);
                        for (int f = 0; f < dim; ++f) {
                            r = r + G[a][b][f] * D2[c][d].d_t(f);
                            r = r - G[a][c][f] * D2[b][d].d_t(f);
                        }
                        out.ambient.push_back(Residual{"amb[" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                           std::to_string(c) + "," + std::to_string(d) + "]",
                                                       r, 0});
                    }
    }
    return out;
}

ExpandedResiduals expand_order_k(const ReducedPotential& pot, int order)
{
    if (order < 1)
        throw DomainError("expansion order must be at least 1");
    const int K = order - 1; // s-power
    if (pot.parity == Parity::Odd) {
        Integer half = pot.m / 2;
        if (Integer(K) >= half)
            throw DomainError("odd dimension: expanded equations hold only for s-powers below m/2 = " + half.get_str());
    }
    const int dim = pot.n + 1;
    const int need = K + 1;
    if (need > pot.scap())
        throw DomainError("missing F-jets: order " + std::to_string(order) + " needs F^(" + std::to_string(need) + ")");
    for (int j = 0; j <= need; ++j)
        if (j >= static_cast<int>(pot.jet.size()) || pot.jet[j] < 0)
            throw DomainError("missing F-jets: F^(" + std::to_string(j) + ") is not available");

    // Each F^(j) as an s-free tracked series.
    SeriesCaps caps = pot.F.caps();
    std::vector<TrackedSeries> Fj;
    for (int j = 0; j <= need; ++j) {
        TrackedSeries t{pot.f_k(j), std::vector<int>(caps.scap + 1, kExact)};
        t.valid[0] = pot.jet[j];
        Fj.push_back(t);
    }
    auto d = [&](int j, std::vector<int> idx) {
        TrackedSeries t = Fj[j];
        for (int i : idx)
            t = t.d_t(i);
        return t;
    };
    auto w = [](long x, long y) { return QPoly(Rational(1) / Rational(factorial(x) * factorial(y))); };
    auto g_contract = [&](int j1, std::vector<int> i1, int j2, std::vector<int> i2) {
        std::vector<TrackedSeries> L, R;
        for (int e = 0; e < dim; ++e) {
            auto a = i1;
            a.push_back(e);
            auto b = i2;
            b.push_back(e);
            L.push_back(d(j1, a));
            R.push_back(d(j2, b));
        }
        return contract(L, pot.ginv, R);
    };

    ExpandedResiduals out;
    out.order = order;
    out.eq23_origin.assign(dim, std::vector<QPoly>(dim));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            TrackedSeries r = exact_zero_like(pot.F);
            for (int j = 0; j <= K; ++j) {
                if (K == 1 && j == 1)
                    r = r - g_contract(1, {a}, 1, {b}).scaled(w(j, K - j));
                else
                    r = r + g_contract(j, {a, b}, K - j + 1, {}).scaled(w(j, K - j));
            }
            for (int j = 1; j <= K; ++j)
                r = r + (d(j, {a, b}) * Fj[K - j + 2]).scaled(QPoly(2) * w(j - 1, K - j));
            for (int j = 1; j <= K + 1; ++j)
                r = r - (d(j, {a}) * d(K - j + 2, {b})).scaled(w(j - 1, K - j + 1));
            out.eq23_origin[a][b] = r.valid[0] >= 0 ? r.f.constant_term() : QPoly(0);
            if (b >= a)
                out.eq23.push_back(Residual{pair_name("eq23", a, b), r, 0});
        }
    TrackedSeries r24 = exact_zero_like(pot.F);
    for (int j = 1; j <= K + 1; ++j)
        r24 = r24 + g_contract(j, {}, K + 2 - j, {}).scaled(w(j - 1, K + 1 - j));
    for (int j = 2; j <= K + 1; ++j)
        r24 = r24 + (Fj[j] * Fj[K + 3 - j]).scaled(QPoly(2) * w(j - 2, K + 1 - j));
    out.eq24 = Residual{"eq24", r24, 0};
    out.eq24_origin = r24.valid[0] >= 0 ? r24.f.constant_term() : QPoly(0);
    return out;
}

Residual euler_residual(const ReducedPotential& pot, const CIDescriptor& desc)
{
    const int n = pot.n, dim = n + 1;
    TrackedSeries X = pot.tracked();
    if (pot.coords != Coordinates::T)
        X.f = X.f.linear_substitute(pot.to_t);
    TruncSeries lin(dim, X.f.caps());
    for (const auto& [m, c] : X.f.terms()) {
        long w = static_cast<long>(2 - n) * m.s - (3 - n);
        for (int i = 0; i < dim; ++i)
            w += static_cast<long>(1 - i) * m.t[i];
        if (w != 0)
            lin.add_term(m, c * Rational(w));
    }
    TrackedSeries r{lin, X.valid};
    r = r + X.d_t(1).scaled(QPoly(pot.a));
    TrackedSeries c1{classical_cubic(desc, X.f.caps()).d_t(1), std::vector<int>(X.valid.size(), kExact)};
    r = r - c1.scaled(QPoly(pot.a));
    return Residual{"euler", r, max_spower(pot)};
}

EulerFilter euler_filter(const CIDescriptor& desc, int k)
{
    EulerFilter f;
    f.beta = Rational(static_cast<long>(k) * (desc.n - 2) - (desc.n - 3), desc.a);
    f.beta.canonicalize();
    f.admissible = is_integer(f.beta) && f.beta >= 0;
    return f;
}

std::vector<ZSeries> ambient_j_jets(const QuantumRingData& ring, const ZJet& small, SeriesCaps caps, int zmax)
{
    const int n = ring.desc.n, dim = n + 1;
    caps.qmax = std::min(caps.qmax, ring.qmax);
    std::vector<ZSeries> out(dim);
    for (int a = 0; a < dim; ++a) {
        ZSeries& J = out[a];
        auto slot = [&](int zp) -> TruncSeries& { return J.try_emplace(zp, dim, caps).first->second; };
        // g_{ac} t^c
        int c = n - a;
        slot(0) += TruncSeries::t_var(dim, caps, c) * QPoly(Rational(ring.desc.degree));
        for (int k = 0; k < zmax; ++k) {
            QPoly one(Rational(0), caps.qmax);
            for (int d = 1; d <= caps.qmax; ++d)
                one.add_to(d, one_point_descendant(ring.desc, small, k, a, d));
            slot(-k - 1) += TruncSeries::constant(dim, caps, one);
            if (caps.tdeg < 1)
                continue;
            for (int cc = 0; cc < dim; ++cc) {
                QPoly two(Rational(0), caps.qmax);
                for (int d = 1; d <= caps.qmax; ++d)
                    two.add_to(d, two_point_descendant(ring, a, k, cc, d));
                slot(-k - 1) += TruncSeries::t_var(dim, caps, cc) * two;
            }
        }
    }
    return out;
}

JRecursion j_recursion(const ReducedPotential& pot, const std::vector<ZSeries>& ambient_j0, const std::vector<int>& j0_valid,
                       int kmax, int zmax)
{
    if (pot.coords != Coordinates::T)
        throw ConfigError("J reconstruction works in t-coordinates");
    const int dim = pot.n + 1;
    if (static_cast<int>(ambient_j0.size()) != dim || static_cast<int>(j0_valid.size()) != dim)
        throw ConfigError("ambient J-jets must cover a = 0..n");
    for (int j = 1; j <= kmax + 1; ++j)
        if (j >= static_cast<int>(pot.jet.size()) || pot.jet[j] < 0)
            throw DomainError("missing F-jets: F^(" + std::to_string(j) + ") is needed");

    const SeriesCaps caps = pot.F.caps();
    std::vector<TruncSeries> Fj;
    for (int j = 0; j <= kmax + 1; ++j)
        Fj.push_back(pot.f_k(j).with_caps(SeriesCaps{caps.tdeg, 0, caps.qmax}));
    const SeriesCaps flat{caps.tdeg, 0, caps.qmax};

    auto flatten = [&](const ZSeries& z) {
        ZSeries r;
        for (const auto& [zp, s] : z)
            if (zp >= -zmax)
                r.emplace(zp, s.with_caps(flat));
        return r;
    };
    auto accumulate = [&](ZSeries& into, int zp, const TruncSeries& s) {
        if (zp < -zmax || s.is_zero())
            return;
        auto [it, inserted] = into.try_emplace(zp, s);
        if (!inserted)
            it->second += s;
    };

    JRecursion out;
    out.ambient.push_back({});
    out.valid.push_back(j0_valid);
    for (int a = 0; a < dim; ++a)
        out.ambient[0].push_back(flatten(ambient_j0[a]));

    for (int k = 0; k < kmax; ++k) {
        std::vector<ZSeries> next(dim);
        std::vector<int> vnext(dim, kExact);
        for (int a = 0; a < dim; ++a) {
            int v = kExact;
            for (int i = 0; i <= k; ++i) {
                QPoly w(binomial(k, i));
                const ZSeries& prev = out.ambient[k - i][a];
                int vprev = out.valid[k - i][a];
                for (int b = 0; b < dim; ++b) {
                    TruncSeries Fb = Fj[i + 1].d_t(b);
                    for (int c = 0; c < dim; ++c) {
                        if (pot.ginv[b][c].is_zero())
                            continue;
                        for (const auto& [zp, s] : prev)
                            accumulate(next[a], zp - 1, Fb * s.d_t(c) * (pot.ginv[b][c] * w));
                    }
                }
                v = std::min({v, pot.jet[i + 1] - 1, vprev - 1});
            }
            for (int i = 0; i + 1 <= k; ++i) {
                QPoly w(Rational(2 * k) * binomial(k - 1, i));
                const ZSeries& prev = out.ambient[k - i][a];
                for (const auto& [zp, s] : prev)
                    accumulate(next[a], zp - 1, Fj[i + 2] * s * w);
                v = std::min({v, pot.jet[i + 2], out.valid[k - i][a]});
            }
            vnext[a] = v;
        }
        out.ambient.push_back(std::move(next));
        out.valid.push_back(std::move(vnext));
    }

    // tilde J = exp(F_s / z)
    TruncSeries Fs = pot.F.d_s();
    TruncSeries power = TruncSeries::constant(dim, caps, QPoly(1));
    for (int k = 0; k <= zmax; ++k) {
        if (k > 0)
            power = power * Fs;
        out.primitive.emplace(-k, power * QPoly(Rational(1) / Rational(factorial(k))));
    }
    return out;
}

std::vector<Rational> primitive_two_point(const Rational& f1_origin_coeff, int kmax)
{
    // (k+1) X_k = F^(1)(0) X_{k-1}, X_0 = F^(1)(0)
    std::vector<Rational> x;
    Rational cur = f1_origin_coeff;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0)
            cur = f1_origin_coeff * cur / (k + 1);
        x.push_back(cur);
    }
    return x;
}

} // namespace ciqc
