#include "ciqc/genus_one.hpp"

#include "ciqc/errors.hpp"
#include "ciqc/reconstruction.hpp"
#include "ciqc/small_qh.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ciqc {

namespace {

struct Seeds {
    Rational top, mid, bottom; // (n, n-2), (n-1, n-1), (n-2, n)
};

Seeds cubic_seeds(int n)
{
    static std::mutex mu;
    static std::map<int, Seeds> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end())
        return it->second;
    CIDescriptor desc = describe(n, {3});
    QuantumRingData ring = build_ring(desc, default_qmax(desc));
    Seeds s{two_point_descendant(ring, n, 0, n - 2, 1), two_point_descendant(ring, n - 1, 0, n - 1, 1),
            two_point_descendant(ring, n - 2, 0, n, 1)};
    return cache.emplace(n, s).first->second;
}

void check_indices(int n, int i, int j)
{
    if (n < 3)
        throw DomainError("two-point correlators need n >= 3");
    if (i < 0 || j < 0 || i > n || j > n || i + j > 2 * n - 2)
        throw DomainError("two-point indices out of range");
}

Rational binom0(long x, long k) { return k < 0 ? Rational(0) : binomial(x, k); }

} // namespace

Rational two_point_g0(int n, int i, int j)
{
    check_indices(n, i, j);
    const Seeds seeds = cubic_seeds(n);
    std::map<std::pair<int, int>, Rational> memo;
    auto rec = [&](auto&& self, int x, int y) -> Rational {
        if (x > n || y > n)
            return 0;
        if (x + y == 2 * n - 2) {
            if (x == n)
                return seeds.top;
            if (y == n)
                return seeds.bottom;
            return seeds.mid;
        }
        auto key = std::make_pair(x, y);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        // divisor equation then TRR
        Rational v = self(self, x, y + 1) - self(self, x + 1, y);
        memo.emplace(key, v);
        return v;
    };
    return rec(rec, i, j);
}

Rational two_point_g0_closed(int n, int i, int j)
{
    check_indices(n, i, j);
    const long e = 2L * n - 2 - i - j;
    auto sign = [](long p) { return p % 2 == 0 ? 1 : -1; };
    return sign(n - i) * binom0(e, n - i) * 18 + sign(n - 1 - i) * binom0(e, n - 1 - i) * 45 +
           sign(n - i) * binom0(e, n - j) * 18;
}

Hn11Report hn_11(int n)
{
    if (n < 3)
        throw DomainError("hn_11 needs n >= 3");
    CIDescriptor desc = describe(n, {3});
    std::vector<Rational> c = chern_class_coefficients(desc);
    Hn11Report r;
    r.n = n;
    for (int p = 0; p <= n - 2; ++p)
        r.residue_sum += c.at(n - 2 - p) * two_point_g0(n, n - 2 - p, n);
    r.residue_closed = make_rational(2, 3) * (pow(Rational(-1), n) * pow(Rational(2), n + 1) + 1) +
                       Rational(3 * n * n + n - 2);
    ZJet j = small_j(desc, 1, n);
    r.psi_point = one_point_descendant(desc, j, n - 3, n, 1);
    r.value = (r.psi_point - r.residue_sum) / 24;
    r.closed = (-pow(Rational(-2), n + 2) - Rational(9 * n * n + 3 * n - 58)) / 72;
    if (r.residue_sum != r.residue_closed)
        throw VerificationError("residue sum " + to_string(r.residue_sum) + " != " + to_string(r.residue_closed));
    if (r.value != r.closed)
        throw VerificationError("<H_n>_{1,1} " + to_string(r.value) + " != " + to_string(r.closed));
    return r;
}

GenusOneReport f2_from_genus1(int n, const std::vector<int>& d)
{
    CIDescriptor desc = describe(n, d);
    if (!desc.is_cubic() && !desc.is_quadric_pair())
        throw DomainError("genus-one route is available for d = (3) and (2,2) only");
    if (desc.is_quadric_pair() && n % 2 == 0)
        throw DomainError("genus-one route for X(2,2) needs odd n");
    require_reconstructible(desc);

    GenusOneReport r;
    r.n = n;
    r.d = desc.d;
    r.chi = desc.chi;
    r.experimental = desc.is_quadric_pair();

    QuantumRingData ring = build_ring(desc, default_qmax(desc));
    const Rational deg(desc.degree);
    std::vector<Rational> c = chern_class_coefficients(desc);
    ZJet j = small_j(desc, 1, n);
    r.psi_point = one_point_descendant(desc, j, n - 3, n, 1);
    Rational residue = 0;
    for (int p = 0; p <= n - 2; ++p)
        residue += c.at(n - 2 - p) * two_point_descendant(ring, n - 2 - p, p, n, 1);
    r.hn11 = (r.psi_point - residue) / 24;
    r.h10 = Rational(-chern_integrals(desc).at(1)) / 24;
    r.psi11 = r.psi_point / (12 * deg);

    F1Jet f1 = f1_series(ring);
    auto jet_coeff = [&](std::vector<int> t) { return f1.t.coeff(Monomial{std::move(t), 0}).coeff(1); };
    std::vector<int> lin(n + 1, 0);
    lin[n - 1] = 1;
    r.f1_linear = jet_coeff(lin);
    for (int i = 1; i <= n - 1; ++i) {
        std::vector<int> t(n + 1, 0);
        ++t[i];
        ++t[n - i];
        r.f1_trace += (i == n - i ? 2 : 1) * jet_coeff(t);
    }

    // g^{bc}-contracted TRR; the trace of the primitive pairing is chi - n - 1 in both parities
    const Rational sd(desc.chi - n - 1);
    Rational lhs = sd * r.psi11;
    Rational known = r.h10 * sd * r.f1_linear / deg + sd * r.hn11 / deg + sd * r.f1_trace / (24 * deg);
    Rational coeff = (sd * sd + 2 * sd) / 24;
    if (coeff == 0)
        throw VerificationError(desc.label() + ": genus-one equation does not involve F^(2)(0)");
    r.f2 = (lhs - known) / coeff;

    F2Origin origin = f2_at_zero(ring, f1);
    r.roots = origin.roots;
    if (std::find(r.roots.begin(), r.roots.end(), r.f2) == r.roots.end()) {
        std::string roots;
        for (const auto& x : r.roots)
            roots += (roots.empty() ? "" : ", ") + to_string(x);
        throw VerificationError(desc.label() + ": genus-one value " + to_string(r.f2) + " not among roots {" + roots +
                                "}");
    }
    return r;
}

} // namespace ciqc
