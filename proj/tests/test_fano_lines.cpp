#include "doctest.h"

#include "ciqc/ci_geometry.hpp"
#include "ciqc/fano_lines.hpp"

#include <random>

using namespace ciqc;

namespace {

// Symmetric polynomials in two variables: exponent pair -> coefficient.
using Poly2 = std::map<std::pair<int, int>, Rational>;

Poly2 schur(int l0, int l1)
{
    Poly2 p;
    for (int i = 0; i <= l0 - l1; ++i) p[{l1 + i, l1 + l0 - l1 - i}] += 1;
    return p;
}

Poly2 times(const Poly2& a, const Poly2& b)
{
    Poly2 r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

Poly2 to_poly(const SchubertVector& v)
{
    Poly2 p;
    for (const auto& [lam, c] : v.terms())
        for (const auto& [e, x] : schur(lam.l0, lam.l1)) p[e] += c * x;
    std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
    return p;
}

// Peel off leading monomials x^i y^j, i >= j, then kill partitions outside the box.
SchubertVector from_poly(int n, Poly2 p)
{
    SchubertVector out(n);
    while (!p.empty()) {
        auto lead = p.rbegin()->first;
        Rational c = p.rbegin()->second;
        REQUIRE(lead.first >= lead.second);
        out.add(lead.first, lead.second, c);
        for (const auto& [e, x] : schur(lead.first, lead.second)) p[e] -= c * x;
        std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
    }
    return out;
}

SchubertVector random_vector(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<int> part(0, n), coef(-3, 3);
    SchubertVector v(n);
    for (int k = 0; k < 3; ++k) {
        int a = part(rng), b = part(rng);
        if (a < b) std::swap(a, b);
        v.add(a, b, coef(rng));
    }
    return v;
}

} // namespace

TEST_CASE("pieri")
{
    auto v = pieri_sigma1(SchubertVector::basis(4, 1, 0));
    CHECK(v.coeff(2, 0) == 1);
    CHECK(v.coeff(1, 1) == 1);
    CHECK(v.terms().size() == 2);
    CHECK(pieri_sigma1(SchubertVector::basis(2, 2, 2)).is_zero());
    CHECK(SchubertVector::basis(3, 4, 0).is_zero());

    auto s1 = SchubertVector::sigma(2, 1);
    CHECK((schubert_product(schubert_product(s1, s1), schubert_product(s1, s1))).integral() == 2);
}

TEST_CASE("products agree with two-variable Schur functions")
{
    std::mt19937 rng(17);
    for (int n : {3, 4, 6}) {
        for (int trial = 0; trial < 25; ++trial) {
            auto u = random_vector(rng, n), v = random_vector(rng, n), w = random_vector(rng, n);
            auto uv = schubert_product(u, v);
            CHECK(uv == from_poly(n, times(to_poly(u), to_poly(v))));
            CHECK(uv == schubert_product(v, u));
            CHECK(schubert_product(uv, w) == schubert_product(u, schubert_product(v, w)));
            CHECK(pieri_sigma1(uv) == schubert_product(pieri_sigma1(u), v));
            CHECK(pieri_sigma2(u) == schubert_product(SchubertVector::sigma(n, 2), u));
        }
    }
}

TEST_CASE("duality")
{
    for (int n = 2; n <= 6; ++n)
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= a; ++b)
                for (int c = 0; c <= n; ++c)
                    for (int d = 0; d <= c; ++d) {
                        Rational x = schubert_product(SchubertVector::basis(n, a, b), SchubertVector::basis(n, c, d)).integral();
                        CHECK(x == (c == n - b && d == n - a ? 1 : 0));
                    }
}

TEST_CASE("quartic class rows")
{
    const int n = 12;
    auto quartic = fano_quartic(n);
    auto zero = schubert_product(SchubertVector::basis(n, 0, 0), quartic);
    SchubertVector expected0(n);
    expected0.add(3, 1, 2);
    expected0.add(2, 2, 3);
    CHECK(zero == expected0);
    for (int k1 = 2; k1 + 3 <= n; ++k1)
        for (int k2 = 0; k2 + 2 <= k1; ++k2) {
            SchubertVector e(n);
            e.add(k1 + 3, k2 + 1, 2);
            e.add(k1 + 2, k2 + 2, 5);
            e.add(k1 + 1, k2 + 3, 2);
            CHECK(schubert_product(SchubertVector::basis(n, k1, k2), quartic) == e);
        }
    SchubertVector nine(3);
    nine.add(3, 1, 18);
    nine.add(2, 2, 27);
    CHECK(fano_class(3) == nine);
    for (int m = 3; m <= 8; ++m) {
        auto s1 = schur(1, 0), s2 = schur(2, 0);
        auto s11 = times(s1, s1);
        Poly2 q = times(s11, s11);
        for (auto& [e, c] : q) c *= 3;
        for (const auto& [e, c] : times(s11, s2)) q[e] -= 4 * c;
        for (const auto& [e, c] : times(s2, s2)) q[e] += c;
        std::erase_if(q, [](const auto& kv) { return kv.second == 0; });
        CHECK(fano_quartic(m) == from_poly(m, q));
    }
}

TEST_CASE("primitive square class")
{
    auto p5 = prim_square_class(5);
    CHECK(p5.z == std::vector<Rational>{make_rational(20, 3), make_rational(-8, 3)});
    CHECK(p5.kernel_dim == 1);
    auto p4 = prim_square_class(4);
    CHECK(p4.z == std::vector<Rational>{-4, make_rational(8, 3)});
    auto p3 = prim_square_class(3);
    CHECK(p3.z == std::vector<Rational>{make_rational(4, 3)});
    CHECK(45 * p3.z[0] == 60);
    for (int n = 3; n <= 12; ++n) {
        auto p = prim_square_class(n);
        REQUIRE(p.z.size() == static_cast<std::size_t>(n / 2));
        for (int k = 0; k < n / 2; ++k)
            CHECK(p.z[k] == (pow(Rational(-2), n + 1 - k) - pow(Rational(-2), k + 2)) / 9);
    }
}

TEST_CASE("omega identities")
{
    const std::map<int, long> quartic{{3, 80}, {4, 528}, {5, 1680}};
    for (int n = 3; n <= 12; ++n) {
        auto r = omega_checks(n);
        Integer chi = describe(n, {3}).chi;
        Rational e = Rational(chi - n);
        CHECK(r.quartic == e * e - 1);
        CHECK(r.quartic_short == r.quartic);
        CHECK(r.sigma_integral == pow(Rational(-2), n + 3) - 4);
        CHECK(r.sigma_integral == -6 * Rational(chi - n - 1));
        CHECK(r.annihilated);
        CHECK(r.f2 == 1);
        CHECK(r.ok());
        CHECK(r.m_form_matches == (n % 2 == 0));
        if (auto it = quartic.find(n); it != quartic.end()) CHECK(r.quartic == it->second);
    }
}

TEST_CASE("rank estimates")
{
    auto r5 = rank_estimates(5);
    CHECK(r5.kernel_dim[3] == 0);
    CHECK(r5.kernel_dim[4] == 1);
    for (int i = 0; i <= 3; ++i) CHECK(r5.kernel_dim[i] == 0);

    auto r4 = rank_estimates(4);
    std::vector<long> fano{1, 0, 23, 0, 276, 0, 23, 0, 1};
    REQUIRE(r4.betti.size() == fano.size());
    for (std::size_t k = 0; k < fano.size(); ++k) CHECK(r4.betti[k].fano == fano[k]);
    CHECK(r4.sym2 == 253);
    CHECK(r4.betti[4].fano - r4.betti[4].grassmannian == 22 + r4.sym2 - 1);
}

TEST_CASE("Hilbert square of a K3 surface")
{
    auto r = hilb2_check(1);
    CHECK(r.all_delta == 12);
    CHECK(r.sigma_pair == -12);
    CHECK(r.sigma_square == 6);
    CHECK(r.primitive_rank == 22);
    CHECK(r.lhs_contraction == r.rhs_contraction);
    CHECK(r.f2 == 1);
    CHECK(r.samples_ok);
    CHECK(hilb2_check(99).samples_ok);
}
