#include "doctest.h"

#include "ciqc/ci_geometry.hpp"
#include "ciqc/errors.hpp"
#include "ciqc/genus_one.hpp"
#include "ciqc/small_qh.hpp"

using namespace ciqc;

TEST_CASE("degree-one two-point invariants")
{
    for (int n = 3; n <= 8; ++n) {
        auto desc = describe(n, {3});
        auto ring = build_ring(desc, 1);
        CHECK(two_point_g0(n, n, n - 2) == 18);
        CHECK(two_point_g0(n, n - 1, n - 1) == 45);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                if (2 * n - 2 - i - j < 0) continue;
                CHECK(two_point_g0(n, i, j) == two_point_g0_closed(n, i, j));
                CHECK(two_point_g0(n, i, j) == two_point_descendant(ring, i, 2 * n - 2 - i - j, j, 1));
            }
    }
    CHECK(two_point_g0(4, 2, 2) == two_point_g0_closed(4, 2, 2));
}

TEST_CASE("genus-one point invariant")
{
    CHECK(hn_11(3).value == 0);
    CHECK(hn_11(4).value == make_rational(-9, 4));
    CHECK(hn_11(3).residue_sum == 18);
    for (int n = 3; n <= 12; ++n) {
        auto r = hn_11(n);
        Rational p = pow(Rational(-2), n + 2);
        CHECK(r.value == (-p - 9 * n * n - 3 * n + 58) / 72);
        Rational sign = n % 2 ? -1 : 1;
        CHECK(r.residue_sum == make_rational(2, 3) * (sign * pow(Rational(2), n + 1) + 1) + 3 * n * n + n - 2);
        CHECK(r.psi_point == 18);
    }
}

TEST_CASE("F2(0) from genus one")
{
    auto g3 = describe(3, {3});
    auto r3 = f2_from_genus1(3);
    CHECK(r3.h10 == make_rational(-1, 2));
    CHECK(r3.h10 == -Rational(chern_integrals(g3)[1]) / 24);
    for (int n = 3; n <= 7; ++n) {
        auto r = f2_from_genus1(n);
        CHECK(r.f2 == 1);
        CHECK(r.roots == std::vector<Rational>{1, 4});
        CHECK(!r.experimental);
    }
    for (int n : {3, 5, 7}) {
        auto r = f2_from_genus1(n, {2, 2});
        CHECK(r.experimental);
        CHECK(r.f2 == 1);
    }
    CHECK_THROWS_AS(f2_from_genus1(4, {2, 2}), DomainError);
}
