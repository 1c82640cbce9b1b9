#include "doctest.h"

#include "ciqc/ci_geometry.hpp"
#include "ciqc/errors.hpp"

using namespace ciqc;

namespace {

// Euler characteristic from the generating function prod d * [x^n] (1+x)^{n+r+1} / prod (1 + d x).
Integer euler_oracle(int n, const std::vector<int>& d)
{
    const int r = static_cast<int>(d.size());
    std::vector<Integer> series(n + 1, 0);
    for (int j = 0; j <= n; ++j) series[j] = binomial(n + r + 1, j).get_num();
    for (int di : d) {
        // divide by (1 + di x)
        for (int j = 1; j <= n; ++j) series[j] -= di * series[j - 1];
    }
    Integer deg = 1;
    for (int di : d) deg *= di;
    return deg * series[n];
}

} // namespace

TEST_CASE("cubic fourfold")
{
    auto x = describe(4, {3});
    CHECK(x.a == 3);
    CHECK(x.ell == 6);
    CHECK(x.b == 27);
    CHECK(x.chi == 27);
    CHECK(x.m == 22);
    CHECK(x.monodromy == Monodromy::Orthogonal);
    CHECK(!x.exceptional);
    CHECK(x.label() == "X_4(3)");
}

TEST_CASE("quadric pair threefold")
{
    auto x = describe(3, {2, 2});
    CHECK(x.a == 2);
    CHECK(x.ell == 4);
    CHECK(x.b == 16);
    CHECK(x.monodromy == Monodromy::Symplectic);
    CHECK(x.m == 4);
}

TEST_CASE("exceptional cases")
{
    auto x = describe(4, {2, 2});
    CHECK(x.exceptional);
    CHECK(x.monodromy == Monodromy::WeylD);
    CHECK(x.m == 7);
    CHECK(!x.exceptional_case.empty());
    CHECK_THROWS_AS(require_reconstructible(x), DomainError);
    CHECK(describe(2, {3}).exceptional);
    CHECK_THROWS_AS(describe(0, {3}), DomainError);
    CHECK_THROWS_AS(describe(3, {1}), DomainError);
}

TEST_CASE("chern integrals of the cubic threefold")
{
    auto x = describe(3, {3});
    auto c = chern_integrals(x);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == -6);
    CHECK(c[1] == 12);
    CHECK(c[3] == 3);
    CHECK(c[0] == x.chi);
}

TEST_CASE("euler characteristics")
{
    for (int n = 3; n <= 12; ++n) {
        auto x = describe(n, {3});
        Integer closed = 0;
        mpz_pow_ui(closed.get_mpz_t(), Integer(2).get_mpz_t(), n + 2);
        if ((n + 2) % 2) closed = -closed;
        closed = (closed - 1) / 3 + n + 2;
        CHECK(x.chi == closed);
        CHECK(x.chi == euler_oracle(n, {3}));
        if (n % 2) CHECK(x.chi <= n + 1);
        Integer m = n % 2 ? Integer(n + 1 - x.chi) : Integer(x.chi - n - 1);
        CHECK(x.m == m);
    }
    for (auto d : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {4}, {5}, {2, 2, 2}}) {
        for (int n = 3; n <= 8; ++n) CHECK(describe(n, d).chi == euler_oracle(n, d));
    }
}

TEST_CASE("multidegree parsing")
{
    CHECK(parse_multidegree("3") == std::vector<int>{3});
    CHECK(parse_multidegree("3,2,2") == std::vector<int>{3, 2, 2});
    CHECK(describe(5, {3, 2}).d == std::vector<int>{2, 3});
    CHECK_THROWS_AS(parse_multidegree("3,,x"), ConfigError);
    CHECK(describe(7, {2, 2, 2}).a == 5);
}
