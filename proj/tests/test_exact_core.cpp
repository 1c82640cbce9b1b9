#include "doctest.h"

#include "ciqc/errors.hpp"
#include "ciqc/linalg.hpp"
#include "ciqc/trunc_series.hpp"

#include <random>

using namespace ciqc;

namespace {

TruncSeries random_series(std::mt19937& rng, int num_t, SeriesCaps caps, int terms)
{
    std::uniform_int_distribution<int> coef(-5, 5), expo(0, 2), sexp(0, caps.scap), qexp(0, 2);
    TruncSeries f(num_t, caps);
    for (int k = 0; k < terms; ++k) {
        Monomial m;
        m.t.assign(num_t, 0);
        for (int i = 0; i < num_t; ++i) m.t[i] = expo(rng);
        m.s = sexp(rng);
        if (f.admits(m)) f.add_term(m, QPoly::monomial(make_rational(coef(rng), 1 + qexp(rng)), qexp(rng), caps.qmax));
    }
    return f;
}

} // namespace

TEST_CASE("rational parsing and printing")
{
    CHECK(make_rational(6, -4) == make_rational(-3, 2));
    CHECK(to_string(make_rational(6, 4)) == "3/2");
    CHECK(to_string(make_rational(-8, 4)) == "-2");
    CHECK(parse_rational("-6/4") == make_rational(-3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("x"), ConfigError);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 4) == 0);
    CHECK(factorial(6) == 720);
    CHECK(pow(make_rational(2, 3), -2) == make_rational(9, 4));
}

TEST_CASE("qpoly truncation and parsing")
{
    auto a = QPoly::monomial(1, 2, 4), b = QPoly::monomial(1, 3, 4);
    CHECK((a * b).is_zero());
    CHECK((QPoly::monomial(1, 2) * QPoly::monomial(1, 3)).coeff(5) == 1);

    QPoly p;
    p.set_coeff(0, 1);
    p.set_coeff(1, make_rational(-9, 2));
    p.set_coeff(2, 27);
    CHECK(p.to_string() == "27*q^2 - 9/2*q + 1");
    CHECK(parse_qpoly(p.to_string()) == p);
    CHECK(parse_qpoly("0").is_zero());
    CHECK(parse_qpoly("-q^3 + q") == QPoly::monomial(-1, 3) + QPoly::monomial(1, 1));
    CHECK(p.at_one() == make_rational(47, 2));
    CHECK(p.q_derivative().coeff(2) == 54);

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-20, 20), e(0, 6);
    for (int trial = 0; trial < 50; ++trial) {
        QPoly r;
        for (int k = 0; k < 4; ++k) r.add_to(e(rng), make_rational(c(rng), 1 + e(rng)));
        CHECK(parse_qpoly(r.to_string()) == r);
    }
}

TEST_CASE("series truncation")
{
    SeriesCaps caps{2, 4, QPoly::kUntruncated};
    auto one = TruncSeries::constant(1, caps, 1);
    auto t = TruncSeries::t_var(1, caps, 0);
    auto prod = (one + t) * (one - t);
    auto expected = one - t * t;
    CHECK(prod == expected);
    CHECK((t * t * t).is_zero());

    // odd mode with m = 4 keeps s-powers below 2
    SeriesCaps odd{4, 1, QPoly::kUntruncated};
    auto s = TruncSeries::s_var(1, odd);
    CHECK((s * s).is_zero());
    CHECK((s * s * s).is_zero());

    auto other = TruncSeries::t_var(1, SeriesCaps{3, 4, QPoly::kUntruncated}, 0);
    CHECK_THROWS_AS(mul_truncated(t, other), ConfigError);
}

TEST_CASE("series ring axioms")
{
    std::mt19937 rng(11);
    SeriesCaps caps{3, 2, 3};
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_series(rng, 3, caps, 6), b = random_series(rng, 3, caps, 6), c = random_series(rng, 3, caps, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("series insertion order does not matter")
{
    SeriesCaps caps{3, 1, QPoly::kUntruncated};
    TruncSeries f(2, caps), g(2, caps);
    Monomial m1{{1, 0}, 0}, m2{{0, 2}, 1}, m3{{1, 1}, 0};
    f.add_term(m1, 2);
    f.add_term(m2, 3);
    f.add_term(m3, -1);
    g.add_term(m3, -1);
    g.add_term(m1, 2);
    g.add_term(m2, 3);
    CHECK(f == g);
    CHECK(f.to_string() == g.to_string());
    CHECK(f.d_t(1).coeff(Monomial{{0, 1}, 1}) == 6);
    CHECK(f.d_s().coeff(Monomial{{0, 2}, 0}) == 3);
}

TEST_CASE("linear solver")
{
    LinearSystem id{identity_rmatrix(3), {1, 2, 3}};
    auto sol = solve_linear(id);
    REQUIRE(sol.particular);
    CHECK(*sol.particular == RVector{1, 2, 3});
    CHECK(sol.kernel.empty());
    CHECK(sol.rank == 3);

    // chain conditions for n = 5
    LinearSystem chain_ii{{{2, 5, 2}, {0, 2, 3}}, {0, 0}};
    CHECK(solve_linear(chain_ii).kernel.size() == 1);
    LinearSystem chain_i{{{5, 2}, {2, 5}}, {0, 0}};
    CHECK(solve_linear(chain_i).kernel.empty());

    LinearSystem bad{{{1, 1}, {2, 2}}, {1, 3}};
    auto inc = solve_linear(bad);
    CHECK(!inc.particular);
    REQUIRE(inc.witness);
    CHECK(*inc.witness < 2);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        RMatrix a(3, RVector(4));
        RVector x(4);
        for (auto& row : a)
            for (auto& v : row) v = c(rng);
        for (auto& v : x) v = c(rng);
        LinearSystem sys{a, mul(a, x)};
        auto s = solve_linear(sys);
        REQUIRE(s.particular);
        CHECK(mul(a, *s.particular) == sys.rhs);
        for (auto& k : s.kernel) CHECK(mul(a, k) == RVector(3, 0));
        CHECK(s.rank + s.kernel.size() == 4);
    }
}

TEST_CASE("matrix inverses")
{
    RMatrix a{{2, 1}, {1, 1}};
    CHECK(mul(a, inverse(a)) == identity_rmatrix(2));
    CHECK_THROWS_AS(inverse(RMatrix{{1, 2}, {2, 4}}), DomainError);

    QMatrix q = identity_qmatrix(2, 3);
    q[0][1] = QPoly::monomial(1, 1, 3);
    q[1][0] = QPoly::monomial(2, 1, 3);
    CHECK(equal(truncated(mul(q, inverse(q, 3)), 3), identity_qmatrix(2, 3)));
}
