#include "doctest.h"

#include "ciqc/errors.hpp"
#include "ciqc/reconstruction.hpp"

using namespace ciqc;

namespace {

QuantumRingData ring_for(int n, std::vector<int> d)
{
    auto desc = describe(n, std::move(d));
    return build_ring(desc, default_qmax(desc));
}

TruncSeries jet(int num_t, SeriesCaps caps, const std::vector<std::pair<std::vector<int>, QPoly>>& terms)
{
    TruncSeries f(num_t, caps);
    for (const auto& [t, c] : terms) f.add_term(Monomial{t, 0}, c);
    return f;
}

QPoly q(long c, int e) { return QPoly::monomial(c, e); }

} // namespace

TEST_CASE("gamma of the cubic fourfold")
{
    auto ring = ring_for(4, {3});
    QVector unit(5, QPoly());
    unit[0] = 1;
    std::vector<QVector> pw{unit};
    for (int i = 1; i <= 4; ++i) pw.push_back(mul(ring.multH, pw.back()));
    auto gamma = gamma_vector(ring);
    for (int i = 0; i <= 4; ++i) {
        QPoly expected = (pw[4][i] - q(27, 1) * pw[1][i]) * make_rational(1, 3);
        CHECK(gamma[i] == expected.truncated(ring.qmax));
    }
    for (const auto& x : quantum_product(ring, gamma, gamma)) CHECK(x.truncated(ring.qmax).is_zero());
    CHECK(classical_pairing(ring, gamma, unit) == QPoly(1));
}

TEST_CASE("gamma does not depend on the order of degrees")
{
    auto a = gamma_vector(build_ring(describe(5, {3, 2}), 3));
    auto b = gamma_vector(build_ring(describe(5, {2, 3}), 3));
    CHECK(a == b);
}

TEST_CASE("artin algebra isomorphism")
{
    auto r = artin_iso(4, 2, 27);
    CHECK(r.eps_nilpotent);
    CHECK(r.phi_formula_holds);
    CHECK(r.eps == std::vector<Rational>{0, -27, 0, 0, 1});
    CHECK(r.semisimple_part_squarefree);
    CHECK(r.semisimple_rank == 3);
    for (auto [n, k] : {std::pair{5, 3}, {6, 2}, {6, 4}}) {
        auto x = artin_iso(n, k, 27);
        CHECK(x.eps_nilpotent);
        CHECK(x.phi_formula_holds);
    }
    auto one = artin_iso(4, 1, 27);
    CHECK(one.semisimple_rank == 4);
    CHECK(one.semisimple_part_squarefree);
    CHECK_THROWS_AS(artin_iso(4, 2, 0), DomainError);
}

TEST_CASE("F1 jets")
{
    auto ring = ring_for(4, {3});
    auto f1 = f1_series(ring);
    auto caps = f1.t.caps();
    auto expected = jet(5, caps,
                        {{{1, 0, 0, 0, 0}, 1},
                         {{0, 0, 0, 1, 0}, q(-6, 1)},
                         {{0, 0, 2, 0, 0}, q(-3, 1)},
                         {{0, 1, 0, 1, 0}, q(-6, 1)},
                         {{0, 0, 0, 1, 1}, q(-36, 2)}});
    CHECK(f1.t == expected);
    CHECK(f1.t.d_t(0).constant_term() == QPoly(1));
    CHECK(f1_closed_form(ring, caps) == f1.tau);

    auto pair = ring_for(3, {2, 2});
    auto g1 = f1_series(pair);
    auto pexp = jet(4, g1.t.caps(),
                    {{{1, 0, 0, 0}, 1}, {{0, 0, 1, 0}, q(-4, 1)}, {{0, 1, 1, 0}, q(-4, 1)}, {{0, 0, 1, 1}, q(-16, 2)}});
    CHECK(g1.t == pexp);
}

TEST_CASE("F2 at the origin")
{
    for (int n = 3; n <= 6; ++n) {
        auto o = f2_at_zero(ring_for(n, {3}));
        CHECK(o.roots == std::vector<Rational>{1, 4});
        CHECK(o.quadratic == std::vector<Rational>{4, -5, 1});
    }
    for (int n : {3, 5, 7}) CHECK(f2_at_zero(ring_for(n, {2, 2})).roots == std::vector<Rational>{1});
    auto x = f2_at_zero(ring_for(5, {2, 3}));
    CHECK(!x.integral);
    CHECK(x.roots == std::vector<Rational>{0});
}

TEST_CASE("F2 gradients")
{
    auto ring = ring_for(4, {3});
    auto one = f2_gradient(ring, 1);
    CHECK(one.t == QVector{0, q(1, 1), 0, 0, q(3, 2)});
    auto four = f2_gradient(ring, 4);
    CHECK(four.t == QVector{0, q(4, 1), 0, 0, q(-24, 2)});
    CHECK_THROWS_AS(f2_gradient(ring, 2), DomainError);

    auto ci = ring_for(7, {2, 2, 2});
    CHECK(ci.desc.a == 5);
    auto g = f2_gradient(ci, 0);
    auto closed = f2_gradient_closed_form(ci);
    for (int b = 0; b <= 7; ++b) {
        if (b >= 2 && ((b - (2 - 7)) % 5 + 5) % 5 == 0)
            CHECK(g.tau[b] == closed[b]);
        else
            CHECK(g.tau[b].is_zero());
    }
}

TEST_CASE("eigen solver")
{
    auto desc = describe(4, {3});
    auto ring = build_ring(desc, q1_qmax(desc));
    auto origin = frobenius_origin(ring);
    auto f1 = f1_series(ring);
    auto f0 = f0_derivs(ring);
    for (int c = 0; c <= 4; ++c) {
        RMatrix rhs(5, RVector(5));
        for (int x = 0; x <= 4; ++x)
            for (int y = 0; y <= 4; ++y) rhs[x][y] = -f0.contracted_fourth[x][y][c].at_one();
        auto sol = eigen_solve(origin, rhs, f1_hessian_euler_input(ring, c));
        REQUIRE(sol.status == SolveStatus::Solved);
        for (int i = 0; i <= 4; ++i) CHECK(sol.x[i] == f1.hessian_tau_q1[i][c]);
    }
    RMatrix zero(5, RVector(5));
    auto homog = eigen_solve(origin, zero, EulerInput{f1_hessian_euler_input(ring, 2).coeffs, 0});
    REQUIRE(homog.status == SolveStatus::Solved);
    CHECK(homog.x == RVector(5, 0));
    CHECK(eigen_solve(origin, zero, std::nullopt).status == SolveStatus::NeedsEulerInput);
}

TEST_CASE("higher-k coefficients")
{
    for (int n = 3; n <= 6; ++n) {
        auto r = higher_k_coeffs(ring_for(n, {3}), 6);
        for (const auto& e : r.entries) {
            CHECK(e.target == e.k + 1);
            CHECK(e.coefficient == make_rational(9 * (e.k - 1), n - 1) - 3 * e.k);
            CHECK(e.determined == (e.coefficient != 0));
            CHECK(e.beta == euler_filter(describe(n, {3}), e.k + 1).beta);
        }
        if (n == 3) {
            REQUIRE(r.unknown_target);
            CHECK(*r.unknown_target == 4);
        } else {
            CHECK(!r.unknown_target);
        }
    }
    auto c4 = higher_k_coeffs(ring_for(4, {3}), 2);
    CHECK(c4.entries.front().coefficient == -3);
    for (int n : {3, 5, 7}) {
        auto r = higher_k_coeffs(ring_for(n, {2, 2}), 5);
        for (const auto& e : r.entries) {
            CHECK(e.coefficient == make_rational(4 * (e.k - 1), n - 1));
            CHECK(e.determined);
        }
    }
    CHECK_THROWS_AS(higher_k_coeffs(ring_for(4, {4}), 4), DomainError);
}

TEST_CASE("order-2 expansion at the origin for each root")
{
    for (Rational phi : {Rational(1), Rational(4)}) {
        auto pot = reconstructed_potential(ring_for(4, {3}), Coordinates::T, phi);
        auto e = expand_order_k(pot, 2);
        CHECK(e.eq24_origin.is_zero());
        CHECK(e.all_vanish());
    }
}
