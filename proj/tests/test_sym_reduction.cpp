#include "doctest.h"

#include "ciqc/errors.hpp"
#include "ciqc/reconstruction.hpp"
#include "ciqc/sym_reduction.hpp"

using namespace ciqc;

namespace {

QuantumRingData ring_for(int n, std::vector<int> d)
{
    auto desc = describe(n, std::move(d));
    return build_ring(desc, default_qmax(desc));
}

bool all_zero(const std::vector<std::vector<QPoly>>& m)
{
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("s packing")
{
    CHECK(pack_s(Parity::Even, {1, 1, 1}) == make_rational(3, 2));
    CHECK(pack_s(Parity::Odd, {1, 1}) == -1);
    CHECK(pack_s(Parity::Odd, {2, 3, 5, 7}) == -(2 * 5 + 3 * 7));
    CHECK(pack_s(describe(4, {3}), std::vector<Rational>(22, 1)) == 11);
}

TEST_CASE("classical potential solves the reduced system")
{
    auto desc = describe(4, {3});
    auto ring = build_ring(desc, default_qmax(desc));
    auto caps = reduced_caps(desc, 4, 2, ring.qmax);
    auto pot = make_potential(desc, Coordinates::T, inverse(ring.g_classical, ring.qmax), ring.powers_inv,
                              classical_cubic(desc, caps), {kExact, kExact, kExact});
    CHECK(wdvv_residuals(pot).all_vanish());
}

TEST_CASE("reconstructed potential of the cubic fourfold")
{
    auto ring = ring_for(4, {3});
    auto pot = reconstructed_potential(ring, Coordinates::T);
    CHECK(wdvv_residuals(pot).all_vanish());
    CHECK(euler_residual(pot, ring.desc).vanishes());

    auto e1 = expand_order_k(pot, 1);
    CHECK(e1.all_vanish());
    CHECK(all_zero(e1.eq23_origin));
    CHECK(e1.eq24_origin.is_zero());
    auto e2 = expand_order_k(pot, 2);
    CHECK(e2.all_vanish());
    CHECK(e2.eq24_origin.is_zero());

    // perturb F^(1) by s t^1 t^2
    auto bad = pot;
    Monomial m{std::vector<int>(5, 0), 1};
    m.t[1] = m.t[2] = 1;
    bad.F.add_term(m, QPoly::monomial(1, 1));
    CHECK(!wdvv_residuals(bad).all_vanish());
    CHECK(!expand_order_k(bad, 1).all_vanish());

    CHECK_THROWS_AS(expand_order_k(pot, 0), DomainError);
    CHECK_THROWS_AS(expand_order_k(pot, 3), DomainError);
}

TEST_CASE("tau coordinates agree")
{
    auto ring = ring_for(4, {3});
    auto pot = reconstructed_potential(ring, Coordinates::Tau);
    CHECK(wdvv_residuals(pot).all_vanish());
    CHECK(euler_residual(pot, ring.desc).vanishes());
}

TEST_CASE("odd mode cuts the s-expansion")
{
    auto ring = ring_for(3, {2, 2});
    auto pot = reconstructed_potential(ring, Coordinates::T);
    CHECK(pot.parity == Parity::Odd);
    CHECK(pot.scap() == 2);
    CHECK(wdvv_residuals(pot).all_vanish());
    CHECK(expand_order_k(pot, 1).all_vanish());
    CHECK_THROWS_AS(expand_order_k(pot, 3), DomainError);

    // cubic threefold: m = 10, s-powers below 5
    auto cubic = reconstructed_potential(ring_for(3, {3}), Coordinates::T);
    CHECK(cubic.parity == Parity::Odd);
    CHECK(wdvv_residuals(cubic).all_vanish());
}

TEST_CASE("euler filter")
{
    auto f = euler_filter(describe(3, {3}), 2);
    CHECK(f.beta == 1);
    CHECK(f.admissible);
    // gcd(n - 2, a) > 1 leaves no admissible degree for k = 2
    auto g = euler_filter(describe(5, {2, 3}), 2);
    CHECK(!g.admissible);
    auto h = euler_filter(describe(4, {4}), 2);
    CHECK(!h.admissible);
}

TEST_CASE("primitive two-point recursion")
{
    auto x = primitive_two_point(-24, 4);
    REQUIRE(x.size() == 5);
    for (int k = 0; k <= 4; ++k) CHECK(x[k] == pow(Rational(-24), k + 1) / Rational(factorial(k + 1)));
}

TEST_CASE("J recursion")
{
    auto ring = ring_for(4, {3});
    auto pot = reconstructed_potential(ring, Coordinates::T);
    SeriesCaps caps{1, 0, ring.qmax};
    auto j0 = ambient_j_jets(ring, small_j(ring.desc, ring.qmax, 3), caps, 3);
    REQUIRE(j0.size() == 5);
    // J_a^(0) starts with g_{ac} t^c
    CHECK(j0[1].at(0).coeff(Monomial{{0, 0, 0, 1, 0}, 0}) == 3);
    auto jr = j_recursion(pot, j0, std::vector<int>(5, 1), 1, 3);
    CHECK(jr.ambient.size() == 2);
    CHECK(jr.primitive.at(0) == TruncSeries::constant(5, pot.F.caps(), 1));
    CHECK(jr.primitive.at(-1) == pot.F.d_s());
    CHECK_THROWS_AS(j_recursion(pot, j0, std::vector<int>(5, 1), 2, 3), DomainError);
    CHECK_THROWS_AS(j_recursion(pot, {}, {}, 1, 3), ConfigError);
}
