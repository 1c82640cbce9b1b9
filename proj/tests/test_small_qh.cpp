#include "doctest.h"

#include "ciqc/small_qh.hpp"

using namespace ciqc;

namespace {

QuantumRingData ring_for(int n, std::vector<int> d)
{
    auto desc = describe(n, std::move(d));
    return build_ring(desc, default_qmax(desc));
}

QVector column(const QMatrix& m, int j)
{
    QVector v;
    for (const auto& row : m) v.push_back(row[j]);
    return v;
}

} // namespace

TEST_CASE("one-point descendant of the point class")
{
    for (int n = 3; n <= 8; ++n) {
        auto desc = describe(n, {3});
        CHECK(one_point_descendant(desc, small_j(desc, 1, n), n - 3, n, 1) == 18);
    }
}

TEST_CASE("quantum relation of the cubic fourfold")
{
    auto ring = ring_for(4, {3});
    QVector v(5, QPoly(Rational(0), ring.qmax));
    v[0] = QPoly(Rational(1), ring.qmax);
    for (int i = 0; i < 5; ++i) v = mul(ring.hmul, v);
    for (int i = 0; i < 5; ++i) {
        QPoly expected = i == 2 ? QPoly::monomial(27, 1, ring.qmax) : QPoly(Rational(0), ring.qmax);
        CHECK(v[i].truncated(ring.qmax) == expected);
    }
    CHECK(equal(truncated(mul(ring.g, ring.ginv), ring.qmax), identity_qmatrix(5, ring.qmax)));
    CHECK(mul(ring.W, ring.M) == identity_rmatrix(5));
}

TEST_CASE("M entry for cubics")
{
    for (int n = 3; n <= 8; ++n) {
        auto ring = ring_for(n, {3});
        CHECK(ring.M[n][n - ring.desc.a] == Rational(ring.desc.ell - ring.desc.b));
        CHECK(ring.M[n][n - ring.desc.a] == -21);
    }
}

TEST_CASE("inverse pairing")
{
    auto ring = ring_for(4, {3});
    CHECK(ring.ginv[4][0] == QPoly(make_rational(1, 3)));
    CHECK(ring.ginv[1][0] == QPoly::monomial(-9, 1));
    for (int e = 0; e <= 4; ++e)
        for (int f = 0; f <= 4; ++f) {
            CHECK(ring.ginv[e][f] == ring.ginv[f][e]);
            CHECK(ring.ginv[e][f] == inverse_pairing_formula(ring.desc, e, f, ring.qmax));
        }
}

TEST_CASE("c constant")
{
    for (int n = 3; n <= 8; ++n) CHECK(c_constant(ring_for(n, {3})).value == make_rational(2, 9));
    CHECK(c_constant(ring_for(5, {5})).value == make_rational(14712, 390625));
    for (int n : {3, 5}) CHECK(c_constant(ring_for(n, {2, 2})).value == make_rational(1, 4));
    auto r = ring_for(5, {5});
    CHECK(c_truncated(r, 5) == c_constant(r).value);
    CHECK(c_truncated(r, 1) != c_constant(r).value);
}

TEST_CASE("third derivatives at the origin")
{
    auto ring = ring_for(4, {3});
    auto f0 = f0_derivs(ring);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                // pairing of the quantum product of two quantum powers with a third
                QPoly via_product =
                    classical_pairing(ring, quantum_product(ring, column(ring.powers, a), column(ring.powers, b)),
                                      column(ring.powers, c))
                        .truncated(ring.qmax);
                CHECK(f0.third[a][b][c] == via_product);
                int excess = a + b + c - 4;
                QPoly expected = excess >= 0 && excess % 3 == 0
                                     ? QPoly::monomial(3 * pow(Rational(27), excess / 3), excess / 3)
                                     : QPoly();
                CHECK(f0.third[a][b][c] == expected);
            }
}

TEST_CASE("contracted fourth derivatives")
{
    auto ring = ring_for(4, {3});
    auto f0 = f0_derivs(ring);
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c) {
                int excess = a + b + c - 1;
                QPoly expected = excess % 3 == 0
                                     ? QPoly::monomial(make_rational(2, 9) * pow(Rational(27), excess / 3), excess / 3)
                                     : QPoly();
                CHECK(f0.contracted_fourth[a][b][c] == expected.truncated(ring.qmax));
            }
    auto quintic = ring_for(5, {5});
    auto q0 = f0_derivs(quintic);
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
            for (int c = 1; c <= 5; ++c)
                CHECK(q0.contracted_fourth[a][b][c] == contracted_fourth_truncated(quintic, a, b, c));
}

TEST_CASE("ambient four-point function is symmetric")
{
    auto ring = ring_for(3, {3});
    AmbientFourPoint amb(ring);
    CHECK(amb.fourth(1, 2, 3, 1) == amb.fourth(3, 1, 1, 2));
    CHECK(amb.fourth(0, 1, 2, 3).is_zero());
    // divisor axiom: F_{1 i j k} = (q d/dq) F_{ijk}
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 3; ++k)
                CHECK(amb.fourth(1, i, j, k).truncated(ring.qmax) == amb.third(i, j, k).q_derivative().truncated(ring.qmax));
}
