#include "doctest.h"

#include "ciqc/errors.hpp"
#include "ciqc/serialize.hpp"

using namespace ciqc;

TEST_CASE("scalar round trips")
{
    for (auto r : {make_rational(-3, 2), make_rational(0), make_rational(14712, 390625)})
        CHECK(rational_from_json(to_json(r)) == r);
    QPoly p = QPoly::monomial(27, 2) + QPoly::monomial(make_rational(-9, 2), 1) + QPoly(1);
    CHECK(qpoly_from_json(to_json(p)) == p);
    CHECK(to_json(p, OutputOptions{true}) == Json("47/2"));
    CHECK_THROWS_AS(rational_from_json(Json("1/x")), ConfigError);
}

TEST_CASE("series round trip")
{
    SeriesCaps caps{3, 2, 4};
    TruncSeries f(3, caps);
    f.add_term(Monomial{{1, 0, 2}, 1}, QPoly::monomial(make_rational(5, 7), 3, 4));
    f.add_term(Monomial{{0, 1, 0}, 0}, QPoly(-2, 4));
    auto g = series_from_json(to_json(f));
    CHECK(g == f);
    CHECK(g.caps() == caps);

    TruncSeries u(2, SeriesCaps{2, 0, QPoly::kUntruncated});
    u.add_term(Monomial{{1, 1}, 0}, 3);
    auto j = to_json(u);
    CHECK(j["caps"]["qmax"].is_null());
    CHECK(series_from_json(j) == u);
}

TEST_CASE("potential dump and load")
{
    auto desc = describe(4, {3});
    auto ring = build_ring(desc, default_qmax(desc));
    for (auto coords : {Coordinates::T, Coordinates::Tau}) {
        auto pot = reconstructed_potential(ring, coords);
        auto j = potential_json(pot, desc);
        auto back = potential_from_json(Json::parse(j.dump()));
        CHECK(back.F == pot.F);
        CHECK(back.jet == pot.jet);
        CHECK(equal(back.ginv, pot.ginv));
        auto res = residual_json(back, desc);
        CHECK(res["ok"] == true);
    }
    auto bad = reconstructed_potential(ring, Coordinates::T);
    Monomial m{{0, 1, 1, 0, 0}, 1};
    bad.F.add_term(m, QPoly::monomial(1, 1));
    CHECK(residual_json(bad, desc)["ok"] == false);
}

TEST_CASE("tsv flattening")
{
    Json j = {{"roots", {"1", "4"}}, {"inner", {{"a", 1}, {"b", "x"}}}};
    CHECK(json_to_tsv(j) == "key\tvalue\nroots\t1\t4\ninner.a\t1\ninner.b\tx\n");
    CHECK(json_to_tsv(j, false) == "roots\t1\t4\ninner.a\t1\ninner.b\tx\n");
}
