#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nptk/parse.hpp"

using namespace nptk;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

} // namespace

TEST_CASE("polynomials over the rationals") {
    CtxPtr c = FieldCtx::rationals();

    SeriesPoly f = parse_poly("z^2 - z - t^(-1)", c);
    REQUIRE(f.degree() == 2);
    CHECK(f.coeff(1).at(q(0)) == -c->one());
    CHECK(f.coeff(2).at(q(-1)) == -c->one());
    CHECK(truncate_series(f.coeff(2), q(5)).size() == 1);

    SeriesPoly g = parse_poly("z^2 - t^3", c);
    REQUIRE(g.degree() == 2);
    CHECK(ord_scan(g.coeff(1), q(0)).zero());
    CHECK(g.coeff(2).at(q(3)) == -c->one());

    // unit leading coefficients are divided out
    SeriesPoly h = parse_poly("2*z^2 - 2*t", c);
    CHECK(h.coeff(2).at(q(1)) == -c->one());

    SeriesPoly k = parse_poly("(z - t)*(z + t)", c);
    REQUIRE(k.degree() == 2);
    CHECK(k.coeff(2).at(q(2)) == -c->one());
    CHECK(ord_scan(k.coeff(1), q(9)).zero());
}

TEST_CASE("series expressions") {
    CtxPtr c = FieldCtx::rationals();
    PuiseuxSeries s = parse_series("3/2*t^(1/2) - t^(-2) + 1", c);
    CHECK(s.at(q(1, 2)) == c->from_rational(q(3, 2)));
    CHECK(s.at(q(-2)) == -c->one());
    CHECK(s.at(q(0)) == c->one());

    // division produces a rational-function presentation
    PuiseuxSeries g = parse_series("1/(1 - t)", c);
    for (long i = 0; i < 6; ++i) CHECK(g.at(q(i)) == c->one());

    CHECK(parse_series("t^2/t^3", c).at(q(-1)) == c->one());
}

TEST_CASE("syntax errors carry positions") {
    CtxPtr c = FieldCtx::rationals();
    CHECK_THROWS_AS(parse_poly("z^2 + ", c), syntax_error);
    CHECK_THROWS_AS(parse_poly("z^2 ) z", c), syntax_error);
    CHECK_THROWS_AS(parse_series("z + 1", c), syntax_error); // z-free context
    CHECK_THROWS_AS(parse_poly("(z+t^(1/2))^(1/2)", c), syntax_error);
    try {
        parse_poly("z^^2", c);
        FAIL("expected a syntax error");
    } catch (const syntax_error& e) {
        CHECK(e.position() == 2);
    }

    CHECK_THROWS_AS(parse_poly("t + 1", c), error);       // no z
    CHECK_THROWS_AS(parse_poly("t*z^2 - 1", c), error);   // non-unit leading coefficient
}

TEST_CASE("prime-field coefficients reduce mod p") {
    CtxPtr c = FieldCtx::prime_field(5);
    SeriesPoly f = parse_poly("7*z + t", c); // leading 7 = 2 is a unit
    CHECK(f.coeff(1).at(q(1)) == c->from_int(3)); // t/2 = 3t mod 5
}

TEST_CASE("quadratic ring elements") {
    CHECK(parse_quad("2") == QuadElem{2, 0});
    CHECK(parse_quad("1+w") == QuadElem{1, 1});
    CHECK(parse_quad("1 - 2*w") == QuadElem{1, -2});
    CHECK(parse_quad("-w") == QuadElem{0, -1});
    CHECK(parse_quad("3*w - 4") == QuadElem{-4, 3});
    CHECK_THROWS_AS(parse_quad(""), syntax_error);
    CHECK_THROWS_AS(parse_quad("2w3"), syntax_error);
}

TEST_CASE("pretty printing round trips") {
    CtxPtr c = FieldCtx::rationals();
    PuiseuxSeries s = parse_series("t^(-1/2) + 1/2 + 1/8*t^(1/2) - t^2", c);
    std::string text = series_text(s, q(3));
    CHECK(text == "t^(-1/2) + 1/2 + 1/8*t^(1/2) - t^2");
    PuiseuxSeries back = parse_series(text, c);
    CHECK(truncate_series(back - s, q(3)).empty());

    CHECK(series_text(PuiseuxSeries::zero(c), q(1)) == "0");
    CHECK(series_text(parse_series("-t", c), q(2)) == "-t");
}
