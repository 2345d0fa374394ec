#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nptk/hensel.hpp"

using namespace nptk;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

PuiseuxSeries fin(const CtxPtr& c, std::vector<std::pair<mpq_class, long>> terms) {
    LaurentMap m;
    for (auto& [e, v] : terms) m.emplace(e, c->from_int(v));
    return PuiseuxSeries::finite(c, std::move(m));
}

bool same_to(const PuiseuxSeries& a, const PuiseuxSeries& b, const mpq_class& N) {
    return truncate_series(a - b, N).empty();
}

// binom(1/2, k), the sqrt(1+t) Taylor coefficients
mpq_class half_binom(long k) {
    mpq_class r = 1;
    for (long i = 0; i < k; ++i) {
        r *= q(1 - 2 * i, 2);
        r /= i + 1;
    }
    return r;
}

// full coefficient list (low -> high z-degree, monic) of a SeriesPoly
std::vector<PuiseuxSeries> full_coeffs(const SeriesPoly& f) {
    std::vector<PuiseuxSeries> c;
    for (auto it = f.tail.rbegin(); it != f.tail.rend(); ++it) c.push_back(*it);
    c.push_back(PuiseuxSeries::one(f.ctx));
    return c;
}

SeriesPoly poly_product(const SeriesPoly& a, const SeriesPoly& b) {
    auto ca = full_coeffs(a), cb = full_coeffs(b);
    std::vector<PuiseuxSeries> cp(ca.size() + cb.size() - 1, PuiseuxSeries::zero(a.ctx));
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (std::size_t j = 0; j < cb.size(); ++j) cp[i + j] = cp[i + j] + ca[i] * cb[j];
    SeriesPoly p;
    p.ctx = a.ctx;
    for (std::size_t i = cp.size() - 1; i-- > 0;) p.tail.push_back(cp[i]);
    return p;
}

} // namespace

TEST_CASE("square root of 1+t via lifting z^2 - (1+t)") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {PuiseuxSeries::zero(Q), -fin(Q, {{q(0), 1}, {q(1), 1}})};
    FPoly g0 = {-Q->one(), Q->one()}; // z - 1
    FPoly h0 = {Q->one(), Q->one()};  // z + 1
    auto [g, h] = hensel_factors(f, g0, h0);
    REQUIRE(g.degree() == 1);
    // g = z - sqrt(1+t), so -a_1 carries the binomial series
    for (long k = 0; k <= 12; ++k)
        CHECK((-g.tail[0]).at(q(k)) == Q->from_rational(half_binom(k)));
    // the two factors are negatives of each other here
    CHECK(same_to(g.tail[0] + h.tail[0], PuiseuxSeries::zero(Q), q(12)));
}

TEST_CASE("lifting recovers known linear factors exactly") {
    auto Q = FieldCtx::rationals();
    auto r1 = fin(Q, {{q(0), 1}, {q(1), 1}, {q(2), 2}});
    auto r2 = fin(Q, {{q(0), -2}, {q(3), 1}});
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {-(r1 + r2), r1 * r2}; // (z - r1)(z - r2)
    FPoly g0 = {-Q->one(), Q->one()};       // z - 1
    FPoly h0 = {Q->from_int(2), Q->one()};  // z + 2
    auto [g, h] = hensel_lift(f, g0, h0, q(10));
    CHECK(same_to(g.tail[0], -r1, q(10)));
    CHECK(same_to(h.tail[0], -r2, q(10)));
    CHECK(g.tail[0].kind() == SeriesKind::finite_laurent);
}

TEST_CASE("half-integral exponent lattice") {
    auto Q = FieldCtx::rationals();
    auto r1 = fin(Q, {{q(0), 1}, {q(1, 2), 1}});
    auto r2 = fin(Q, {{q(0), 3}, {q(3, 2), -1}});
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {-(r1 + r2), r1 * r2};
    FPoly g0 = {-Q->one(), Q->one()};
    FPoly h0 = {Q->from_int(-3), Q->one()};
    auto [g, h] = hensel_factors(f, g0, h0);
    CHECK(same_to(g.tail[0], -r1, q(8)));
    CHECK(same_to(h.tail[0], -r2, q(8)));
}

TEST_CASE("shared residue roots are rejected") {
    auto F2 = FieldCtx::prime_field(2);
    SeriesPoly f;
    f.ctx = F2;
    f.tail = {PuiseuxSeries::zero(F2),
              PuiseuxSeries::one(F2) + PuiseuxSeries::monomial(F2->one(), q(1))};
    FPoly gh = {F2->one(), F2->one()}; // z + 1, and z^2 + (1+t) = (z+1)^2 + t
    CHECK_THROWS_WITH_AS(hensel_factors(f, gh, gh), doctest::Contains("common root"), error);
}

TEST_CASE("non-monic and non-integral inputs are rejected") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {PuiseuxSeries::zero(Q), -PuiseuxSeries::one(Q)};
    FPoly g0 = {Q->from_int(-2), Q->from_int(2)};
    FPoly h0 = {Q->one(), Q->one()};
    CHECK_THROWS_AS(hensel_factors(f, g0, h0), error);
    try {
        hensel_factors(f, g0, h0);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_monic);
    }

    SeriesPoly fneg;
    fneg.ctx = Q;
    fneg.tail = {PuiseuxSeries::zero(Q),
                 -PuiseuxSeries::one(Q) + PuiseuxSeries::monomial(Q->one(), q(-1))};
    FPoly gm = {-Q->one(), Q->one()};
    FPoly hm = {Q->one(), Q->one()};
    try {
        hensel_factors(fneg, gm, hm);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_integral);
    }
}

TEST_CASE("random coprime residue factorizations lift and multiply back") {
    auto F5 = FieldCtx::prime_field(5);
    auto Q = FieldCtx::rationals();
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> deg(1, 2), coef(-5, 5), nterms(0, 3), expo(1, 6);

    // constant term plus a few positive half-integral terms
    auto random_integral = [&](const CtxPtr& c) {
        LaurentMap m;
        m.emplace(q(0), c->from_int(coef(rng)));
        int k = nterms(rng);
        for (int i = 0; i < k; ++i) {
            long cv = coef(rng);
            if (cv) m.emplace(q(expo(rng), 2), c->from_int(cv));
        }
        return PuiseuxSeries::finite(c, std::move(m));
    };

    for (int it = 0; it < 40; ++it) {
        const CtxPtr& c = (it % 2) ? F5 : Q;
        SeriesPoly g, h;
        g.ctx = h.ctx = c;
        g.tail = {random_integral(c)};
        if (deg(rng) == 2)
            h.tail = {random_integral(c) + random_integral(c),
                      random_integral(c) * random_integral(c)};
        else
            h.tail = {random_integral(c)};
        auto f = poly_product(g, h);

        // residue polynomials
        auto residue = [&](const SeriesPoly& p) {
            FPoly r(p.degree() + 1, c->zero());
            r[p.degree()] = c->one();
            for (std::size_t j = 0; j < p.degree(); ++j)
                r[j] = p.tail[p.degree() - 1 - j].at(q(0));
            return ptrim(std::move(r));
        };
        FPoly g0 = residue(g), h0 = residue(h);
        if (pdeg(pgcd(g0, h0)) != 0) continue; // rare residue collision, skip

        auto [gl, hl] = hensel_factors(f, g0, h0);
        for (std::size_t i = 0; i < g.degree(); ++i)
            CHECK(same_to(gl.tail[i], g.tail[i], q(20)));
        for (std::size_t i = 0; i < h.degree(); ++i)
            CHECK(same_to(hl.tail[i], h.tail[i], q(20)));
    }
}
