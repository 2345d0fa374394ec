#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>

#include "nptk/series.hpp"

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

PuiseuxSeries random_laurent(const CtxPtr& c, std::mt19937& rng, bool unit = false) {
    std::uniform_int_distribution<int> nterms(1, 5), num(-6, 6), den(1, 3), coef(-9, 9);
    LaurentMap m;
    if (unit) m.emplace(mpq_class(0), c->from_int(coef(rng) * 2 + 1));
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        long cv = coef(rng);
        if (cv == 0) continue;
        m.emplace(q(num(rng), den(rng)), c->from_int(cv));
    }
    return PuiseuxSeries::finite(c, std::move(m));
}

bool same_to(const PuiseuxSeries& a, const PuiseuxSeries& b, const mpq_class& N) {
    return truncate_series(a - b, N).empty();
}

} // namespace

TEST_CASE("order scan on finite and rational presentations") {
    auto Q = FieldCtx::rationals();
    auto s = fin(Q, {{q(3, 2), 1}, {q(2), 1}});
    auto o = ord_scan(s, q(100));
    CHECK(o.found());
    CHECK(o.value == q(3, 2));

    CHECK(ord_scan(PuiseuxSeries::zero(Q), q(5)).status == OrdResult::Status::exact_zero);

    // 1/(1-t) has order 0 no matter how small the scan bound is.
    auto geom = PuiseuxSeries::rational(Q, {{q(0), Q->one()}},
                                        {{q(0), Q->one()}, {q(1), -Q->one()}});
    auto og = ord_scan(geom, q(-10));
    CHECK(og.found());
    CHECK(og.value == 0);

    // t^2/t = t, order from the fraction view.
    auto tt = PuiseuxSeries::rational(Q, {{q(2), Q->one()}}, {{q(1), Q->one()}});
    CHECK(ord_scan(tt, q(0)).value == 1);
}

TEST_CASE("a lazy series that is zero everywhere only resolves to the bound") {
    auto Q = FieldCtx::rationals();
    auto z = PuiseuxSeries::lazy(Q, 1, q(0), [Q](const mpq_class&) { return Q->zero(); });
    auto o = ord_scan(z, q(7));
    CHECK(o.status == OrdResult::Status::zero_to_bound);
    CHECK(o.value == q(7));
}

TEST_CASE("finite arithmetic stays exact") {
    auto Q = FieldCtx::rationals();
    auto a = fin(Q, {{q(0), 1}, {q(1, 2), 1}});  // 1 + t^(1/2)
    auto b = fin(Q, {{q(0), 1}, {q(1, 2), -1}}); // 1 - t^(1/2)
    auto p = a * b;
    CHECK(p.kind() == SeriesKind::finite_laurent);
    CHECK(same_to(p, fin(Q, {{q(0), 1}, {q(1), -1}}), q(100)));
    CHECK((a - a).is_exact_zero());
    CHECK(p.at(q(1, 2)).is_zero());
    CHECK(p.at(q(1)) == -Q->one());
}

TEST_CASE("ramification index is the exponent lattice lcm") {
    auto Q = FieldCtx::rationals();
    auto s = fin(Q, {{q(1, 2), 1}}) + fin(Q, {{q(1, 3), 1}});
    CHECK(s.ram() == 6);
    CHECK(ord_scan(s, q(10)).value == q(1, 3));
}

TEST_CASE("geometric series coefficients from a rational presentation") {
    auto Q = FieldCtx::rationals();
    auto geom = PuiseuxSeries::rational(Q, {{q(0), Q->one()}},
                                        {{q(0), Q->one()}, {q(1), -Q->one()}});
    for (long k = 0; k <= 25; ++k) CHECK(geom.at(q(k)).is_one());
    CHECK(geom.at(q(1, 2)).is_zero());
    CHECK(geom.at(q(-1)).is_zero());

    // (1-t) * 1/(1-t) = 1 on every inspected exponent.
    auto one = PuiseuxSeries::one(Q);
    auto p = fin(Q, {{q(0), 1}, {q(1), -1}}) * geom;
    CHECK(same_to(p, one, q(40)));
}

TEST_CASE("reindex maps exponents affinely and composes") {
    auto Q = FieldCtx::rationals();
    auto t = fin(Q, {{q(1), 1}});
    auto r = reindex(t, 2, q(1, 2));
    CHECK(ord_scan(r, q(10)).value == q(5, 2));

    std::mt19937 rng(99);
    for (int it = 0; it < 50; ++it) {
        auto s = random_laurent(Q, rng);
        long m1 = 1 + static_cast<long>(rng() % 3), m2 = 1 + static_cast<long>(rng() % 3);
        mpq_class r1 = q(static_cast<long>(rng() % 7) - 3, 2);
        mpq_class r2 = q(static_cast<long>(rng() % 7) - 3, 3);
        auto lhs = reindex(reindex(s, m1, r1), m2, r2);
        auto rhs = reindex(s, m1 * m2, m2 * r1 + r2);
        CHECK(same_to(lhs, rhs, q(100)));
    }
}

TEST_CASE("truncation lists terms strictly below the cutoff") {
    auto Q = FieldCtx::rationals();
    auto s = fin(Q, {{q(-1), 1}, {q(0), 2}, {q(2), 3}});
    auto terms = truncate_series(s, q(2));
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].first == q(-1));
    CHECK(terms[0].second.is_one());
    CHECK(terms[1].first == q(0));
    CHECK(terms[1].second == Q->from_int(2));
    CHECK(truncate_series(s, q(-1)).empty());
}

TEST_CASE("inversion against the defining identity") {
    auto Q = FieldCtx::rationals();
    std::mt19937 rng(7);
    for (int it = 0; it < 30; ++it) {
        auto s = random_laurent(Q, rng, true);
        auto si = invert(s, q(50));
        CHECK(same_to(s * si, PuiseuxSeries::one(Q), q(20)));
    }

    // order of the inverse is the negated order
    auto u = fin(Q, {{q(1, 2), 1}, {q(3, 2), 1}});
    auto ui = invert(u, q(10));
    CHECK(ord_scan(ui, q(10)).value == q(-1, 2));
    CHECK(same_to(u * ui, PuiseuxSeries::one(Q), q(15)));
}

TEST_CASE("order is additive under products on random inputs") {
    auto Q = FieldCtx::rationals();
    std::mt19937 rng(2024);
    for (int it = 0; it < 80; ++it) {
        auto a = random_laurent(Q, rng);
        auto b = random_laurent(Q, rng);
        auto oa = ord_scan(a, q(100)), ob = ord_scan(b, q(100));
        if (oa.zero() || ob.zero()) continue;
        CHECK(ord_scan(a * b, q(100)).value == oa.value + ob.value);
        auto os = ord_scan(a + b, q(100));
        if (os.found()) CHECK(os.value >= std::min(oa.value, ob.value));
    }
}

TEST_CASE("lazy coefficients are memoized") {
    auto Q = FieldCtx::rationals();
    auto hits = std::make_shared<std::atomic<int>>(0);
    auto s = PuiseuxSeries::lazy(Q, 1, q(0), [Q, hits](const mpq_class& e) {
        ++*hits;
        return e == 3 ? Q->one() : Q->zero();
    });
    CHECK(s.at(q(3)).is_one());
    CHECK(s.at(q(3)).is_one());
    CHECK(*hits == 1);
    CHECK(s.at(q(7, 2)).is_zero()); // off-lattice, no call
    CHECK(*hits == 1);
}

TEST_CASE("polynomial evaluation over series") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {PuiseuxSeries::zero(Q), -(PuiseuxSeries::one(Q) + fin(Q, {{q(1), 1}}))};
    // z^2 - (1+t) at z = 1 gives -t
    auto r = eval_poly(f, PuiseuxSeries::one(Q));
    CHECK(same_to(r, fin(Q, {{q(1), -1}}), q(50)));
}

TEST_CASE("fraction view round trips") {
    auto Q = FieldCtx::rationals();
    auto s = PuiseuxSeries::rational(Q, {{q(1), Q->one()}},
                                     {{q(0), Q->one()}, {q(2), Q->one()}});
    auto [num, den] = s.as_fraction();
    CHECK(num.size() == 1);
    CHECK(den.size() == 2);
    auto back = PuiseuxSeries::rational(Q, num, den);
    CHECK(same_to(s, back, q(30)));
}
