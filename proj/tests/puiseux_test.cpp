#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nptk/puiseux.hpp"

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

// monic polynomial with the given roots
SeriesPoly from_roots(const CtxPtr& c, const std::vector<PuiseuxSeries>& roots) {
    std::vector<PuiseuxSeries> full = {PuiseuxSeries::one(c)};
    for (const auto& r : roots) {
        std::vector<PuiseuxSeries> next(full.size() + 1, PuiseuxSeries::zero(c));
        for (std::size_t k = 0; k < full.size(); ++k) {
            next[k + 1] = next[k + 1] + full[k];
            next[k] = next[k] - full[k] * r;
        }
        full = std::move(next);
    }
    SeriesPoly f;
    f.ctx = c;
    for (std::size_t i = full.size() - 1; i-- > 0;) f.tail.push_back(full[i]);
    return f;
}

mpq_class half_binom(long k) {
    mpq_class r = 1;
    for (long i = 0; i < k; ++i) {
        r *= q(1 - 2 * i, 2);
        r /= i + 1;
    }
    return r;
}

} // namespace

TEST_CASE("both branches of z^2 - z - 1/t") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {-PuiseuxSeries::one(Q), -PuiseuxSeries::monomial(Q->one(), q(-1))};
    auto branches = puiseux_roots(f, q(6));
    REQUIRE(branches.size() == 2);

    // z = 1/2 +- t^(-1/2) (1 + t/4)^(1/2), expanded binomially
    int seen = 0;
    for (const RootBranch& b : branches) {
        CHECK(b.e == 2);
        CHECK(b.multiplicity == 1);
        REQUIRE(!b.terms.empty());
        CHECK(b.terms.front().first == q(-1, 2));
        long sgn = b.terms.front().second.is_one() ? 1 : -1;
        seen += sgn;
        LaurentMap m;
        m.emplace(q(0), Q->from_rational(q(1, 2)));
        mpq_class scale(sgn);
        for (long k = 0; q(2 * k - 1, 2) < 6; ++k) {
            m.emplace(q(2 * k - 1, 2), Q->from_rational(half_binom(k) * scale));
            scale /= 4;
        }
        LaurentMap got(b.terms.begin(), b.terms.end());
        CHECK(same_to(PuiseuxSeries::finite(Q, got), PuiseuxSeries::finite(Q, m), q(6)));
        auto vr = verify_root(f, b, q(6));
        CHECK(vr.passed);
    }
    CHECK(seen == 0); // one branch of each sign
}

TEST_CASE("conjugate pair for z^2 - t") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {PuiseuxSeries::zero(Q), -PuiseuxSeries::monomial(Q->one(), q(1))};
    auto branches = puiseux_roots(f, q(10));
    REQUIRE(branches.size() == 2);
    PuiseuxSeries r0 = PuiseuxSeries::finite(Q, LaurentMap(branches[0].terms.begin(),
                                                           branches[0].terms.end()));
    PuiseuxSeries r1 = PuiseuxSeries::finite(Q, LaurentMap(branches[1].terms.begin(),
                                                           branches[1].terms.end()));
    bool plus_first = same_to(r0, PuiseuxSeries::monomial(Q->one(), q(1, 2)), q(10));
    CHECK(same_to(plus_first ? r1 : r0, PuiseuxSeries::monomial(-Q->one(), q(1, 2)), q(10)));
    CHECK(same_to(plus_first ? r0 : r1, PuiseuxSeries::monomial(Q->one(), q(1, 2)), q(10)));
    CHECK((r0 + r1).is_exact_zero());
}

TEST_CASE("known roots are recovered and canonically ordered") {
    auto Q = FieldCtx::rationals();
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> coef(-4, 4), expo(1, 4);
    for (int it = 0; it < 12; ++it) {
        int n = 2 + static_cast<int>(rng() % 3);
        std::vector<PuiseuxSeries> roots;
        std::vector<long> consts;
        for (int i = 0; i < n; ++i) {
            long c0;
            do {
                c0 = coef(rng);
            } while (std::find(consts.begin(), consts.end(), c0) != consts.end());
            consts.push_back(c0);
            LaurentMap m;
            m.emplace(q(0), Q->from_int(c0));
            for (int j = 0; j < 2; ++j) {
                long cv = coef(rng);
                if (cv) m.emplace(q(expo(rng)), Q->from_int(cv));
            }
            roots.push_back(PuiseuxSeries::finite(Q, std::move(m)));
        }
        SeriesPoly f = from_roots(Q, roots);
        auto branches = puiseux_roots(f, q(12));
        REQUIRE(branches.size() == roots.size());
        // match each expected root to exactly one branch
        std::vector<bool> used(roots.size(), false);
        for (const auto& b : branches) {
            PuiseuxSeries got =
                PuiseuxSeries::finite(Q, LaurentMap(b.terms.begin(), b.terms.end()));
            bool matched = false;
            for (std::size_t i = 0; i < roots.size(); ++i) {
                if (!used[i] && same_to(got, roots[i], q(12))) {
                    used[i] = matched = true;
                    break;
                }
            }
            CHECK(matched);
            CHECK(verify_root(f, b, q(12)).passed);
        }
    }
}

TEST_CASE("multiple roots keep their multiplicities") {
    auto Q = FieldCtx::rationals();
    auto t1 = PuiseuxSeries::monomial(Q->one(), q(1));
    auto t2 = PuiseuxSeries::monomial(Q->one(), q(2));
    SeriesPoly f = from_roots(Q, {t1, t1, t2}); // (z - t)^2 (z - t^2)
    auto branches = puiseux_roots(f, q(8));
    REQUIRE(branches.size() == 2);
    int total = 0;
    for (const auto& b : branches) total += b.multiplicity;
    CHECK(total == 3);
    for (const auto& b : branches) {
        PuiseuxSeries got = PuiseuxSeries::finite(Q, LaurentMap(b.terms.begin(), b.terms.end()));
        if (b.multiplicity == 2)
            CHECK(same_to(got, t1, q(8)));
        else
            CHECK(same_to(got, t2, q(8)));
    }
}

TEST_CASE("roots may need a field extension") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    // z^2 + 1 + t: roots +-i sqrt(1+t)
    f.tail = {PuiseuxSeries::zero(Q), PuiseuxSeries::one(Q) + PuiseuxSeries::monomial(Q->one(), q(1))};
    auto branches = puiseux_roots(f, q(8));
    REQUIRE(branches.size() == 2);
    for (const auto& b : branches) {
        CHECK(b.ctx->levels() == 1); // one adjoined generator
        CHECK(verify_root(f, b, q(8)).passed);
    }

    auto F3 = FieldCtx::prime_field(3);
    SeriesPoly g;
    g.ctx = F3;
    g.tail = {PuiseuxSeries::zero(F3), PuiseuxSeries::one(F3)}; // z^2 + 1 over F3
    auto gb = puiseux_roots(g, q(8));
    REQUIRE(gb.size() == 2);
    CHECK(gb[0].ctx->order() == 9);
    for (const auto& b : gb) CHECK(verify_root(g, b, q(8)).passed);
}

TEST_CASE("wild Artin-Schreier inputs stop with a ramification error") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto F = FieldCtx::prime_field(p);
        SeriesPoly f;
        f.ctx = F;
        f.tail.assign(p, PuiseuxSeries::zero(F));
        f.tail[p - 2] = -PuiseuxSeries::one(F);                   // -z
        f.tail[p - 1] = -PuiseuxSeries::monomial(F->one(), q(-1)); // -1/t
        try {
            puiseux_roots(f, q(5));
            CHECK(false);
        } catch (const error& e) {
            CHECK(e.code() == errc::wild_ramification);
        }
    }
}

TEST_CASE("shift kills the subleading coefficient or reports the bad characteristic") {
    auto Q = FieldCtx::rationals();
    auto t1 = PuiseuxSeries::monomial(Q->one(), q(1));
    SeriesPoly f = from_roots(Q, {t1, PuiseuxSeries::constant(Q->from_int(2))});
    auto [g, s] = tschirnhausen(f);
    CHECK(g.tail[0].is_exact_zero());
    CHECK(same_to(s, (t1 + PuiseuxSeries::constant(Q->from_int(2))) *
                         PuiseuxSeries::constant(Q->from_rational(q(-1, 2))),
                  q(20)));

    auto F2 = FieldCtx::prime_field(2);
    SeriesPoly h;
    h.ctx = F2;
    h.tail = {PuiseuxSeries::monomial(F2->one(), q(1)), PuiseuxSeries::one(F2)};
    try {
        tschirnhausen(h);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::char_divides_degree);
    }
}

TEST_CASE("Newton slope values and error cases") {
    auto Q = FieldCtx::rationals();
    SeriesPoly f;
    f.ctx = Q;
    f.tail = {PuiseuxSeries::zero(Q), -PuiseuxSeries::monomial(Q->one(), q(1))};
    CHECK(newton_slope(f, q(10)) == q(1, 2)); // z^2 - t

    SeriesPoly g;
    g.ctx = Q;
    g.tail = {-PuiseuxSeries::one(Q), -PuiseuxSeries::monomial(Q->one(), q(-1))};
    CHECK(newton_slope(g, q(10)) == q(-1, 2)); // z^2 - z - 1/t

    SeriesPoly z;
    z.ctx = Q;
    z.tail = {PuiseuxSeries::zero(Q), PuiseuxSeries::zero(Q)};
    try {
        newton_slope(z, q(10));
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::all_coefficients_zero);
    }

    SeriesPoly u;
    u.ctx = Q;
    u.tail = {PuiseuxSeries::lazy(Q, 1, q(0), [Q](const mpq_class&) { return Q->zero(); }),
              PuiseuxSeries::zero(Q)};
    try {
        newton_slope(u, q(10));
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::unresolved_order);
    }
}

TEST_CASE("one splitting step factors along the slope") {
    auto Q = FieldCtx::rationals();
    auto r1 = fin(Q, {{q(0), 1}, {q(1), 1}});
    auto r2 = fin(Q, {{q(0), -1}, {q(2), 1}});
    SeriesPoly f = from_roots(Q, {r1, r2});
    auto out = split_once(f, q(30));
    REQUIRE(out.kind == SplitOutcome::Kind::split);
    CHECK(out.r == 0);
    REQUIRE(out.g.degree() == 1);
    REQUIRE(out.h.degree() == 1);
    // the two lifted factors carry the two roots, in residue order
    bool direct = same_to(-out.g.tail[0], r2, q(10));
    if (direct) {
        CHECK(same_to(-out.h.tail[0], r1, q(10)));
    } else {
        CHECK(same_to(-out.g.tail[0], r1, q(10)));
        CHECK(same_to(-out.h.tail[0], r2, q(10)));
    }

    // residue with one repeated root over F3 ramifies
    auto F3 = FieldCtx::prime_field(3);
    SeriesPoly w;
    w.ctx = F3;
    w.tail.assign(3, PuiseuxSeries::zero(F3));
    w.tail[1] = -PuiseuxSeries::one(F3);                    // -z
    w.tail[2] = -PuiseuxSeries::monomial(F3->one(), q(-1)); // -1/t
    auto wo = split_once(w, q(30));
    CHECK(wo.kind == SplitOutcome::Kind::ramify);
    CHECK(wo.r == q(-1, 3));

    SeriesPoly zz;
    zz.ctx = Q;
    zz.tail = {PuiseuxSeries::zero(Q), PuiseuxSeries::zero(Q)};
    CHECK(split_once(zz, q(10)).kind == SplitOutcome::Kind::pure_root);
}
