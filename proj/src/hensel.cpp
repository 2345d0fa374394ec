#include "nptk/hensel.hpp"

#include <mutex>
#include <numeric>

namespace nptk {

namespace {

mpq_class frac(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

FPoly lift_poly(const FPoly& f, const CtxPtr& c) {
    FPoly r;
    r.reserve(f.size());
    for (const auto& e : f) r.emplace_back(c, e.val());
    return r;
}

// Shared lifting state. Step k holds the t^(k/e) correction to each factor;
// step 0 is the residue factor itself.
struct HenselState {
    SeriesPoly f;
    CtxPtr ctx;
    long e = 1;
    std::size_t n = 0;
    FPoly g0, h0;
    FPoly u, v; // u*g0 + v*h0 = 1
    std::vector<FPoly> gs, hs;
    std::mutex mu;

    // Coefficient polynomial of f at t^(k/e), degree < n for k > 0.
    FPoly f_at(long k) const {
        mpq_class exp = frac(k, e);
        FPoly r(n, ctx->zero());
        for (std::size_t j = 0; j < n; ++j) r[j] = f.tail[n - 1 - j].at(exp);
        return ptrim(std::move(r));
    }

    void advance(long k) {
        while (static_cast<long>(gs.size()) <= k) {
            long m = static_cast<long>(gs.size());
            FPoly delta = f_at(m);
            for (long i = 1; i < m; ++i) delta = psub(delta, pmul(gs[i], hs[m - i]));
            FPoly a = pmod(pmul(v, delta), g0);
            auto [b, rem] = pdivmod(psub(delta, pmul(a, h0)), g0);
            if (!rem.empty())
                throw error(errc::internal, "hensel step left a nonzero remainder");
            gs.push_back(std::move(a));
            hs.push_back(std::move(b));
        }
    }

    FieldElement coeff(bool gpart, std::size_t zdeg, const mpq_class& exp) {
        if (exp < 0) return ctx->zero();
        mpq_class scaled = exp * e;
        if (scaled.get_den() != 1) return ctx->zero();
        long k = static_cast<long>(scaled.get_num().get_si());
        std::lock_guard<std::mutex> lock(mu);
        advance(k);
        const FPoly& p = gpart ? gs[k] : hs[k];
        if (zdeg >= p.size()) return ctx->zero();
        return p[zdeg];
    }
};

} // namespace

std::pair<SeriesPoly, SeriesPoly> hensel_factors(const SeriesPoly& f, const FPoly& g0_in,
                                                 const FPoly& h0_in) {
    CtxPtr ctx = f.ctx;
    if (!g0_in.empty()) ctx = ctx_join(ctx, g0_in.front().ctx());
    if (!h0_in.empty()) ctx = ctx_join(ctx, h0_in.front().ctx());
    FPoly g0 = lift_poly(g0_in, ctx);
    FPoly h0 = lift_poly(h0_in, ctx);

    auto st = std::make_shared<HenselState>();
    st->f = f.lift_to(ctx);
    st->ctx = ctx;
    st->n = f.degree();

    int dg = pdeg(g0), dh = pdeg(h0);
    if (dg < 1 || dh < 1 || static_cast<std::size_t>(dg + dh) != st->n)
        throw error(errc::not_monic, "residue factors must be monic of matching degrees");
    if (!g0.back().is_one() || !h0.back().is_one())
        throw error(errc::not_monic, "residue factors must be monic");

    long e = 1;
    for (const auto& a : st->f.tail) {
        e = std::lcm(e, a.ram());
        if (a.lower() < 0) {
            OrdResult o = ord_scan(a, mpq_class(0));
            if (o.found() && o.value < 0)
                throw error(errc::not_integral, "polynomial has a coefficient of negative order");
        }
    }
    st->e = e;

    FPoly f0(st->n + 1, ctx->zero());
    f0[st->n] = ctx->one();
    for (std::size_t j = 0; j < st->n; ++j) f0[j] = st->f.tail[st->n - 1 - j].at(mpq_class(0));
    if (!peq(ptrim(std::move(f0)), pmul(g0, h0)))
        throw error(errc::internal, "residue factorization does not match the polynomial");

    PXgcd xg = pxgcd(g0, h0);
    if (pdeg(xg.g) != 0)
        throw error(errc::not_coprime, "residue factors share a common root");
    st->u = xg.s;
    st->v = xg.t;
    st->g0 = std::move(g0);
    st->h0 = std::move(h0);
    st->gs.push_back(st->g0);
    st->hs.push_back(st->h0);

    auto factor = [&](bool gpart, int deg) {
        SeriesPoly p;
        p.ctx = ctx;
        for (int i = 1; i <= deg; ++i) {
            std::size_t zdeg = static_cast<std::size_t>(deg - i);
            p.tail.push_back(PuiseuxSeries::lazy(
                ctx, e, mpq_class(0),
                [st, gpart, zdeg](const mpq_class& exp) { return st->coeff(gpart, zdeg, exp); }));
        }
        return p;
    };
    return {factor(true, dg), factor(false, dh)};
}

std::pair<SeriesPoly, SeriesPoly> hensel_lift(const SeriesPoly& f, const FPoly& g0,
                                              const FPoly& h0, const mpq_class& N) {
    auto [g, h] = hensel_factors(f, g0, h0);
    auto materialize = [&](SeriesPoly& p) {
        for (auto& a : p.tail) {
            LaurentMap terms;
            for (auto& [exp, c] : truncate_series(a, N)) terms.emplace(exp, c);
            a = PuiseuxSeries::finite(p.ctx, std::move(terms));
        }
    };
    materialize(g);
    materialize(h);
    return {g, h};
}

} // namespace nptk
