#include "nptk/polynomial.hpp"

#include <algorithm>

namespace nptk {

namespace {

CtxPtr poly_ctx(const FPoly& f) {
    if (f.empty()) throw error(errc::internal, "ctx of zero polynomial");
    return f.front().ctx();
}

} // namespace

FPoly ptrim(FPoly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

int pdeg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

FPoly pconst(const CtxPtr& ctx, const FieldElement& c) {
    if (c.is_zero()) return {};
    return {FieldElement(ctx, c.val())};
}

FPoly pvar(const CtxPtr& ctx) { return {ctx->zero(), ctx->one()}; }

FPoly from_root(const FieldElement& r) { return {-r, r.ctx()->one()}; }

FPoly padd(const FPoly& a, const FPoly& b) {
    FPoly out(std::max(a.size(), b.size()));
    CtxPtr ctx = a.empty() ? (b.empty() ? nullptr : poly_ctx(b)) : poly_ctx(a);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size() && i < b.size())
            out[i] = a[i] + b[i];
        else if (i < a.size())
            out[i] = a[i];
        else
            out[i] = b[i];
    }
    return ptrim(std::move(out));
}

FPoly pneg(const FPoly& a) {
    FPoly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

FPoly psub(const FPoly& a, const FPoly& b) { return padd(a, pneg(b)); }

FPoly pmul(const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    CtxPtr ctx = ctx_join(poly_ctx(a), poly_ctx(b));
    FPoly out(a.size() + b.size() - 1, ctx->zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    return ptrim(std::move(out));
}

FPoly pscale(const FPoly& a, const FieldElement& c) {
    if (c.is_zero()) return {};
    FPoly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
    return ptrim(std::move(out));
}

bool peq(const FPoly& a, const FPoly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

std::pair<FPoly, FPoly> pdivmod(const FPoly& f, const FPoly& g) {
    if (g.empty()) throw error(errc::division_by_zero, "polynomial division by zero");
    FPoly r = f, q;
    FieldElement linv = inv(g.back());
    CtxPtr ctx = poly_ctx(g);
    while (!r.empty() && r.size() >= g.size()) {
        std::size_t k = r.size() - g.size();
        FieldElement c = r.back() * linv;
        if (q.size() < k + 1) q.resize(k + 1, ctx->zero());
        q[k] = q[k] + c;
        for (std::size_t i = 0; i < g.size(); ++i)
            r[k + i] = r[k + i] - c * g[i];
        r = ptrim(std::move(r));
    }
    return {ptrim(std::move(q)), std::move(r)};
}

FPoly pmod(const FPoly& f, const FPoly& g) { return pdivmod(f, g).second; }
FPoly pquo(const FPoly& f, const FPoly& g) { return pdivmod(f, g).first; }

FPoly pmonic(const FPoly& f) {
    if (f.empty()) return f;
    return pscale(f, inv(f.back()));
}

FPoly pgcd(const FPoly& a0, const FPoly& b0) {
    FPoly a = ptrim(a0), b = ptrim(b0);
    while (!b.empty()) {
        FPoly r = pmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a);
}

PXgcd pxgcd(const FPoly& a0, const FPoly& b0) {
    FPoly a = ptrim(a0), b = ptrim(b0);
    CtxPtr ctx = a.empty() ? (b.empty() ? nullptr : poly_ctx(b)) : poly_ctx(a);
    FPoly s0 = {ctx->one()}, s1 = {};
    FPoly t0 = {}, t1 = {ctx->one()};
    while (!b.empty()) {
        auto [q, r] = pdivmod(a, b);
        FPoly ns = psub(s0, pmul(q, s1));
        FPoly nt = psub(t0, pmul(q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (!a.empty()) {
        FieldElement linv = inv(a.back());
        a = pscale(a, linv);
        s0 = pscale(s0, linv);
        t0 = pscale(t0, linv);
    }
    return PXgcd{std::move(a), std::move(s0), std::move(t0)};
}

FPoly pderiv(const FPoly& f) {
    if (f.size() < 2) return {};
    CtxPtr ctx = poly_ctx(f);
    FPoly out(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i - 1] = f[i] * ctx->from_int(static_cast<long>(i));
    return ptrim(std::move(out));
}

FieldElement peval(const FPoly& f, const FieldElement& x) {
    if (f.empty()) return x.ctx()->zero();
    FieldElement acc = f.back();
    for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * x + f[i];
    return acc;
}

FPoly ppowmod(const FPoly& base, const mpz_class& e, const FPoly& mod) {
    CtxPtr ctx = poly_ctx(mod);
    FPoly acc = {ctx->one()};
    FPoly b = pmod(base, mod);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = pmod(pmul(acc, b), mod);
        b = pmod(pmul(b, b), mod);
        k >>= 1;
    }
    return acc;
}

FPoly pshift(const FPoly& f, const FieldElement& a) {
    if (f.empty() || a.is_zero()) return f;
    // Horner: f(x + a) built from the top coefficient down.
    CtxPtr ctx = ctx_join(poly_ctx(f), a.ctx());
    FPoly xa = {FieldElement(ctx, a.val()), ctx->one()};
    FPoly acc = {};
    for (std::size_t i = f.size(); i-- > 0;)
        acc = padd(pmul(acc, xa), pconst(ctx, f[i]));
    return acc;
}

namespace {

// f = g(x^p) -> g, via coefficient p-th roots (finite fields are perfect).
FPoly p_th_root_poly(const FPoly& f, unsigned long p) {
    FPoly g;
    for (std::size_t i = 0; i < f.size(); i += p) g.push_back(pth_root(f[i]));
    return ptrim(std::move(g));
}

} // namespace

std::vector<std::pair<FPoly, int>> sqfree_decompose(const FPoly& f_in) {
    FPoly f = ptrim(f_in);
    std::vector<std::pair<FPoly, int>> out;
    if (pdeg(f) < 1) return out;
    f = pmonic(f);
    unsigned long p = poly_ctx(f)->characteristic();

    FPoly df = pderiv(f);
    if (df.empty()) {
        if (p == 0) throw error(errc::internal, "zero derivative in characteristic 0");
        auto inner = sqfree_decompose(p_th_root_poly(f, p));
        for (auto& [g, m] : inner) out.emplace_back(g, m * static_cast<int>(p));
        return out;
    }

    FPoly g = pgcd(f, df);
    FPoly w = pquo(f, g);
    int i = 1;
    while (pdeg(w) > 0) {
        FPoly y = pgcd(w, g);
        FPoly z = pquo(w, y);
        if (pdeg(z) > 0) out.emplace_back(pmonic(z), i);
        ++i;
        w = std::move(y);
        g = pquo(g, w);
        if (p > 0 && i > 2 * static_cast<int>(f.size())) break; // safety
    }
    if (pdeg(g) > 0) {
        if (p == 0) throw error(errc::internal, "squarefree decomposition leftover in char 0");
        auto inner = sqfree_decompose(p_th_root_poly(g, p));
        for (auto& [h, m] : inner) out.emplace_back(h, m * static_cast<int>(p));
    }
    return out;
}

namespace {

FPoly random_poly_below(const CtxPtr& ctx, int deg, std::mt19937& rng) {
    FPoly out(static_cast<std::size_t>(deg));
    for (auto& c : out) c = ctx->random_element(rng);
    return ptrim(std::move(out));
}

void edf(const FPoly& f, int d, std::mt19937& rng, std::vector<FPoly>& out) {
    if (pdeg(f) == d) {
        out.push_back(pmonic(f));
        return;
    }
    CtxPtr ctx = f.front().ctx();
    unsigned long p = ctx->characteristic();
    mpz_class q = ctx->order();
    for (;;) {
        FPoly a = random_poly_below(ctx, pdeg(f), rng);
        if (a.empty()) continue;
        FPoly t;
        if (p != 2) {
            mpz_class qd;
            mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
            FPoly b = ppowmod(a, (qd - 1) / 2, f);
            t = pgcd(psub(b, {ctx->one()}), f);
        } else {
            // Trace map over F_2: sum of a^(2^i), i < d * [F:F_2].
            unsigned long m = ctx->total_degree() * static_cast<unsigned long>(d);
            FPoly b = pmod(a, f);
            FPoly s = b;
            for (unsigned long i = 1; i < m; ++i) {
                b = pmod(pmul(b, b), f);
                s = padd(s, b);
            }
            t = pgcd(s, f);
        }
        if (pdeg(t) > 0 && pdeg(t) < pdeg(f)) {
            edf(t, d, rng, out);
            edf(pquo(f, t), d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<FPoly> factor_squarefree_ff(const FPoly& f_in, std::mt19937& rng) {
    FPoly f = pmonic(ptrim(f_in));
    if (pdeg(f) < 1) throw error(errc::degree_zero, "factoring a constant");
    CtxPtr ctx = f.front().ctx();
    if (ctx->characteristic() == 0)
        throw error(errc::wrong_characteristic, "finite-field factorization in char 0");
    mpz_class q = ctx->order();
    std::vector<FPoly> out;
    FPoly rest = f;
    FPoly x = pvar(ctx);
    FPoly h = x;
    int d = 0;
    while (pdeg(rest) >= 1) {
        ++d;
        if (2 * d > pdeg(rest)) {
            out.push_back(rest);
            break;
        }
        h = ppowmod(h, q, rest);
        FPoly g = pgcd(psub(h, x), rest);
        if (pdeg(g) > 0) {
            edf(g, d, rng, out);
            rest = pquo(rest, g);
            h = pmod(h, rest);
        }
    }
    return out;
}

} // namespace nptk
