#include "nptk/puiseux.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace nptk {

namespace {


// ---- polynomials in z with series coefficients, dense low -> high ----
// Used for preprocessing (squarefree split, discriminant bound) where every
// coefficient has a finite or rational presentation, and for variable shifts.

using SP = std::vector<PuiseuxSeries>;

// ---- reduction of rational-function coefficients ----
// Fractions stay unreduced through series arithmetic; left alone, Euclidean
// remainder sequences blow up. A polynomial gcd in u = t^(1/e) keeps the
// presentations small.

// a -= c * t^shift * b
void lmap_submul(LaurentMap& a, const FieldElement& c, const mpq_class& shift,
                 const LaurentMap& b) {
    for (const auto& [e, v] : b) {
        mpq_class key = e + shift;
        auto it = a.find(key);
        if (it == a.end()) {
            FieldElement w = -(c * v);
            if (!w.is_zero()) a.emplace(std::move(key), std::move(w));
        } else {
            it->second = it->second - c * v;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

// polynomial remainder of a by b; both must have least exponent zero
LaurentMap lmap_rem(LaurentMap a, const LaurentMap& b) {
    FieldElement blinv = inv(b.rbegin()->second);
    while (!a.empty() && a.rbegin()->first >= b.rbegin()->first) {
        FieldElement c = a.rbegin()->second * blinv;
        lmap_submul(a, c, a.rbegin()->first - b.rbegin()->first, b);
    }
    return a;
}

LaurentMap lmap_divexact(LaurentMap a, const LaurentMap& b) {
    FieldElement blinv = inv(b.rbegin()->second);
    LaurentMap q;
    while (!a.empty()) {
        if (a.rbegin()->first - a.begin()->first < b.rbegin()->first - b.begin()->first)
            throw error(errc::internal, "inexact Laurent division");
        FieldElement c = a.rbegin()->second * blinv;
        mpq_class shift = a.rbegin()->first - b.rbegin()->first;
        lmap_submul(a, c, shift, b);
        q.emplace(std::move(shift), std::move(c));
    }
    return q;
}

// shift exponents so the least one is zero
LaurentMap lmap_unit(LaurentMap m) {
    if (m.empty() || m.begin()->first == 0) return m;
    mpq_class d = m.begin()->first;
    LaurentMap r;
    for (auto& [e, v] : m) r.emplace(e - d, std::move(v));
    return r;
}

bool lmap_all_rational(const LaurentMap& m) {
    for (const auto& [e, v] : m)
        if (!v.is_rational()) return false;
    return true;
}

// integer-coefficient gcd via the primitive PRS; Euclid over Q[u] explodes
using ZMap = std::map<mpq_class, mpz_class>;

ZMap zmap_primitive(ZMap m) {
    mpz_class g = 0;
    for (const auto& [e, v] : m) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
        for (auto& [e, v] : m) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return m;
}

// pseudo-remainder: cancel the lead with cross-multiplication, no fractions
ZMap zmap_prem(ZMap a, const ZMap& b) {
    const mpq_class deg_b = b.rbegin()->first;
    const mpz_class& lb = b.rbegin()->second;
    while (!a.empty() && a.rbegin()->first >= deg_b) {
        mpz_class la = a.rbegin()->second;
        mpq_class shift = a.rbegin()->first - deg_b;
        ZMap next;
        for (const auto& [e, v] : a) next[e] = v * lb;
        for (const auto& [e, v] : b) {
            auto it = next.find(e + shift);
            if (it == next.end())
                next.emplace(e + shift, -(v * la));
            else {
                it->second -= v * la;
                if (it->second == 0) next.erase(it);
            }
        }
        a = std::move(next);
    }
    return a;
}

// ---- modular gcd over Q[u] ----
// The primitive PRS below is the fallback; on the common paths (coprimality
// checks during squarefree splitting, fraction reduction) a machine-prime
// image settles the degree instantly and CRT + rational reconstruction
// recovers the few nontrivial gcds.

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t p) {
    std::uint64_t r = 1;
    for (; n; n >>= 1, a = mulmod(a, a, p))
        if (n & 1) r = mulmod(r, a, p);
    return r;
}

const std::vector<std::uint64_t>& prime_pool(std::size_t need) {
    static std::vector<std::uint64_t> pool;
    static mpz_class cur = (mpz_class(1) << 60);
    while (pool.size() < need) {
        mpz_nextprime(cur.get_mpz_t(), cur.get_mpz_t());
        pool.push_back(cur.get_ui());
    }
    return pool;
}

using ModPoly = std::vector<std::uint64_t>; // dense, low -> high, trimmed

ModPoly mod_trim(ModPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    a = mod_trim(std::move(a));
    b = mod_trim(std::move(b));
    while (!b.empty()) {
        std::uint64_t li = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t c = mulmod(a.back(), li, p);
            std::size_t k = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t s = mulmod(c, b[i], p);
                a[i + k] = a[i + k] >= s ? a[i + k] - s : a[i + k] + p - s;
            }
            a = mod_trim(std::move(a));
        }
        std::swap(a, b);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t li = powmod(a.back(), p - 2, p);
        for (auto& c : a) c = mulmod(c, li, p);
    }
    return a;
}

bool rat_recon(const mpz_class& a, const mpz_class& m, mpq_class& out) {
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
    mpz_class r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, s2 = s0 - q * s1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    if (s1 == 0 || abs(s1) > bound) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
    if (g != 1 && !(r1 == 0 && abs(s1) == 1)) return false;
    mpq_class v(r1, s1);
    v.canonicalize();
    out = v;
    return true;
}

// exact division check of a dense rational poly by a monic rational poly
bool rq_divides(std::vector<mpq_class> a, const std::vector<mpq_class>& g) {
    while (a.size() >= g.size()) {
        mpq_class c = a.back();
        std::size_t k = a.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) a[i + k] -= c * g[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (!a.empty() && a.size() < g.size()) return false;
    }
    return a.empty();
}

ZMap clear_to_zmap(const LaurentMap& m) {
    mpz_class l = 1;
    for (const auto& [e, v] : m) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                                         v.rational().get_den().get_mpz_t());
    ZMap z;
    for (const auto& [e, v] : m) {
        mpq_class q = v.rational() * l;
        z.emplace(e, q.get_num());
    }
    return zmap_primitive(std::move(z));
}

LaurentMap lmap_gcd_prs(const CtxPtr& ctx, ZMap a, ZMap b);

LaurentMap lmap_gcd_rational(const CtxPtr& ctx, const LaurentMap& am, const LaurentMap& bm) {
    ZMap a = clear_to_zmap(am), b = clear_to_zmap(bm);
    // common exponent lattice
    mpz_class lat = 1;
    for (const auto& [e, v] : a) mpz_lcm(lat.get_mpz_t(), lat.get_mpz_t(), e.get_den().get_mpz_t());
    for (const auto& [e, v] : b) mpz_lcm(lat.get_mpz_t(), lat.get_mpz_t(), e.get_den().get_mpz_t());
    long L = static_cast<long>(lat.get_si());
    auto dense = [&](const ZMap& m) {
        std::vector<mpz_class> d;
        for (const auto& [e, v] : m) {
            mpq_class ki = e * L;
            std::size_t k = static_cast<std::size_t>(mpz_class(ki.get_num()).get_ui());
            if (d.size() <= k) d.resize(k + 1);
            d[k] = v;
        }
        return d;
    };
    std::vector<mpz_class> da = dense(a), db = dense(b);
    auto reduce = [](const std::vector<mpz_class>& d, std::uint64_t p) {
        ModPoly r(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            r[i] = mpz_fdiv_ui(d[i].get_mpz_t(), p);
        return mod_trim(std::move(r));
    };
    std::size_t best_deg = SIZE_MAX;
    std::vector<mpz_class> crt;      // residues of the monic gcd image
    mpz_class modulus = 1;
    const std::size_t max_primes = 40;
    for (std::size_t pi = 0; pi < max_primes; ++pi) {
        std::uint64_t p = prime_pool(pi + 1)[pi];
        ModPoly ra = reduce(da, p), rb = reduce(db, p);
        if (ra.size() != da.size() || rb.size() != db.size()) continue; // lead vanished
        ModPoly g = mod_gcd(std::move(ra), std::move(rb), p);
        if (g.size() == 1) return {{mpq_class(0), ctx->one()}};
        if (g.size() > best_deg) continue; // unlucky prime
        if (g.size() < best_deg) {
            best_deg = g.size();
            crt.assign(g.size(), 0);
            modulus = 1;
        }
        // CRT combine
        mpz_class pz(static_cast<unsigned long>(p));
        if (modulus == 1) {
            for (std::size_t i = 0; i < g.size(); ++i)
                crt[i] = mpz_class(static_cast<unsigned long>(g[i]));
            modulus = pz;
        } else {
            mpz_class mi;
            mpz_invert(mi.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
            for (std::size_t i = 0; i < g.size(); ++i) {
                mpz_class gi(static_cast<unsigned long>(g[i]));
                mpz_class diff = ((gi - crt[i]) % pz + pz) % pz;
                crt[i] = crt[i] + modulus * ((diff * mi) % pz);
            }
            modulus *= pz;
        }
        // attempt rational reconstruction
        std::vector<mpq_class> cand(best_deg);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < best_deg && ok; ++i) ok = rat_recon(crt[i], modulus, cand[i]);
        if (!ok) continue;
        cand[best_deg - 1] = 1;
        auto rq = [](const std::vector<mpz_class>& d) {
            std::vector<mpq_class> r(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) r[i] = mpq_class(d[i]);
            return r;
        };
        if (!rq_divides(rq(da), cand) || !rq_divides(rq(db), cand)) continue;
        LaurentMap out;
        for (std::size_t i = 0; i < best_deg; ++i)
            if (cand[i] != 0) {
                mpq_class e(static_cast<long>(i), L);
                e.canonicalize();
                out.emplace(std::move(e), ctx->from_rational(cand[i]));
            }
        return out;
    }
    return lmap_gcd_prs(ctx, std::move(a), std::move(b));
}

LaurentMap lmap_gcd_prs(const CtxPtr& ctx, ZMap a, ZMap b) {
    while (!b.empty()) {
        ZMap r = zmap_primitive(zmap_prem(std::move(a), b));
        if (!r.empty() && r.begin()->first > 0) {
            mpq_class d = r.begin()->first;
            ZMap s;
            for (auto& [e, v] : r) s.emplace(e - d, std::move(v));
            r = std::move(s);
        }
        a = std::move(b);
        b = std::move(r);
    }
    LaurentMap out;
    mpq_class lead = a.rbegin()->second;
    for (const auto& [e, v] : a) out.emplace(e, ctx->from_rational(mpq_class(v) / lead));
    return out;
}

// monic gcd as polynomials in u, up to monomial units
LaurentMap lmap_gcd(LaurentMap a, LaurentMap b) {
    a = lmap_unit(std::move(a));
    b = lmap_unit(std::move(b));
    if (a.empty() || b.empty()) return a.empty() ? b : a;
    const CtxPtr& ctx = a.begin()->second.ctx();
    if (ctx->characteristic() == 0 && lmap_all_rational(a) && lmap_all_rational(b))
        return lmap_gcd_rational(ctx, a, b);
    while (!b.empty()) {
        LaurentMap r = lmap_unit(lmap_rem(std::move(a), b));
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && !a.rbegin()->second.is_one()) {
        FieldElement s = inv(a.rbegin()->second);
        for (auto& [e, v] : a) v = v * s;
    }
    return a;
}

PuiseuxSeries fc_normalize(const PuiseuxSeries& s) {
    if (!s.valid() || s.kind() != SeriesKind::rational_function) return s;
    auto [num, den] = s.as_fraction();
    LaurentMap g = lmap_gcd(num, den);
    if (g.size() > 1) {
        num = lmap_divexact(std::move(num), g);
        den = lmap_divexact(std::move(den), g);
    }
    if (!den.rbegin()->second.is_one()) {
        FieldElement sc = inv(den.rbegin()->second);
        for (auto& [e, v] : num) v = v * sc;
        for (auto& [e, v] : den) v = v * sc;
    }
    return PuiseuxSeries::rational(s.ctx(), std::move(num), std::move(den));
}

SP sp_trim(SP a) {
    while (!a.empty() && a.back().is_exact_zero()) a.pop_back();
    for (auto& c : a) c = fc_normalize(c);
    return a;
}

int sp_deg(const SP& a) { return static_cast<int>(a.size()) - 1; }



SP sp_scale(const SP& a, const PuiseuxSeries& c) {
    SP r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    return sp_trim(std::move(r));
}

SP sp_deriv(const SP& a) {
    if (a.size() <= 1) return {};
    const CtxPtr& c = a[0].ctx();
    SP r;
    r.reserve(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(a[i] * PuiseuxSeries::constant(c->from_int(static_cast<long>(i))));
    return sp_trim(std::move(r));
}

std::pair<SP, SP> sp_divmod(const SP& a, const SP& b) {
    if (b.empty()) throw error(errc::division_by_zero, "series polynomial division by zero");
    PuiseuxSeries linv = invert(b.back(), mpq_class(0));
    SP r = a, q;
    if (sp_deg(r) >= sp_deg(b)) q.assign(a.size() - b.size() + 1, PuiseuxSeries::zero(b[0].ctx()));
    while (sp_deg(r) >= sp_deg(b)) {
        std::size_t k = r.size() - b.size();
        PuiseuxSeries c = r.back() * linv;
        q[k] = c;
        for (std::size_t i = 0; i + 1 < b.size(); ++i) r[i + k] = r[i + k] - c * b[i];
        r.pop_back();
        r = sp_trim(std::move(r));
    }
    return {sp_trim(std::move(q)), std::move(r)};
}

SP sp_monic(const SP& a) {
    if (a.empty()) return a;
    return sp_scale(a, invert(a.back(), mpq_class(0)));
}

// fraction-free gcd in z for polynomials whose coefficients are finite
// Laurent polynomials over Q: the primitive PRS avoids series inversion,
// and the content gcds hit the modular fast path above.
bool sp_finite_rational(const SP& a) {
    for (const auto& c : a) {
        if (!c.valid()) continue;
        if (c.kind() != SeriesKind::finite_laurent) return false;
        if (!lmap_all_rational(c.as_fraction().first)) return false;
    }
    return true;
}

LaurentMap lmul(const LaurentMap& a, const LaurentMap& b, const CtxPtr& c);

LaurentMap lmap_sub(LaurentMap a, const LaurentMap& b) {
    for (const auto& [e, v] : b) {
        auto it = a.find(e);
        if (it == a.end())
            a.emplace(e, -v);
        else {
            it->second = it->second - v;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    return a;
}

using LPoly = std::vector<LaurentMap>; // z-coefficients, low -> high

LPoly lp_trim(LPoly a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
    return a;
}

void lp_remove_content(LPoly& a, const CtxPtr& ctx) {
    LaurentMap g;
    for (const auto& c : a) {
        if (c.empty()) continue;
        g = g.empty() ? lmap_unit(c) : lmap_gcd(g, c);
        if (g.size() == 1) break;
    }
    if (g.size() <= 1) {
        // divide out the monomial unit only
        if (a.empty()) return;
        mpq_class sh = 0;
        bool first = true;
        for (const auto& c : a)
            if (!c.empty()) {
                sh = first ? c.begin()->first : std::min(sh, c.begin()->first);
                first = false;
            }
        if (sh == 0) return;
        for (auto& c : a) {
            LaurentMap r;
            for (auto& [e, v] : c) r.emplace(e - sh, std::move(v));
            c = std::move(r);
        }
        return;
    }
    for (auto& c : a)
        if (!c.empty()) c = lmap_divexact(std::move(c), g);
    (void)ctx;
}

LPoly lp_prem(LPoly a, const LPoly& b, const CtxPtr& ctx) {
    const LaurentMap& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        LaurentMap la = a.back();
        std::size_t k = a.size() - b.size();
        LPoly next(a.size() - 1);
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
            next[i] = lmul(a[i], lb, ctx);
            if (i >= k) next[i] = lmap_sub(std::move(next[i]), lmul(la, b[i - k], ctx));
        }
        a = lp_trim(std::move(next));
    }
    return a;
}

SP sp_gcd(SP a, SP b) {
    a = sp_trim(std::move(a));
    b = sp_trim(std::move(b));
    if (!a.empty() && !b.empty() && a[0].ctx()->characteristic() == 0 &&
        sp_finite_rational(a) && sp_finite_rational(b)) {
        const CtxPtr& ctx = a[0].ctx();
        auto lift = [](const SP& s) {
            LPoly r(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[i].as_fraction().first;
            return r;
        };
        LPoly x = lift(a), y = lift(b);
        if (x.size() < y.size()) std::swap(x, y);
        lp_remove_content(x, ctx);
        lp_remove_content(y, ctx);
        while (!y.empty()) {
            LPoly r = lp_prem(std::move(x), y, ctx);
            lp_remove_content(r, ctx);
            x = std::move(y);
            y = std::move(r);
        }
        if (x.size() <= 1) return {PuiseuxSeries::one(ctx)};
        SP g(x.size(), PuiseuxSeries::zero(ctx));
        for (std::size_t i = 0; i < x.size(); ++i)
            g[i] = PuiseuxSeries::finite(ctx, std::move(x[i]));
        return sp_monic(g);
    }
    while (!b.empty()) {
        SP r = sp_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return sp_monic(a);
}

// ---- p-th roots of finitely presented series (for squarefree splitting) ----

LaurentMap lmul(const LaurentMap& a, const LaurentMap& b, const CtxPtr& c) {
    LaurentMap r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            FieldElement v = ca * cb;
            auto it = r.find(ea + eb);
            if (it == r.end())
                r.emplace(ea + eb, v);
            else
                it->second = it->second + v;
        }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.is_zero() ? r.erase(it) : std::next(it);
    (void)c;
    return r;
}

PuiseuxSeries series_pth_root(const PuiseuxSeries& s, unsigned long p) {
    const CtxPtr& c = s.ctx();
    if (s.is_exact_zero()) return s;
    auto [num, den] = s.as_fraction();
    // (n/d)^(1/p) = (n d^(p-1))^(1/p) / d
    LaurentMap m = num;
    for (unsigned long i = 1; i < p; ++i) m = lmul(m, den, c);
    LaurentMap root;
    for (const auto& [e, v] : m) {
        mpq_class ep = e / static_cast<long>(p);
        if (!(ep * static_cast<long>(p) == e))
            throw error(errc::internal, "series is not a p-th power");
        root.emplace(ep, pth_root(v));
    }
    return PuiseuxSeries::rational(c, std::move(root), std::move(den));
}

// Squarefree decomposition of a monic polynomial with finitely presented
// series coefficients; characteristic-aware (Musser with p-th root descent).
void sqfree_sp(const SP& f_in, int mult, std::vector<std::pair<SP, int>>& out) {
    SP f = sp_trim(f_in);
    if (sp_deg(f) <= 0) return;
    const CtxPtr& c = f[0].ctx();
    unsigned long p = c->characteristic();
    SP fp = sp_deriv(f);
    if (fp.empty()) {
        SP g((f.size() - 1) / p + 1, PuiseuxSeries::zero(c));
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i % p == 0)
                g[i / p] = series_pth_root(f[i], p);
            else if (!f[i].is_exact_zero())
                throw error(errc::internal, "vanishing derivative with stray coefficients");
        }
        sqfree_sp(g, mult * static_cast<int>(p), out);
        return;
    }
    SP g = sp_gcd(f, fp);
    SP w = sp_divmod(f, g).first;
    int i = 1;
    while (sp_deg(w) > 0) {
        SP y = sp_gcd(w, g);
        SP z = sp_divmod(w, y).first;
        if (sp_deg(z) > 0) out.emplace_back(sp_monic(z), mult * i);
        g = sp_divmod(g, y).first;
        w = std::move(y);
        ++i;
    }
    if (sp_deg(g) > 0) sqfree_sp(g, mult * static_cast<int>(p), out);
}

mpq_class ord_of(const PuiseuxSeries& s) {
    OrdResult o = ord_scan(s, mpq_class(0));
    if (!o.found()) throw error(errc::internal, "order of a zero coefficient");
    return o.value;
}

// ord of res(a, b) for finitely presented coefficients, via the Euclidean
// reduction res(a,b) = ±lc(b)^(deg a - deg r) res(b, r).
mpq_class ord_res(SP a, SP b) {
    a = sp_trim(std::move(a));
    b = sp_trim(std::move(b));
    if (b.empty()) throw error(errc::internal, "zero resultant");
    if (sp_deg(b) == 0) return mpq_class(sp_deg(a)) * ord_of(b[0]);
    SP r = sp_divmod(a, b).second;
    if (r.empty()) throw error(errc::internal, "zero resultant");
    mpq_class step = mpq_class(sp_deg(a) - sp_deg(r)) * ord_of(b.back());
    return step + ord_res(std::move(b), std::move(r));
}

// ---- conversions and variable shifts ----

SP to_full(const SeriesPoly& f) {
    std::size_t n = f.degree();
    SP c(n + 1, PuiseuxSeries::zero(f.ctx));
    c[n] = PuiseuxSeries::one(f.ctx);
    for (std::size_t j = 0; j < n; ++j) c[j] = f.tail[n - 1 - j];
    return c;
}

// Leading coefficient must be exactly one.
SeriesPoly from_full(const SP& c, const CtxPtr& ctx) {
    SeriesPoly f;
    f.ctx = ctx;
    std::size_t n = c.size() - 1;
    for (std::size_t i = 1; i <= n; ++i) f.tail.push_back(c[n - i]);
    return f;
}

// f(y + s) by Horner.
SP spoly_shift(const SP& f, const PuiseuxSeries& s) {
    const CtxPtr& c = f[0].ctx();
    SP acc = {f.back()};
    for (std::size_t j = f.size() - 1; j-- > 0;) {
        SP next(acc.size() + 1, PuiseuxSeries::zero(c));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] = next[k + 1] + acc[k];
            next[k] = next[k] + acc[k] * s;
        }
        next[0] = next[0] + f[j];
        acc = std::move(next);
    }
    return acc;
}

long lcm_upto(std::size_t n) {
    long l = 1;
    for (std::size_t i = 2; i <= n; ++i) l = std::lcm(l, static_cast<long>(i));
    return l;
}

struct Solver {
    unsigned long p;
    long max_ram;
    int max_depth;

    [[noreturn]] void overrun(const char* what) const {
        if (p)
            throw error(errc::wild_ramification, what);
        throw error(errc::limit_exceeded, what);
    }

    std::vector<PuiseuxSeries> solve(const SeriesPoly& f, const mpq_class& B, int depth,
                                     long ram) const {
        std::size_t n = f.degree();
        const CtxPtr& ctx = f.ctx;
        if (n == 0) return {};
        if (n == 1) return {-f.tail[0]};
        if (depth > max_depth) overrun("recentering depth limit hit");

        SeriesPoly cur = f;
        PuiseuxSeries shift = PuiseuxSeries::zero(ctx);
        OrdResult o1 = ord_scan(f.tail[0], B);
        if (o1.found() && (p == 0 || n % p != 0)) {
            auto [f2, s] = tschirnhausen(f);
            cur = std::move(f2);
            shift = std::move(s);
        }

        SplitOutcome out = split_once(cur, B);
        std::vector<PuiseuxSeries> ys;
        if (out.kind == SplitOutcome::Kind::pure_root) {
            ys.assign(n, PuiseuxSeries::zero(ctx));
        } else {
            long den = static_cast<long>(out.r.get_den().get_si());
            long ram2 = std::lcm(ram, den);
            if (ram2 > max_ram) overrun("ramification index limit hit");
            if (out.kind == SplitOutcome::Kind::ramify) {
                if (p == 0)
                    throw error(errc::internal, "repeated residue root of a squarefree input");
                SP full = spoly_shift(to_full(out.q), PuiseuxSeries::constant(out.alpha));
                for (auto y : solve(from_full(full, out.ctx), B - out.r, depth + 1, ram2))
                    ys.push_back(reindex(PuiseuxSeries::constant(out.alpha) + y, 1, out.r));
            } else {
                for (auto y : solve(out.g, B - out.r, depth + 1, ram2))
                    ys.push_back(reindex(y, 1, out.r));
                for (auto y : solve(out.h, B - out.r, depth + 1, ram2))
                    ys.push_back(reindex(y, 1, out.r));
            }
        }
        for (auto& y : ys) y = y - shift;
        return ys;
    }
};

bool terms_less(const std::vector<std::pair<mpq_class, FieldElement>>& a,
                const std::vector<std::pair<mpq_class, FieldElement>>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int c = cmp(a[i].first, b[i].first);
        if (c != 0) return c < 0;
        int v = val_cmp(a[i].second.val(), b[i].second.val());
        if (v != 0) return v < 0;
    }
    return a.size() > b.size(); // longer expansions (smaller tail order) first
}

} // namespace

std::pair<SeriesPoly, PuiseuxSeries> tschirnhausen(const SeriesPoly& f) {
    std::size_t n = f.degree();
    if (n == 0) throw error(errc::degree_zero, "cannot shift a constant polynomial");
    unsigned long p = f.ctx->characteristic();
    if (p && n % p == 0)
        throw error(errc::char_divides_degree,
                    "characteristic divides the degree, a_1/n is undefined");
    PuiseuxSeries s =
        f.tail[0] * PuiseuxSeries::constant(inv(f.ctx->from_int(static_cast<long>(n))));
    SP full = spoly_shift(to_full(f), -s);
    SeriesPoly g = from_full(full, f.ctx);
    g.tail[0] = PuiseuxSeries::zero(f.ctx); // exactly zero by construction
    return {std::move(g), std::move(s)};
}

mpq_class newton_slope(const SeriesPoly& f, const mpq_class& scan_bound) {
    bool have = false, unresolved = false;
    mpq_class best;
    for (std::size_t i = 1; i <= f.degree(); ++i) {
        OrdResult o = ord_scan(f.coeff(i), scan_bound);
        if (o.found()) {
            mpq_class ri = o.value / static_cast<long>(i);
            if (!have || ri < best) best = ri;
            have = true;
        } else if (o.status == OrdResult::Status::zero_to_bound) {
            unresolved = true;
        }
    }
    if (!have) {
        if (unresolved)
            throw error(errc::unresolved_order, "coefficient orders unresolved at the scan bound");
        throw error(errc::all_coefficients_zero, "every coefficient is zero");
    }
    return best;
}

SplitOutcome split_once(const SeriesPoly& f, const mpq_class& scan_bound) {
    std::size_t n = f.degree();
    const CtxPtr& ctx = f.ctx;
    SplitOutcome out;

    mpq_class r;
    try {
        r = newton_slope(f, scan_bound);
    } catch (const error& e) {
        if (e.code() != errc::all_coefficients_zero && e.code() != errc::unresolved_order) throw;
        out.kind = SplitOutcome::Kind::pure_root;
        out.ctx = ctx;
        return out;
    }
    out.r = r;

    // z = t^r y; the substituted polynomial has integral coefficients
    SeriesPoly q;
    q.ctx = ctx;
    for (std::size_t i = 1; i <= n; ++i)
        q.tail.push_back(reindex(f.coeff(i), 1, -r * static_cast<long>(i)));

    FPoly q0(n + 1, ctx->zero());
    q0[n] = ctx->one();
    for (std::size_t i = 1; i <= n; ++i) q0[n - i] = q.coeff(i).at(mpq_class(0));
    SplitResult sr = poly_split(ctx, q0);
    out.ctx = sr.ctx;
    out.q = q.lift_to(sr.ctx);

    if (sr.roots.size() == 1 && static_cast<std::size_t>(sr.roots[0].mult) == n) {
        out.kind = SplitOutcome::Kind::ramify;
        out.alpha = sr.roots[0].root;
        return out;
    }

    const FieldElement& alpha = sr.roots[0].root;
    int m = sr.roots[0].mult;
    FPoly g0 = from_root(alpha);
    for (int i = 1; i < m; ++i) g0 = pmul(g0, from_root(alpha));
    FPoly q0l(q0.size(), sr.ctx->zero());
    for (std::size_t i = 0; i < q0.size(); ++i) q0l[i] = FieldElement(sr.ctx, q0[i].val());
    FPoly h0 = pquo(q0l, g0);
    auto [g, h] = hensel_factors(out.q, g0, h0);
    out.kind = SplitOutcome::Kind::split;
    out.g = std::move(g);
    out.h = std::move(h);
    return out;
}

std::vector<RootBranch> puiseux_roots(const SeriesPoly& f, const mpq_class& N,
                                      const SolveLimits& limits) {
    std::size_t n = f.degree();
    if (n == 0) return {};
    for (const auto& a : f.tail)
        if (a.kind() == SeriesKind::lazy_derived)
            throw error(errc::unsupported_field, "coefficients must be finitely presented");

    Solver sv;
    sv.p = f.ctx->characteristic();
    sv.max_ram = limits.max_ramification
                     ? limits.max_ramification
                     : static_cast<long>(n) * lcm_upto(n);
    sv.max_depth = limits.max_depth;

    std::vector<std::pair<SP, int>> factors;
    sqfree_sp(to_full(f), 1, factors);

    std::size_t degsum = 0;
    std::vector<RootBranch> branches;
    for (const auto& [g, mult] : factors) {
        std::size_t dg = static_cast<std::size_t>(sp_deg(g));
        degsum += dg * static_cast<std::size_t>(mult);
        mpq_class B = static_cast<long>(n) * N + 4;
        if (dg >= 2) B += ord_res(g, sp_deriv(g));
        auto roots = sv.solve(from_full(g, f.ctx), B, 0, 1);
        if (roots.size() != dg)
            throw error(errc::internal, "lost a root branch");
        for (auto& root : roots) {
            RootBranch b;
            b.ctx = root.ctx();
            b.terms = truncate_series(root, N);
            b.root = std::move(root);
            b.multiplicity = mult;
            b.e = 1;
            for (const auto& [exp, c] : b.terms)
                b.e = std::lcm(b.e, static_cast<long>(exp.get_den().get_si()));
            branches.push_back(std::move(b));
        }
    }
    if (degsum != n) throw error(errc::internal, "multiplicity bookkeeping failed");

    std::stable_sort(branches.begin(), branches.end(),
                     [](const RootBranch& a, const RootBranch& b) {
                         return terms_less(a.terms, b.terms);
                     });
    return branches;
}

VerifyResult verify_root(const SeriesPoly& f, const RootBranch& b, const mpq_class& N) {
    CtxPtr c = ctx_join(f.ctx, b.ctx);
    LaurentMap m;
    for (const auto& [exp, v] : b.terms) m.emplace(exp, FieldElement(c, v.val()));
    PuiseuxSeries s = PuiseuxSeries::finite(c, std::move(m));
    PuiseuxSeries res = eval_poly(f.lift_to(c), s);

    VerifyResult vr;
    mpq_class lead = b.terms.empty() ? mpq_class(0) : b.terms.front().first;
    vr.required = N - mpq_class(static_cast<long>(f.degree()) - 1) * abs(lead);
    OrdResult o = ord_scan(res, N);
    vr.exact_zero = o.status == OrdResult::Status::exact_zero;
    vr.ord_bound = o.found() ? o.value : N;
    vr.passed = vr.ord_bound >= vr.required || vr.exact_zero;
    return vr;
}

} // namespace nptk
