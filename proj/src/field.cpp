#include "nptk/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "nptk/polynomial.hpp"

namespace nptk {

namespace {

Val base_zero() { return Val{}; }

Val base_q(mpq_class x) {
    Val v;
    v.q = std::move(x);
    return v;
}

Val base_r(unsigned long x) {
    Val v;
    v.r = x;
    return v;
}

unsigned long mod_inv(unsigned long a, unsigned long p) {
    if (a == 0) throw error(errc::division_by_zero, "inverse of 0 mod p");
    long t = 0, nt = 1;
    long r = static_cast<long>(p), nr = static_cast<long>(a);
    while (nr != 0) {
        long qq = r / nr;
        long tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<long>(p);
    return static_cast<unsigned long>(t);
}

// Collapse a coefficient vector at level `lvl` into canonical Val form.
Val normv(int lvl, std::vector<Val> c) {
    while (!c.empty() && val_is_zero(c.back())) c.pop_back();
    if (c.empty()) return base_zero();
    if (c.size() == 1) return std::move(c[0]);
    Val v;
    v.lvl = lvl;
    v.c = std::move(c);
    return v;
}

// View of `v` as a coefficient vector at level `lvl` (constants widen).
std::vector<Val> as_coeffs(int lvl, const Val& v) {
    if (v.lvl == lvl) return v.c;
    return {v};
}

struct Arith {
    const FieldCtx* ctx;
    unsigned long p;

    Val add(const Val& a, const Val& b) const {
        int L = std::max(a.lvl, b.lvl);
        if (L == 0) {
            if (p == 0) return base_q(a.q + b.q);
            return base_r((a.r + b.r) % p);
        }
        auto ca = as_coeffs(L, a), cb = as_coeffs(L, b);
        std::vector<Val> out(std::max(ca.size(), cb.size()));
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Val za = i < ca.size() ? ca[i] : base_zero();
            const Val zb = i < cb.size() ? cb[i] : base_zero();
            out[i] = add(za, zb);
        }
        return normv(L, std::move(out));
    }

    Val neg(const Val& a) const {
        if (a.lvl == 0) {
            if (p == 0) return base_q(-a.q);
            return base_r(a.r == 0 ? 0 : p - a.r);
        }
        std::vector<Val> out(a.c.size());
        for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = neg(a.c[i]);
        return normv(a.lvl, std::move(out));
    }

    Val sub(const Val& a, const Val& b) const { return add(a, neg(b)); }

    // Remainder of the coefficient vector modulo the level-(L-1) minpoly.
    std::vector<Val> reduce(int L, std::vector<Val> c) const {
        const std::vector<Val>& m = ctx->minpoly(static_cast<std::size_t>(L - 1));
        const std::size_t dm = m.size() - 1;
        while (c.size() > dm) {
            Val lead = std::move(c.back());
            c.pop_back();
            if (val_is_zero(lead)) continue;
            const std::size_t off = c.size() - dm;
            for (std::size_t i = 0; i < dm; ++i)
                c[off + i] = sub(c[off + i], mul(lead, m[i]));
        }
        return c;
    }

    Val mul(const Val& a, const Val& b) const {
        int L = std::max(a.lvl, b.lvl);
        if (L == 0) {
            if (p == 0) return base_q(a.q * b.q);
            return base_r((a.r * b.r) % p);
        }
        if (val_is_zero(a) || val_is_zero(b)) return base_zero();
        auto ca = as_coeffs(L, a), cb = as_coeffs(L, b);
        std::vector<Val> out(ca.size() + cb.size() - 1, base_zero());
        for (std::size_t i = 0; i < ca.size(); ++i)
            for (std::size_t j = 0; j < cb.size(); ++j)
                out[i + j] = add(out[i + j], mul(ca[i], cb[j]));
        return normv(L, reduce(L, std::move(out)));
    }

    // Extended Euclid on coefficient vectors at level L (coefficients level < L).
    // Returns (g, s, t) with s*a + t*b = g, g monic unless zero.
    struct VX {
        std::vector<Val> g, s, t;
    };

    static int vdeg(const std::vector<Val>& v) {
        int d = static_cast<int>(v.size()) - 1;
        while (d >= 0 && val_is_zero(v[static_cast<std::size_t>(d)])) --d;
        return d;
    }

    std::vector<Val> vtrim(std::vector<Val> v) const {
        while (!v.empty() && val_is_zero(v.back())) v.pop_back();
        return v;
    }

    std::vector<Val> vadd(const std::vector<Val>& a, const std::vector<Val>& b) const {
        std::vector<Val> out(std::max(a.size(), b.size()), base_zero());
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < a.size()) out[i] = add(out[i], a[i]);
            if (i < b.size()) out[i] = add(out[i], b[i]);
        }
        return vtrim(std::move(out));
    }

    std::vector<Val> vscale(const std::vector<Val>& a, const Val& c) const {
        std::vector<Val> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul(a[i], c);
        return vtrim(std::move(out));
    }

    std::vector<Val> vmulp(const std::vector<Val>& a, const std::vector<Val>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<Val> out(a.size() + b.size() - 1, base_zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = add(out[i + j], mul(a[i], b[j]));
        return vtrim(std::move(out));
    }

    // a - q*b for q = monomial c*x^k.
    std::vector<Val> vsubmon(std::vector<Val> a, const Val& c, std::size_t k,
                             const std::vector<Val>& b) const {
        if (a.size() < b.size() + k) a.resize(b.size() + k, base_zero());
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + k] = sub(a[i + k], mul(c, b[i]));
        return vtrim(std::move(a));
    }

    VX vxgcd(std::vector<Val> a, std::vector<Val> b) const {
        a = vtrim(std::move(a));
        b = vtrim(std::move(b));
        std::vector<Val> s0{base_one()}, s1{};
        std::vector<Val> t0{}, t1{base_one()};
        while (!b.empty()) {
            // divide a by b
            Val linv = inv_val(b.back());
            std::vector<Val> q;
            std::vector<Val> r = a;
            while (!r.empty() && r.size() >= b.size()) {
                std::size_t k = r.size() - b.size();
                Val cq = mul(r.back(), linv);
                if (q.size() < k + 1) q.resize(k + 1, base_zero());
                q[k] = add(q[k], cq);
                r = vsubmon(std::move(r), cq, k, b);
            }
            // s, t updates: (s0, s1) <- (s1, s0 - q*s1)
            auto news = vadd(s0, vscale(vmulp(q, s1), base_minus_one()));
            auto newt = vadd(t0, vscale(vmulp(q, t1), base_minus_one()));
            a = std::move(b);
            b = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(news);
            t0 = std::move(t1);
            t1 = std::move(newt);
        }
        if (!a.empty()) {
            Val linv = inv_val(a.back());
            a = vscale(a, linv);
            s0 = vscale(s0, linv);
            t0 = vscale(t0, linv);
        }
        return VX{std::move(a), std::move(s0), std::move(t0)};
    }

    Val base_one() const { return p == 0 ? base_q(1) : base_r(1 % p); }
    Val base_minus_one() const { return neg(base_one()); }

    Val inv_val(const Val& a) const {
        if (a.lvl == 0) {
            if (p == 0) {
                if (a.q == 0) throw error(errc::division_by_zero, "inverse of 0");
                return base_q(1 / a.q);
            }
            return base_r(mod_inv(a.r, p));
        }
        const std::size_t level = static_cast<std::size_t>(a.lvl - 1);
        const std::vector<Val>& m = ctx->minpoly(level);
        VX x = vxgcd(a.c, m);
        if (vdeg(x.g) > 0) {
            if (p == 0 && ctx->mode() == FieldCtx::SplitMode::dynamic_evaluation)
                throw split_required(ctx->shared_from_this(), level, x.g);
            throw error(errc::internal, "zero divisor in a strict-irreducible tower");
        }
        // g is the constant 1 after normalization; s*a = 1 mod minpoly.
        return normv(a.lvl, vtrim(x.s));
    }
};

Arith arith(const FieldCtx& ctx) { return Arith{&ctx, ctx.characteristic()}; }

Arith arith(const CtxPtr& ctx) { return Arith{ctx.get(), ctx->characteristic()}; }

const FieldCtx& need_ctx(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx() || !b.ctx()) throw error(errc::internal, "element without ctx");
    if (a.ctx().get() == b.ctx().get()) return *a.ctx();
    if (!ctx_compatible(a.ctx(), b.ctx()))
        throw error(errc::internal, "elements from incompatible field ctxs");
    return *ctx_join(a.ctx(), b.ctx());
}

CtxPtr join_ptr(const FieldElement& a, const FieldElement& b) {
    if (a.ctx().get() == b.ctx().get()) return a.ctx();
    return ctx_join(a.ctx(), b.ctx());
}

void val_str(const FieldCtx& ctx, const Val& v, std::ostream& os);

} // namespace

bool val_is_zero(const Val& v) {
    return v.lvl == 0 && v.c.empty() && v.q == 0 && v.r == 0;
}

bool val_eq(const Val& a, const Val& b) {
    if (a.lvl != b.lvl) return false;
    if (a.lvl == 0) return a.q == b.q && a.r == b.r;
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!val_eq(a.c[i], b.c[i])) return false;
    return true;
}

int val_cmp(const Val& a, const Val& b) {
    if (a.lvl != b.lvl) return a.lvl < b.lvl ? -1 : 1;
    if (a.lvl == 0) {
        if (a.q != b.q) return a.q < b.q ? -1 : 1;
        if (a.r != b.r) return a.r < b.r ? -1 : 1;
        return 0;
    }
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (int c = val_cmp(a.c[i], b.c[i])) return c;
    return 0;
}

CtxPtr FieldCtx::rationals() {
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = 0;
    return ctx;
}

CtxPtr FieldCtx::prime_field(unsigned long p) {
    if (p < 2) throw error(errc::unsupported_field, "characteristic must be 0 or prime");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw error(errc::unsupported_field, "characteristic must be prime");
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->mode_ = SplitMode::strict_irreducible;
    return ctx;
}

unsigned long FieldCtx::total_degree() const {
    unsigned long d = 1;
    for (std::size_t i = 0; i < tower_.size(); ++i) d *= level_degree(i);
    return d;
}

mpz_class FieldCtx::order() const {
    if (p_ == 0) throw error(errc::wrong_characteristic, "order of an infinite field");
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, total_degree());
    return q;
}

FieldElement FieldCtx::zero() const { return FieldElement(shared_from_this(), base_zero()); }

FieldElement FieldCtx::one() const {
    return FieldElement(shared_from_this(), p_ == 0 ? base_q(1) : base_r(1 % p_));
}

FieldElement FieldCtx::from_int(long n) const { return from_integer(mpz_class(n)); }

FieldElement FieldCtx::from_integer(const mpz_class& n) const {
    if (p_ == 0) return FieldElement(shared_from_this(), base_q(mpq_class(n)));
    mpz_class m = n % static_cast<long>(p_);
    if (m < 0) m += static_cast<long>(p_);
    return FieldElement(shared_from_this(), base_r(m.get_ui()));
}

FieldElement FieldCtx::from_rational(const mpq_class& x) const {
    if (p_ == 0) return FieldElement(shared_from_this(), base_q(x));
    FieldElement num = from_integer(x.get_num());
    FieldElement den = from_integer(x.get_den());
    return num / den;
}

FieldElement FieldCtx::generator(std::size_t i) const {
    if (i >= tower_.size()) throw error(errc::internal, "generator index out of range");
    std::vector<Val> c(2, base_zero());
    c[1] = p_ == 0 ? base_q(1) : base_r(1 % p_);
    Val v;
    v.lvl = static_cast<int>(i) + 1;
    v.c = std::move(c);
    return FieldElement(shared_from_this(), std::move(v));
}

FieldElement FieldCtx::from_val(Val v) const { return FieldElement(shared_from_this(), std::move(v)); }

FieldElement FieldCtx::random_element(std::mt19937& rng) const {
    std::function<Val(int)> rand_at = [&](int L) -> Val {
        if (L == 0) {
            if (p_ == 0) {
                std::uniform_int_distribution<long> num(-12, 12);
                std::uniform_int_distribution<long> den(1, 6);
                mpq_class x(num(rng), den(rng));
                x.canonicalize();
                return base_q(x);
            }
            std::uniform_int_distribution<unsigned long> d(0, p_ - 1);
            return base_r(d(rng));
        }
        std::size_t deg = level_degree(static_cast<std::size_t>(L - 1));
        std::vector<Val> c(deg);
        for (auto& x : c) x = rand_at(L - 1);
        return normv(L, std::move(c));
    };
    return FieldElement(shared_from_this(), rand_at(static_cast<int>(tower_.size())));
}

CtxPtr FieldCtx::extend(const std::vector<FieldElement>& minpoly_monic) const {
    if (minpoly_monic.size() < 3)
        throw error(errc::internal, "defining polynomial must have degree >= 2");
    if (!minpoly_monic.back().is_one())
        throw error(errc::not_monic, "defining polynomial must be monic");
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx(*this));
    std::vector<Val> m;
    m.reserve(minpoly_monic.size());
    for (const auto& e : minpoly_monic) m.push_back(e.val());
    ctx->tower_.push_back(std::move(m));
    return ctx;
}

bool ctx_compatible(const CtxPtr& a, const CtxPtr& b) {
    if (!a || !b) return false;
    if (a->p_ != b->p_) return false;
    const auto& ta = a->tower_;
    const auto& tb = b->tower_;
    const auto& shorter = ta.size() <= tb.size() ? ta : tb;
    const auto& longer = ta.size() <= tb.size() ? tb : ta;
    for (std::size_t i = 0; i < shorter.size(); ++i) {
        if (shorter[i].size() != longer[i].size()) return false;
        for (std::size_t j = 0; j < shorter[i].size(); ++j)
            if (!val_eq(shorter[i][j], longer[i][j])) return false;
    }
    return true;
}

CtxPtr ctx_join(const CtxPtr& a, const CtxPtr& b) {
    if (!ctx_compatible(a, b)) throw error(errc::internal, "incompatible field ctxs");
    return a->tower_.size() >= b->tower_.size() ? a : b;
}

bool FieldElement::is_one() const {
    if (v_.lvl != 0) return false;
    if (!ctx_) return false;
    return ctx_->characteristic() == 0 ? v_.q == 1 : v_.r == 1 % ctx_->characteristic();
}

mpq_class FieldElement::rational() const {
    if (v_.lvl != 0 || !ctx_ || ctx_->characteristic() != 0)
        throw error(errc::internal, "element is not a plain rational");
    return v_.q;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return val_eq(a.val(), b.val());
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const FieldCtx& c = need_ctx(a, b);
    return FieldElement(join_ptr(a, b), arith(c).add(a.val(), b.val()));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const FieldCtx& c = need_ctx(a, b);
    return FieldElement(join_ptr(a, b), arith(c).sub(a.val(), b.val()));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const FieldCtx& c = need_ctx(a, b);
    return FieldElement(join_ptr(a, b), arith(c).mul(a.val(), b.val()));
}

FieldElement operator-(const FieldElement& a) {
    return FieldElement(a.ctx(), arith(a.ctx()).neg(a.val()));
}

FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw error(errc::division_by_zero, "inverse of zero");
    return FieldElement(a.ctx(), arith(a.ctx()).inv_val(a.val()));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * inv(b); }

FieldElement pow_elem(const FieldElement& a, const mpz_class& e) {
    if (e < 0) return pow_elem(inv(a), -e);
    FieldElement acc = a.ctx()->one();
    FieldElement base = a;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FieldElement pth_root(const FieldElement& x) {
    const auto& ctx = x.ctx();
    unsigned long p = ctx->characteristic();
    if (p == 0) throw error(errc::wrong_characteristic, "pth_root needs characteristic p");
    unsigned long d = ctx->total_degree();
    if (d == 1) return x; // c^p = c on the prime field
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d - 1);
    return pow_elem(x, e);
}

std::pair<CtxPtr, CtxPtr> branch_ctx(const CtxPtr& ctx, std::size_t level,
                                     const std::vector<Val>& factor) {
    if (level >= ctx->levels()) throw error(errc::internal, "branch level out of range");
    auto A = arith(ctx);
    std::vector<Val> m = ctx->minpoly(level);
    // long division (factor monic by construction of vxgcd output)
    std::vector<Val> r = m, q;
    while (static_cast<int>(r.size()) >= static_cast<int>(factor.size()) && !r.empty()) {
        std::size_t k = r.size() - factor.size();
        Val cq = r.back();
        if (q.size() < k + 1) q.resize(k + 1, base_zero());
        q[k] = A.add(q[k], cq);
        r = A.vsubmon(std::move(r), cq, k, factor);
    }
    if (!r.empty()) throw error(errc::internal, "branch factor does not divide the modulus");

    auto rebuild = [&](const std::vector<Val>& nm) -> CtxPtr {
        CtxPtr base = ctx->characteristic() == 0 ? FieldCtx::rationals()
                                                 : FieldCtx::prime_field(ctx->characteristic());
        for (std::size_t i = 0; i < ctx->levels(); ++i) {
            const std::vector<Val>& src = i == level ? nm : ctx->minpoly(i);
            std::vector<FieldElement> elems;
            elems.reserve(src.size());
            for (const auto& v : src) elems.emplace_back(base, v);
            if (src.size() >= 3) {
                base = base->extend(elems);
            } else {
                // A linear modulus collapses the level: substitute the root
                // into every later defining polynomial. Desk-scale towers
                // only ever branch at the top level, which is all we need.
                if (i + 1 != ctx->levels())
                    throw error(errc::internal, "linear branch below the top of the tower");
                return base;
            }
        }
        return base;
    };
    return {rebuild(factor), rebuild(q)};
}

namespace {

// ---- adjoin_root / poly_split -------------------------------------------

bool all_rational(const FPoly& f) {
    for (const auto& c : f)
        if (c.val().lvl != 0) return false;
    return true;
}

// Rational roots of a monic polynomial with rational coefficients.
std::vector<mpq_class> rational_roots(const FPoly& f) {
    std::vector<mpq_class> out;
    if (pdeg(f) < 1) return out;
    // Clear denominators to an integer polynomial.
    mpz_class L = 1;
    for (const auto& c : f) L = lcm(L, c.rational().get_den());
    std::vector<mpz_class> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpq_class s = f[i].rational() * L;
        a[i] = s.get_num();
    }
    // Strip roots at 0.
    std::size_t z = 0;
    while (z < a.size() - 1 && a[z] == 0) ++z;
    for (std::size_t i = 0; i < z; ++i) out.push_back(0);
    if (z > 0) a.erase(a.begin(), a.begin() + static_cast<long>(z));
    if (a.size() < 2) return out;
    mpz_class a0 = abs(a.front()), an = abs(a.back());
    if (a0 > mpz_class("1000000000000")) return out; // divisor enumeration cap
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> ds;
        for (mpz_class d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        return ds;
    };
    auto evalq = [&](const mpq_class& x) {
        mpq_class v = 0;
        for (std::size_t i = a.size(); i-- > 0;) v = v * x + mpq_class(a[i]);
        return v;
    };
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an))
            for (int s : {1, -1}) {
                mpq_class cand(s * num, den);
                cand.canonicalize();
                if (evalq(cand) == 0) out.push_back(cand);
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FPoly lift_poly(const FPoly& f, const CtxPtr& ctx) {
    FPoly out;
    out.reserve(f.size());
    for (const auto& c : f) out.emplace_back(ctx, c.val());
    return out;
}

// One monic irreducible factor of minimal degree (finite field, f squarefree).
FPoly min_irreducible_factor(const FPoly& f, std::mt19937& rng) {
    auto factors = factor_squarefree_ff(f, rng);
    const FPoly* best = &factors.front();
    for (const auto& g : factors)
        if (pdeg(g) < pdeg(*best)) best = &g;
    return *best;
}

std::mt19937& field_rng() {
    static thread_local std::mt19937 rng(0x5eed1234u);
    return rng;
}

} // namespace

AdjoinResult adjoin_root(const CtxPtr& ctx, const std::vector<FieldElement>& f_in) {
    FPoly f = ptrim(f_in);
    int n = pdeg(f);
    if (n < 1) throw error(errc::degree_zero, "adjoin_root of a constant polynomial");
    if (!f.back().is_one()) throw error(errc::not_monic, "adjoin_root needs a monic polynomial");
    FPoly df = pderiv(f);
    if (pdeg(pgcd(f, df)) != 0)
        throw error(errc::not_squarefree, "adjoin_root needs a squarefree polynomial");
    if (n == 1) return AdjoinResult{ctx, -f[0]};

    if (ctx->characteristic() > 0) {
        FPoly g = min_irreducible_factor(f, field_rng());
        if (pdeg(g) == 1) return AdjoinResult{ctx, -g[0]};
        CtxPtr bigger = ctx->extend(g);
        return AdjoinResult{bigger, bigger->generator(bigger->levels() - 1)};
    }

    if (all_rational(f)) {
        auto roots = rational_roots(f);
        if (!roots.empty()) return AdjoinResult{ctx, ctx->from_rational(roots.front())};
    }
    CtxPtr bigger = ctx->extend(f);
    return AdjoinResult{bigger, bigger->generator(bigger->levels() - 1)};
}

namespace {

// Roots of a monic squarefree polynomial, extending the ctx as needed.
void roots_of_squarefree(CtxPtr& ctx, FPoly g, std::vector<FieldElement>& out) {
    g = ptrim(g);
    while (pdeg(g) >= 1) {
        if (pdeg(g) == 1) {
            out.push_back(-g[0]);
            return;
        }
        if (ctx->characteristic() > 0) {
            auto factors = factor_squarefree_ff(g, field_rng());
            FPoly rest = pconst(ctx, ctx->one());
            const FPoly* ext = nullptr;
            for (const auto& h : factors) {
                if (pdeg(h) == 1) {
                    out.push_back(-h[0]);
                } else {
                    rest = pmul(rest, h);
                    if (!ext) ext = &h;
                }
            }
            if (!ext) return;
            CtxPtr bigger = ctx->extend(*ext);
            for (auto& r : out) r = FieldElement(bigger, r.val());
            ctx = bigger;
            g = lift_poly(rest, bigger);
            continue;
        }
        // characteristic 0
        if (all_rational(g)) {
            auto rr = rational_roots(g);
            if (!rr.empty()) {
                for (const auto& r : rr) {
                    FieldElement e = ctx->from_rational(r);
                    out.push_back(e);
                    g = pquo(g, from_root(e));
                }
                continue;
            }
        }
        AdjoinResult ar = adjoin_root(ctx, g);
        if (ar.ctx.get() != ctx.get()) {
            for (auto& r : out) r = FieldElement(ar.ctx, r.val());
            g = lift_poly(g, ar.ctx);
            ctx = ar.ctx;
        }
        out.push_back(ar.root);
        g = pquo(g, from_root(ar.root));
    }
}

} // namespace

SplitResult poly_split(const CtxPtr& ctx_in, const std::vector<FieldElement>& f_in) {
    FPoly f = ptrim(f_in);
    if (pdeg(f) < 1) throw error(errc::degree_zero, "poly_split of a constant polynomial");
    if (!f.back().is_one()) throw error(errc::not_monic, "poly_split needs a monic polynomial");
    auto parts = sqfree_decompose(f);
    CtxPtr ctx = ctx_in;
    std::vector<FieldElement> flat;
    std::vector<int> mults;
    for (auto& [g, m] : parts) {
        std::vector<FieldElement> roots;
        CtxPtr before = ctx;
        FPoly gl = lift_poly(g, ctx);
        roots_of_squarefree(ctx, gl, roots);
        if (ctx.get() != before.get())
            for (auto& r : flat) r = FieldElement(ctx, r.val());
        for (auto& r : roots) {
            flat.push_back(FieldElement(ctx, r.val()));
            mults.push_back(m);
        }
    }
    SplitResult res;
    res.ctx = ctx;
    for (std::size_t i = 0; i < flat.size(); ++i)
        res.roots.push_back(RootMult{flat[i], mults[i]});
    std::sort(res.roots.begin(), res.roots.end(), [](const RootMult& a, const RootMult& b) {
        return val_cmp(a.root.val(), b.root.val()) < 0;
    });
    return res;
}

namespace {

void val_str(const FieldCtx& ctx, const Val& v, std::ostream& os) {
    if (v.lvl == 0) {
        if (ctx.characteristic() == 0)
            os << v.q;
        else
            os << v.r;
        return;
    }
    bool first = true;
    for (std::size_t i = v.c.size(); i-- > 0;) {
        const Val& cv = v.c[i];
        if (val_is_zero(cv)) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            val_str(ctx, cv, os);
            continue;
        }
        bool cv_is_one = cv.lvl == 0 && (ctx.characteristic() == 0 ? cv.q == 1 : cv.r == 1);
        if (!cv_is_one) {
            if (cv.lvl > 0) os << "(";
            val_str(ctx, cv, os);
            if (cv.lvl > 0) os << ")";
            os << "*";
        }
        os << "a" << (v.lvl - 1);
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
}

} // namespace

std::string FieldElement::str() const {
    std::ostringstream os;
    if (!ctx_) return "0";
    val_str(*ctx_, v_, os);
    return os.str();
}

} // namespace nptk
