#include "nptk/series.hpp"

#include <mutex>
#include <numeric>

namespace nptk {

namespace {

long den_of(const mpq_class& q) {
    return static_cast<long>(q.get_den().get_si());
}

long lcml(long a, long b) { return std::lcm(a, b); }

mpq_class frac(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

bool is_integral(const mpq_class& q) { return q.get_den() == 1; }

LaurentMap prune(LaurentMap m) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second.is_zero())
            it = m.erase(it);
        else
            ++it;
    }
    return m;
}

long lattice_of(const LaurentMap& m) {
    long e = 1;
    for (const auto& [exp, c] : m) e = lcml(e, den_of(exp));
    return e;
}

LaurentMap ladd(const LaurentMap& a, const LaurentMap& b) {
    LaurentMap out = a;
    for (const auto& [exp, c] : b) {
        auto it = out.find(exp);
        if (it == out.end()) {
            out.emplace(exp, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

LaurentMap lneg(const LaurentMap& a) {
    LaurentMap out;
    for (const auto& [exp, c] : a) out.emplace(exp, -c);
    return out;
}

LaurentMap lmul(const LaurentMap& a, const LaurentMap& b) {
    LaurentMap out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            mpq_class e = ea + eb;
            FieldElement v = ca * cb;
            auto it = out.find(e);
            if (it == out.end()) {
                if (!v.is_zero()) out.emplace(std::move(e), std::move(v));
            } else {
                it->second = it->second + v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    return out;
}

LaurentMap lshift(const LaurentMap& a, long m, const mpq_class& r) {
    LaurentMap out;
    for (const auto& [exp, c] : a) out.emplace(exp * m + r, c);
    return out;
}

LaurentMap llift(const LaurentMap& a, const CtxPtr& ctx) {
    LaurentMap out;
    for (const auto& [exp, c] : a) out.emplace(exp, FieldElement(ctx, c.val()));
    return out;
}

} // namespace

struct SeriesRep {
    CtxPtr ctx;
    long e = 1;
    mpq_class lower = 0;
    SeriesKind kind = SeriesKind::finite_laurent;

    virtual ~SeriesRep() = default;
    virtual FieldElement coeff(const mpq_class& exp) const = 0;

    bool on_lattice(const mpq_class& exp) const {
        return is_integral(exp * e);
    }
};

PuiseuxSeries make_series(std::shared_ptr<const SeriesRep> rep) { return PuiseuxSeries(std::move(rep)); }

namespace {

struct FiniteRep final : SeriesRep {
    LaurentMap terms;
    FieldElement coeff(const mpq_class& exp) const override {
        auto it = terms.find(exp);
        return it == terms.end() ? ctx->zero() : it->second;
    }
};

PuiseuxSeries finite_from(const CtxPtr& ctx, LaurentMap terms) {
    auto rep = std::make_shared<FiniteRep>();
    rep->ctx = ctx;
    rep->terms = prune(std::move(terms));
    rep->kind = SeriesKind::finite_laurent;
    rep->e = lattice_of(rep->terms);
    rep->lower = rep->terms.empty() ? mpq_class(0) : rep->terms.begin()->first;
    return make_series(rep);
}

struct RatFunRep final : SeriesRep {
    LaurentMap num, den;
    mpq_class vden;
    FieldElement dlead_inv;
    mutable std::mutex mu;
    mutable std::vector<FieldElement> memo; // k -> coeff at lower + k/e

    FieldElement coeff(const mpq_class& exp) const override {
        mpq_class ki = (exp - lower) * e;
        if (!is_integral(ki) || ki < 0) return ctx->zero();
        std::size_t k = static_cast<std::size_t>(mpz_class(ki.get_num()).get_ui());
        std::lock_guard<std::mutex> lock(mu);
        while (memo.size() <= k) {
            std::size_t j = memo.size();
            mpq_class x = lower + frac(static_cast<long>(j), e);
            FieldElement v = ctx->zero();
            auto it = num.find(x + vden);
            if (it != num.end()) v = it->second;
            for (const auto& [dexp, dc] : den) {
                if (dexp == vden) continue;
                mpq_class ji = (x + vden - dexp - lower) * e;
                if (!is_integral(ji) || ji < 0) continue;
                std::size_t jj = static_cast<std::size_t>(mpz_class(ji.get_num()).get_ui());
                if (jj < j) v = v - dc * memo[jj];
            }
            memo.push_back(v * dlead_inv);
        }
        return memo[k];
    }
};

struct LazyRep final : SeriesRep {
    std::function<FieldElement(const mpq_class&)> fn;
    mutable std::mutex mu;
    mutable std::map<mpq_class, FieldElement> memo;

    FieldElement coeff(const mpq_class& exp) const override {
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = memo.find(exp);
            if (it != memo.end()) return it->second;
        }
        FieldElement v = fn(exp);
        std::lock_guard<std::mutex> lock(mu);
        auto [it, inserted] = memo.emplace(exp, v);
        return it->second;
    }
};

struct BinRep final : SeriesRep {
    PuiseuxSeries a, b;
    bool multiply = false;
    mutable std::mutex mu;
    mutable std::map<mpq_class, FieldElement> memo;

    FieldElement coeff(const mpq_class& exp) const override {
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = memo.find(exp);
            if (it != memo.end()) return it->second;
        }
        FieldElement v = compute(exp);
        std::lock_guard<std::mutex> lock(mu);
        return memo.emplace(exp, std::move(v)).first->second;
    }

    FieldElement compute(const mpq_class& exp) const {
        if (!multiply) return FieldElement(ctx, (a.at(exp) + b.at(exp)).val());
        FieldElement acc = ctx->zero();
        const long ea = a.ram();
        mpq_class alpha = a.lower();
        const mpq_class hi = exp - b.lower();
        // align alpha to a's lattice at or above a.lower
        for (; alpha <= hi; alpha += frac(1, ea)) {
            FieldElement ca = a.at(alpha);
            if (ca.is_zero()) continue;
            FieldElement cb = b.at(exp - alpha);
            if (cb.is_zero()) continue;
            acc = acc + ca * cb;
        }
        return FieldElement(ctx, acc.val());
    }
};

struct InvRep final : SeriesRep {
    PuiseuxSeries s;
    mpq_class vs;
    FieldElement lead_inv;
    mutable std::mutex mu;
    mutable std::vector<FieldElement> memo;

    FieldElement coeff(const mpq_class& exp) const override {
        mpq_class ki = (exp - lower) * e;
        if (!is_integral(ki) || ki < 0) return ctx->zero();
        std::size_t k = static_cast<std::size_t>(mpz_class(ki.get_num()).get_ui());
        std::lock_guard<std::mutex> lock(mu);
        if (memo.empty()) memo.push_back(lead_inv);
        while (memo.size() <= k) {
            std::size_t j = memo.size();
            FieldElement acc = ctx->zero();
            for (std::size_t i = 0; i < j; ++i) {
                FieldElement sc = s.at(vs + frac(static_cast<long>(j - i), e));
                if (!sc.is_zero()) acc = acc + memo[i] * sc;
            }
            memo.push_back(-(lead_inv * acc));
        }
        return memo[k];
    }
};

struct ReindexRep final : SeriesRep {
    PuiseuxSeries s;
    long m = 1;
    mpq_class r;

    FieldElement coeff(const mpq_class& exp) const override {
        mpq_class inner = (exp - r) / m;
        return s.at(inner);
    }
};

struct LiftRep final : SeriesRep {
    PuiseuxSeries s;
    FieldElement coeff(const mpq_class& exp) const override {
        return FieldElement(ctx, s.at(exp).val());
    }
};

} // namespace

const CtxPtr& PuiseuxSeries::ctx() const { return rep_->ctx; }
long PuiseuxSeries::ram() const { return rep_->e; }
const mpq_class& PuiseuxSeries::lower() const { return rep_->lower; }
SeriesKind PuiseuxSeries::kind() const { return rep_->kind; }

bool PuiseuxSeries::is_exact_zero() const {
    if (rep_->kind == SeriesKind::finite_laurent)
        return static_cast<const FiniteRep*>(rep_.get())->terms.empty();
    return false;
}

FieldElement PuiseuxSeries::at(const mpq_class& exp) const {
    if (exp < rep_->lower || !rep_->on_lattice(exp)) return rep_->ctx->zero();
    return rep_->coeff(exp);
}

PuiseuxSeries PuiseuxSeries::zero(const CtxPtr& ctx) { return finite_from(ctx, {}); }

PuiseuxSeries PuiseuxSeries::one(const CtxPtr& ctx) {
    return finite_from(ctx, {{mpq_class(0), ctx->one()}});
}

PuiseuxSeries PuiseuxSeries::finite(const CtxPtr& ctx, LaurentMap terms) {
    return finite_from(ctx, std::move(terms));
}

PuiseuxSeries PuiseuxSeries::monomial(const FieldElement& c, const mpq_class& exp) {
    return finite_from(c.ctx(), {{exp, c}});
}

PuiseuxSeries PuiseuxSeries::constant(const FieldElement& c) { return monomial(c, 0); }

PuiseuxSeries PuiseuxSeries::rational(const CtxPtr& ctx, LaurentMap num, LaurentMap den) {
    num = prune(std::move(num));
    den = prune(std::move(den));
    if (den.empty()) throw error(errc::division_by_zero, "rational series with zero denominator");
    if (num.empty()) return zero(ctx);
    if (den.size() == 1) {
        // monomial denominator: stays finite
        const auto& [dexp, dc] = *den.begin();
        FieldElement di = inv(dc);
        LaurentMap out;
        for (const auto& [exp, c] : num) out.emplace(exp - dexp, c * di);
        return finite_from(ctx, std::move(out));
    }
    auto rep = std::make_shared<RatFunRep>();
    rep->ctx = ctx;
    rep->kind = SeriesKind::rational_function;
    rep->num = std::move(num);
    rep->den = std::move(den);
    rep->e = lcml(lattice_of(rep->num), lattice_of(rep->den));
    rep->vden = rep->den.begin()->first;
    rep->dlead_inv = inv(rep->den.begin()->second);
    rep->lower = rep->num.begin()->first - rep->vden;
    return make_series(rep);
}

PuiseuxSeries PuiseuxSeries::lazy(const CtxPtr& ctx, long ram, mpq_class lower,
                                  std::function<FieldElement(const mpq_class&)> fn) {
    auto rep = std::make_shared<LazyRep>();
    rep->ctx = ctx;
    rep->kind = SeriesKind::lazy_derived;
    rep->e = ram;
    rep->lower = std::move(lower);
    rep->fn = std::move(fn);
    return make_series(rep);
}

std::pair<LaurentMap, LaurentMap> PuiseuxSeries::as_fraction() const {
    if (rep_->kind == SeriesKind::finite_laurent) {
        const auto* f = static_cast<const FiniteRep*>(rep_.get());
        return {f->terms, LaurentMap{{mpq_class(0), rep_->ctx->one()}}};
    }
    if (rep_->kind == SeriesKind::rational_function) {
        const auto* f = static_cast<const RatFunRep*>(rep_.get());
        return {f->num, f->den};
    }
    throw error(errc::internal, "as_fraction on a lazy-derived series");
}

PuiseuxSeries PuiseuxSeries::lift_to(const CtxPtr& nctx) const {
    if (rep_->ctx.get() == nctx.get()) return *this;
    if (rep_->kind == SeriesKind::finite_laurent) {
        const auto* f = static_cast<const FiniteRep*>(rep_.get());
        return finite_from(nctx, llift(f->terms, nctx));
    }
    if (rep_->kind == SeriesKind::rational_function) {
        const auto* f = static_cast<const RatFunRep*>(rep_.get());
        return rational(nctx, llift(f->num, nctx), llift(f->den, nctx));
    }
    auto rep = std::make_shared<LiftRep>();
    rep->ctx = nctx;
    rep->kind = SeriesKind::lazy_derived;
    rep->e = rep_->e;
    rep->lower = rep_->lower;
    rep->s = *this;
    return make_series(rep);
}

namespace {

bool presentable(const PuiseuxSeries& s) { return s.kind() != SeriesKind::lazy_derived; }

PuiseuxSeries combine(const PuiseuxSeries& a0, const PuiseuxSeries& b0, bool multiply) {
    CtxPtr ctx = ctx_join(a0.ctx(), b0.ctx());
    PuiseuxSeries a = a0.lift_to(ctx), b = b0.lift_to(ctx);
    if (a.is_exact_zero()) return multiply ? PuiseuxSeries::zero(ctx) : b;
    if (b.is_exact_zero()) return multiply ? PuiseuxSeries::zero(ctx) : a;
    if (presentable(a) && presentable(b)) {
        auto [n1, d1] = a.as_fraction();
        auto [n2, d2] = b.as_fraction();
        if (multiply) return PuiseuxSeries::rational(ctx, lmul(n1, n2), lmul(d1, d2));
        return PuiseuxSeries::rational(ctx, ladd(lmul(n1, d2), lmul(n2, d1)), lmul(d1, d2));
    }
    auto rep = std::make_shared<BinRep>();
    rep->ctx = ctx;
    rep->kind = SeriesKind::lazy_derived;
    rep->a = a;
    rep->b = b;
    rep->multiply = multiply;
    rep->e = lcml(a.ram(), b.ram());
    rep->lower = multiply ? a.lower() + b.lower() : std::min(a.lower(), b.lower());
    return make_series(rep);
}

} // namespace

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return combine(a, b, false);
}

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return combine(a, b, true);
}

PuiseuxSeries operator-(const PuiseuxSeries& a) {
    if (a.is_exact_zero()) return a;
    if (presentable(a)) {
        auto [n, d] = a.as_fraction();
        return PuiseuxSeries::rational(a.ctx(), lneg(n), d);
    }
    PuiseuxSeries s = a;
    return PuiseuxSeries::lazy(a.ctx(), a.ram(), a.lower(),
                               [s](const mpq_class& exp) { return -s.at(exp); });
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

OrdResult ord_scan(const PuiseuxSeries& s, const mpq_class& bound) {
    if (s.is_exact_zero()) return {OrdResult::Status::exact_zero, 0};
    if (s.kind() == SeriesKind::finite_laurent || s.kind() == SeriesKind::rational_function) {
        auto [num, den] = s.as_fraction();
        if (num.empty()) return {OrdResult::Status::exact_zero, 0};
        return {OrdResult::Status::found, num.begin()->first - den.begin()->first};
    }
    const long e = s.ram();
    for (mpq_class x = s.lower(); x <= bound; x += mpq_class(1, e)) {
        if (!s.at(x).is_zero()) return {OrdResult::Status::found, x};
    }
    return {OrdResult::Status::zero_to_bound, bound};
}

PuiseuxSeries invert(const PuiseuxSeries& s, const mpq_class& scan_bound) {
    OrdResult o = ord_scan(s, scan_bound);
    if (o.status == OrdResult::Status::exact_zero)
        throw error(errc::invert_zero, "inverse of the zero series");
    if (o.status == OrdResult::Status::zero_to_bound)
        throw error(errc::unresolved_order, "order not resolvable within the scan bound");
    if (presentable(s)) {
        auto [n, d] = s.as_fraction();
        return PuiseuxSeries::rational(s.ctx(), d, n);
    }
    auto rep = std::make_shared<InvRep>();
    rep->ctx = s.ctx();
    rep->kind = SeriesKind::lazy_derived;
    rep->e = s.ram();
    rep->vs = o.value;
    rep->lower = -o.value;
    rep->s = s;
    rep->lead_inv = inv(s.at(o.value));
    return make_series(rep);
}

PuiseuxSeries reindex(const PuiseuxSeries& s, long m, const mpq_class& r) {
    if (m <= 0) throw error(errc::internal, "reindex scale must be positive");
    if (s.kind() == SeriesKind::finite_laurent) {
        auto [n, d] = s.as_fraction();
        return PuiseuxSeries::finite(s.ctx(), lshift(n, m, r));
    }
    if (s.kind() == SeriesKind::rational_function) {
        auto [n, d] = s.as_fraction();
        return PuiseuxSeries::rational(s.ctx(), lshift(n, m, r), lshift(d, m, mpq_class(0)));
    }
    auto rep = std::make_shared<ReindexRep>();
    rep->ctx = s.ctx();
    rep->kind = SeriesKind::lazy_derived;
    rep->e = lcml(s.ram(), den_of(r));
    rep->lower = s.lower() * m + r;
    rep->s = s;
    rep->m = m;
    rep->r = r;
    return make_series(rep);
}

std::vector<std::pair<mpq_class, FieldElement>> truncate_series(const PuiseuxSeries& s,
                                                                const mpq_class& N) {
    std::vector<std::pair<mpq_class, FieldElement>> out;
    if (s.is_exact_zero()) return out;
    if (s.kind() == SeriesKind::finite_laurent) {
        auto [n, d] = s.as_fraction();
        for (const auto& [exp, c] : n)
            if (exp < N) out.emplace_back(exp, c);
        return out;
    }
    const long e = s.ram();
    for (mpq_class x = s.lower(); x < N; x += mpq_class(1, e)) {
        FieldElement c = s.at(x);
        if (!c.is_zero()) out.emplace_back(x, c);
    }
    return out;
}

SeriesPoly SeriesPoly::lift_to(const CtxPtr& c) const {
    SeriesPoly out;
    out.ctx = c;
    out.tail.reserve(tail.size());
    for (const auto& s : tail) out.tail.push_back(s.lift_to(c));
    return out;
}

PuiseuxSeries eval_poly(const SeriesPoly& f, const PuiseuxSeries& s) {
    CtxPtr c = ctx_join(f.ctx, s.ctx());
    PuiseuxSeries acc = s.lift_to(c);
    if (f.tail.empty()) return PuiseuxSeries::one(c);
    for (std::size_t i = 0; i < f.tail.size(); ++i) {
        acc = acc + f.tail[i];
        if (i + 1 < f.tail.size()) acc = acc * s;
    }
    return acc;
}

} // namespace nptk
