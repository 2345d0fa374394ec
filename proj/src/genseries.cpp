#include "nptk/genseries.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace nptk {

namespace {

// ---- coefficient streams ----

FieldElement stream_at(const CoeffStream& s, long idx) {
    if (idx < static_cast<long>(s.pre.size())) return s.pre[idx];
    return s.per[(idx - s.pre.size()) % s.per.size()];
}

CoeffStream stream_drop(CoeffStream s, long k) {
    long from_pre = std::min<long>(k, s.pre.size());
    s.pre.erase(s.pre.begin(), s.pre.begin() + from_pre);
    k -= from_pre;
    if (k > 0) {
        long r = k % static_cast<long>(s.per.size());
        std::rotate(s.per.begin(), s.per.begin() + r, s.per.end());
    }
    return s;
}

template <typename F> CoeffStream stream_map(CoeffStream s, F&& f) {
    for (auto& v : s.pre) v = f(v);
    for (auto& v : s.per) v = f(v);
    return s;
}

CoeffStream stream_add(const CoeffStream& a, const CoeffStream& b) {
    CoeffStream r;
    std::size_t npre = std::max(a.pre.size(), b.pre.size());
    std::size_t nper = std::lcm(a.per.size(), b.per.size());
    for (std::size_t i = 0; i < npre; ++i)
        r.pre.push_back(stream_at(a, i) + stream_at(b, i));
    for (std::size_t i = 0; i < nper; ++i)
        r.per.push_back(stream_at(a, npre + i) + stream_at(b, npre + i));
    return r;
}

bool stream_zero(const CoeffStream& s) {
    for (const auto& v : s.pre)
        if (!v.is_zero()) return false;
    for (const auto& v : s.per)
        if (!v.is_zero()) return false;
    return true;
}

CoeffStream stream_minimize(CoeffStream s) {
    // least period: must divide the given one
    for (std::size_t d = 1; d < s.per.size(); ++d) {
        if (s.per.size() % d) continue;
        bool ok = true;
        for (std::size_t i = d; i < s.per.size() && ok; ++i) ok = s.per[i] == s.per[i % d];
        if (ok) {
            s.per.resize(d);
            break;
        }
    }
    // shortest preperiod: fold matching elements into the cycle
    while (!s.pre.empty() && s.pre.back() == s.per.back()) {
        std::rotate(s.per.begin(), s.per.end() - 1, s.per.end());
        s.pre.pop_back();
    }
    return s;
}

// ---- ladder plumbing ----

void add_monomial(LaurentMap& m, const mpq_class& e, const FieldElement& c) {
    if (c.is_zero()) return;
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) m.erase(it);
    }
}

// k with a = b * p^k, or no value
std::optional<long> p_power_ratio(const mpq_class& a, const mpq_class& b, unsigned long p) {
    mpq_class r = a / b;
    long k = 0;
    while (r > 1) {
        r /= static_cast<long>(p);
        ++k;
    }
    while (r < 1) {
        r *= static_cast<long>(p);
        --k;
    }
    if (r != 1) return std::nullopt;
    return k;
}

// Minimize the stream and fold leading zeros into gamma. False: ladder gone
// (identically zero, or a dead cycle expanded into `mono`).
bool ladder_cleanup(LadderSpec& l, LaurentMap& mono, unsigned long p) {
    l.stream = stream_minimize(std::move(l.stream));
    if (stream_zero(l.stream)) return false;
    while (stream_at(l.stream, 0).is_zero()) {
        l.stream = stream_drop(std::move(l.stream), 1);
        l.gamma /= static_cast<long>(p);
    }
    l.stream = stream_minimize(std::move(l.stream));
    bool dead_cycle = true;
    for (const auto& v : l.stream.per) dead_cycle = dead_cycle && v.is_zero();
    if (dead_cycle) {
        mpq_class q = l.gamma;
        for (std::size_t i = 0; i < l.stream.pre.size(); ++i) {
            q /= static_cast<long>(p);
            add_monomial(mono, l.offset + q, l.stream.pre[i]);
        }
        return false;
    }
    return l.gamma < 0;
}

// Rebase onto gmax = gamma / p^k (k >= 0); indices that fall at or before the
// new start become plain monomials.
LadderSpec ladder_rebase(LadderSpec l, const mpq_class& gmax, long k, LaurentMap& mono,
                         unsigned long p) {
    mpq_class q = l.gamma;
    for (long i = 1; i <= k; ++i) {
        q /= static_cast<long>(p);
        add_monomial(mono, l.offset + q, stream_at(l.stream, i - 1));
    }
    l.stream = stream_drop(std::move(l.stream), k);
    l.gamma = gmax;
    return l;
}

GenSeries normalize(GenSeries x) {
    const CtxPtr& ctx = x.ctx;
    unsigned long p = ctx->characteristic();
    if (p == 0) throw error(errc::wrong_characteristic, "generalized series need p > 0");
    if (!x.tail.valid()) x.tail = PuiseuxSeries::zero(ctx);

    LaurentMap mono = std::move(x.monomials);
    std::vector<LadderSpec> work = std::move(x.ladders);
    std::vector<LadderSpec> lads;
    bool changed = true;
    while (changed) {
        changed = false;
        // per-ladder cleanup, then merge ladders sharing an exponent lattice
        lads.clear();
        for (auto& l : work) {
            if (!ladder_cleanup(l, mono, p)) continue;
            bool merged = false;
            for (std::size_t i = 0; i < lads.size() && !merged; ++i) {
                LadderSpec& o = lads[i];
                if (o.offset != l.offset) continue;
                auto k = p_power_ratio(l.gamma, o.gamma, p);
                if (!k) continue;
                mpq_class gmax = *k >= 0 ? o.gamma : l.gamma;
                LadderSpec a = ladder_rebase(std::move(o), gmax, *k >= 0 ? 0 : -*k, mono, p);
                LadderSpec b = ladder_rebase(std::move(l), gmax, *k >= 0 ? *k : 0, mono, p);
                a.stream = stream_add(a.stream, b.stream);
                if (ladder_cleanup(a, mono, p))
                    lads[i] = std::move(a);
                else
                    lads.erase(lads.begin() + i);
                merged = true;
            }
            if (!merged) lads.push_back(std::move(l));
        }
        // a monomial on a ladder's lattice belongs in its stream: at index
        // k >= 1 it merges in place, at k <= 0 it extends the stream downward
        // (zeros fill the gap)
        for (auto& l : lads) {
            for (auto it = mono.begin(); it != mono.end();) {
                mpq_class rel = it->first - l.offset;
                if (it->second.is_zero() || !(rel < 0)) {
                    ++it;
                    continue;
                }
                auto k = p_power_ratio(l.gamma, rel, p);
                if (!k) {
                    ++it;
                    continue;
                }
                if (*k >= 1) {
                    while (static_cast<long>(l.stream.pre.size()) < *k) {
                        l.stream.pre.push_back(l.stream.per.front());
                        std::rotate(l.stream.per.begin(), l.stream.per.begin() + 1,
                                    l.stream.per.end());
                    }
                    auto& slot = l.stream.pre[*k - 1];
                    slot = slot + it->second;
                } else {
                    std::vector<FieldElement> head(-*k + 1, ctx->zero());
                    head[0] = it->second;
                    l.stream.pre.insert(l.stream.pre.begin(), head.begin(), head.end());
                    l.gamma *= static_cast<long>(p);
                    for (long j = 0; j < -*k; ++j) l.gamma *= static_cast<long>(p);
                }
                it = mono.erase(it);
                changed = true;
            }
        }
        if (changed) work = std::move(lads);
    }

    std::sort(lads.begin(), lads.end(), [](const LadderSpec& a, const LadderSpec& b) {
        int c = cmp(a.offset, b.offset);
        return c != 0 ? c < 0 : a.gamma < b.gamma;
    });

    // zero pruning, and nothing nonnegative stays in the monomial list
    LaurentMap keep;
    LaurentMap to_tail;
    for (auto& [e, c] : mono) {
        if (c.is_zero()) continue;
        (e < 0 ? keep : to_tail).emplace(e, c);
    }
    PuiseuxSeries tail = std::move(x.tail);
    if (!to_tail.empty()) tail = tail + PuiseuxSeries::finite(ctx, std::move(to_tail));

    GenSeries r;
    r.ctx = ctx;
    r.monomials = std::move(keep);
    r.ladders = std::move(lads);
    r.tail = std::move(tail);
    return r;
}

GenSeries gs_lift(const GenSeries& x, const CtxPtr& c) {
    GenSeries r;
    r.ctx = c;
    for (const auto& [e, v] : x.monomials) r.monomials.emplace(e, FieldElement(c, v.val()));
    for (const auto& l : x.ladders) {
        LadderSpec nl;
        nl.gamma = l.gamma;
        nl.offset = l.offset;
        nl.stream = stream_map(l.stream, [&](const FieldElement& v) {
            return FieldElement(c, v.val());
        });
        r.ladders.push_back(std::move(nl));
    }
    r.tail = x.tail.valid() ? x.tail.lift_to(c) : PuiseuxSeries::zero(c);
    return r;
}

GenSeries gs_neg(const GenSeries& x) {
    GenSeries r = x;
    for (auto& [e, v] : r.monomials) v = -v;
    for (auto& l : r.ladders)
        l.stream = stream_map(std::move(l.stream), [](const FieldElement& v) { return -v; });
    r.tail = -r.tail;
    return r;
}

// x -> x^p on a plain series
PuiseuxSeries series_frob_fwd(const PuiseuxSeries& s, unsigned long p) {
    if (s.is_exact_zero()) return s;
    mpz_class pz(static_cast<long>(p));
    if (s.kind() == SeriesKind::finite_laurent) {
        LaurentMap m;
        for (auto& [e, c] : s.as_fraction().first)
            m.emplace(e * static_cast<long>(p), pow_elem(c, pz));
        return PuiseuxSeries::finite(s.ctx(), std::move(m));
    }
    long pl = static_cast<long>(p);
    PuiseuxSeries in = s;
    return PuiseuxSeries::lazy(s.ctx(), s.ram(), s.lower() * pl,
                               [in, pl, pz](const mpq_class& e) {
                                   return pow_elem(in.at(e / pl), pz);
                               });
}

PuiseuxSeries series_frob_inv(const PuiseuxSeries& s, unsigned long p) {
    if (s.is_exact_zero()) return s;
    long pl = static_cast<long>(p);
    if (s.kind() == SeriesKind::finite_laurent) {
        LaurentMap m;
        for (auto& [e, c] : s.as_fraction().first) m.emplace(e / pl, pth_root(c));
        return PuiseuxSeries::finite(s.ctx(), std::move(m));
    }
    PuiseuxSeries in = s;
    return PuiseuxSeries::lazy(s.ctx(), s.ram() * pl, s.lower() / pl,
                               [in, pl](const mpq_class& e) { return pth_root(in.at(e * pl)); });
}

} // namespace

GenSeries gs_zero(const CtxPtr& ctx) {
    GenSeries r;
    r.ctx = ctx;
    r.tail = PuiseuxSeries::zero(ctx);
    return normalize(std::move(r));
}

GenSeries gs_monomial(const FieldElement& c, const mpq_class& gamma) {
    GenSeries r;
    r.ctx = c.ctx();
    if (gamma < 0)
        r.monomials.emplace(gamma, c);
    else
        r.tail = PuiseuxSeries::monomial(c, gamma);
    return normalize(std::move(r));
}

GenSeries gs_ladder(const CtxPtr& ctx, const mpq_class& gamma, CoeffStream stream) {
    if (!(gamma < 0)) throw error(errc::ladder_input, "ladder base exponent must be negative");
    if (stream.per.empty()) throw error(errc::ladder_input, "ladder period must be nonempty");
    GenSeries r;
    r.ctx = ctx;
    LadderSpec l;
    l.gamma = gamma;
    l.stream = std::move(stream);
    r.ladders.push_back(std::move(l));
    return normalize(std::move(r));
}

GenSeries gs_from_tail(PuiseuxSeries tail) {
    if (tail.lower() < 0) {
        OrdResult o = ord_scan(tail, mpq_class(0));
        if (o.found() && o.value < 0)
            throw error(errc::ladder_input, "ordinary part must have nonnegative order");
    }
    GenSeries r;
    r.ctx = tail.ctx();
    r.tail = std::move(tail);
    return normalize(std::move(r));
}

FieldElement ladder_coeff(const LadderSpec& l, long i) { return stream_at(l.stream, i - 1); }

GenSeries gs_combine(GsOp op, const GenSeries& x, const GenSeries& y) {
    if (op == GsOp::normalize) return normalize(x);
    CtxPtr c = ctx_join(x.ctx, y.ctx);
    GenSeries a = gs_lift(x, c), b = gs_lift(y, c);

    if (op == GsOp::add) {
        for (const auto& [e, v] : b.monomials) add_monomial(a.monomials, e, v);
        for (auto& l : b.ladders) a.ladders.push_back(std::move(l));
        a.tail = a.tail + b.tail;
        return normalize(std::move(a));
    }

    // monomial_mul: y must be exactly one term
    if (!b.ladders.empty())
        throw error(errc::unsupported_product, "cannot multiply by a ladder");
    LaurentMap terms = b.monomials;
    if (!b.tail.is_exact_zero()) {
        if (b.tail.kind() != SeriesKind::finite_laurent)
            throw error(errc::unsupported_product, "multiplier must be a single monomial");
        for (const auto& [e, v] : b.tail.as_fraction().first) terms.emplace(e, v);
    }
    if (terms.size() != 1)
        throw error(errc::unsupported_product, "multiplier must be a single monomial");
    const auto& [delta, coef] = *terms.begin();

    GenSeries r;
    r.ctx = c;
    for (const auto& [e, v] : a.monomials) r.monomials.emplace(e + delta, v * coef);
    for (auto& l : a.ladders) {
        l.offset += delta;
        l.stream = stream_map(std::move(l.stream),
                              [&](const FieldElement& v) { return v * coef; });
        r.ladders.push_back(std::move(l));
    }
    PuiseuxSeries tail = a.tail * PuiseuxSeries::monomial(coef, delta);
    if (delta < 0 && !tail.is_exact_zero()) {
        // shifted tail may dip below zero; carve that part into monomials
        LaurentMap low;
        for (auto& [e, v] : truncate_series(tail, mpq_class(0))) low.emplace(e, v);
        if (!low.empty()) {
            PuiseuxSeries lows = PuiseuxSeries::finite(c, std::move(low));
            for (const auto& [e, v] : lows.as_fraction().first) add_monomial(r.monomials, e, v);
            tail = tail - lows;
        }
    }
    r.tail = std::move(tail);
    return normalize(std::move(r));
}

GenSeries gs_frobenius(const GenSeries& x, FrobDir dir) {
    const CtxPtr& c = x.ctx;
    unsigned long p = c->characteristic();
    if (p == 0) throw error(errc::wrong_characteristic, "generalized series need p > 0");
    mpz_class pz(static_cast<long>(p));
    long pl = static_cast<long>(p);

    GenSeries r;
    r.ctx = c;
    for (const auto& [e, v] : x.monomials) {
        if (dir == FrobDir::forward)
            r.monomials.emplace(e * pl, pow_elem(v, pz));
        else
            r.monomials.emplace(e / pl, pth_root(v));
    }
    for (const auto& l : x.ladders) {
        LadderSpec nl;
        if (dir == FrobDir::forward) {
            // (sum c_i t^(off + g/p^i))^p = c_1^p t^(p*off + g) + the i >= 2 part
            add_monomial(r.monomials, l.offset * pl + l.gamma,
                         pow_elem(stream_at(l.stream, 0), pz));
            nl.offset = l.offset * pl;
            nl.gamma = l.gamma;
            nl.stream = stream_map(stream_drop(l.stream, 1),
                                   [&](const FieldElement& v) { return pow_elem(v, pz); });
        } else {
            nl.offset = l.offset / pl;
            nl.gamma = l.gamma / pl;
            nl.stream = stream_map(l.stream, [](const FieldElement& v) { return pth_root(v); });
        }
        r.ladders.push_back(std::move(nl));
    }
    r.tail = dir == FrobDir::forward ? series_frob_fwd(x.tail, p) : series_frob_inv(x.tail, p);

    // a forward boundary monomial can land at exponent >= 0: route via tail
    return normalize(std::move(r));
}

std::vector<GenSeries> artin_schreier_solve(const GenSeries& g) {
    if (!g.ladders.empty())
        throw error(errc::ladder_input, "right-hand side must not contain a ladder part");
    const CtxPtr& ctx = g.ctx;
    unsigned long p = ctx->characteristic();
    if (p == 0) throw error(errc::wrong_characteristic, "Artin-Schreier needs p > 0");
    mpz_class pz(static_cast<long>(p));
    long pl = static_cast<long>(p);

    // constant part: a root of X^p - X - g(0), possibly in an extension
    FieldElement g0 = g.tail.at(mpq_class(0));
    std::vector<FieldElement> f(p + 1, ctx->zero());
    f[p] = ctx->one();
    f[1] = -ctx->one();
    f[0] = -g0;
    SplitResult sr = poly_split(ctx, f);
    const CtxPtr& c2 = sr.ctx;
    FieldElement alpha = sr.roots.front().root;
    GenSeries gl = gs_lift(g, c2);

    GenSeries x0;
    x0.ctx = c2;
    // negative monomials: one ladder each, stream c^(1/p^i) cycling
    for (const auto& [e, v] : gl.monomials) {
        LadderSpec l;
        l.gamma = e;
        FieldElement first = pth_root(v);
        FieldElement cur = first;
        do {
            l.stream.per.push_back(cur);
            cur = pth_root(cur);
        } while (!(cur == first));
        x0.ladders.push_back(std::move(l));
    }
    // positive part: -(h + h^p + h^(p^2) + ...) for h = tail - g(0)
    PuiseuxSeries h = gl.tail - PuiseuxSeries::constant(FieldElement(c2, g0.val()));
    PuiseuxSeries w = PuiseuxSeries::zero(c2);
    OrdResult oh = ord_scan(h, mpq_class(64));
    if (oh.found()) {
        if (!(oh.value > 0)) throw error(errc::internal, "ordinary part has a constant term");
        mpq_class lo = oh.value;
        w = PuiseuxSeries::lazy(c2, h.ram(), lo, [h, lo, pl](const mpq_class& e) {
            FieldElement acc = h.ctx()->zero();
            mpz_class pj = 1;
            for (mpq_class scale = lo; scale <= e; scale *= pl) {
                acc = acc + pow_elem(h.at(e / mpq_class(pj)), pj);
                pj *= pl;
            }
            return -acc;
        });
    }
    x0.tail = PuiseuxSeries::constant(alpha) + w;

    std::vector<GenSeries> roots;
    for (unsigned long j = 0; j < p; ++j) {
        GenSeries xr = x0;
        xr.tail = x0.tail + PuiseuxSeries::constant(c2->from_int(static_cast<long>(j)));
        roots.push_back(normalize(std::move(xr)));
    }
    return roots;
}

std::pair<long, GenSeries> periodicity_witness(const CtxPtr& ctx, const CoeffStream& stream) {
    GenSeries x = gs_ladder(ctx, mpq_class(-1), stream);
    CoeffStream ms = stream_minimize(stream);
    long d = std::lcm<long>(ms.per.size(), ctx->total_degree());
    GenSeries y = x;
    for (long i = 0; i < d; ++i) y = gs_frobenius(y, FrobDir::forward);
    GenSeries h = gs_combine(GsOp::add, y, gs_neg(x));
    if (!h.ladders.empty())
        throw error(errc::internal, "periodicity witness left a ladder behind");
    return {d, std::move(h)};
}

GenSeries gs_truncate_below(const GenSeries& x, const mpq_class& alpha) {
    GenSeries r;
    r.ctx = x.ctx;
    unsigned long p = x.ctx->characteristic();
    for (const auto& [e, v] : x.monomials)
        if (e < alpha) r.monomials.emplace(e, v);
    for (const auto& l : x.ladders) {
        if (alpha >= l.offset) {
            r.ladders.push_back(l); // the whole ladder sits below alpha
            continue;
        }
        mpq_class q = l.gamma;
        for (long i = 1;; ++i) {
            q /= static_cast<long>(p);
            if (!(l.offset + q < alpha)) break;
            add_monomial(r.monomials, l.offset + q, stream_at(l.stream, i - 1));
        }
    }
    if (alpha > 0) {
        LaurentMap kept;
        for (auto& [e, v] : truncate_series(x.tail, alpha)) kept.emplace(e, v);
        r.tail = PuiseuxSeries::finite(x.ctx, std::move(kept));
    } else {
        r.tail = PuiseuxSeries::zero(x.ctx);
    }
    return normalize(std::move(r));
}

GsVerdict gs_verify_identity(const std::vector<std::pair<GenSeries, int>>& lhs,
                             const GenSeries& x, const GenSeries& target, int depth) {
    GenSeries acc = gs_neg(target);
    for (const auto& [a, j] : lhs) {
        GenSeries xx = x;
        for (int i = 0; i < j; ++i) xx = gs_frobenius(xx, FrobDir::forward);
        acc = gs_combine(GsOp::add, acc, gs_combine(GsOp::monomial_mul, xx, a));
    }
    if (acc.monomials.empty() && acc.ladders.empty() && acc.tail.is_exact_zero())
        return GsVerdict::exact_zero;

    LaurentMap expanded = acc.monomials;
    unsigned long p = acc.ctx->characteristic();
    for (const auto& l : acc.ladders) {
        mpq_class q = l.gamma;
        for (int i = 1; i <= depth; ++i) {
            q /= static_cast<long>(p);
            add_monomial(expanded, l.offset + q, stream_at(l.stream, i - 1));
        }
    }
    for (const auto& [e, v] : expanded)
        if (!v.is_zero()) return GsVerdict::nonzero;
    OrdResult o = ord_scan(acc.tail, mpq_class(depth));
    if (o.found()) return GsVerdict::nonzero;
    return o.status == OrdResult::Status::exact_zero && acc.ladders.empty()
               ? GsVerdict::exact_zero
               : GsVerdict::zero_to_depth;
}

long gs_support_scale(const GenSeries& x) {
    unsigned long p = x.ctx->characteristic();
    auto strip = [&](mpz_class d) {
        while (d % static_cast<long>(p) == 0) d /= static_cast<long>(p);
        return d;
    };
    mpz_class m = 1;
    auto take = [&](const mpq_class& e) {
        mpz_class d = strip(e.get_den());
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
    };
    for (const auto& [e, v] : x.monomials) take(e);
    for (const auto& l : x.ladders) {
        take(l.gamma);
        take(l.offset);
    }
    if (x.tail.valid() && !x.tail.is_exact_zero()) {
        mpz_class d = strip(mpz_class(x.tail.ram()));
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
    }
    return static_cast<long>(m.get_si());
}

bool gs_is_zero(const GenSeries& x, const mpq_class& tail_bound) {
    if (!x.monomials.empty() || !x.ladders.empty()) return false;
    return ord_scan(x.tail, tail_bound).zero();
}

} // namespace nptk
