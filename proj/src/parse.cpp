#include "nptk/parse.hpp"

#include <cctype>

namespace nptk {

namespace {

// polynomial in z, dense low -> high; empty means zero
using ZPoly = std::vector<PuiseuxSeries>;

struct Parser {
    const std::string& src;
    const CtxPtr& ctx;
    std::size_t pos = 0;

    char peek() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    [[noreturn]] void fail(const std::string& expected) { throw syntax_error(pos, expected); }

    mpz_class integer() {
        peek();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) fail("digit");
        return mpz_class(src.substr(start, pos - start));
    }

    // int or int/int, optional sign, optional parens
    mpq_class rational() {
        bool paren = eat('(');
        bool neg = eat('-');
        if (!neg && eat('+')) {}
        mpq_class v(integer());
        std::size_t save = pos;
        if (eat('/')) {
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos = save; // the '/' belongs to the enclosing term
            } else {
                mpz_class d = integer();
                if (d == 0) fail("nonzero denominator");
                v /= mpq_class(d);
            }
        }
        if (neg) v = -v;
        if (paren && !eat(')')) fail("')'");
        v.canonicalize();
        return v;
    }

    ZPoly trim(ZPoly v) {
        while (!v.empty() && v.back().is_exact_zero()) v.pop_back();
        return v;
    }

    ZPoly add(const ZPoly& a, const ZPoly& b, bool sub) {
        ZPoly r(std::max(a.size(), b.size()), PuiseuxSeries::zero(ctx));
        for (std::size_t i = 0; i < r.size(); ++i) {
            PuiseuxSeries x = i < a.size() ? a[i] : PuiseuxSeries::zero(ctx);
            PuiseuxSeries y = i < b.size() ? b[i] : PuiseuxSeries::zero(ctx);
            r[i] = sub ? x - y : x + y;
        }
        return trim(std::move(r));
    }

    ZPoly mul(const ZPoly& a, const ZPoly& b) {
        if (a.empty() || b.empty()) return {};
        ZPoly r(a.size() + b.size() - 1, PuiseuxSeries::zero(ctx));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
        return trim(std::move(r));
    }

    PuiseuxSeries scalar(const ZPoly& v, std::size_t at) {
        if (v.size() > 1) fail("z-free expression at position " + std::to_string(at));
        return v.empty() ? PuiseuxSeries::zero(ctx) : v[0];
    }

    ZPoly expr() {
        std::size_t at = pos;
        ZPoly v;
        bool neg = false;
        char c = peek();
        if (c == '-' || c == '+') {
            neg = c == '-';
            ++pos;
        }
        v = term();
        if (neg) v = add({}, v, true);
        (void)at;
        for (;;) {
            c = peek();
            if (c != '+' && c != '-') return v;
            ++pos;
            v = add(v, term(), c == '-');
        }
    }

    ZPoly term() {
        ZPoly v = factor();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos;
                std::size_t at = pos;
                ZPoly w = factor();
                if (c == '*') {
                    v = mul(v, w);
                } else {
                    PuiseuxSeries d = scalar(w, at);
                    if (d.is_exact_zero()) fail("nonzero divisor");
                    PuiseuxSeries di = invert(d, mpq_class(64));
                    for (auto& x : v) x = x * di;
                }
            } else if (c == 'z' || c == 't' || c == '(' ||
                       std::isdigit(static_cast<unsigned char>(c))) {
                v = mul(v, factor()); // juxtaposition multiplies
            } else {
                return v;
            }
        }
    }

    ZPoly factor() {
        ZPoly base = primary();
        if (!eat('^')) return base;
        std::size_t at = pos;
        mpq_class e = rational();
        if (e.get_den() != 1) {
            // fractional exponents only on a bare t
            if (base.size() != 1 || !is_bare_t) fail("integer exponent at position " + std::to_string(at));
            return {PuiseuxSeries::monomial(ctx->one(), e)};
        }
        mpz_class n = e.get_num();
        if (n < 0) {
            PuiseuxSeries s = scalar(base, at);
            if (s.is_exact_zero()) fail("nonzero base");
            base = {invert(s, mpq_class(64))};
            n = -n;
        }
        ZPoly r = {PuiseuxSeries::one(ctx)};
        for (mpz_class i = 0; i < n; ++i) r = mul(r, base);
        return r;
    }

    bool is_bare_t = false; // set by primary() when it consumed exactly "t"

    ZPoly primary() {
        is_bare_t = false;
        char c = peek();
        if (c == '-') {
            ++pos;
            return add({}, factor(), true);
        }
        if (c == '(') {
            ++pos;
            ZPoly v = expr();
            if (!eat(')')) fail("')'");
            return v;
        }
        if (c == 'z') {
            ++pos;
            return {PuiseuxSeries::zero(ctx), PuiseuxSeries::one(ctx)};
        }
        if (c == 't') {
            ++pos;
            is_bare_t = true;
            return {PuiseuxSeries::monomial(ctx->one(), mpq_class(1))};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class n = integer();
            return {PuiseuxSeries::constant(ctx->from_integer(n))};
        }
        fail("term");
    }
};

ZPoly parse_expr(const std::string& src, const CtxPtr& ctx) {
    Parser p{src, ctx};
    ZPoly v = p.expr();
    if (p.peek() != '\0') p.fail("end of input");
    return v;
}

std::string exp_text(const mpq_class& e) {
    if (e == 1) return "t";
    if (e.get_den() == 1 && e > 0) return "t^" + e.get_str();
    return "t^(" + e.get_str() + ")";
}

} // namespace

SeriesPoly parse_poly(const std::string& src, const CtxPtr& ctx) {
    ZPoly v = parse_expr(src, ctx);
    if (v.size() < 2) throw error(errc::degree_zero, "polynomial must involve z");
    OrdResult lead = ord_scan(v.back(), mpq_class(0));
    if (!lead.found() || lead.value != 0)
        throw error(errc::non_unit_leading, "leading coefficient must be a unit of k[[t]]");
    PuiseuxSeries li = invert(v.back(), mpq_class(0));
    SeriesPoly f;
    f.ctx = ctx;
    for (std::size_t i = v.size() - 1; i-- > 0;) f.tail.push_back(v[i] * li);
    return f;
}

PuiseuxSeries parse_series(const std::string& src, const CtxPtr& ctx) {
    ZPoly v = parse_expr(src, ctx);
    if (v.size() > 1) throw syntax_error(0, "z-free expression");
    return v.empty() ? PuiseuxSeries::zero(ctx) : v[0];
}

QuadElem parse_quad(const std::string& src) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    };
    auto num = [&](mpz_class& out) {
        skip();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) return false;
        out = mpz_class(src.substr(start, pos - start));
        return true;
    };
    QuadElem r{0, 0};
    bool any = false;
    skip();
    while (pos < src.size()) {
        long sign = 1;
        if (src[pos] == '+' || src[pos] == '-') {
            sign = src[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (any) {
            throw syntax_error(pos, "'+' or '-'");
        }
        mpz_class n = 1;
        bool has_num = num(n);
        skip();
        if (pos < src.size() && (src[pos] == '*' || src[pos] == 'w')) {
            if (src[pos] == '*') {
                ++pos;
                skip();
                if (pos >= src.size() || src[pos] != 'w') throw syntax_error(pos, "'w'");
            }
            ++pos; // 'w'
            r.b += sign * n;
        } else {
            if (!has_num) throw syntax_error(pos, "number or 'w'");
            r.a += sign * n;
        }
        any = true;
        skip();
    }
    if (!any) throw syntax_error(pos, "element");
    return r;
}

std::string series_text(const PuiseuxSeries& s, const mpq_class& cutoff) {
    auto terms = truncate_series(s, cutoff);
    if (terms.empty()) return "0";
    std::string out;
    for (auto& [e, c] : terms) {
        std::string cs = c.str();
        bool neg = cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
        if (out.empty()) {
            if (neg) {
                out = "-";
                cs = cs.substr(1);
            }
        } else {
            out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        bool composite = cs.find_first_of("+-") != std::string::npos;
        if (composite) cs = "(" + cs + ")";
        if (e == 0)
            out += cs;
        else if (cs == "1")
            out += exp_text(e);
        else
            out += cs + "*" + exp_text(e);
    }
    return out;
}

} // namespace nptk
