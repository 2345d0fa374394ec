#include "nptk/cli.hpp"

#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nptk/genseries.hpp"
#include "nptk/parse.hpp"
#include "nptk/puiseux.hpp"
#include "nptk/quadring.hpp"

using json = nlohmann::ordered_json;

namespace nptk {

namespace {

int code_for(errc c) {
    switch (c) {
        case errc::syntax_error:
        case errc::non_unit_leading:
        case errc::degree_zero:
            return 2;
        case errc::wild_ramification:
            return 3;
        case errc::limit_exceeded:
        case errc::cap_exceeded:
            return 4;
        case errc::unsupported_field:
        case errc::unsupported_product:
        case errc::wrong_characteristic:
        case errc::char_divides_degree:
        case errc::ladder_input:
        case errc::zero_ideal:
            return 6;
        default:
            return 1;
    }
}

mpq_class parse_prec(const std::string& s) {
    try {
        mpq_class v(s);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw syntax_error(0, "rational precision, got '" + s + "'");
    }
}

CtxPtr make_ctx(long p, const std::string& ext) {
    if (p < 0) throw error(errc::unsupported_field, "characteristic must be 0 or a prime");
    CtxPtr c = p == 0 ? FieldCtx::rationals() : FieldCtx::prime_field(p);
    if (ext.empty()) return c;
    if (p == 0) throw error(errc::unsupported_field, "tower extensions need characteristic p");
    // dense minpoly over F_p, low -> high, comma separated, monic
    std::vector<FieldElement> m;
    std::stringstream ss(ext);
    std::string tok;
    while (std::getline(ss, tok, ','))
        m.push_back(c->from_integer(mpz_class(tok)));
    if (m.size() < 3 || !m.back().is_one())
        throw error(errc::unsupported_field, "extension minpoly must be monic of degree >= 2");
    return c->extend(m);
}

std::vector<QuadElem> parse_gens(const std::string& s) {
    std::vector<QuadElem> gens;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) gens.push_back(parse_quad(tok));
    if (gens.empty()) throw syntax_error(0, "generator list");
    return gens;
}

json series_json(const PuiseuxSeries& s, const mpq_class& cutoff) {
    json terms = json::array();
    for (auto& [e, c] : truncate_series(s, cutoff))
        terms.push_back({{"exp", e.get_str()}, {"coeff", c.str()}});
    return {{"terms", std::move(terms)}, {"cutoff", cutoff.get_str()}};
}

std::string stream_text(const CoeffStream& s) {
    auto list = [](const std::vector<FieldElement>& v) {
        std::string r = "[";
        for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + v[i].str();
        return r + "]";
    };
    return "pre=" + list(s.pre) + " per=" + list(s.per);
}

std::string gs_text(const GenSeries& x, const mpq_class& cutoff) {
    std::string out;
    auto append = [&](const std::string& part) {
        if (part.empty() || part == "0") return;
        if (!out.empty()) out += " + ";
        out += part;
    };
    if (!x.monomials.empty()) {
        LaurentMap m = x.monomials;
        append(series_text(PuiseuxSeries::finite(x.ctx, std::move(m)), mpq_class(0)));
    }
    for (const auto& l : x.ladders)
        append("ladder(gamma=" + l.gamma.get_str() + ", offset=" + l.offset.get_str() + ", " +
               stream_text(l.stream) + ")");
    append(series_text(x.tail, cutoff));
    if (out.empty()) out = "0";
    return out + " + O(t^" + (cutoff.get_den() == 1 ? cutoff.get_str() : "(" + cutoff.get_str() + ")") + ")";
}

json gs_json(const GenSeries& x, const mpq_class& cutoff) {
    json monos = json::array();
    for (auto& [e, c] : x.monomials) monos.push_back({{"exp", e.get_str()}, {"coeff", c.str()}});
    json lads = json::array();
    for (auto& l : x.ladders) {
        json pre = json::array(), per = json::array();
        for (auto& v : l.stream.pre) pre.push_back(v.str());
        for (auto& v : l.stream.per) per.push_back(v.str());
        lads.push_back({{"gamma", l.gamma.get_str()},
                        {"offset", l.offset.get_str()},
                        {"pre", std::move(pre)},
                        {"per", std::move(per)}});
    }
    return {{"monomials", std::move(monos)},
            {"ladders", std::move(lads)},
            {"tail", series_json(x.tail, cutoff)}};
}

const char* verdict_name(GsVerdict v) {
    switch (v) {
        case GsVerdict::exact_zero: return "exact";
        case GsVerdict::zero_to_depth: return "zero to depth";
        default: return "nonzero";
    }
}

// negative part into monomials, rest as ordinary tail
GenSeries gs_from_series(const PuiseuxSeries& s) {
    LaurentMap neg;
    for (auto& [e, c] : truncate_series(s, mpq_class(0))) neg.emplace(e, c);
    PuiseuxSeries low = PuiseuxSeries::finite(s.ctx(), neg);
    GenSeries r = gs_from_tail(s - low);
    for (auto& [e, c] : neg) r = gs_combine(GsOp::add, r, gs_monomial(c, e));
    return r;
}

struct Options {
    long chr = 0;
    std::string ext;
    std::string prec = "2";
    long max_ram = 0;
    long max_depth = 64;
    std::string format = "text";
    long ring = 0;
    std::string gens;
};

void emit(const json& record, const Options& o) {
    if (o.format == "structured")
        std::cout << record.dump(2) << "\n";
}

int cmd_roots(const std::string& poly, const Options& o) {
    CtxPtr ctx = make_ctx(o.chr, o.ext);
    mpq_class N = parse_prec(o.prec);
    SeriesPoly f = parse_poly(poly, ctx);
    SolveLimits lim;
    lim.max_ramification = o.max_ram;
    lim.max_depth = static_cast<int>(o.max_depth);
    std::vector<RootBranch> roots = puiseux_roots(f, N, lim);

    json branches = json::array();
    bool all_ok = true;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const RootBranch& b = roots[i];
        VerifyResult v = verify_root(f.lift_to(b.ctx), b, N);
        all_ok = all_ok && v.passed;
        LaurentMap m(b.terms.begin(), b.terms.end());
        std::string text = series_text(PuiseuxSeries::finite(b.ctx, std::move(m)), N);
        if (o.format == "text") {
            std::cout << "branch " << i + 1 << " (multiplicity " << b.multiplicity << "): "
                      << text << " + O(t^"
                      << (N.get_den() == 1 ? N.get_str() : "(" + N.get_str() + ")") << ")\n";
            std::cout << "  verification: residual ord >= "
                      << (v.exact_zero ? "inf" : v.ord_bound.get_str()) << " (required "
                      << v.required.get_str() << ") " << (v.passed ? "ok" : "FAILED") << "\n";
        }
        branches.push_back({{"series", text},
                            {"multiplicity", b.multiplicity},
                            {"ramification", b.e},
                            {"verification",
                             {{"passed", v.passed},
                              {"exact", v.exact_zero},
                              {"ord_bound", v.ord_bound.get_str()},
                              {"required", v.required.get_str()}}}});
    }
    emit({{"command", "roots"},
          {"input", poly},
          {"char", o.chr},
          {"prec", N.get_str()},
          {"branches", std::move(branches)}},
         o);
    return all_ok ? 0 : 5;
}

int cmd_artin_schreier(const std::string& rhs, const Options& o) {
    CtxPtr ctx = make_ctx(o.chr, o.ext);
    mpq_class depth = parse_prec(o.prec);
    GenSeries g = gs_from_series(parse_series(rhs, ctx));
    std::vector<GenSeries> roots = artin_schreier_solve(g);

    json out = json::array();
    bool all_ok = true;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const GenSeries& r = roots[i];
        GsVerdict v = gs_verify_identity(
            {{gs_monomial(r.ctx->one(), 0), 1}, {gs_monomial(-r.ctx->one(), 0), 0}}, r, g,
            static_cast<int>(depth.get_num().get_si()));
        all_ok = all_ok && v != GsVerdict::nonzero;
        if (o.format == "text")
            std::cout << "root " << i + 1 << ": " << gs_text(r, depth)
                      << "\n  identity check: " << verdict_name(v) << "\n";
        json rec = gs_json(r, depth);
        rec["identity_check"] = verdict_name(v);
        out.push_back(std::move(rec));
    }
    emit({{"command", "artin-schreier"},
          {"input", rhs},
          {"char", o.chr},
          {"roots", std::move(out)}},
         o);
    return all_ok ? 0 : 5;
}

CoeffStream parse_stream(const CtxPtr& ctx, const std::vector<long>& pre,
                         const std::vector<long>& per) {
    CoeffStream s;
    for (long v : pre) s.pre.push_back(ctx->from_int(v));
    for (long v : per) s.per.push_back(ctx->from_int(v));
    return s;
}

int cmd_witness(const std::vector<long>& pre, const std::vector<long>& per, const Options& o) {
    CtxPtr ctx = make_ctx(o.chr, o.ext);
    mpq_class depth = parse_prec(o.prec);
    CoeffStream s = parse_stream(ctx, pre, per);
    auto [d, h] = periodicity_witness(ctx, s);
    GenSeries x = gs_ladder(ctx, mpq_class(-1), s);
    GsVerdict v = gs_verify_identity(
        {{gs_monomial(ctx->one(), 0), static_cast<int>(d)}, {gs_monomial(-ctx->one(), 0), 0}},
        x, h, static_cast<int>(depth.get_num().get_si()));
    if (o.format == "text")
        std::cout << "d = " << d << "\nh = " << gs_text(h, depth)
                  << "\nidentity check: " << verdict_name(v) << "\n";
    emit({{"command", "witness"},
          {"char", o.chr},
          {"d", d},
          {"h", gs_json(h, depth)},
          {"identity_check", verdict_name(v)}},
         o);
    return v != GsVerdict::nonzero ? 0 : 5;
}

int cmd_truncate(const std::string& gamma, const std::vector<long>& pre,
                 const std::vector<long>& per, const std::string& below, const Options& o) {
    CtxPtr ctx = make_ctx(o.chr, o.ext);
    GenSeries x = gs_ladder(ctx, parse_prec(gamma), parse_stream(ctx, pre, per));
    mpq_class alpha = parse_prec(below);
    GenSeries t = gs_truncate_below(x, alpha);
    mpq_class cutoff = alpha > 0 ? alpha : mpq_class(1);
    if (o.format == "text") std::cout << gs_text(t, cutoff) << "\n";
    emit({{"command", "truncate"},
          {"char", o.chr},
          {"below", alpha.get_str()},
          {"result", gs_json(t, cutoff)}},
         o);
    return 0;
}

int cmd_bezout(const Options& o) {
    QuadRing R = QuadRing::create(o.ring);
    std::vector<QuadElem> gens = parse_gens(o.gens);
    BezoutWitness w = bezout_generator(R, gens);
    bool ok = verify_witness(R, w).ok();
    if (o.format == "text")
        std::cout << "d = " << qstr(w.d) << ", n = " << w.n
                  << (ok ? ", verified" : ", VERIFICATION FAILED") << "\n";
    json gj = json::array();
    for (auto& g : gens) gj.push_back(qstr(g));
    emit({{"command", "bezout"},
          {"ring", o.ring},
          {"gens", std::move(gj)},
          {"d", qstr(w.d)},
          {"n", w.n},
          {"verified", ok}},
         o);
    return ok ? 0 : 5;
}

int cmd_verify(const std::string& d, long n, const Options& o) {
    QuadRing R = QuadRing::create(o.ring);
    BezoutWitness w{parse_quad(d), n, parse_gens(o.gens)};
    WitnessVerdict v = verify_witness(R, w);
    if (o.format == "text") {
        std::cout << "power matches: " << (v.power_matches ? "yes" : "no") << "\n";
        if (v.bad_gen)
            std::cout << "generator " << qstr(w.gens[*v.bad_gen])
                      << "^" << n << " is not in (" << qstr(w.d) << ")\n";
    }
    json rec = {{"command", "verify"},
                {"ring", o.ring},
                {"d", d},
                {"n", n},
                {"power_matches", v.power_matches}};
    if (v.bad_gen) rec["bad_gen"] = qstr(w.gens[*v.bad_gen]);
    emit(rec, o);
    return v.ok() ? 0 : 5;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact Newton-Puiseux, Artin-Schreier ladders, and Bezout witnesses"};
    app.require_subcommand(1);
    Options o;

    std::string poly, rhs, gamma = "-1", below = "0", wd;
    long wn = 1;
    std::vector<long> pre, per;

    auto add_field = [&](CLI::App* c) {
        c->add_option("--char", o.chr, "field characteristic (0 or prime)");
        c->add_option("--ext", o.ext, "extension minpoly over F_p, dense comma list");
        c->add_option("--format", o.format, "text | structured")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* roots = app.add_subcommand("roots", "fractional-power roots of a polynomial");
    roots->add_option("poly", poly, "monic polynomial in z over k((t))")->required();
    roots->add_option("--prec", o.prec, "exclusive exponent cutoff (rational)");
    roots->add_option("--max-ram", o.max_ram, "ramification cap (0 = default)");
    roots->add_option("--max-depth", o.max_depth, "recursion cap");
    add_field(roots);

    CLI::App* as = app.add_subcommand("artin-schreier", "roots of x^p - x = g");
    as->add_option("rhs", rhs, "right-hand side g, a series in t")->required();
    as->add_option("--prec", o.prec, "expansion depth");
    add_field(as);

    CLI::App* wit = app.add_subcommand("witness", "algebraicity witness for a ladder stream");
    wit->add_option("--pre", pre, "preperiod coefficients")->delimiter(',');
    wit->add_option("--per", per, "period coefficients")->delimiter(',')->required();
    wit->add_option("--prec", o.prec, "verification depth");
    add_field(wit);

    CLI::App* tr = app.add_subcommand("truncate", "terms of a ladder below a cutoff");
    tr->add_option("--gamma", gamma, "ladder base exponent");
    tr->add_option("--pre", pre, "preperiod coefficients")->delimiter(',');
    tr->add_option("--per", per, "period coefficients")->delimiter(',')->required();
    tr->add_option("--below", below, "exclusive cutoff")->required();
    add_field(tr);

    CLI::App* bz = app.add_subcommand("bezout", "principal-power witness for an ideal");
    bz->add_option("--ring", o.ring, "squarefree negative D of Q(sqrt(D))")->required();
    bz->add_option("--gens", o.gens, "comma-separated generators a+b*w")->required();
    bz->add_option("--format", o.format)->check(CLI::IsMember({"text", "structured"}));

    CLI::App* vf = app.add_subcommand("verify", "check a Bezout witness");
    vf->add_option("--ring", o.ring)->required();
    vf->add_option("--gens", o.gens)->required();
    vf->add_option("--d", wd, "claimed generator")->required();
    vf->add_option("--n", wn, "claimed power")->required();
    vf->add_option("--format", o.format)->check(CLI::IsMember({"text", "structured"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (roots->parsed()) return cmd_roots(poly, o);
        if (as->parsed()) return cmd_artin_schreier(rhs, o);
        if (wit->parsed()) return cmd_witness(pre, per, o);
        if (tr->parsed()) return cmd_truncate(gamma, pre, per, below, o);
        if (bz->parsed()) return cmd_bezout(o);
        if (vf->parsed()) return cmd_verify(wd, wn, o);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run_cli(int argc, char** argv) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

} // namespace nptk
