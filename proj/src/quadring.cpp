#include "nptk/quadring.hpp"

#include <algorithm>

namespace nptk {

namespace {

// positive remainder of x mod m (m > 0)
mpz_class pos_mod(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Hermite basis of the module spanned by (x, y) coordinate vectors.
QuadIdeal hermite(std::vector<std::pair<mpz_class, mpz_class>> vecs) {
    // second row (b, c): c = gcd of the w-components, tracked with cofactors
    mpz_class b = 0, c = 0;
    for (auto& [x, y] : vecs) {
        if (y == 0) continue;
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c.get_mpz_t(), y.get_mpz_t());
        b = s * b + t * x;
        c = g;
    }
    // clear w-components, then the first row is the gcd of what is left
    mpz_class a = 0;
    for (auto& [x, y] : vecs) {
        mpz_class rest = c == 0 ? x : x - (y / c) * b;
        mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), rest.get_mpz_t());
    }
    if (a == 0 || c == 0) throw error(errc::zero_ideal, "module is not of full rank");
    QuadIdeal I;
    I.a = a;
    I.b = pos_mod(b, a);
    I.c = c;
    return I;
}

std::vector<std::pair<mpz_class, mpz_class>> basis_vectors(const QuadIdeal& I) {
    return {{I.a, 0}, {I.b, I.c}};
}

bool is_ideal(const QuadRing& R, const QuadIdeal& I) {
    for (auto& [x, y] : basis_vectors(I)) {
        // (x + y*w) * w = y*wsq + (x + y*trace) w
        QuadElem m{y * R.wsq, x + y * R.trace};
        if (!ideal_contains(I, m)) return false;
    }
    return true;
}

bool perfect_square(const mpz_class& n, mpz_class& root) {
    if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

// smallest magnitudes first, positives before negatives
bool lex_less(const QuadElem& x, const QuadElem& y) {
    if (int c = cmp(abs(x.a), abs(y.a))) return c < 0;
    if (int c = cmp(abs(x.b), abs(y.b))) return c < 0;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
}

} // namespace

QuadRing QuadRing::create(long D) {
    if (D >= 0) throw error(errc::unsupported_field, "only imaginary quadratic rings");
    for (long q = 2; q * q <= -D; ++q)
        if (D % (q * q) == 0) throw error(errc::unsupported_field, "D must be squarefree");
    QuadRing R;
    R.D = D;
    R.half = pos_mod(mpz_class(D), 4) == 1;
    if (R.half) {
        R.trace = 1;
        R.wsq = (mpz_class(D) - 1) / 4;
    } else {
        R.trace = 0;
        R.wsq = D;
    }
    return R;
}

QuadElem qadd(const QuadElem& x, const QuadElem& y) { return {x.a + y.a, x.b + y.b}; }
QuadElem qsub(const QuadElem& x, const QuadElem& y) { return {x.a - y.a, x.b - y.b}; }

QuadElem qmul(const QuadRing& R, const QuadElem& x, const QuadElem& y) {
    mpz_class cross = x.b * y.b;
    return {x.a * y.a + cross * R.wsq, x.a * y.b + x.b * y.a + cross * R.trace};
}

QuadElem qconj(const QuadRing& R, const QuadElem& x) { return {x.a + x.b * R.trace, -x.b}; }

mpz_class qnorm(const QuadRing& R, const QuadElem& x) {
    return x.a * x.a + x.a * x.b * R.trace - x.b * x.b * R.wsq;
}

std::string qstr(const QuadElem& x) {
    if (x.b == 0) return x.a.get_str();
    std::string s;
    if (x.a != 0) s = x.a.get_str() + (x.b > 0 ? "+" : "");
    if (x.b == 1)
        s += "w";
    else if (x.b == -1)
        s += "-w";
    else
        s += x.b.get_str() + "*w";
    return s;
}

QuadIdeal ideal_from_gens(const QuadRing& R, const std::vector<QuadElem>& gens) {
    std::vector<std::pair<mpz_class, mpz_class>> vecs;
    for (const QuadElem& g : gens) {
        if (g.is_zero()) continue;
        vecs.emplace_back(g.a, g.b);
        QuadElem gw = qmul(R, g, {0, 1});
        vecs.emplace_back(gw.a, gw.b);
    }
    if (vecs.empty()) throw error(errc::zero_ideal, "all generators are zero");
    QuadIdeal I = hermite(std::move(vecs));
    if (!is_ideal(R, I)) throw error(errc::internal, "generated module not closed under w");
    return I;
}

QuadIdeal ideal_mul(const QuadRing& R, const QuadIdeal& I, const QuadIdeal& J) {
    std::vector<std::pair<mpz_class, mpz_class>> vecs;
    for (auto& [xa, xb] : basis_vectors(I))
        for (auto& [ya, yb] : basis_vectors(J)) {
            QuadElem p = qmul(R, {xa, xb}, {ya, yb});
            vecs.emplace_back(p.a, p.b);
        }
    return hermite(std::move(vecs));
}

bool ideal_contains(const QuadIdeal& I, const QuadElem& x) {
    if (x.b % I.c != 0) return false;
    return (x.a - (x.b / I.c) * I.b) % I.a == 0;
}

std::optional<QuadElem> is_principal(const QuadRing& R, const QuadIdeal& I) {
    mpz_class N = I.norm();
    std::vector<QuadElem> hits;
    auto try_elem = [&](const QuadElem& g) {
        if (!g.is_zero() && qnorm(R, g) == N && ideal_from_gens(R, {g}) == I) hits.push_back(g);
    };
    if (R.half) {
        // 4N = (2a + b)^2 + |D| b^2
        mpz_class lim = 4 * N / -R.D, s;
        for (mpz_class b = 0; b * b <= lim; ++b) {
            if (!perfect_square(4 * N + R.D * b * b, s)) continue;
            for (int sb : {1, -1})
                for (int ss : {1, -1}) {
                    mpz_class t = ss * s - sb * b;
                    if (t % 2 == 0) try_elem({t / 2, sb * b});
                }
        }
    } else {
        // N = a^2 + |D| b^2
        mpz_class lim = N / -R.D, s;
        for (mpz_class b = 0; b * b <= lim; ++b) {
            if (!perfect_square(N + R.D * b * b, s)) continue;
            for (int sb : {1, -1})
                for (int ss : {1, -1}) try_elem({ss * s, sb * b});
        }
    }
    if (hits.empty()) return std::nullopt;
    return *std::min_element(hits.begin(), hits.end(), lex_less);
}

BezoutWitness bezout_generator(const QuadRing& R, const std::vector<QuadElem>& gens,
                               long n_max) {
    QuadIdeal J = ideal_from_gens(R, gens);
    QuadIdeal P = J;
    for (long n = 1; n <= n_max; ++n) {
        if (auto d = is_principal(R, P)) return {*d, n, gens};
        P = ideal_mul(R, P, J);
    }
    throw error(errc::cap_exceeded,
                "no principal power up to n = " + std::to_string(n_max));
}

WitnessVerdict verify_witness(const QuadRing& R, const BezoutWitness& w) {
    WitnessVerdict v;
    if (w.n < 1 || w.d.is_zero()) return v;
    QuadIdeal D = ideal_from_gens(R, {w.d});

    QuadIdeal J = ideal_from_gens(R, w.gens);
    QuadIdeal P = J;
    for (long i = 1; i < w.n; ++i) P = ideal_mul(R, P, J);
    v.power_matches = P == D;

    for (std::size_t i = 0; i < w.gens.size(); ++i) {
        QuadElem t{1, 0};
        for (long k = 0; k < w.n; ++k) t = qmul(R, t, w.gens[i]);
        if (!ideal_contains(D, t)) {
            v.bad_gen = i;
            break;
        }
    }
    return v;
}

} // namespace nptk
