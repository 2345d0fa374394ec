#ifndef NPTK_POLYNOMIAL_HPP
#define NPTK_POLYNOMIAL_HPP

#include <utility>
#include <vector>

#include "nptk/field.hpp"

namespace nptk {

// Dense univariate polynomial over a FieldCtx, low -> high, no trailing
// zeros; the empty vector is the zero polynomial.
using FPoly = std::vector<FieldElement>;

FPoly ptrim(FPoly f);
int pdeg(const FPoly& f); // -1 for zero

FPoly pconst(const CtxPtr& ctx, const FieldElement& c);
FPoly pvar(const CtxPtr& ctx); // x
FPoly from_root(const FieldElement& r); // x - r

FPoly padd(const FPoly& a, const FPoly& b);
FPoly psub(const FPoly& a, const FPoly& b);
FPoly pneg(const FPoly& a);
FPoly pmul(const FPoly& a, const FPoly& b);
FPoly pscale(const FPoly& a, const FieldElement& c);
bool peq(const FPoly& a, const FPoly& b);

// Quotient and remainder; requires invertible leading coefficient of g.
std::pair<FPoly, FPoly> pdivmod(const FPoly& f, const FPoly& g);
FPoly pmod(const FPoly& f, const FPoly& g);
FPoly pquo(const FPoly& f, const FPoly& g);

FPoly pmonic(const FPoly& f);
FPoly pgcd(const FPoly& a, const FPoly& b); // monic (or zero)

struct PXgcd {
    FPoly g, s, t; // s*a + t*b = g, g monic (or zero)
};
PXgcd pxgcd(const FPoly& a, const FPoly& b);

FPoly pderiv(const FPoly& f);
FieldElement peval(const FPoly& f, const FieldElement& x);
FPoly ppowmod(const FPoly& base, const mpz_class& e, const FPoly& mod);

// Taylor shift: f(x + a).
FPoly pshift(const FPoly& f, const FieldElement& a);

// Squarefree decomposition f = prod g_i^{m_i}, characteristic-aware.
std::vector<std::pair<FPoly, int>> sqfree_decompose(const FPoly& f);

// Complete factorization of a monic squarefree polynomial over a finite
// field into monic irreducibles (Cantor-Zassenhaus).
std::vector<FPoly> factor_squarefree_ff(const FPoly& f, std::mt19937& rng);

} // namespace nptk

#endif
