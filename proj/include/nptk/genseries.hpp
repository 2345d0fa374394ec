#ifndef NPTK_GENSERIES_HPP
#define NPTK_GENSERIES_HPP

#include <utility>
#include <vector>

#include "nptk/series.hpp"

namespace nptk {

// Eventually periodic coefficient sequence: pre, then per cycled forever.
struct CoeffStream {
    std::vector<FieldElement> pre;
    std::vector<FieldElement> per; // nonempty
};

// Sum over i >= 1 of c_i t^(offset + gamma/p^i): exponents climb toward
// `offset`, so the support stays well-ordered. gamma < 0. Canonical form has
// c_1 nonzero (leading zeros are folded into gamma).
struct LadderSpec {
    mpq_class gamma;
    mpq_class offset = 0;
    CoeffStream stream;
};

// Characteristic-p series with well-ordered support: finitely many monomials
// below zero, ladders, and an ordinary tail of nonnegative order.
struct GenSeries {
    CtxPtr ctx;
    LaurentMap monomials; // exponents < 0
    std::vector<LadderSpec> ladders;
    PuiseuxSeries tail;
};

GenSeries gs_zero(const CtxPtr& ctx);
GenSeries gs_monomial(const FieldElement& c, const mpq_class& gamma);
GenSeries gs_ladder(const CtxPtr& ctx, const mpq_class& gamma, CoeffStream stream);
GenSeries gs_from_tail(PuiseuxSeries tail);

// c_i of the ladder (i >= 1).
FieldElement ladder_coeff(const LadderSpec& l, long i);

enum class GsOp { add, monomial_mul, normalize };

// The family is closed under addition and single-monomial multiplication
// only; monomial_mul expects y to carry exactly one term.
GenSeries gs_combine(GsOp op, const GenSeries& x, const GenSeries& y);

enum class FrobDir { forward, inverse };

// forward: x -> x^p (boundary monomials split off the ladders);
// inverse: the unique p-th root. They are mutually inverse, structurally.
GenSeries gs_frobenius(const GenSeries& x, FrobDir dir);

// All p roots of X^p - X = g for g with no ladder part. May enlarge the
// coefficient field (the constant term can need an Artin-Schreier extension).
std::vector<GenSeries> artin_schreier_solve(const GenSeries& g);

// Algebraicity certificate for x = sum c_i t^(-1/p^i): d with x^(p^d) - x of
// finite support, and that difference h.
std::pair<long, GenSeries> periodicity_witness(const CtxPtr& ctx, const CoeffStream& stream);

// Terms with exponent < alpha; ladder parts truncate to finitely many
// monomials whenever alpha <= their accumulation point.
GenSeries gs_truncate_below(const GenSeries& x, const mpq_class& alpha);

enum class GsVerdict { exact_zero, zero_to_depth, nonzero };

// Check sum_j a_j * x^(p^j) - target = 0; each a_j is a single monomial.
// Ladders are expanded to index <= depth, the tail scanned to exponent depth.
GsVerdict gs_verify_identity(const std::vector<std::pair<GenSeries, int>>& lhs,
                             const GenSeries& x, const GenSeries& target, int depth);

// Least m >= 1 such that every exponent of m * support has a p-power
// denominator (tail contributes through its ramification index).
long gs_support_scale(const GenSeries& x);

// Structural zero test; the tail is scanned to tail_bound if lazy.
bool gs_is_zero(const GenSeries& x, const mpq_class& tail_bound);

} // namespace nptk

#endif
