#ifndef NPTK_FIELD_HPP
#define NPTK_FIELD_HPP

#include <gmpxx.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "nptk/errors.hpp"

namespace nptk {

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

// Recursive dense representation of a tower-field element.
//
// lvl == 0: a base value, `q` in characteristic 0 or `r` (in [0,p)) in
// characteristic p. lvl == k > 0: a polynomial in the k-th tower generator
// with coefficients of lower level, reduced modulo the defining polynomial,
// trailing coefficient nonzero and size >= 2 (degree-0 polynomials collapse
// to their constant, so the representation of an element is unique).
struct Val {
    int lvl = 0;
    mpq_class q;
    unsigned long r = 0;
    std::vector<Val> c;
};

bool val_eq(const Val& a, const Val& b);
bool val_is_zero(const Val& v);
// Total order used only for canonical sorting of output; no algebraic meaning.
int val_cmp(const Val& a, const Val& b);

class FieldElement;

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
  public:
    enum class SplitMode { strict_irreducible, dynamic_evaluation };

    static CtxPtr rationals();
    static CtxPtr prime_field(unsigned long p);

    unsigned long characteristic() const { return p_; }
    SplitMode mode() const { return mode_; }
    std::size_t levels() const { return tower_.size(); }
    // Defining polynomial of level i, dense low->high over lower levels, monic.
    const std::vector<Val>& minpoly(std::size_t i) const { return tower_[i]; }
    std::size_t level_degree(std::size_t i) const { return tower_[i].size() - 1; }
    // [F : F_p] (characteristic p only).
    unsigned long total_degree() const;
    // p^total_degree (characteristic p only).
    mpz_class order() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long n) const;
    FieldElement from_integer(const mpz_class& n) const;
    FieldElement from_rational(const mpq_class& x) const;
    FieldElement generator(std::size_t i) const;
    FieldElement from_val(Val v) const;
    FieldElement random_element(std::mt19937& rng) const;

    // New ctx with one more tower level; minpoly given densely over this ctx.
    CtxPtr extend(const std::vector<FieldElement>& minpoly_monic) const;

    friend bool ctx_compatible(const CtxPtr& a, const CtxPtr& b);
    friend CtxPtr ctx_join(const CtxPtr& a, const CtxPtr& b);

  private:
    FieldCtx() = default;
    unsigned long p_ = 0;
    SplitMode mode_ = SplitMode::dynamic_evaluation;
    std::vector<std::vector<Val>> tower_;
};

// True when one tower is a prefix of the other (same characteristic).
bool ctx_compatible(const CtxPtr& a, const CtxPtr& b);
// The larger of two compatible ctxs.
CtxPtr ctx_join(const CtxPtr& a, const CtxPtr& b);

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(CtxPtr ctx, Val v) : ctx_(std::move(ctx)), v_(std::move(v)) {}

    const CtxPtr& ctx() const { return ctx_; }
    const Val& val() const { return v_; }
    bool is_zero() const { return val_is_zero(v_); }
    bool is_one() const;

    // Rational value of a level-0 element (characteristic 0 only).
    bool is_rational() const { return v_.lvl == 0; }
    mpq_class rational() const;

    std::string str() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  private:
    CtxPtr ctx_;
    Val v_;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement inv(const FieldElement& a);
FieldElement pow_elem(const FieldElement& a, const mpz_class& e);

// Inverse Frobenius; the unique y with y^p = x. Characteristic p only.
FieldElement pth_root(const FieldElement& x);

// Raised when dynamic evaluation hits a zero divisor: `factor` is a proper
// divisor of the level-`level` defining polynomial.
class split_required : public error {
  public:
    split_required(CtxPtr ctx, std::size_t level, std::vector<Val> factor)
        : error(errc::split_required, "dynamic evaluation found a zero divisor"),
          ctx_(std::move(ctx)), level_(level), factor_(std::move(factor)) {}
    const CtxPtr& ctx() const { return ctx_; }
    std::size_t level() const { return level_; }
    const std::vector<Val>& factor() const { return factor_; }

  private:
    CtxPtr ctx_;
    std::size_t level_;
    std::vector<Val> factor_;
};

// Branch a dynamic-evaluation ctx at `level` along `factor | minpoly(level)`:
// returns the ctx with modulus `factor` and the one with the cofactor.
std::pair<CtxPtr, CtxPtr> branch_ctx(const CtxPtr& ctx, std::size_t level,
                                     const std::vector<Val>& factor);

struct AdjoinResult {
    CtxPtr ctx;
    FieldElement root;
};

// Root of a monic squarefree polynomial, enlarging the ctx when needed.
AdjoinResult adjoin_root(const CtxPtr& ctx, const std::vector<FieldElement>& f);

struct RootMult {
    FieldElement root;
    int mult;
};

struct SplitResult {
    CtxPtr ctx;
    std::vector<RootMult> roots;
};

// Complete root multiset of a monic polynomial over a possibly enlarged ctx.
SplitResult poly_split(const CtxPtr& ctx, const std::vector<FieldElement>& f);

} // namespace nptk

#endif
