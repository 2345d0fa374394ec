#ifndef NPTK_SERIES_HPP
#define NPTK_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "nptk/field.hpp"

namespace nptk {

// Exponent -> coefficient map of a Laurent polynomial in t (rational exponents).
using LaurentMap = std::map<mpq_class, FieldElement>;

enum class SeriesKind { finite_laurent, rational_function, lazy_derived };

struct SeriesRep;

// Lazy exact series in t^(1/e) with exact rational exponents bounded below.
// Immutable description plus an idempotent internal memo; values may be
// shared freely between threads.
class PuiseuxSeries {
  public:
    PuiseuxSeries() = default;

    static PuiseuxSeries zero(const CtxPtr& ctx);
    static PuiseuxSeries one(const CtxPtr& ctx);
    static PuiseuxSeries finite(const CtxPtr& ctx, LaurentMap terms);
    static PuiseuxSeries monomial(const FieldElement& c, const mpq_class& exp);
    static PuiseuxSeries constant(const FieldElement& c);
    // num / den as formal Laurent series (den != 0).
    static PuiseuxSeries rational(const CtxPtr& ctx, LaurentMap num, LaurentMap den);
    static PuiseuxSeries lazy(const CtxPtr& ctx, long ram, mpq_class lower,
                              std::function<FieldElement(const mpq_class&)> fn);

    bool valid() const { return rep_ != nullptr; }
    const CtxPtr& ctx() const;
    long ram() const;                // ramification index e
    const mpq_class& lower() const;  // exponent lower bound (not necessarily tight)
    SeriesKind kind() const;
    bool is_exact_zero() const;

    // Coefficient at exponent `e`; zero below the bound or off the lattice.
    FieldElement at(const mpq_class& e) const;

    PuiseuxSeries lift_to(const CtxPtr& ctx) const;

    // Exact numerator/denominator view of a finite or rational presentation.
    std::pair<LaurentMap, LaurentMap> as_fraction() const;

  private:
    explicit PuiseuxSeries(std::shared_ptr<const SeriesRep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const SeriesRep> rep_;
    friend PuiseuxSeries make_series(std::shared_ptr<const SeriesRep>);
};

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a);

struct OrdResult {
    enum class Status { found, exact_zero, zero_to_bound };
    Status status;
    mpq_class value; // ord when found, the scan bound when zero_to_bound

    bool found() const { return status == Status::found; }
    bool zero() const { return status != Status::found; }
};

// Least exponent with nonzero coefficient, scanning at most to `bound`.
// Exact for finite and rational presentations regardless of the bound.
OrdResult ord_scan(const PuiseuxSeries& s, const mpq_class& bound);

// Multiplicative inverse; needs ord(s) resolvable within `scan_bound`.
PuiseuxSeries invert(const PuiseuxSeries& s, const mpq_class& scan_bound);

// Exponent map gamma -> m*gamma + r.
PuiseuxSeries reindex(const PuiseuxSeries& s, long m, const mpq_class& r);

// All nonzero terms with exponent < N, ascending.
std::vector<std::pair<mpq_class, FieldElement>> truncate_series(const PuiseuxSeries& s,
                                                                const mpq_class& N);

// Monic polynomial z^n + a_1 z^{n-1} + ... + a_n over Puiseux coefficients.
struct SeriesPoly {
    CtxPtr ctx;
    std::vector<PuiseuxSeries> tail; // tail[i] = a_{i+1}

    std::size_t degree() const { return tail.size(); }
    const PuiseuxSeries& coeff(std::size_t i) const { return tail.at(i - 1); } // a_i
    SeriesPoly lift_to(const CtxPtr& c) const;
};

PuiseuxSeries eval_poly(const SeriesPoly& f, const PuiseuxSeries& s);

} // namespace nptk

#endif
