#ifndef NPTK_PUISEUX_HPP
#define NPTK_PUISEUX_HPP

#include "nptk/hensel.hpp"
#include "nptk/series.hpp"

namespace nptk {

struct SolveLimits {
    long max_ramification = 0; // 0 picks n * lcm(1..n)
    int max_depth = 64;
};

// One fractional-power root of a monic polynomial over Puiseux series.
struct RootBranch {
    CtxPtr ctx;         // coefficient field of this branch (may extend the input field)
    PuiseuxSeries root; // exact, coefficients computable to any exponent
    std::vector<std::pair<mpq_class, FieldElement>> terms; // expansion below the cutoff
    long e = 1;         // ramification index of the truncated expansion
    int multiplicity = 1;
};

// Kill the degree n-1 term: returns (f(y - s), s) with s = a_1/n.
// Requires char 0 or char p with p not dividing n.
std::pair<SeriesPoly, PuiseuxSeries> tschirnhausen(const SeriesPoly& f);

// min over nonzero a_i of ord(a_i)/i; every order is resolved within scan_bound.
mpq_class newton_slope(const SeriesPoly& f, const mpq_class& scan_bound);

// One step of the solver: substitute z = t^r y along the Newton slope and
// split the residue polynomial.
struct SplitOutcome {
    enum class Kind {
        split,    // residue has >= 2 distinct roots: g*h = q, factors lifted
        ramify,   // residue is (y - alpha)^n: recenter and go again
        pure_root // every coefficient vanishes (to the scan bound): root y = 0
    };
    Kind kind;
    mpq_class r;     // Newton slope (split / ramify)
    CtxPtr ctx;      // possibly enlarged coefficient field
    SeriesPoly q;    // f with z = t^r y substituted, over ctx (split / ramify)
    SeriesPoly g, h; // split only
    FieldElement alpha; // ramify only
};

SplitOutcome split_once(const SeriesPoly& f, const mpq_class& scan_bound);

// All deg(f) fractional-power roots of f, expansions listed below N,
// canonically ordered. Wild (char p) inputs raise wild_ramification.
std::vector<RootBranch> puiseux_roots(const SeriesPoly& f, const mpq_class& N,
                                      const SolveLimits& limits = {});

struct VerifyResult {
    bool exact_zero;    // residual recognized as identically zero
    mpq_class ord_bound;// lower bound on ord of the residual f(branch)
    mpq_class required; // N minus the truncation slack
    bool passed;
};

// Substitute the truncated expansion back into f and bound the residual order.
VerifyResult verify_root(const SeriesPoly& f, const RootBranch& b, const mpq_class& N);

} // namespace nptk

#endif
