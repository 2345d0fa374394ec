#ifndef NPTK_QUADRING_HPP
#define NPTK_QUADRING_HPP

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "nptk/errors.hpp"

namespace nptk {

// Ring of integers of Q(sqrt(D)), D squarefree and negative. Integral basis
// (1, w) with w = (1+sqrt(D))/2 when D = 1 (mod 4), else w = sqrt(D);
// w^2 = trace*w + wsq.
struct QuadRing {
    mpz_class D;
    bool half = false;
    mpz_class trace;
    mpz_class wsq;

    static QuadRing create(long D);
    mpz_class disc() const { return half ? D : 4 * D; }
};

// a + b*w
struct QuadElem {
    mpz_class a, b;

    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const QuadElem& x, const QuadElem& y) = default;
};

QuadElem qadd(const QuadElem& x, const QuadElem& y);
QuadElem qsub(const QuadElem& x, const QuadElem& y);
QuadElem qmul(const QuadRing& R, const QuadElem& x, const QuadElem& y);
QuadElem qconj(const QuadRing& R, const QuadElem& x);
mpz_class qnorm(const QuadRing& R, const QuadElem& x);
std::string qstr(const QuadElem& x);

// Nonzero ideal as a Hermite basis { (a, 0), (b, c) } in coordinates over
// (1, w); a, c > 0 and 0 <= b < a. Norm = a*c.
struct QuadIdeal {
    mpz_class a, b, c;

    mpz_class norm() const { return a * c; }
    friend bool operator==(const QuadIdeal& x, const QuadIdeal& y) = default;
};

// Ideal generated by ring elements. Throws ZeroIdeal when all are zero.
QuadIdeal ideal_from_gens(const QuadRing& R, const std::vector<QuadElem>& gens);
QuadIdeal ideal_mul(const QuadRing& R, const QuadIdeal& I, const QuadIdeal& J);
bool ideal_contains(const QuadIdeal& I, const QuadElem& x);

// A generator g with (g) = I, when one exists; deterministic (the
// lexicographically least (a, b) among all generators).
std::optional<QuadElem> is_principal(const QuadRing& R, const QuadIdeal& I);

// (d, n) with J^n = (d) for J the ideal generated by `gens`; d^(1/n) is the
// principal generator of the extension, represented only by this pair.
struct BezoutWitness {
    QuadElem d;
    long n = 0;
    std::vector<QuadElem> gens;
};

// Smallest n >= 1 with J^n principal. Throws CapExceeded past n_max.
BezoutWitness bezout_generator(const QuadRing& R, const std::vector<QuadElem>& gens,
                               long n_max = 100);

struct WitnessVerdict {
    bool power_matches = false;          // J^n = (d) exactly
    std::optional<std::size_t> bad_gen;  // first i with gens[i]^n not in (d)

    bool ok() const { return power_matches && !bad_gen; }
};

WitnessVerdict verify_witness(const QuadRing& R, const BezoutWitness& w);

} // namespace nptk

#endif
