#ifndef NPTK_HENSEL_HPP
#define NPTK_HENSEL_HPP

#include "nptk/polynomial.hpp"
#include "nptk/series.hpp"

namespace nptk {

// Lift the coprime residue factorization f mod t = g0 * h0 to monic factors
// with g*h = f. The returned factor coefficients are lazy views onto a shared
// lifting state and are exact to any requested exponent.
std::pair<SeriesPoly, SeriesPoly> hensel_factors(const SeriesPoly& f, const FPoly& g0,
                                                 const FPoly& h0);

// Same, with every factor coefficient materialized on exponents < N.
std::pair<SeriesPoly, SeriesPoly> hensel_lift(const SeriesPoly& f, const FPoly& g0,
                                              const FPoly& h0, const mpq_class& N);

} // namespace nptk

#endif
