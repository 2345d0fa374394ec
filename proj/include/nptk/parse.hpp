#ifndef NPTK_PARSE_HPP
#define NPTK_PARSE_HPP

#include <string>

#include "nptk/quadring.hpp"
#include "nptk/series.hpp"

namespace nptk {

// "z^2 - z - t^(-1)" over the given coefficient field; the result is made
// monic by dividing through the leading coefficient, which must be a unit of
// k[[t]] (exact order zero). Degree must be >= 1.
SeriesPoly parse_poly(const std::string& src, const CtxPtr& ctx);

// z-free expression: Laurent polynomial / rational function in t.
PuiseuxSeries parse_series(const std::string& src, const CtxPtr& ctx);

// "a+b*w" with integer a, b.
QuadElem parse_quad(const std::string& src);

// Pretty form matching the parser: "t^(-1/2) + 1/2 + 1/8*t^(1/2)", exponents
// strictly below cutoff.
std::string series_text(const PuiseuxSeries& s, const mpq_class& cutoff);

} // namespace nptk

#endif
