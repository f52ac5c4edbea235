// Truncated Laurent expansion of a rational function in one distinguished
// "large" variable, with the listed small variables expanded in nonnegative
// powers. Negative powers (x1+...+xk)^r are expanded in nonnegative powers of
// the later variables; the coefficient of each power of the large variable is
// an exact rational function in the remaining variables.
#pragma once

#include "bcdy/ratfun.hpp"

#include <map>

namespace bcdy {

struct ExpandDirective {
  std::string large;
  std::vector<std::string> small;  // expanded in nonnegative powers
};

struct LaurentSeries {
  VarCtxPtr ctx;
  ExpandDirective directive;
  int lo = 0, hi = -1;             // inclusive exponent window in the large variable
  std::map<int, RatFun> coeff;     // exponent -> coefficient (zero entries omitted)

  RatFun at(int e) const {
    auto it = coeff.find(e);
    return it == coeff.end() ? rf_zero(ctx) : it->second;
  }
};

LaurentSeries expand_ratfun(const RatFun& f, const ExpandDirective& directive, int lo, int hi);

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b);
// Product truncated to the intersection window implied by the inputs.
LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b);

}  // namespace bcdy
