// Exact rational functions over a shared variable context.
//
// The denominator is kept as a positive scalar times a sorted list of
// integer-primitive polynomial factors with positive leading coefficients.
// Arithmetic merges factor lists (true least common denominators) and reduces
// by trial division of the numerator against each factor, so the usual
// cancellations happen without any general multivariate gcd. The raw
// two-argument constructor additionally removes common univariate factors in
// each single variable via a pseudo-remainder gcd. Canonical form: zero is
// 0/1; p/q and (s*p)/(s*q) normalize identically for nonzero scalars s.
// Equality is decided by cross-multiplication.
#pragma once

#include "bcdy/mpoly.hpp"

namespace bcdy {

// Total order on polynomials (graded lex on terms, then coefficients).
int mpoly_cmp(const MPoly& a, const MPoly& b);

class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(MPoly num) : num_(std::move(num)) {}
  // Raw fraction; performs content plus per-variable univariate gcd reduction.
  RatFun(MPoly num, MPoly den);

  static RatFun constant(const VarCtxPtr& ctx, const Rat& c) {
    return RatFun(MPoly::constant(ctx, c));
  }
  static RatFun variable(const VarCtxPtr& ctx, const std::string& name, int power = 1) {
    if (power >= 0) return RatFun(MPoly::variable(ctx, name, power));
    return RatFun(MPoly::constant(ctx, Rat(1)), MPoly::variable(ctx, name, -power));
  }

  const MPoly& num() const { return num_; }
  MPoly den() const;  // assembled denominator
  const VarCtxPtr& ctx() const { return num_.ctx(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_factors_.empty(); }
  Rat constant_value() const { return num_.constant_value() / den_scalar_; }

  friend RatFun operator+(const RatFun& a, const RatFun& b) { return add_impl(a, b, false); }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return add_impl(a, b, true); }
  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun& operator*=(const Rat& s) {
    num_ *= s;
    scalar_normalize();
    return *this;
  }
  friend RatFun operator*(RatFun a, const Rat& s) { return a *= s; }
  friend RatFun operator*(const Rat& s, RatFun a) { return a *= s; }

  // Exact equality via cross-multiplication.
  bool operator==(const RatFun& o) const { return num_ * o.den() == o.num_ * den(); }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  // Structural identity of the canonical representatives.
  bool identical(const RatFun& o) const {
    if (den_scalar_ != o.den_scalar_ || num_ != o.num_) return false;
    if (den_factors_.size() != o.den_factors_.size()) return false;
    for (size_t k = 0; k < den_factors_.size(); ++k)
      if (den_factors_[k].e != o.den_factors_[k].e ||
          den_factors_[k].p != o.den_factors_[k].p)
        return false;
    return true;
  }

  RatFun subst(const std::string& var, const RatFun& value) const;
  RatFun subst_poly(const std::string& var, const MPoly& value) const;
  RatFun derivative(const std::string& var) const;
  Rat eval_all(const std::vector<Rat>& point) const;

  // Minimal power of `var` dividing the function; throws on zero input.
  int valuation(const std::string& var) const {
    if (is_zero()) throw RangeError("valuation of zero");
    int v = ctx()->index_checked(var);
    int val = num_.low_degree_in(v);
    for (auto& f : den_factors_) val -= f.e * f.p.low_degree_in(v);
    return val;
  }

  std::string str() const { return "(" + num_.str() + ")/(" + den().str() + ")"; }

 private:
  struct Factor {
    MPoly p;
    int e = 1;
  };

  void insert_factor(MPoly p, int e);
  void reduce_and_normalize();
  void scalar_normalize();
  static RatFun add_impl(const RatFun& a, const RatFun& b, bool subtract);

  MPoly num_;
  Rat den_scalar_{1};
  std::vector<Factor> den_factors_;
};

inline RatFun rf_zero(const VarCtxPtr& ctx) { return RatFun(MPoly(ctx)); }
inline RatFun rf_one(const VarCtxPtr& ctx) { return RatFun::constant(ctx, Rat(1)); }

}  // namespace bcdy
