#include "bcdy/ratfun.hpp"

namespace bcdy {

int mpoly_cmp(const MPoly& a, const MPoly& b) {
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  GrlexLess less;
  for (; ia != ea && ib != eb; ++ia, ++ib) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ia != ea) return 1;
  if (ib != eb) return -1;
  return 0;
}

namespace {

// Strips rational content and fixes a positive leading coefficient; returns
// the scalar taken out, so p_in == scalar * p_out with p_out integer-primitive.
Rat make_primitive(MPoly& p) {
  Rat c = p.content();
  if (!p.is_zero() && p.terms().rbegin()->second < 0) c = -c;
  if (c != 1) p *= 1 / c;
  return c;
}

}  // namespace

void RatFun::insert_factor(MPoly p, int e) {
  if (e == 0) return;
  if (p.is_zero()) throw ZeroDenominatorError("rational function with zero denominator");
  Rat s = make_primitive(p);
  if (p.is_constant()) {
    // p is now the constant 1
    for (int k = 0; k < e; ++k) den_scalar_ *= s;
    return;
  }
  for (int k = 0; k < e; ++k) den_scalar_ *= s;
  for (auto& f : den_factors_) {
    if (f.p == p) {
      f.e += e;
      return;
    }
  }
  Factor nf;
  nf.p = std::move(p);
  nf.e = e;
  // keep the factor list sorted for canonical form
  auto it = den_factors_.begin();
  while (it != den_factors_.end() && mpoly_cmp(it->p, nf.p) < 0) ++it;
  den_factors_.insert(it, std::move(nf));
}

void RatFun::reduce_and_normalize() {
  if (num_.is_zero()) {
    den_scalar_ = Rat(1);
    den_factors_.clear();
    return;
  }
  for (auto it = den_factors_.begin(); it != den_factors_.end();) {
    while (it->e > 0) {
      auto q = num_.divide_exact(it->p);
      if (!q) break;
      num_ = std::move(*q);
      --it->e;
    }
    it = it->e == 0 ? den_factors_.erase(it) : std::next(it);
  }
  scalar_normalize();
}

void RatFun::scalar_normalize() {
  if (num_.is_zero()) {
    den_scalar_ = Rat(1);
    den_factors_.clear();
    return;
  }
  Rat cn = num_.content();
  mpz_class g, l;
  mpz_gcd(g.get_mpz_t(), cn.get_num().get_mpz_t(), den_scalar_.get_num().get_mpz_t());
  mpz_lcm(l.get_mpz_t(), cn.get_den().get_mpz_t(), den_scalar_.get_den().get_mpz_t());
  Rat common(g, l);
  common.canonicalize();
  if (den_scalar_ < 0) common = -common;
  if (common != 1) {
    num_ *= 1 / common;
    den_scalar_ /= common;
  }
}

RatFun::RatFun(MPoly num, MPoly den) : num_(std::move(num)) {
  if (den.is_zero()) throw ZeroDenominatorError("rational function with zero denominator");
  if (num_.is_zero()) return;
  // Content plus per-variable univariate gcd reduction on the raw pair. The
  // random specialization probe keeps the pseudo-remainder sequence off the
  // common coprime path.
  if (!den.is_constant() && !num_.is_constant()) {
    size_t nvars = num_.ctx()->size();
    for (size_t v = 0; v < nvars; ++v) {
      int var = static_cast<int>(v);
      if (num_.degree_in(var) <= 0 || den.degree_in(var) <= 0) continue;
      if (specialized_gcd_degree(num_, den, var, 0) <= 0) continue;
      if (specialized_gcd_degree(num_, den, var, 5) <= 0) continue;
      MPoly g = uni_gcd(num_, den, var);
      if (g.degree_in(var) <= 0) continue;
      auto qn = num_.divide_exact(g);
      if (!qn) continue;
      auto qd = den.divide_exact(g);
      if (!qd) continue;
      num_ = std::move(*qn);
      den = std::move(*qd);
      if (den.is_constant() || num_.is_constant()) break;
    }
  }
  insert_factor(std::move(den), 1);
  reduce_and_normalize();
}

MPoly RatFun::den() const {
  if (!num_.ctx()) throw RangeError("rational function without a context");
  MPoly d = MPoly::constant(num_.ctx(), den_scalar_);
  for (auto& f : den_factors_)
    for (int k = 0; k < f.e; ++k) d *= f.p;
  return d;
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  RatFun r;
  r.num_ = a.num_ * b.num_;
  if (r.num_.is_zero()) {
    r.num_ = MPoly(a.ctx() ? a.ctx() : b.ctx());
    return r;
  }
  r.den_scalar_ = a.den_scalar_ * b.den_scalar_;
  r.den_factors_ = a.den_factors_;
  for (auto& f : b.den_factors_) r.insert_factor(f.p, f.e);
  r.reduce_and_normalize();
  return r;
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw ZeroDenominatorError("division by zero rational function");
  RatFun r;
  r.num_ = a.num_;
  if (r.num_.is_zero()) {
    r.num_ = MPoly(a.ctx() ? a.ctx() : b.ctx());
    return r;
  }
  for (auto& f : b.den_factors_)
    for (int k = 0; k < f.e; ++k) r.num_ *= f.p;
  r.num_ *= b.den_scalar_;
  r.den_scalar_ = a.den_scalar_;
  r.den_factors_ = a.den_factors_;
  r.insert_factor(b.num_, 1);
  r.reduce_and_normalize();
  return r;
}

RatFun RatFun::add_impl(const RatFun& a, const RatFun& b, bool subtract) {
  if (a.num_.is_zero()) {
    RatFun r = b;
    if (subtract) r.num_ = -r.num_;
    return r;
  }
  if (b.num_.is_zero()) return a;

  RatFun r;
  // union of factor lists = least common denominator
  r.den_factors_ = a.den_factors_;
  for (auto& f : b.den_factors_) {
    bool found = false;
    for (auto& g : r.den_factors_)
      if (g.p == f.p) {
        g.e = std::max(g.e, f.e);
        found = true;
        break;
      }
    if (!found) r.insert_factor(f.p, f.e);
  }
  auto cofactor = [&](const RatFun& x) {
    MPoly c = MPoly::constant(x.ctx(), Rat(1));
    for (auto& g : r.den_factors_) {
      int have = 0;
      for (auto& f : x.den_factors_)
        if (f.p == g.p) {
          have = f.e;
          break;
        }
      for (int k = 0; k < g.e - have; ++k) c *= g.p;
    }
    return c;
  };
  // scalars: common denominator scalar is the product; scale cross terms
  MPoly ca = cofactor(a) * b.den_scalar_;
  MPoly cb = cofactor(b) * a.den_scalar_;
  r.den_scalar_ = a.den_scalar_ * b.den_scalar_;
  r.num_ = subtract ? a.num_ * ca - b.num_ * cb : a.num_ * ca + b.num_ * cb;
  if (r.num_.is_zero()) {
    r.num_ = MPoly(a.ctx());
    r.den_scalar_ = Rat(1);
    r.den_factors_.clear();
    return r;
  }
  r.reduce_and_normalize();
  return r;
}

RatFun RatFun::subst_poly(const std::string& var, const MPoly& value) const {
  int v = ctx()->index_checked(var);
  RatFun r;
  r.num_ = num_.subst(v, value);
  if (r.num_.is_zero()) {
    r.num_ = MPoly(ctx());
    return r;
  }
  r.den_scalar_ = den_scalar_;
  for (auto& f : den_factors_) r.insert_factor(f.p.subst(v, value), f.e);
  r.reduce_and_normalize();
  return r;
}

RatFun RatFun::subst(const std::string& var, const RatFun& value) const {
  int v = ctx()->index_checked(var);
  MPoly d = den();
  int dn = num_.degree_in(v), dd = d.degree_in(v);
  int deg = std::max(dn, dd);
  RatFun n = rf_zero(ctx());
  RatFun m = rf_zero(ctx());
  MPoly vnum = value.num_;
  MPoly vden = value.den();
  for (int k = 0; k <= deg; ++k) {
    RatFun p(vnum.pow(k) * vden.pow(deg - k));
    if (k <= dn) n += RatFun(num_.coeff_of(v, k)) * p;
    if (k <= dd) m += RatFun(d.coeff_of(v, k)) * p;
  }
  return n / m;
}

RatFun RatFun::derivative(const std::string& var) const {
  int v = ctx()->index_checked(var);
  if (is_zero()) return *this;
  // (n / s prod f^e)' = (n' prod f - n sum e f' prod_{g != f} g) / (s prod f^{e+1})
  MPoly prod_all = MPoly::constant(ctx(), Rat(1));
  for (auto& f : den_factors_) prod_all *= f.p;
  MPoly top = num_.derivative(v) * prod_all;
  for (auto& f : den_factors_) {
    MPoly rest = MPoly::constant(ctx(), Rat(1));
    for (auto& g : den_factors_)
      if (&g != &f) rest *= g.p;
    top -= num_ * f.p.derivative(v) * rest * Rat(f.e);
  }
  RatFun r;
  r.num_ = std::move(top);
  if (r.num_.is_zero()) {
    r.num_ = MPoly(ctx());
    return r;
  }
  r.den_scalar_ = den_scalar_;
  for (auto& f : den_factors_) r.insert_factor(f.p, f.e + 1);
  r.reduce_and_normalize();
  return r;
}

Rat RatFun::eval_all(const std::vector<Rat>& point) const {
  Rat d = den_scalar_;
  for (auto& f : den_factors_) {
    Rat fv = f.p.eval_all(point);
    if (fv == 0) throw ZeroDenominatorError("evaluation at a pole");
    for (int k = 0; k < f.e; ++k) d *= fv;
  }
  return num_.eval_all(point) / d;
}

}  // namespace bcdy
