#include "bcdy/laurent.hpp"

#include <set>

namespace bcdy {

namespace {

void check_directive(const RatFun& f, const ExpandDirective& d) {
  const VarCtx& ctx = *f.ctx();
  ctx.index_checked(d.large);
  std::set<std::string> seen{d.large};
  for (auto& s : d.small) {
    ctx.index_checked(s);
    if (!seen.insert(s).second)
      throw RangeError("expansion directive reuses variable: " + s);
  }
}

using Tail = std::map<int, RatFun>;  // u-exponent -> coefficient in remaining vars

Tail tail_mul(const Tail& a, const Tail& b, int floor_exp) {
  Tail r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      int e = ea + eb;
      if (e < floor_exp) continue;
      RatFun p = ca * cb;
      if (p.is_zero()) continue;
      auto it = r.find(e);
      if (it == r.end())
        r.emplace(e, p);
      else {
        it->second += p;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

}  // namespace

LaurentSeries expand_ratfun(const RatFun& f, const ExpandDirective& directive, int lo, int hi) {
  if (hi < lo) throw RangeError("empty expansion window");
  check_directive(f, directive);

  LaurentSeries out;
  out.ctx = f.ctx();
  out.directive = directive;
  out.lo = lo;
  out.hi = hi;
  if (f.is_zero()) return out;

  int vL = f.ctx()->index_checked(directive.large);
  const MPoly& den = f.den();
  int q = den.degree_in(vL);
  MPoly lead = den.coeff_of(vL, q);
  if (lead.is_zero()) throw RangeError("denominator has no leading part in " + directive.large);
  RatFun lead_inv = RatFun(MPoly::constant(f.ctx(), Rat(1))) / RatFun(lead);

  // den = lead*u^q * (1 + T) with T strictly negative in u.
  Tail t;
  for (int j = 0; j < q; ++j) {
    MPoly cj = den.coeff_of(vL, j);
    if (cj.is_zero()) continue;
    t[j - q] = RatFun(cj) * lead_inv;
  }

  int dn = f.num().degree_in(vL);
  // Terms of (-T)^k contribute final exponents <= dn - q - k.
  int kmax = dn - q - lo;
  int floor_exp = lo - dn + q;

  Tail geom{{0, rf_one(f.ctx())}};
  if (!t.empty() && kmax >= 1) {
    Tail neg_t;
    for (auto& [e, c] : t) neg_t[e] = -c;
    Tail power = neg_t;
    for (int k = 1; k <= kmax; ++k) {
      for (auto& [e, c] : power) {
        auto it = geom.find(e);
        if (it == geom.end())
          geom.emplace(e, c);
        else {
          it->second += c;
          if (it->second.is_zero()) geom.erase(it);
        }
      }
      if (k < kmax) power = tail_mul(power, neg_t, floor_exp);
    }
  }

  // num as a Laurent tail.
  Tail numt;
  for (int j = 0; j <= dn; ++j) {
    MPoly cj = f.num().coeff_of(vL, j);
    if (!cj.is_zero()) numt[j] = RatFun(cj);
  }

  Tail res = tail_mul(numt, geom, lo + q);
  for (auto& [e, c] : res) {
    int ef = e - q;
    if (ef < lo || ef > hi) continue;
    RatFun v = c * lead_inv;
    if (!v.is_zero()) out.coeff[ef] = v;
  }
  return out;
}

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries r;
  r.ctx = a.ctx;
  r.directive = a.directive;
  r.lo = std::max(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  for (int e = r.lo; e <= r.hi; ++e) {
    RatFun c = a.at(e) + b.at(e);
    if (!c.is_zero()) r.coeff[e] = c;
  }
  return r;
}

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b) {
  // These series are truncated from below (supports extend downward), so the
  // product is reliable on [max(a.lo + b.hi, b.lo + a.hi), a.hi + b.hi].
  LaurentSeries r;
  r.ctx = a.ctx;
  r.directive = a.directive;
  r.lo = std::max(a.lo + b.hi, b.lo + a.hi);
  r.hi = a.hi + b.hi;
  if (r.hi < r.lo) throw RangeError("empty product window");
  for (auto& [ea, ca] : a.coeff)
    for (auto& [eb, cb] : b.coeff) {
      int e = ea + eb;
      if (e < r.lo || e > r.hi) continue;
      RatFun p = ca * cb;
      if (p.is_zero()) continue;
      auto it = r.coeff.find(e);
      if (it == r.coeff.end())
        r.coeff.emplace(e, p);
      else {
        it->second += p;
        if (it->second.is_zero()) r.coeff.erase(it);
      }
    }
  return r;
}

}  // namespace bcdy
