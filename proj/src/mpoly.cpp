#include "bcdy/mpoly.hpp"

namespace bcdy {

static void strip_content(MPoly& p) {
  if (p.is_zero()) return;
  Rat c = p.content();
  if (c != 1) {
    Rat inv = 1 / c;
    p *= inv;
  }
  Expo m = p.monomial_content();
  if (expo_degree(m) > 0) p.divide_monomial(m);
}

MPoly pseudo_rem(const MPoly& a, const MPoly& b, int var) {
  if (b.is_zero()) throw ZeroDenominatorError("pseudo-division by zero");
  MPoly r = a;
  int db = b.degree_in(var);
  MPoly lb = b.leading_coeff_in(var);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    MPoly lr = r.leading_coeff_in(var);
    MPoly xshift = MPoly::variable(r.ctx(), r.ctx()->names[static_cast<size_t>(var)], dr - db);
    r = r * lb - b * (lr * xshift);
    strip_content(r);
    if (!r.is_zero() && r.degree_in(var) >= dr) throw Error("pseudo-division failed to reduce degree");
  }
  return r;
}

namespace {

// Dense univariate image of p in `var` with the other variables evaluated at
// small primes (offset by `salt` to vary the specialization).
std::vector<Rat> specialize(const MPoly& p, int var, unsigned salt) {
  static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  int d = p.degree_in(var);
  std::vector<Rat> out(static_cast<size_t>(d + 1), Rat(0));
  size_t nv = p.ctx()->size();
  std::vector<Rat> pts(nv);
  for (size_t k = 0; k < nv; ++k) pts[k] = Rat(primes[(k + salt) % 12]);
  for (auto& [e, c] : p.terms()) {
    Rat t = c;
    for (size_t k = 0; k < nv; ++k) {
      if (static_cast<int>(k) == var) continue;
      for (int j = 0; j < e[k]; ++j) t *= pts[k];
    }
    out[static_cast<size_t>(e[static_cast<size_t>(var)])] += t;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

int uni_gcd_degree(std::vector<Rat> a, std::vector<Rat> b) {
  auto deg = [](const std::vector<Rat>& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
    return d;
  };
  while (deg(b) >= 0) {
    int da = deg(a), db = deg(b);
    if (da < db) {
      a.swap(b);
      continue;
    }
    for (int k = da; k >= db; --k) {
      Rat f = a[static_cast<size_t>(k)] / b[static_cast<size_t>(db)];
      if (f == 0) continue;
      for (int j = 0; j <= db; ++j)
        a[static_cast<size_t>(k - db + j)] -= f * b[static_cast<size_t>(j)];
    }
    a.swap(b);  // (b, a mod b)
  }
  return deg(a);
}

}  // namespace

int specialized_gcd_degree(const MPoly& a, const MPoly& b, int var, unsigned salt) {
  return uni_gcd_degree(specialize(a, var, salt), specialize(b, var, salt));
}

MPoly uni_gcd(const MPoly& a, const MPoly& b, int var) {
  MPoly f = a, g = b;
  strip_content(f);
  strip_content(g);
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
  while (!g.is_zero() && g.degree_in(var) >= 0) {
    if (g.degree_in(var) == 0) {
      // A remainder free of var means the univariate gcd is trivial in var.
      return MPoly::constant(a.ctx(), Rat(1));
    }
    MPoly r = pseudo_rem(f, g, var);
    f = g;
    g = r;
  }
  strip_content(f);
  return f;
}

}  // namespace bcdy
