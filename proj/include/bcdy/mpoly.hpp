// Sparse multivariate polynomials over exact rationals.
//
// A polynomial carries a pointer to its variable context (an ordered list of
// variable names). Terms are kept in a map ordered by graded lexicographic
// order on exponent vectors, so iteration order is deterministic and the
// leading term is the last entry.
#pragma once

#include "bcdy/rat.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bcdy {

struct VarCtx {
  std::vector<std::string> names;

  int index(const std::string& name) const {
    for (size_t k = 0; k < names.size(); ++k)
      if (names[k] == name) return static_cast<int>(k);
    return -1;
  }
  int index_checked(const std::string& name) const {
    int k = index(name);
    if (k < 0) throw RangeError("unknown variable: " + name);
    return k;
  }
  size_t size() const { return names.size(); }
};

using VarCtxPtr = std::shared_ptr<const VarCtx>;

inline VarCtxPtr make_ctx(std::vector<std::string> names) {
  auto c = std::make_shared<VarCtx>();
  c->names = std::move(names);
  return c;
}

using Expo = std::vector<int>;

inline int expo_degree(const Expo& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(VarCtxPtr ctx) : ctx_(std::move(ctx)) {}
  MPoly(VarCtxPtr ctx, const Rat& c) : ctx_(std::move(ctx)) {
    if (c != 0) terms_[Expo(ctx_->size(), 0)] = c;
  }

  static MPoly constant(VarCtxPtr ctx, const Rat& c) { return MPoly(std::move(ctx), c); }
  static MPoly variable(VarCtxPtr ctx, const std::string& name, int power = 1) {
    MPoly p(ctx);
    Expo e(ctx->size(), 0);
    e[static_cast<size_t>(ctx->index_checked(name))] = power;
    p.terms_[e] = Rat(1);
    return p;
  }

  const VarCtxPtr& ctx() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && expo_degree(terms_.begin()->first) == 0);
  }
  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw RangeError("polynomial is not constant");
    return terms_.begin()->second;
  }
  size_t term_count() const { return terms_.size(); }
  const std::map<Expo, Rat, GrlexLess>& terms() const { return terms_; }

  void add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r(ctx_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  MPoly& operator+=(const MPoly& o) {
    check_ctx(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_ctx(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_ctx(b);
    MPoly r(a.ctx_);
    Expo e(a.ctx_ ? a.ctx_->size() : 0, 0);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend MPoly operator*(MPoly a, const Rat& s) { return a *= s; }
  friend MPoly operator*(const Rat& s, MPoly a) { return a *= s; }

  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly pow(int n) const {
    if (n < 0) throw RangeError("negative polynomial power");
    MPoly r = constant(ctx_, Rat(1));
    MPoly base = *this;
    while (n) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  int total_degree() const {
    if (terms_.empty()) return -1;
    return expo_degree(terms_.rbegin()->first);
  }
  int degree_in(int var) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
  }
  int low_degree_in(int var) const {
    // Minimal exponent of `var` over all terms; -1 for the zero polynomial.
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first[static_cast<size_t>(var)];
    for (auto& [e, c] : terms_) d = std::min(d, e[static_cast<size_t>(var)]);
    return d;
  }

  // Coefficient of var^k, as a polynomial in the same context with var-degree 0.
  MPoly coeff_of(int var, int k) const {
    MPoly r(ctx_);
    for (auto& [e, c] : terms_)
      if (e[static_cast<size_t>(var)] == k) {
        Expo e2 = e;
        e2[static_cast<size_t>(var)] = 0;
        r.add_term(e2, c);
      }
    return r;
  }

  MPoly leading_coeff_in(int var) const { return coeff_of(var, degree_in(var)); }

  // Substitute value for var (Horner in var).
  MPoly subst(int var, const MPoly& value) const {
    int d = degree_in(var);
    if (d <= 0 && low_degree_in(var) <= 0) {
      if (d < 0) return *this;
    }
    MPoly r(ctx_);
    for (int k = d; k >= 0; --k) {
      r = r * value + coeff_of(var, k);
    }
    return r;
  }

  MPoly eval(int var, const Rat& x) const {
    return subst(var, constant(ctx_, x));
  }

  Rat eval_all(const std::vector<Rat>& point) const {
    if (point.size() != ctx_->size()) throw RangeError("evaluation point arity mismatch");
    Rat acc(0);
    for (auto& [e, c] : terms_) {
      Rat t = c;
      for (size_t k = 0; k < e.size(); ++k)
        for (int j = 0; j < e[k]; ++j) t *= point[k];
      acc += t;
    }
    return acc;
  }

  MPoly derivative(int var) const {
    MPoly r(ctx_);
    for (auto& [e, c] : terms_) {
      int k = e[static_cast<size_t>(var)];
      if (k == 0) continue;
      Expo e2 = e;
      e2[static_cast<size_t>(var)] = k - 1;
      r.add_term(e2, c * k);
    }
    return r;
  }

  // Positive rational g with (*this)/g having coprime integer coefficients.
  Rat content() const {
    if (terms_.empty()) return Rat(1);
    mpz_class num_gcd(0), den_lcm(1);
    for (auto& [e, c] : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat g(num_gcd, den_lcm);
    g.canonicalize();
    return g;
  }

  // Common monomial factor of all terms.
  Expo monomial_content() const {
    Expo m(ctx_ ? ctx_->size() : 0, 0);
    bool first = true;
    for (auto& [e, c] : terms_) {
      if (first) {
        m = e;
        first = false;
      } else {
        for (size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], e[k]);
      }
    }
    if (first) std::fill(m.begin(), m.end(), 0);
    return m;
  }

  void divide_monomial(const Expo& m) {
    std::map<Expo, Rat, GrlexLess> out;
    for (auto& [e, c] : terms_) {
      Expo e2 = e;
      for (size_t k = 0; k < e2.size(); ++k) {
        e2[k] -= m[k];
        if (e2[k] < 0) throw RangeError("monomial division underflow");
      }
      out.emplace(std::move(e2), c);
    }
    terms_ = std::move(out);
  }

  // Exact multivariate division; nullopt if the division leaves a remainder.
  std::optional<MPoly> divide_exact(const MPoly& d) const {
    if (d.is_zero()) throw ZeroDenominatorError("division by zero polynomial");
    MPoly q(ctx_);
    MPoly r = *this;
    const Expo& de = d.terms_.rbegin()->first;
    const Rat& dc = d.terms_.rbegin()->second;
    while (!r.is_zero()) {
      const Expo& re = r.terms_.rbegin()->first;
      Expo qe(re.size());
      for (size_t k = 0; k < re.size(); ++k) {
        qe[k] = re[k] - de[k];
        if (qe[k] < 0) return std::nullopt;
      }
      Rat qc = r.terms_.rbegin()->second / dc;
      MPoly t(ctx_);
      t.terms_[qe] = qc;
      q += t;
      r -= t * d;
      if (!r.is_zero() && !GrlexLess()(r.terms_.rbegin()->first, re) && r.terms_.rbegin()->first == re)
        return std::nullopt;  // no progress
    }
    return q;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Rat& c = it->second;
      std::string mono;
      for (size_t k = 0; k < it->first.size(); ++k) {
        int p = it->first[k];
        if (p == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += ctx_->names[k];
        if (p != 1) mono += "^" + std::to_string(p);
      }
      std::string cs = rat_str(c < 0 ? Rat(-c) : c);
      std::string piece;
      if (mono.empty())
        piece = cs;
      else if (cs == "1")
        piece = mono;
      else
        piece = cs + "*" + mono;
      if (first) {
        out += (c < 0 ? "-" : "") + piece;
        first = false;
      } else {
        out += (c < 0 ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  void check_ctx(const MPoly& o) const {
    if (ctx_ && o.ctx_ && ctx_ != o.ctx_ && ctx_->names != o.ctx_->names)
      throw RangeError("mixing polynomials from different variable contexts");
  }

  VarCtxPtr ctx_;
  std::map<Expo, Rat, GrlexLess> terms_;
};

// Pseudo-remainder of a by b, both viewed as univariate in `var`.
// Intermediate results are stripped of rational and monomial content to keep
// coefficient growth in check (primitive-style PRS).
MPoly pseudo_rem(const MPoly& a, const MPoly& b, int var);

// Gcd of a and b viewed as univariate polynomials in `var` over the fraction
// field of the remaining variables, up to a content factor. The result is
// content-stripped but may still contain an extraneous factor free of `var`;
// callers must trial-divide.
MPoly uni_gcd(const MPoly& a, const MPoly& b, int var);

// Degree in `var` of gcd(a, b) at a random specialization of the remaining
// variables. Zero means the true gcd is trivial in `var` except with
// negligible probability; a positive answer is only a hint. Used to skip the
// expensive pseudo-remainder sequence in the common coprime case.
int specialized_gcd_degree(const MPoly& a, const MPoly& b, int var, unsigned salt);

}  // namespace bcdy
