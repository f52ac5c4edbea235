// Truncated power series in the deformation parameter, to a fixed exclusive
// order K. Arithmetic is performed modulo h^K; a series is a unit iff its
// constant term is.
#pragma once

#include "bcdy/rat.hpp"

#include <vector>

namespace bcdy {

namespace hdetail {
inline bool scalar_is_zero(const Rat& x) { return x == 0; }
template <class S>
bool scalar_is_zero(const S& x) {
  return x.is_zero();
}
inline Rat scalar_inv(const Rat& x) {
  if (x == 0) throw NotAUnitError("zero constant term: not a unit in the h-adic ring");
  return 1 / x;
}
template <class S>
S scalar_inv(const S& x) {
  if (x.is_zero()) throw NotAUnitError("zero constant term: not a unit in the h-adic ring");
  return S(x.den(), x.num());
}
}  // namespace hdetail

template <class S>
class HSeries {
 public:
  HSeries() : order_(0) {}
  explicit HSeries(int order, S zero = S()) : order_(order), c_(static_cast<size_t>(order), zero) {}

  static HSeries constant(int order, const S& value, const S& zero = S()) {
    HSeries s(order, zero);
    if (order > 0) s.c_[0] = value;
    return s;
  }

  int order() const { return order_; }
  const S& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  S& operator[](int k) { return c_[static_cast<size_t>(k)]; }

  bool is_zero() const {
    for (auto& x : c_)
      if (!hdetail::scalar_is_zero(x)) return false;
    return true;
  }

  HSeries& operator+=(const HSeries& o) {
    check(o);
    for (int k = 0; k < order_; ++k) c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)] + o.c_[static_cast<size_t>(k)];
    return *this;
  }
  HSeries& operator-=(const HSeries& o) {
    check(o);
    for (int k = 0; k < order_; ++k) c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)] - o.c_[static_cast<size_t>(k)];
    return *this;
  }
  friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
  friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }
  HSeries operator-() const {
    HSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend HSeries operator*(const HSeries& a, const HSeries& b) {
    a.check(b);
    HSeries r(a.order_, a.zero_like());
    for (int i = 0; i < a.order_; ++i) {
      if (hdetail::scalar_is_zero(a.c_[static_cast<size_t>(i)])) continue;
      for (int j = 0; i + j < a.order_; ++j) {
        if (hdetail::scalar_is_zero(b.c_[static_cast<size_t>(j)])) continue;
        r.c_[static_cast<size_t>(i + j)] =
            r.c_[static_cast<size_t>(i + j)] + a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
      }
    }
    return r;
  }
  HSeries& operator*=(const HSeries& o) { return *this = *this * o; }

  // Multiply by h^j (shift up), truncating at the order.
  HSeries shifted(int j) const {
    HSeries r(order_, zero_like());
    for (int k = 0; k + j < order_; ++k)
      if (k + j >= 0) r.c_[static_cast<size_t>(k + j)] = c_[static_cast<size_t>(k)];
    return r;
  }

  bool operator==(const HSeries& o) const { return (*this - o).is_zero(); }
  bool operator!=(const HSeries& o) const { return !(*this == o); }

  S zero_like() const {
    if (!c_.empty()) {
      S z = c_[0];
      z = z - z;
      return z;
    }
    return S();
  }

 private:
  void check(const HSeries& o) const {
    if (order_ != o.order_) throw RangeError("mixing h-series of different truncation orders");
  }

  int order_;
  std::vector<S> c_;
};

// s * hseries_inverse(s) == 1 mod h^K; requires an invertible constant term.
template <class S>
HSeries<S> hseries_inverse(const HSeries<S>& s) {
  int K = s.order();
  if (K <= 0) throw RangeError("empty h-series");
  S inv0 = hdetail::scalar_inv(s[0]);
  HSeries<S> r(K, s.zero_like());
  r[0] = inv0;
  for (int k = 1; k < K; ++k) {
    // c_k of s*r must vanish: r_k = -inv0 * sum_{j<k} s_{k-j} r_j
    S acc = r.zero_like();
    for (int j = 0; j < k; ++j) acc = acc + s[k - j] * r[j];
    r[k] = r.zero_like() - inv0 * acc;
  }
  return r;
}

}  // namespace bcdy
