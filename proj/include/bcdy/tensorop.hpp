// Sparse operators on labeled tensor legs. Every leg has the same local
// dimension N; legs are identified by integer labels and kept sorted, so two
// operators on the same label set compose positionally. Entries live in an
// arbitrary ring scalar S (exact rationals, rational functions, truncated
// series, module-valued coefficients); a zero and a one prototype are carried
// so scalar types tied to a variable context work uniformly.
#pragma once

#include "bcdy/rat.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace bcdy {

template <class S>
class TensorOp {
 public:
  using Key = std::pair<uint64_t, uint64_t>;

  TensorOp() = default;
  TensorOp(int dim, std::vector<int> legs, S zero, S one)
      : dim_(dim), legs_(std::move(legs)), zero_(std::move(zero)), one_(std::move(one)) {
    std::sort(legs_.begin(), legs_.end());
  }

  static TensorOp identity(int dim, std::vector<int> legs, S zero, S one) {
    TensorOp t(dim, std::move(legs), std::move(zero), std::move(one));
    uint64_t total = t.space_size();
    for (uint64_t k = 0; k < total; ++k) t.entries_[{k, k}] = t.one_;
    return t;
  }

  int dim() const { return dim_; }
  const std::vector<int>& legs() const { return legs_; }
  const S& zero() const { return zero_; }
  const S& one() const { return one_; }
  const std::map<Key, S>& entries() const { return entries_; }

  uint64_t space_size() const {
    uint64_t t = 1;
    for (size_t k = 0; k < legs_.size(); ++k) t *= static_cast<uint64_t>(dim_);
    return t;
  }

  int leg_pos(int leg) const {
    for (size_t k = 0; k < legs_.size(); ++k)
      if (legs_[k] == leg) return static_cast<int>(k);
    throw RangeError("unknown leg label: " + std::to_string(leg));
  }

  std::vector<int> digits(uint64_t idx) const {
    std::vector<int> d(legs_.size());
    for (size_t k = legs_.size(); k-- > 0;) {
      d[k] = static_cast<int>(idx % static_cast<uint64_t>(dim_));
      idx /= static_cast<uint64_t>(dim_);
    }
    return d;
  }
  uint64_t index(const std::vector<int>& d) const {
    uint64_t idx = 0;
    for (size_t k = 0; k < d.size(); ++k) idx = idx * static_cast<uint64_t>(dim_) + static_cast<uint64_t>(d[k]);
    return idx;
  }

  void set(uint64_t row, uint64_t col, const S& v) {
    if (is_zero_scalar(v))
      entries_.erase({row, col});
    else
      entries_[{row, col}] = v;
  }
  void add(uint64_t row, uint64_t col, const S& v) {
    if (is_zero_scalar(v)) return;
    auto it = entries_.find({row, col});
    if (it == entries_.end()) {
      entries_.emplace(Key{row, col}, v);
    } else {
      it->second = it->second + v;
      if (is_zero_scalar(it->second)) entries_.erase(it);
    }
  }
  S at(uint64_t row, uint64_t col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? zero_ : it->second;
  }

  bool is_zero() const { return entries_.empty(); }

  TensorOp operator-() const {
    TensorOp r = skeleton();
    for (auto& [k, v] : entries_) r.entries_[k] = zero_ - v;
    return r;
  }
  friend TensorOp operator+(const TensorOp& a, const TensorOp& b) {
    auto [ea, eb] = TensorOp::aligned(a, b);
    TensorOp r = ea.skeleton();
    r.entries_ = ea.entries_;
    for (auto& [k, v] : eb.entries_) r.add(k.first, k.second, v);
    return r;
  }
  friend TensorOp operator-(const TensorOp& a, const TensorOp& b) { return a + (-b); }

  // Operator composition (matrix product) after aligning leg sets.
  friend TensorOp operator*(const TensorOp& a, const TensorOp& b) {
    auto [ea, eb] = TensorOp::aligned(a, b);
    TensorOp r = ea.skeleton();
    // group eb rows
    std::map<uint64_t, std::vector<std::pair<uint64_t, const S*>>> by_row;
    for (auto& [k, v] : eb.entries_) by_row[k.first].push_back({k.second, &v});
    for (auto& [k, v] : ea.entries_) {
      auto it = by_row.find(k.second);
      if (it == by_row.end()) continue;
      for (auto& [col, pv] : it->second) r.add(k.first, col, v * (*pv));
    }
    return r;
  }

  TensorOp scaled(const S& s) const {
    TensorOp r = skeleton();
    for (auto& [k, v] : entries_) r.add(k.first, k.second, v * s);
    return r;
  }

  template <class F>
  auto map_entries(F f, const typename std::invoke_result<F, S>::type& zero2,
                   const typename std::invoke_result<F, S>::type& one2) const {
    using S2 = typename std::invoke_result<F, S>::type;
    TensorOp<S2> r(dim_, legs_, zero2, one2);
    for (auto& [k, v] : entries_) r.add(k.first, k.second, f(v));
    return r;
  }

  // Embeds into a superset of legs, acting as identity on the new legs.
  TensorOp embed(const std::vector<int>& new_legs) const {
    std::vector<int> all = new_legs;
    std::sort(all.begin(), all.end());
    for (int l : legs_)
      if (!std::binary_search(all.begin(), all.end(), l))
        throw RangeError("embed target must contain the operator legs");
    TensorOp r(dim_, all, zero_, one_);
    std::vector<size_t> old_pos;  // position of each old leg in the new leg list
    for (int l : legs_) old_pos.push_back(static_cast<size_t>(r.leg_pos(l)));
    std::vector<char> is_old(all.size(), 0);
    for (size_t p : old_pos) is_old[p] = 1;
    uint64_t free_count = 1;
    std::vector<size_t> free_pos;
    for (size_t k = 0; k < all.size(); ++k)
      if (!is_old[k]) {
        free_pos.push_back(k);
        free_count *= static_cast<uint64_t>(dim_);
      }
    for (auto& [k, v] : entries_) {
      std::vector<int> rd = digits(k.first), cd = digits(k.second);
      for (uint64_t f = 0; f < free_count; ++f) {
        std::vector<int> nr(all.size(), 0), nc(all.size(), 0);
        uint64_t ff = f;
        for (size_t j = free_pos.size(); j-- > 0;) {
          int d = static_cast<int>(ff % static_cast<uint64_t>(dim_));
          ff /= static_cast<uint64_t>(dim_);
          nr[free_pos[j]] = d;
          nc[free_pos[j]] = d;
        }
        for (size_t j = 0; j < old_pos.size(); ++j) {
          nr[old_pos[j]] = rd[j];
          nc[old_pos[j]] = cd[j];
        }
        r.entries_[{r.index(nr), r.index(nc)}] = v;
      }
    }
    return r;
  }

  // Plain transpose on one leg.
  TensorOp transposed(int leg) const {
    int p = leg_pos(leg);
    TensorOp r = skeleton();
    for (auto& [k, v] : entries_) {
      std::vector<int> rd = digits(k.first), cd = digits(k.second);
      std::swap(rd[static_cast<size_t>(p)], cd[static_cast<size_t>(p)]);
      r.add(index(rd), index(cd), v);
    }
    return r;
  }

  // Transpose on a set of legs (used by the mixed ordered product).
  TensorOp transposed_set(const std::vector<int>& legs) const {
    TensorOp r = *this;
    for (int l : legs) r = r.transposed(l);
    return r;
  }

  // Conjugated transpose on one leg: entry (i,j) <- eps_i eps_j a_{j',i'}.
  TensorOp prime_transposed(int leg, const std::vector<int>& eps) const {
    int p = leg_pos(leg);
    TensorOp r = skeleton();
    int n = dim_;
    for (auto& [k, v] : entries_) {
      std::vector<int> rd = digits(k.first), cd = digits(k.second);
      int a = rd[static_cast<size_t>(p)], b = cd[static_cast<size_t>(p)];
      // source entry (a,b) lands at (b', a') with sign eps_{b'} eps_{a'}.
      int i = n - 1 - b, j = n - 1 - a;
      rd[static_cast<size_t>(p)] = i;
      cd[static_cast<size_t>(p)] = j;
      int sign = eps[static_cast<size_t>(i)] * eps[static_cast<size_t>(j)];
      S sv = v;
      if (sign < 0) sv = zero_ - v;
      r.add(index(rd), index(cd), sv);
    }
    return r;
  }

  // Partial trace over the given legs; the result lives on the remaining legs.
  TensorOp partial_trace(const std::vector<int>& traced) const {
    std::vector<int> tr = traced;
    std::sort(tr.begin(), tr.end());
    std::vector<int> rest;
    for (int l : legs_)
      if (!std::binary_search(tr.begin(), tr.end(), l)) rest.push_back(l);
    for (int l : tr) leg_pos(l);
    TensorOp r(dim_, rest, zero_, one_);
    std::vector<size_t> tr_pos, rest_pos;
    for (size_t k = 0; k < legs_.size(); ++k) {
      if (std::binary_search(tr.begin(), tr.end(), legs_[k]))
        tr_pos.push_back(k);
      else
        rest_pos.push_back(k);
    }
    for (auto& [k, v] : entries_) {
      std::vector<int> rd = digits(k.first), cd = digits(k.second);
      bool diag = true;
      for (size_t p : tr_pos)
        if (rd[p] != cd[p]) {
          diag = false;
          break;
        }
      if (!diag) continue;
      std::vector<int> nr, nc;
      for (size_t p : rest_pos) {
        nr.push_back(rd[p]);
        nc.push_back(cd[p]);
      }
      r.add(r.index(nr), r.index(nc), v);
    }
    return r;
  }

  // Full trace (all legs).
  S trace() const {
    S acc = zero_;
    for (auto& [k, v] : entries_)
      if (k.first == k.second) acc = acc + v;
    return acc;
  }

  bool operator==(const TensorOp& o) const { return (*this - o).is_zero(); }
  bool operator!=(const TensorOp& o) const { return !(*this == o); }

  TensorOp skeleton() const { return TensorOp(dim_, legs_, zero_, one_); }

  static std::pair<TensorOp, TensorOp> aligned(const TensorOp& a, const TensorOp& b) {
    if (a.legs_ == b.legs_) return {a, b};
    std::vector<int> u = a.legs_;
    for (int l : b.legs_)
      if (!std::binary_search(a.legs_.begin(), a.legs_.end(), l)) u.push_back(l);
    std::sort(u.begin(), u.end());
    return {a.embed(u), b.embed(u)};
  }

 private:
  template <class T>
  static bool is_zero_scalar(const T& v) {
    if constexpr (std::is_same_v<T, Rat>)
      return v == 0;
    else
      return v.is_zero();
  }

  int dim_ = 0;
  std::vector<int> legs_;
  S zero_{}, one_{};
  std::map<Key, S> entries_;
};

// Mixed ordered product: the tensor factors of x on `right_group` legs are
// applied from the right of y, the others from the left. Equivalent to
// transposing both factors on the right group, composing, and transposing
// back.
template <class S>
TensorOp<S> compose_mixed(const TensorOp<S>& x, const TensorOp<S>& y,
                          const std::vector<int>& right_group) {
  auto xt = x.transposed_set(right_group);
  auto yt = y.transposed_set(right_group);
  return (xt * yt).transposed_set(right_group);
}

}  // namespace bcdy
