#include "bcdy/classical.hpp"

#include <algorithm>
#include <array>

namespace bcdy {

namespace {

// (P - Q) as a sparse map ((i,k),(j,l)) -> coefficient, 1-based indices.
std::map<std::array<int, 4>, Rat> pq_minus(const AlgebraContext& ctx) {
  auto [p, q] = build_pq(ctx, 1, 2);
  auto a = p - q;
  std::map<std::array<int, 4>, Rat> out;
  for (auto& [k, v] : a.entries()) {
    auto rd = a.digits(k.first), cd = a.digits(k.second);
    out[{rd[0] + 1, rd[1] + 1, cd[0] + 1, cd[1] + 1}] = v;
  }
  return out;
}

}  // namespace

LieBasis::LieBasis(const AlgebraContext& ctx) : ctx_(ctx) {
  int n = ctx.N;
  pair_index_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      std::pair<int, int> ij{i, j}, partner{ctx.prime(j), ctx.prime(i)};
      if (ij == partner && ctx.orthogonal()) continue;  // generator vanishes
      if (ij <= partner) {
        pair_index_[static_cast<size_t>((i - 1) * n + (j - 1))] = static_cast<int>(pairs_.size());
        pairs_.push_back(ij);
      }
    }

  int expect = ctx.orthogonal() ? n * (n - 1) / 2 : n * (n + 1) / 2;
  if (static_cast<int>(pairs_.size()) != expect)
    throw RangeError("independent generator count mismatch");

  // brackets of basis pairs via the raw matrix relation
  int d = dim();
  table_.resize(static_cast<size_t>(d) * static_cast<size_t>(d));
  central_.assign(static_cast<size_t>(d) * static_cast<size_t>(d), Rat(0));
  auto pq = pq_minus(ctx_);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      auto [i, j] = pairs_[static_cast<size_t>(a)];
      auto [k, l] = pairs_[static_cast<size_t>(b)];
      std::map<int, Rat> acc;
      for (auto& [pqpair, c] : raw_bracket(i, j, k, l)) {
        auto [idx, coeff] = resolve(pqpair.first, pqpair.second);
        if (coeff == 0) continue;
        acc[idx] += c * coeff;
      }
      auto& cell = table_[static_cast<size_t>(a) * static_cast<size_t>(d) + static_cast<size_t>(b)];
      for (auto& [idx, c] : acc)
        if (c != 0) cell.push_back({idx, c});
      auto it = pq.find({i, k, j, l});
      if (it != pq.end())
        central_[static_cast<size_t>(a) * static_cast<size_t>(d) + static_cast<size_t>(b)] =
            it->second;
    }
}

std::string LieBasis::gen_name(int b) const {
  auto [i, j] = pairs_[static_cast<size_t>(b)];
  return "f[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

std::pair<int, Rat> LieBasis::resolve(int i, int j) const {
  int n = ctx_.N;
  int idx = pair_index_[static_cast<size_t>((i - 1) * n + (j - 1))];
  if (idx >= 0) return {idx, Rat(1)};
  std::pair<int, int> partner{ctx_.prime(j), ctx_.prime(i)};
  if (partner == std::pair<int, int>{i, j}) return {0, Rat(0)};  // orthogonal diagonal case
  int pidx = pair_index_[static_cast<size_t>((partner.first - 1) * n + (partner.second - 1))];
  if (pidx < 0) throw RangeError("generator resolution failed");
  Rat sign(-ctx_.eps_i(i) * ctx_.eps_i(j));
  return {pidx, sign};
}

std::map<std::pair<int, int>, Rat> LieBasis::raw_bracket(int i, int j, int k, int l) const {
  // [x_ij, x_kl] = ((P-Q) X_2 - X_2 (P-Q)) at the (e_ij (x) e_kl) slot, where
  // X_2 carries the symbols on the second leg.
  auto pq = pq_minus(ctx_);
  std::map<std::pair<int, int>, Rat> out;
  for (auto& [quad, c] : pq) {
    auto [ai, ak, aj, al] = quad;
    if (ai == i && ak == k && aj == j) out[{al, l}] += c;
    if (ai == i && aj == j && al == l) out[{k, ak}] -= c;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::map<std::pair<int, int>, Rat> LieBasis::raw_bracket_current(int i, int j, int k, int l) const {
  // (X_1 (P-Q) - (P-Q) X_1) at the (e_ij (x) e_kl) slot.
  auto pq = pq_minus(ctx_);
  std::map<std::pair<int, int>, Rat> out;
  for (auto& [quad, c] : pq) {
    auto [ai, ak, aj, al] = quad;
    if (ak == k && aj == j && al == l) out[{i, ai}] += c;   // x_{i,s} A[(s,k),(j,l)]
    if (ai == i && ak == k && al == l) out[{aj, j}] -= c;   // A[(i,k),(s,l)] x_{s,j}
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

bool cmode_less(CMode a, CMode b) {
  int da = cmode_depth(a), db = cmode_depth(b);
  if (da != db) return da > db;  // mode exponent -d ascending
  return cmode_basis(a) < cmode_basis(b);
}

bool CWordLess::operator()(const CWord& a, const CWord& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void ClassicalElement::add(const CWord& w, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

ClassicalElement& ClassicalElement::operator+=(const ClassicalElement& o) {
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

ClassicalElement& ClassicalElement::operator-=(const ClassicalElement& o) {
  for (auto& [w, c] : o.terms) add(w, -c);
  return *this;
}

ClassicalElement ClassicalElement::operator*(const Rat& s) const {
  ClassicalElement r;
  if (s == 0) return r;
  for (auto& [w, c] : terms) r.terms.emplace(w, c * s);
  return r;
}

int ClassicalElement::degree() const {
  int d = -1;
  for (auto& [w, c] : terms) {
    int s = 0;
    for (CMode m : w) s += cmode_depth(m);
    d = std::max(d, s);
  }
  return d;
}

std::string ClassicalElement::str(const LieBasis& basis) const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [w, c] : terms) {
    if (!out.empty()) out += " + ";
    out += rat_str(c);
    for (CMode m : w)
      out += " " + basis.gen_name(cmode_basis(m)) + "(-" + std::to_string(cmode_depth(m)) + ")";
  }
  return out;
}

ClassicalElement Straightener::normal_form(const CWord& word) {
  auto it = memo_.find(word);
  if (it != memo_.end()) return it->second;
  ClassicalElement r = reduce(word, false, nullptr);
  memo_.emplace(word, r);
  return r;
}

ClassicalElement Straightener::normal_form_randomized(const CWord& word, unsigned seed) {
  unsigned state = seed * 2654435761u + 1u;
  return reduce(word, true, &state);
}

ClassicalElement Straightener::reduce(const CWord& word, bool randomized, unsigned* state) {
  std::vector<size_t> inversions;
  for (size_t k = 0; k + 1 < word.size(); ++k)
    if (cmode_less(word[k + 1], word[k])) inversions.push_back(k);
  if (inversions.empty()) {
    ClassicalElement r;
    r.add(word, Rat(1));
    return r;
  }
  size_t pick = inversions[0];
  if (randomized) {
    *state = *state * 1664525u + 1013904223u;
    pick = inversions[(*state >> 8) % inversions.size()];
  }
  CMode x = word[pick], y = word[pick + 1];
  // x y = y x + [x, y]
  CWord swapped = word;
  std::swap(swapped[pick], swapped[pick + 1]);
  ClassicalElement out = randomized ? reduce(swapped, true, state) : normal_form(swapped);
  int dsum = cmode_depth(x) + cmode_depth(y);
  for (auto& [idx, c] : basis_->bracket(cmode_basis(x), cmode_basis(y))) {
    CWord with = word;
    with[pick] = cmode(dsum, idx);
    with.erase(with.begin() + static_cast<long>(pick) + 1);
    ClassicalElement sub = randomized ? reduce(with, true, state) : normal_form(with);
    out += sub * c;
  }
  return out;
}

ModeBracket lie_bracket_parts(const LieBasis& basis, int a, int r, int b, int s) {
  ModeBracket out;
  out.mode = r + s;
  out.linear = basis.bracket(a, b);
  out.central = Rat(0);
  if (r + s == 0) out.central = Rat(basis.ctx().sigma) * Rat(r) * basis.central_pairing(a, b);
  return out;
}

ClassicalElement lie_bracket(const LieBasis& basis, int a, int r, int b, int s, const Rat& level) {
  auto parts = lie_bracket_parts(basis, a, r, b, s);
  ClassicalElement out;
  if (parts.central != 0) out.add({}, parts.central * level);
  if (!parts.linear.empty()) {
    if (parts.mode >= 0) throw RangeError("bracket leaves the creation-mode algebra");
    for (auto& [idx, c] : parts.linear) out.add({cmode(-parts.mode, idx)}, c);
  }
  return out;
}

ClassicalElement classical_act(Straightener& st, int r, int b, const ClassicalElement& x,
                               const Rat& level) {
  if (r < 0) throw RangeError("classical action expects a nonnegative mode");
  const LieBasis& basis = st.basis();
  ClassicalElement out;
  for (auto& [w, c] : x.terms) {
    if (w.empty()) continue;  // annihilates the vacuum
    CMode m1 = w.front();
    CWord rest(w.begin() + 1, w.end());
    ClassicalElement xr;
    xr.add(rest, Rat(1));
    // x_b(r) m1 rest = m1 (x_b(r) rest) + [x_b(r), m1] rest
    ClassicalElement tail = classical_act(st, r, b, xr, level);
    for (auto& [tw, tc] : tail.terms) {
      CWord nw;
      nw.push_back(m1);
      nw.insert(nw.end(), tw.begin(), tw.end());
      out += st.normal_form(nw) * (tc * c);
    }
    int s1 = cmode_depth(m1);
    auto parts = lie_bracket_parts(basis, b, r, cmode_basis(m1), -s1);
    if (parts.central != 0) {
      ClassicalElement re;
      re.add(rest, parts.central * level * c);
      out += re;
    }
    for (auto& [idx, bc] : parts.linear) {
      if (parts.mode < 0) {
        CWord nw;
        nw.push_back(cmode(-parts.mode, idx));
        nw.insert(nw.end(), rest.begin(), rest.end());
        out += st.normal_form(nw) * (bc * c);
      } else {
        out += classical_act(st, parts.mode, idx, xr, level) * (bc * c);
      }
    }
  }
  return out;
}

ClassicalElement classical_translate(Straightener& st, const ClassicalElement& x) {
  ClassicalElement out;
  for (auto& [w, c] : x.terms) {
    for (size_t k = 0; k < w.size(); ++k) {
      CWord bumped = w;
      int d = cmode_depth(w[k]);
      bumped[k] = cmode(d + 1, cmode_basis(w[k]));
      out += st.normal_form(bumped) * (c * Rat(d));
    }
  }
  return out;
}

std::vector<ClassicalElement> segal_sugawara(const AlgebraContext& ctx, Straightener& st, int m) {
  const LieBasis& basis = st.basis();
  auto s = symmetrizer(ctx, m).S;

  // raw entry value: grading power -> unsorted words
  using RawElem = std::map<int, std::map<CWord, Rat, CWordLess>>;
  auto mul_tau = [](const RawElem& e) {
    RawElem r;
    for (auto& [k, words] : e) r[k + 1] = words;
    return r;
  };
  auto raw_add = [](RawElem& dst, const RawElem& src) {
    for (auto& [k, words] : src)
      for (auto& [w, c] : words) {
        auto& cell = dst[k];
        auto it = cell.find(w);
        if (it == cell.end())
          cell.emplace(w, c);
        else {
          it->second += c;
          if (it->second == 0) cell.erase(it);
        }
      }
  };
  auto mul_gen = [&](const RawElem& e, int i, int j) {
    // multiply from the right by x_ij(-1), moving it past tau^k:
    // tau^k x(-1) = sum_j binom(k,j) j! x(-1-j) tau^{k-j}
    RawElem r;
    auto [idx, coeff] = basis.resolve(i, j);
    if (coeff == 0) return r;
    for (auto& [k, words] : e) {
      Rat fact(1);
      for (int jj = 0; jj <= k; ++jj) {
        Rat factor = Rat(binom_ll(k, jj)) * fact * coeff;
        for (auto& [w, c] : words) {
          CWord nw = w;
          nw.push_back(cmode(1 + jj, idx));
          auto& cell = r[k - jj];
          auto it = cell.find(nw);
          if (it == cell.end())
            cell.emplace(nw, c * factor);
          else {
            it->second += c * factor;
            if (it->second == 0) cell.erase(it);
          }
        }
        fact *= Rat(jj + 1);
      }
    }
    return r;
  };

  std::vector<ClassicalElement> phi(static_cast<size_t>(m) + 1);
  uint64_t total = s.space_size();
  for (uint64_t row = 0; row < total; ++row)
    for (uint64_t col = 0; col < total; ++col) {
      Rat sc = s.at(row, col);
      if (sc == 0) continue;
      auto cd = s.digits(col), rd = s.digits(row);
      RawElem acc;
      acc[0][CWord{}] = Rat(1);
      for (int leg = 0; leg < m; ++leg) {
        RawElem next;
        if (cd[static_cast<size_t>(leg)] == rd[static_cast<size_t>(leg)]) next = mul_tau(acc);
        raw_add(next, mul_gen(acc, cd[static_cast<size_t>(leg)] + 1, rd[static_cast<size_t>(leg)] + 1));
        acc = std::move(next);
      }
      for (auto& [k, words] : acc) {
        if (k < 0 || k > m) throw RangeError("grading power out of range");
        for (auto& [w, c] : words) phi[static_cast<size_t>(m - k)] += st.normal_form(w) * (c * sc);
      }
    }
  return phi;
}

ClassicalElement classical_from_modes(Straightener& st,
                                      const std::vector<std::tuple<int, int, int>>& modes,
                                      const Rat& coeff) {
  const LieBasis& basis = st.basis();
  CWord w;
  Rat c = coeff;
  for (auto& [r, i, j] : modes) {
    if (r >= 0) throw RangeError("classical image expects creation modes");
    auto [idx, rc] = basis.resolve(i, j);
    if (rc == 0) return ClassicalElement{};
    c *= rc;
    w.push_back(cmode(-r, idx));
  }
  return st.normal_form(w) * c;
}

}  // namespace bcdy
