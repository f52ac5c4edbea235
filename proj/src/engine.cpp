#include "bcdy/engine.hpp"

#include <algorithm>
#include <functional>

namespace bcdy {

int word_degree(const QWord& w) {
  int d = 0;
  for (QMode m : w) d += -qmode_r(m);
  return d;
}

void ModuleElement::add(const QWord& w, int hpow, const Rat& c) {
  if (c == 0 || hpow >= hord_ || hpow < 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) it = terms_.emplace(w, HPoly(static_cast<size_t>(hord_), Rat(0))).first;
  it->second[static_cast<size_t>(hpow)] += c;
  bool zero = true;
  for (auto& x : it->second)
    if (x != 0) {
      zero = false;
      break;
    }
  if (zero) terms_.erase(it);
}

void ModuleElement::add_scaled(const ModuleElement& o, int hshift, const Rat& c) {
  if (hord_ == 0) hord_ = o.hord_;
  for (auto& [w, p] : o.terms_)
    for (int k = 0; k < o.hord_; ++k)
      if (p[static_cast<size_t>(k)] != 0) add(w, k + hshift, p[static_cast<size_t>(k)] * c);
}

std::map<QWord, Rat, QWordLess> ModuleElement::layer(int hpow) const {
  std::map<QWord, Rat, QWordLess> out;
  if (hpow < 0 || hpow >= hord_) return out;
  for (auto& [w, p] : terms_)
    if (p[static_cast<size_t>(hpow)] != 0) out.emplace(w, p[static_cast<size_t>(hpow)]);
  return out;
}

int ModuleElement::degree() const {
  int d = -1;
  for (auto& [w, p] : terms_) d = std::max(d, word_degree(w));
  return d;
}

namespace {

// --- free expressions used only during compilation ---

struct FreeKey {
  int hpow = 0;
  QWord w;
  bool operator<(const FreeKey& o) const {
    if (hpow != o.hpow) return hpow < o.hpow;
    if (w.size() != o.w.size()) return w.size() < o.w.size();
    return w < o.w;
  }
};
using FreeExpr = std::map<FreeKey, Rat>;
using MatF = std::map<std::pair<int, int>, FreeExpr>;

void fe_add(FreeExpr& e, const FreeKey& k, const Rat& c) {
  if (c == 0) return;
  auto it = e.find(k);
  if (it == e.end()) {
    e.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void mat_add(MatF& m, int r, int c, const FreeExpr& e, const Rat& scale = Rat(1), int hshift = 0) {
  if (e.empty() || scale == 0) return;
  auto& cell = m[{r, c}];
  for (auto& [k, v] : e) fe_add(cell, FreeKey{k.hpow + hshift, k.w}, v * scale);
  if (cell.empty()) m.erase({r, c});
}

MatF mat_mul(const MatF& a, const MatF& b) {
  MatF out;
  std::map<int, std::vector<std::pair<int, const FreeExpr*>>> by_row;
  for (auto& [rc, e] : b) by_row[rc.first].push_back({rc.second, &e});
  for (auto& [rc, ea] : a) {
    auto it = by_row.find(rc.second);
    if (it == by_row.end()) continue;
    for (auto& [col, eb] : it->second) {
      auto& cell = out[{rc.first, col}];
      for (auto& [ka, ca] : ea)
        for (auto& [kb, cb] : *eb) {
          FreeKey k;
          k.hpow = ka.hpow + kb.hpow;
          k.w = ka.w;
          k.w.insert(k.w.end(), kb.w.begin(), kb.w.end());
          fe_add(cell, k, ca * cb);
        }
      if (cell.empty()) out.erase({rc.first, col});
    }
  }
  return out;
}


using BiSeries = std::map<std::pair<int, int>, MatF>;

BiSeries bs_mul(const BiSeries& a, const BiSeries& b, int cap) {
  BiSeries out;
  for (auto& [ab, ma] : a)
    for (auto& [bb, mb] : b) {
      int al = ab.first + bb.first, be = ab.second + bb.second;
      if (al + be > cap) continue;
      MatF prod = mat_mul(ma, mb);
      auto& cell = out[{al, be}];
      for (auto& [rc, e] : prod) mat_add(cell, rc.first, rc.second, e);
      if (cell.empty()) out.erase({al, be});
    }
  return out;
}

void bs_acc(BiSeries& dst, const BiSeries& src, int du, int dv, const Rat& scale, int hshift) {
  for (auto& [ab, m] : src) {
    auto& cell = dst[{ab.first + du, ab.second + dv}];
    for (auto& [rc, e] : m) mat_add(cell, rc.first, rc.second, e, scale, hshift);
    if (cell.empty()) dst.erase({ab.first + du, ab.second + dv});
  }
}

using TriKey = std::tuple<int, int, int>;  // (u^{-p}, v^beta, h^ell)
using TriSeries = std::map<TriKey, MatF>;

TriSeries tri_mul(const TriSeries& a, const TriSeries& b, int pcap, int bcap, int lcap) {
  TriSeries out;
  for (auto& [ka, ma] : a)
    for (auto& [kb, mb] : b) {
      int p = std::get<0>(ka) + std::get<0>(kb);
      int be = std::get<1>(ka) + std::get<1>(kb);
      int l = std::get<2>(ka) + std::get<2>(kb);
      if (p > pcap || be > bcap || l > lcap) continue;
      MatF prod = mat_mul(ma, mb);
      if (prod.empty()) continue;
      auto& cell = out[{p, be, l}];
      for (auto& [rc, e] : prod) mat_add(cell, rc.first, rc.second, e);
      if (cell.empty()) out.erase({p, be, l});
    }
  return out;
}

void tri_acc(TriSeries& dst, const TriSeries& src, const Rat& scale, int hshift, int lcap) {
  for (auto& [k, m] : src) {
    int l = std::get<2>(k) + hshift;
    if (l > lcap) continue;
    auto& cell = dst[{std::get<0>(k), std::get<1>(k), l}];
    for (auto& [rc, e] : m) mat_add(cell, rc.first, rc.second, e, scale);
    if (cell.empty()) dst.erase({std::get<0>(k), std::get<1>(k), l});
  }
}

}  // namespace

bool YangianEngine::kept(int i, int j) const {
  if (trivial_r_) return true;
  std::pair<int, int> ij{i, j}, partner{ctx_.prime(j), ctx_.prime(i)};
  if (ij == partner) return !ctx_.orthogonal();
  return ij < partner;
}

std::string YangianEngine::mode_name(QMode m) const {
  return "t[" + std::to_string(qmode_r(m)) + "](" + std::to_string(qmode_i(m)) + "," +
         std::to_string(qmode_j(m)) + ")";
}

YangianEngine::YangianEngine(const AlgebraContext& ctx, bool trivial_r)
    : ctx_(ctx), trivial_r_(trivial_r) {
  compile_elimination();
  compile_creation_rules();
  compile_mixed_rules();
}

void YangianEngine::compile_elimination() {
  if (trivial_r_) return;
  const int D = ctx_.trunc.deg;
  const int K = ctx_.trunc.hord;
  for (int r = 1; r <= D; ++r)
    for (int i = 1; i <= ctx_.N; ++i)
      for (int j = 1; j <= ctx_.N; ++j) {
        if (kept(i, j)) continue;
        int p = ctx_.prime(j), q = ctx_.prime(i);
        bool diagonal = (p == i && q == j);
        Rat eps(ctx_.eps_i(i) * ctx_.eps_i(j));
        // t^{(-r)}_{ij} + eps t^{(-r)}_{j'i'} + eps sum_{s>r} binom(s-1,r-1)
        // kappa^{s-r} h^{s-r} t^{(-s)}_{j'i'} = sum quadratic corrections
        std::vector<RuleTerm> terms;
        Rat denom = diagonal ? Rat(2) : Rat(1);
        if (!diagonal) terms.push_back({0, -eps / denom, {qmode(-r, p, q)}});
        for (int s = r + 1; s <= D; ++s) {
          if (s - r >= K) break;
          Rat kpow(1);
          for (int t = 0; t < s - r; ++t) kpow *= ctx_.kappa;
          terms.push_back({s - r, -eps * Rat(binom_ll(s - 1, r - 1)) * kpow / denom,
                           {qmode(-s, p, q)}});
        }
        for (int k = 1; k <= ctx_.N; ++k) {
          Rat ekj(ctx_.eps_i(k) * ctx_.eps_i(j));
          for (int a = 1; a <= r; ++a)
            for (int b = 1; a + b <= D; ++b) {
              int c = a + b - 1 - r;
              if (c < 0 || c > b - 1) continue;
              int hp = a + b - r;
              if (hp >= K) continue;
              Rat kpow(1);
              for (int t = 0; t < c; ++t) kpow *= ctx_.kappa;
              terms.push_back({hp, ekj * Rat(binom_ll(b - 1, c)) * kpow / denom,
                               {qmode(-a, i, k), qmode(-b, p, ctx_.prime(k))}});
            }
        }
        table_.eliminate.emplace(qmode(-r, i, j), std::move(terms));
      }
}

void YangianEngine::compile_creation_rules() {
  const int D = ctx_.trunc.deg;
  const int K = ctx_.trunc.hord;
  const int n = ctx_.N;
  const int cap = D + K - 1;   // max total coefficient degree
  const int amax = cap + 1;    // max single mode index

  // base series
  BiSeries t1, t2;
  for (int a = 1; a <= amax; ++a) {
    MatF m1, m2;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          FreeExpr e1;
          fe_add(e1, FreeKey{0, {qmode(-a, i, j)}}, Rat(1));
          m1[{(i - 1) * n + (k - 1), (j - 1) * n + (k - 1)}] = e1;
          FreeExpr e2;
          fe_add(e2, FreeKey{0, {qmode(-a, i, j)}}, Rat(1));
          m2[{(k - 1) * n + (i - 1), (k - 1) * n + (j - 1)}] = e2;
        }
    t1[{a - 1, 0}] = std::move(m1);
    t2[{0, a - 1}] = std::move(m2);
  }

  MatF P, Q;
  if (!trivial_r_) {
    auto [p, q] = build_pq(ctx_, 1, 2);
    for (auto& [rc, v] : p.entries()) {
      FreeExpr e;
      fe_add(e, FreeKey{0, {}}, v);
      P[{static_cast<int>(rc.first), static_cast<int>(rc.second)}] = e;
    }
    for (auto& [rc, v] : q.entries()) {
      FreeExpr e;
      fe_add(e, FreeKey{0, {}}, v);
      Q[{static_cast<int>(rc.first), static_cast<int>(rc.second)}] = e;
    }
  }

  BiSeries tsum = t1;
  bs_acc(tsum, t2, 0, 0, Rat(1), 0);
  auto mul_const_right = [&](const BiSeries& s, const MatF& m) {
    BiSeries out;
    for (auto& [ab, mat] : s) {
      MatF prod = mat_mul(mat, m);
      if (!prod.empty()) out[ab] = std::move(prod);
    }
    return out;
  };
  auto mul_const_left = [&](const MatF& m, const BiSeries& s) {
    BiSeries out;
    for (auto& [ab, mat] : s) {
      MatF prod = mat_mul(m, mat);
      if (!prod.empty()) out[ab] = std::move(prod);
    }
    return out;
  };

  BiSeries q12 = bs_mul(t1, t2, cap);
  BiSeries q21 = bs_mul(t2, t1, cap);

  // blockP = Tsum P - P Tsum + h (P t1 t2 - t2 t1 P), blockQ likewise
  BiSeries blockP = mul_const_right(tsum, P);
  bs_acc(blockP, mul_const_left(P, tsum), 0, 0, Rat(-1), 0);
  bs_acc(blockP, mul_const_left(P, q12), 0, 0, Rat(1), 1);
  bs_acc(blockP, mul_const_right(q21, P), 0, 0, Rat(-1), 1);
  BiSeries blockQ = mul_const_right(tsum, Q);
  bs_acc(blockQ, mul_const_left(Q, tsum), 0, 0, Rat(-1), 0);
  bs_acc(blockQ, mul_const_left(Q, q12), 0, 0, Rat(1), 1);
  bs_acc(blockQ, mul_const_right(q21, Q), 0, 0, Rat(-1), 1);

  // RHS = (u - v - h kappa) blockP - (u - v) blockQ
  BiSeries rhs;
  bs_acc(rhs, blockP, 1, 0, Rat(1), 0);
  bs_acc(rhs, blockP, 0, 1, Rat(-1), 0);
  bs_acc(rhs, blockP, 0, 0, -ctx_.kappa, 1);
  bs_acc(rhs, blockQ, 1, 0, Rat(-1), 0);
  bs_acc(rhs, blockQ, 0, 1, Rat(1), 0);
  auto layer_of = [&](const MatF& m, int ell) {
    MatF out;
    for (auto& [rc, e] : m) {
      FreeExpr cut;
      for (auto& [k, c] : e)
        if (k.hpow == ell) cut.emplace(FreeKey{0, k.w}, c);
      if (!cut.empty()) out[rc] = std::move(cut);
    }
    return out;
  };
  auto rhs_at = [&](int ell, int alpha, int beta) {
    auto it = rhs.find({alpha, beta});
    if (it == rhs.end()) return MatF{};
    return layer_of(it->second, ell);
  };

  // triangular solve, layer by layer in h, then by total degree
  std::vector<std::map<std::pair<int, int>, MatF>> X;
  X.assign(static_cast<size_t>(K), {});
  for (int ell = 0; ell < K; ++ell) {
    int nmax = D + (K - 1 - ell);
    for (int deg = 2; deg <= nmax; ++deg)
      for (int a = 1; a <= deg - 1; ++a) {
        int alpha = a - 1, beta = deg - a + 1;
        MatF e = rhs_at(ell, alpha, beta);
        auto xprev = [&](int aa, int bb) -> const MatF* {
          if (ell == 0 || aa < 1 || bb < 1) return nullptr;
          auto it = X[static_cast<size_t>(ell - 1)].find({aa, bb});
          return it == X[static_cast<size_t>(ell - 1)].end() ? nullptr : &it->second;
        };
        auto xcur = [&](int aa, int bb) -> const MatF* {
          if (aa < 1 || bb < 1) return nullptr;
          auto it = X[static_cast<size_t>(ell)].find({aa, bb});
          return it == X[static_cast<size_t>(ell)].end() ? nullptr : &it->second;
        };
        if (auto* m = xprev(alpha, beta + 1))
          for (auto& [rc, ex] : *m) mat_add(e, rc.first, rc.second, ex, ctx_.kappa);
        if (auto* m = xprev(alpha + 1, beta))
          for (auto& [rc, ex] : *m) mat_add(e, rc.first, rc.second, ex, -ctx_.kappa);
        if (auto* m = xcur(a - 2, deg - a + 2))
          for (auto& [rc, ex] : *m) mat_add(e, rc.first, rc.second, ex, Rat(-1));
        if (auto* m = xcur(a - 1, deg - a + 1))
          for (auto& [rc, ex] : *m) mat_add(e, rc.first, rc.second, ex, Rat(2));
        if (!e.empty()) X[static_cast<size_t>(ell)][{a, deg - a}] = std::move(e);
      }
  }

  // store rules for all mode pairs within the degree bound
  for (int ell = 0; ell < K; ++ell)
    for (auto& [abk, m] : X[static_cast<size_t>(ell)]) {
      auto [a, b] = abk;
      if (a + b > D) continue;
      for (auto& [rc, e] : m) {
        int i = rc.first / n + 1, k = rc.first % n + 1;
        int j = rc.second / n + 1, l = rc.second % n + 1;
        auto key = std::make_pair(qmode(-a, i, j), qmode(-b, k, l));
        for (auto& [fk, c] : e)
          table_.creation[key].push_back({ell + fk.hpow, c, fk.w});
      }
    }

  if (trivial_r_) return;

  // structural invariants of the compiled rules
  for (auto& [key, terms] : table_.creation) {
    int deg = -qmode_r(key.first) - qmode_r(key.second);
    for (auto& t : terms) {
      int td = word_degree(t.w);
      if (t.w.empty()) throw Error("creation rule produced a constant term");
      if (td < deg) throw Error("compiled rule violates the degree filtration");
      if (static_cast<int>(t.w.size()) == 2 && t.hpow < 1)
        throw Error("compiled rule has an unweighted same-length correction");
      if (t.w.size() == 1 && td != deg && t.hpow == 0)
        throw Error("compiled rule has an unweighted degree jump");
    }
  }

  // every coefficient equation of the cleared identity holds in the
  // implemented module, including the ones the triangular solve skipped
  auto x_at = [&](int ell, int a, int b) -> const MatF* {
    if (ell < 0 || ell >= K || a < 1 || b < 1) return nullptr;
    auto it = X[static_cast<size_t>(ell)].find({a, b});
    return it == X[static_cast<size_t>(ell)].end() ? nullptr : &it->second;
  };
  for (int deg = 2; deg <= D; ++deg)
    for (int alpha = 0; alpha <= deg; ++alpha) {
      int beta = deg - alpha;
      MatF v;
      for (int ell = 0; ell < K; ++ell) {
        auto acc = [&](const MatF* m, const Rat& s, int hshift) {
          if (!m) return;
          for (auto& [rc, e] : *m) mat_add(v, rc.first, rc.second, e, s, ell + hshift);
        };
        acc(x_at(ell, alpha - 1, beta + 1), Rat(1), 0);
        acc(x_at(ell, alpha, beta), Rat(-2), 0);
        acc(x_at(ell, alpha + 1, beta - 1), Rat(1), 0);
        acc(x_at(ell, alpha, beta + 1), -ctx_.kappa, 1);
        acc(x_at(ell, alpha + 1, beta), ctx_.kappa, 1);
      }
      auto itr = rhs.find({alpha, beta});
      if (itr != rhs.end())
        for (auto& [rc, e] : itr->second) mat_add(v, rc.first, rc.second, e, Rat(-1));
      for (auto& [rc, e] : v) {
        ModuleElement probe(K);
        for (auto& [fk, c] : e) probe.add_scaled(normal_form(fk.w), fk.hpow, c);
        if (!probe.is_zero())
          throw Error("creation relation compilation inconsistency at degree " +
                      std::to_string(deg));
      }
    }

  // leading layer equals the classical oracle bracket
  LieBasis basis(ctx_);
  for (auto& [key, terms] : table_.creation) {
    int i = qmode_i(key.first), j = qmode_j(key.first);
    int k = qmode_i(key.second), l = qmode_j(key.second);
    if (!kept(i, j) || !kept(k, l)) continue;
    std::map<int, Rat> quantum;
    for (auto& t : terms) {
      if (t.hpow != 0) continue;
      if (t.w.size() != 1) throw Error("leading layer is not linear");
      auto [idx, c] = basis.resolve(qmode_i(t.w[0]), qmode_j(t.w[0]));
      if (c == 0) continue;
      quantum[idx] += t.c * c;
      if (quantum[idx] == 0) quantum.erase(idx);
    }
    std::map<int, Rat> classical;
    auto [bi, ci] = basis.resolve(i, j);
    auto [bk, ck] = basis.resolve(k, l);
    for (auto& [idx, c] : basis.bracket(bi, bk)) {
      classical[idx] += ci * ck * c;
      if (classical[idx] == 0) classical.erase(idx);
    }
    if (quantum != classical)
      throw Error("leading creation rule disagrees with the classical oracle");
  }
}

void YangianEngine::compile_mixed_rules() {
  const int D = ctx_.trunc.deg;
  const int K = ctx_.trunc.hord;
  const int n = ctx_.N;
  const int pcap = D + K + 1;  // max annihilation index with a nonzero rule
  const int bcap = std::max(D - 1, 0);
  const int lcap = K + 1;

  // pole-series coefficients of the normalized R-matrix: h^q M_q x^{-q}
  std::vector<TensorOp<Rat>> M = rbar_pole_matrices(ctx_, lcap, trivial_r_);

  Rat delta = Rat(ctx_.sigma) * ctx_.level / 2;
  auto mplus = shift_pole_matrices(M, delta);
  auto mminus = shift_pole_matrices(M, -delta);

  // expanded tri-series of both shifted matrices minus the identity part
  auto expand = [&](const std::vector<TensorOp<Rat>>& mats, bool with_unit) {
    TriSeries out;
    for (int qq = with_unit ? 0 : 1; qq <= lcap; ++qq) {
      MatF mf;
      for (auto& [rc, v] : mats[static_cast<size_t>(qq)].entries()) {
        FreeExpr e;
        fe_add(e, FreeKey{0, {}}, v);
        mf[{static_cast<int>(rc.first), static_cast<int>(rc.second)}] = std::move(e);
      }
      if (mf.empty()) continue;
      if (qq == 0) {
        out[{0, 0, 0}] = mf;
        continue;
      }
      // (u-v)^{-q} = sum_k binom(q-1+k, k) u^{-q-k} v^k
      for (int k = 0; qq + k <= pcap && k <= bcap; ++k) {
        Rat coef(binom_ll(qq - 1 + k, k));
        auto& cell = out[{qq + k, k, qq}];
        for (auto& [rc, e] : mf) mat_add(cell, rc.first, rc.second, e, coef);
      }
    }
    return out;
  };
  TriSeries rp = expand(mplus, true);
  TriSeries rm = expand(mminus, true);
  TriSeries rp_tail = expand(mplus, false);
  TriSeries rm_tail = expand(mminus, false);

  TriSeries s1, s2;  // annihilation and creation series
  for (int r = 1; r <= pcap; ++r) {
    MatF m1;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          FreeExpr e;
          fe_add(e, FreeKey{0, {qmode(r, i, j)}}, Rat(1));
          m1[{(i - 1) * n + (k - 1), (j - 1) * n + (k - 1)}] = std::move(e);
        }
    s1[{r, 0, 0}] = std::move(m1);
  }
  for (int s = 1; s <= D; ++s) {
    MatF m2;
    for (int i = 1; i <= n; ++i)
      for (int kk = 1; kk <= n; ++kk)
        for (int l = 1; l <= n; ++l) {
          FreeExpr e;
          fe_add(e, FreeKey{0, {qmode(-s, kk, l)}}, Rat(1));
          m2[{(i - 1) * n + (kk - 1), (i - 1) * n + (l - 1)}] = std::move(e);
        }
    s2[{0, s - 1, 0}] = std::move(m2);
  }

  // h^2 [t1(u), t2+(v)] = (R+ - R-) + h (R+ t1 - t1 R-) - h (R+ t2 - t2 R-)
  //                      - h^2 ((R+ - 1) t1 t2 - t2 t1 (R- - 1))
  TriSeries e;
  tri_acc(e, rp, Rat(1), 0, lcap);
  tri_acc(e, rm, Rat(-1), 0, lcap);
  tri_acc(e, tri_mul(rp, s1, pcap, bcap, lcap), Rat(1), 1, lcap);
  tri_acc(e, tri_mul(s1, rm, pcap, bcap, lcap), Rat(-1), 1, lcap);
  tri_acc(e, tri_mul(rp, s2, pcap, bcap, lcap), Rat(-1), 1, lcap);
  tri_acc(e, tri_mul(s2, rm, pcap, bcap, lcap), Rat(1), 1, lcap);
  TriSeries s12 = tri_mul(s1, s2, pcap, bcap, lcap);
  TriSeries s21 = tri_mul(s2, s1, pcap, bcap, lcap);
  tri_acc(e, tri_mul(rp_tail, s12, pcap, bcap, lcap), Rat(-1), 2, lcap);
  tri_acc(e, tri_mul(s21, rm_tail, pcap, bcap, lcap), Rat(1), 2, lcap);

  for (auto& [key, m] : e) {
    auto [p, beta, ell] = key;
    if (ell < 2) {
      if (!m.empty()) throw Error("mixed relation extraction: low orders do not cancel");
      continue;
    }
    if (p == 0) {
      if (!m.empty()) throw Error("mixed relation extraction: constant row does not cancel");
      continue;
    }
    int lam = ell - 2;
    if (lam >= K) continue;
    int s = beta + 1;
    for (auto& [rc, ex] : m) {
      int i = rc.first / n + 1, k = rc.first % n + 1;
      int j = rc.second / n + 1, l = rc.second % n + 1;
      auto rule_key = std::make_pair(qmode(p, i, j), qmode(-s, k, l));
      for (auto& [fk, c] : ex) table_.mixed[rule_key].push_back({lam + fk.hpow, c, fk.w});
    }
  }
}

ModuleElement YangianEngine::apply_terms(const std::vector<RuleTerm>& terms, const QWord& pre,
                                         const QWord& post, int hshift, const Rat& scale) {
  ModuleElement out(ctx_.trunc.hord);
  for (auto& t : terms) {
    if (t.hpow + hshift >= ctx_.trunc.hord) continue;
    QWord w = pre;
    w.insert(w.end(), t.w.begin(), t.w.end());
    w.insert(w.end(), post.begin(), post.end());
    out.add_scaled(normal_form(w), t.hpow + hshift, t.c * scale);
  }
  return out;
}

ModuleElement YangianEngine::normal_form(const QWord& word) {
  auto it = nf_memo_.find(word);
  if (it != nf_memo_.end()) return it->second;
  ModuleElement r = nf_impl(word);
  nf_memo_.emplace(word, r);
  return r;
}

ModuleElement YangianEngine::nf_impl(const QWord& word) {
  const int D = ctx_.trunc.deg;
  ModuleElement out(ctx_.trunc.hord);
  if (word_degree(word) > D) return out;

  // eliminate the leftmost non-kept generator
  for (size_t k = 0; k < word.size(); ++k) {
    QMode m = word[k];
    if (kept(qmode_i(m), qmode_j(m))) continue;
    auto it = table_.eliminate.find(m);
    if (it == table_.eliminate.end()) throw TruncationError("out of truncation window: " + mode_name(m));
    QWord pre(word.begin(), word.begin() + static_cast<long>(k));
    QWord post(word.begin() + static_cast<long>(k) + 1, word.end());
    return apply_terms(it->second, pre, post, 0, Rat(1));
  }

  // sort by adjacent exchanges
  for (size_t k = 0; k + 1 < word.size(); ++k) {
    if (word[k] <= word[k + 1]) continue;
    QMode x = word[k], y = word[k + 1];
    QWord swapped = word;
    std::swap(swapped[k], swapped[k + 1]);
    out += normal_form(swapped);
    if (!trivial_r_) {
      auto it = table_.creation.find({x, y});
      if (it != table_.creation.end()) {
        QWord pre(word.begin(), word.begin() + static_cast<long>(k));
        QWord post(word.begin() + static_cast<long>(k) + 2, word.end());
        out += apply_terms(it->second, pre, post, 0, Rat(1));
      }
    }
    return out;
  }

  out.add(word, 0, Rat(1));
  return out;
}

ModuleElement YangianEngine::normal_form_randomized(const QWord& word, unsigned seed) {
  const int D = ctx_.trunc.deg;
  unsigned state = seed * 2654435761u + 17u;
  auto next = [&state]() {
    state = state * 1664525u + 1013904223u;
    return state >> 8;
  };
  std::function<ModuleElement(const QWord&)> go = [&](const QWord& w) -> ModuleElement {
    ModuleElement out(ctx_.trunc.hord);
    if (word_degree(w) > D) return out;
    // candidate reduction sites: eliminations and inversions
    std::vector<std::pair<char, size_t>> sites;
    for (size_t k = 0; k < w.size(); ++k)
      if (!kept(qmode_i(w[k]), qmode_j(w[k]))) sites.push_back({'e', k});
    for (size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k] > w[k + 1]) sites.push_back({'s', k});
    if (sites.empty()) {
      out.add(w, 0, Rat(1));
      return out;
    }
    auto [kind, k] = sites[next() % sites.size()];
    if (kind == 'e') {
      auto it = table_.eliminate.find(w[k]);
      if (it == table_.eliminate.end()) throw TruncationError("out of truncation window");
      for (auto& t : it->second) {
        if (t.hpow >= ctx_.trunc.hord) continue;
        QWord nw(w.begin(), w.begin() + static_cast<long>(k));
        nw.insert(nw.end(), t.w.begin(), t.w.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 1, w.end());
        out.add_scaled(go(nw), t.hpow, t.c);
      }
      return out;
    }
    QWord swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    out += go(swapped);
    auto it = table_.creation.find({w[k], w[k + 1]});
    if (it != table_.creation.end()) {
      for (auto& t : it->second) {
        if (t.hpow >= ctx_.trunc.hord) continue;
        QWord nw(w.begin(), w.begin() + static_cast<long>(k));
        nw.insert(nw.end(), t.w.begin(), t.w.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 2, w.end());
        out.add_scaled(go(nw), t.hpow, t.c);
      }
    }
    return out;
  };
  return go(word);
}

ModuleElement YangianEngine::normalize(const ModuleElement& e) {
  ModuleElement out(ctx_.trunc.hord);
  for (auto& [w, p] : e.terms())
    for (int k = 0; k < e.hord(); ++k)
      if (p[static_cast<size_t>(k)] != 0) out.add_scaled(normal_form(w), k, p[static_cast<size_t>(k)]);
  return out;
}

ModuleElement YangianEngine::left_mult(QMode creation, const ModuleElement& x) {
  ModuleElement out(ctx_.trunc.hord);
  for (auto& [w, p] : x.terms()) {
    QWord nw;
    nw.push_back(creation);
    nw.insert(nw.end(), w.begin(), w.end());
    ModuleElement nf = normal_form(nw);
    for (int k = 0; k < x.hord(); ++k)
      if (p[static_cast<size_t>(k)] != 0) out.add_scaled(nf, k, p[static_cast<size_t>(k)]);
  }
  return out;
}

ModuleElement YangianEngine::act(int r, int i, int j, const ModuleElement& x) {
  if (r < 1) throw RangeError("annihilation mode must be positive");
  QMode am = qmode(r, i, j);
  ModuleElement out(ctx_.trunc.hord);
  for (auto& [w, p] : x.terms()) {
    auto key = std::make_pair(am, w);
    auto it = act_memo_.find(key);
    if (it == act_memo_.end()) {
      ModuleElement r0(ctx_.trunc.hord);
      if (!w.empty()) {
        QMode m1 = w.front();
        QWord rest(w.begin() + 1, w.end());
        ModuleElement racted = act(r, i, j, normal_form(rest));
        r0 += left_mult(m1, racted);
        if (r > ctx_.trunc.deg + ctx_.trunc.hord + 1)
          throw TruncationError("out of truncation window: " + mode_name(am));
        auto rit = table_.mixed.find({am, m1});
        if (rit != table_.mixed.end()) {
          for (auto& t : rit->second) {
            if (t.hpow >= ctx_.trunc.hord) continue;
            // apply the correction word to the rest of the word
            if (t.w.empty()) {
              r0.add_scaled(normal_form(rest), t.hpow, t.c);
            } else if (t.w.size() == 1) {
              QMode mm = t.w[0];
              if (qmode_r(mm) < 0) {
                r0.add_scaled(left_mult(mm, normal_form(rest)), t.hpow, t.c);
              } else {
                r0.add_scaled(act(qmode_r(mm), qmode_i(mm), qmode_j(mm), normal_form(rest)),
                              t.hpow, t.c);
              }
            } else {
              QMode m1w = t.w[0], m2w = t.w[1];
              if (qmode_r(m1w) > 0 && qmode_r(m2w) < 0) {
                // annihilation then creation, applied right to left
                ModuleElement inner = left_mult(m2w, normal_form(rest));
                r0.add_scaled(act(qmode_r(m1w), qmode_i(m1w), qmode_j(m1w), inner), t.hpow, t.c);
              } else if (qmode_r(m1w) < 0 && qmode_r(m2w) > 0) {
                ModuleElement inner =
                    act(qmode_r(m2w), qmode_i(m2w), qmode_j(m2w), normal_form(rest));
                r0.add_scaled(left_mult(m1w, inner), t.hpow, t.c);
              } else {
                throw Error("unexpected mixed-rule correction shape");
              }
            }
          }
        }
      }
      it = act_memo_.emplace(key, std::move(r0)).first;
    }
    for (int k = 0; k < x.hord(); ++k)
      if (p[static_cast<size_t>(k)] != 0) out.add_scaled(it->second, k, p[static_cast<size_t>(k)]);
  }
  return out;
}

std::map<int, ModuleElement> YangianEngine::act_t_series(int i, int j, const ModuleElement& x) {
  // Coefficients of sum_r v^{-r} t^{(r)}_{ij} x, the h-divided tail of the
  // full current: t_ij(v) x = delta_ij x + h * (this series). Over a
  // torsion-free module the fixed-point condition is equivalent to the
  // vanishing of this tail, one deformation order deeper than the prefixed
  // form, so the tail is what the centrality sweeps examine.
  std::map<int, ModuleElement> out;
  const int rmax = ctx_.trunc.deg + ctx_.trunc.hord + 1;
  for (int r = 1; r <= rmax; ++r) {
    ModuleElement a = act(r, i, j, x);
    if (!a.is_zero()) out[r] = std::move(a);
  }
  return out;
}

ModuleElement YangianEngine::apply_translation(const ModuleElement& x) {
  if (x.degree() >= ctx_.trunc.deg)
    throw TruncationError("translation overflows the degree bound");
  ModuleElement out(ctx_.trunc.hord);
  for (auto& [w, p] : x.terms())
    for (size_t k = 0; k < w.size(); ++k) {
      int d = -qmode_r(w[k]);
      QWord bumped = w;
      bumped[k] = qmode(qmode_r(w[k]) - 1, qmode_i(w[k]), qmode_j(w[k]));
      ModuleElement nf = normal_form(bumped);
      for (int hk = 0; hk < x.hord(); ++hk)
        if (p[static_cast<size_t>(hk)] != 0) out.add_scaled(nf, hk, p[static_cast<size_t>(hk)] * Rat(d));
    }
  return out;
}

std::vector<QWord> YangianEngine::basis_words(int maxdeg, int maxlen) const {
  std::vector<QMode> modes;
  for (int d = maxdeg; d >= 1; --d)
    for (int i = 1; i <= ctx_.N; ++i)
      for (int j = 1; j <= ctx_.N; ++j)
        if (kept(i, j)) modes.push_back(qmode(-d, i, j));
  std::sort(modes.begin(), modes.end());
  std::vector<QWord> out;
  QWord cur;
  std::function<void(size_t, int)> rec = [&](size_t from, int deg) {
    out.push_back(cur);
    if (maxlen > 0 && static_cast<int>(cur.size()) >= maxlen) return;
    for (size_t k = from; k < modes.size(); ++k) {
      int d = -qmode_r(modes[k]);
      if (deg + d > maxdeg) continue;
      cur.push_back(modes[k]);
      rec(k, deg + d);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), QWordLess());
  return out;
}


UFamily substitute_shift(const UFamily& x, const Rat& a, int hord, int udeg) {
  UFamily out;
  for (auto& [p, e] : x) {
    if (p < 0) throw RangeError("shift substitution expects polynomial powers");
    if (p > udeg) throw RangeError("shift substitution beyond the power bound");
    for (int k = 0; k <= p && k < hord; ++k) {
      Rat apow(1);
      for (int t = 0; t < k; ++t) apow *= a;
      Rat coef = Rat(binom_ll(p, k)) * apow;
      if (coef == 0) continue;
      ModuleElement& dst = out.try_emplace(p - k, ModuleElement(hord)).first->second;
      dst.add_scaled(e, k, coef);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace bcdy

namespace bcdy {

ClassicalElement classical_limit(Straightener& st, const ModuleElement& x) {
  ClassicalElement out;
  for (auto& [w, c] : x.layer(0)) {
    std::vector<std::tuple<int, int, int>> modes;
    for (QMode m : w) modes.push_back({qmode_r(m), qmode_i(m), qmode_j(m)});
    out += classical_from_modes(st, modes, c);
  }
  return out;
}

}  // namespace bcdy
