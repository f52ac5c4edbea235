#include "bcdy/center.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bcdy {

namespace {

std::string hpoly_str(const HPoly& p) {
  std::string out;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rat_str(p[k]) + "*h^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::string word_str(const YangianEngine& eng, const QWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (QMode m : w) out += eng.mode_name(m) + " ";
  return out;
}

void describe_nonzero(const YangianEngine& eng, const ModuleElement& e, const std::string& where,
                      CheckOutcome& out) {
  if (e.is_zero()) return;
  auto& [w, p] = *e.terms().begin();
  out.witnesses.push_back({where, word_str(eng, w) + ": " + hpoly_str(p)});
}

std::vector<Rat> leg_shifts(int m, ShiftOrder order) {
  std::vector<Rat> s;
  for (int i = 1; i <= m; ++i) {
    int shift = order == ShiftOrder::staggered_up ? -(m - i) : -(i - 1);
    s.push_back(Rat(shift));
  }
  return s;
}

ShiftOrder family_order(const AlgebraContext& ctx) {
  return ctx.orthogonal() ? ShiftOrder::staggered_up : ShiftOrder::staggered_down;
}

// Expands the product over legs of t+_{c_i r_i}(u + e_i h) applied to the
// vacuum, accumulating (u-power, h-power, word, coefficient) within the
// context truncations, and adds S[r,c] times the normalized words into the
// family.
void accumulate_trace(YangianEngine& eng, const TensorOp<Rat>& s, const std::vector<Rat>& shifts,
                      UFamily& out) {
  const auto& ctx = eng.ctx();
  const int K = ctx.trunc.hord, D = ctx.trunc.deg, U = ctx.trunc.udeg;
  int m = static_cast<int>(shifts.size());
  for (auto& [rc, sval] : s.entries()) {
    auto rd = s.digits(rc.first), cd = s.digits(rc.second);
    // branch over legs
    struct Frame {
      int upow, hpow, deg;
      QWord w;
      Rat c;
    };
    std::vector<Frame> cur{{0, 0, 0, {}, sval}};
    for (int leg = 0; leg < m; ++leg) {
      std::vector<Frame> next;
      int a = cd[static_cast<size_t>(leg)] + 1;  // row index of the factor entry
      int b = rd[static_cast<size_t>(leg)] + 1;
      for (auto& f : cur) {
        if (a == b) next.push_back(f);  // delta part
        for (int rho = 1; f.deg + rho <= D; ++rho) {
          for (int k = 0; k <= rho - 1; ++k) {
            int hp = f.hpow + 1 + k;
            int up = f.upow + rho - 1 - k;
            if (hp >= K || up > U) continue;
            Rat shift_pow(1);
            for (int t = 0; t < k; ++t) shift_pow *= shifts[static_cast<size_t>(leg)];
            Rat coef = f.c * Rat(-1) * Rat(binom_ll(rho - 1, k)) * shift_pow;
            if (coef == 0) continue;
            Frame g = f;
            g.upow = up;
            g.hpow = hp;
            g.deg = f.deg + rho;
            g.w.push_back(qmode(-rho, a, b));
            g.c = coef;
            next.push_back(std::move(g));
          }
        }
      }
      cur = std::move(next);
    }
    for (auto& f : cur) {
      ModuleElement nf = eng.normal_form(f.w);
      if (nf.is_zero()) continue;
      auto& dst = out.try_emplace(f.upow, ModuleElement(K)).first->second;
      dst.add_scaled(nf, f.hpow, f.c);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
}

}  // namespace

CentralSeries build_t_plus(YangianEngine& eng, int m) {
  return build_t_plus(eng, m, family_order(eng.ctx()));
}

CentralSeries build_t_plus(YangianEngine& eng, int m, ShiftOrder order) {
  const auto& ctx = eng.ctx();
  CentralSeries out;
  out.m = m;
  out.hord = ctx.trunc.hord;
  if (m == 0) {
    out.coeffs[0] = ModuleElement::vacuum(ctx.trunc.hord);
    out.points_desc = "()";
    return out;
  }
  auto bundle = symmetrizer(ctx, m);
  out.points_desc = bundle.points_desc;
  accumulate_trace(eng, bundle.S, leg_shifts(m, order), out.coeffs);
  return out;
}

CheckOutcome verify_centrality(YangianEngine& eng, const CentralSeries& ts) {
  const auto& ctx = eng.ctx();
  if (ctx.trunc.deg < ctx.trunc.udeg + ctx.trunc.hord - 1)
    throw ConfigError("degree bound too small for the centrality sweep: need D >= U + K - 1");
  CheckOutcome out;
  out.pass = true;
  const int rmax = ctx.trunc.deg + ctx.trunc.hord + 1;
  for (int i = 1; i <= ctx.N; ++i)
    for (int j = 1; j <= ctx.N; ++j)
      for (auto& [upow, x] : ts.coeffs) {
        // the delta part cancels identically; every annihilation tail
        // coefficient must vanish
        auto series = eng.act_t_series(i, j, x);
        for (int vpow = 1; vpow <= rmax; ++vpow) ++out.probes;
        for (auto& [vpow, val] : series) {
          if (val.is_zero()) continue;
          out.pass = false;
          std::ostringstream where;
          where << "t[" << i << "," << j << "](v) at u^" << upow << " v^-" << vpow;
          describe_nonzero(eng, val, where.str(), out);
        }
      }
  return out;
}

CheckOutcome verify_alternative_form(YangianEngine& eng, int m) {
  CheckOutcome out;
  auto up = build_t_plus(eng, m, ShiftOrder::staggered_up);
  auto down = build_t_plus(eng, m, ShiftOrder::staggered_down);
  out.pass = true;
  std::set<int> keys;
  for (auto& [k, v] : up.coeffs) keys.insert(k);
  for (auto& [k, v] : down.coeffs) keys.insert(k);
  for (int k : keys) {
    ++out.probes;
    ModuleElement a = up.coeffs.count(k) ? up.coeffs.at(k) : ModuleElement(up.hord);
    ModuleElement b = down.coeffs.count(k) ? down.coeffs.at(k) : ModuleElement(down.hord);
    a -= b;
    if (!a.is_zero()) {
      out.pass = false;
      describe_nonzero(eng, a, "u^" + std::to_string(k), out);
    }
  }
  return out;
}

PhiSeries build_phi(YangianEngine& eng, int m) {
  const auto& ctx = eng.ctx();
  const int K = ctx.trunc.hord;
  if (K <= m) throw ConfigError("h truncation too small to divide by h^" + std::to_string(m));
  PhiSeries out;
  out.m = m;
  out.hord = K - m;
  // b_k = (-1)^k a_{k+1} ... a_m binom(m,k)
  std::vector<Rat> a(static_cast<size_t>(m) + 1, Rat(0));
  for (int k = 1; k <= m; ++k) a[static_cast<size_t>(k)] = trace_reduce_coeff(ctx.kind, ctx.N, k);
  out.b.assign(static_cast<size_t>(m) + 1, Rat(0));
  for (int k = 0; k <= m; ++k) {
    Rat prod(1);
    for (int t = k + 1; t <= m; ++t) prod *= a[static_cast<size_t>(t)];
    Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
    out.b[static_cast<size_t>(k)] = sign * prod * Rat(binom_ll(m, k));
  }

  UFamily combined;
  for (int k = 0; k <= m; ++k) {
    auto ts = build_t_plus(eng, k, ShiftOrder::staggered_down);
    for (auto& [upow, me] : ts.coeffs) {
      auto& dst = combined.try_emplace(upow, ModuleElement(K)).first->second;
      dst.add_scaled(me, 0, out.b[static_cast<size_t>(k)]);
    }
  }
  // divisibility by h^m, then the shifted-down quotient
  for (auto& [upow, me] : combined) {
    for (int l = 0; l < m; ++l)
      if (!me.layer(l).empty())
        throw Error("weighted combination is not divisible by h^" + std::to_string(m));
    ModuleElement q(out.hord);
    for (int l = m; l < K; ++l)
      for (auto& [w, c] : me.layer(l)) q.add(w, l - m, c);
    if (!q.is_zero()) out.coeffs[upow] = std::move(q);
  }
  return out;
}

CheckOutcome compare_classical(YangianEngine& eng, Straightener& st, int m) {
  CheckOutcome out;
  auto phi = build_phi(eng, m);
  ModuleElement c0 =
      phi.coeffs.count(0) ? phi.coeffs.at(0) : ModuleElement(phi.hord);
  ClassicalElement quantum = classical_limit(st, c0);
  auto poly = segal_sugawara(eng.ctx(), st, m);
  ClassicalElement expected = poly[static_cast<size_t>(m)];
  out.probes = 1;
  ClassicalElement diff = quantum;
  diff -= expected;
  out.pass = diff.is_zero();
  if (!out.pass)
    out.witnesses.push_back({"classical limit mismatch", diff.str(st.basis())});
  return out;
}

// ---------- braiding fixed point on the tensor square ----------

namespace {

struct ZKey {
  int z = 0, u = 0, v = 0, h = 0;
  bool operator<(const ZKey& o) const {
    if (z != o.z) return z < o.z;
    if (u != o.u) return u < o.u;
    if (v != o.v) return v < o.v;
    return h < o.h;
  }
  bool operator==(const ZKey& o) const { return z == o.z && u == o.u && v == o.v && h == o.h; }
};
using Zuv = std::map<ZKey, Rat>;

struct SmapCaps {
  int hord = 2;
  int ucap = 1;
  int vcap = 1;
  int degcap = 2;
};

struct SmapVal {
  SmapCaps caps;
  std::map<std::pair<QWord, QWord>, Zuv> t;

  bool is_zero() const { return t.empty(); }
  void add(const std::pair<QWord, QWord>& pw, const ZKey& k, const Rat& c) {
    if (c == 0 || k.h >= caps.hord || k.u > caps.ucap || k.v > caps.vcap) return;
    if (word_degree(pw.first) > caps.degcap || word_degree(pw.second) > caps.degcap) return;
    auto& cell = t[pw];
    auto it = cell.find(k);
    if (it == cell.end())
      cell.emplace(k, c);
    else {
      it->second += c;
      if (it->second == 0) cell.erase(it);
    }
    if (cell.empty()) t.erase(pw);
  }
  friend SmapVal operator+(const SmapVal& a, const SmapVal& b) {
    SmapVal r = a;
    for (auto& [pw, cell] : b.t)
      for (auto& [k, c] : cell) r.add(pw, k, c);
    return r;
  }
  friend SmapVal operator-(const SmapVal& a, const SmapVal& b) {
    SmapVal r = a;
    for (auto& [pw, cell] : b.t)
      for (auto& [k, c] : cell) r.add(pw, k, -c);
    return r;
  }
  friend SmapVal operator*(const SmapVal& a, const SmapVal& b) {
    SmapVal r;
    r.caps = a.caps;
    for (auto& [pwa, cella] : a.t)
      for (auto& [pwb, cellb] : b.t) {
        std::pair<QWord, QWord> pw = pwa;
        pw.first.insert(pw.first.end(), pwb.first.begin(), pwb.first.end());
        pw.second.insert(pw.second.end(), pwb.second.begin(), pwb.second.end());
        for (auto& [ka, ca] : cella)
          for (auto& [kb, cb] : cellb)
            r.add(pw, ZKey{ka.z + kb.z, ka.u + kb.u, ka.v + kb.v, ka.h + kb.h}, ca * cb);
      }
    return r;
  }
};

SmapVal smap_zero(const SmapCaps& caps) {
  SmapVal v;
  v.caps = caps;
  return v;
}
SmapVal smap_one(const SmapCaps& caps) {
  SmapVal v;
  v.caps = caps;
  v.add({{}, {}}, ZKey{}, Rat(1));
  return v;
}

// Normalized R-matrix factor with argument sign*(z + u - v) + delta*h as an
// operator on legs (1,2) with scalar entries expanded in negative powers of
// the auxiliary variable.
TensorOp<SmapVal> rbar_zuv(const AlgebraContext& ctx, const SmapCaps& caps, const Rat& delta,
                           int sign, bool trivial) {
  auto M = rbar_pole_matrices(ctx, caps.hord - 1, trivial);
  // N_p = sign^p shift_pole(sign*delta)_p
  auto shifted = shift_pole_matrices(M, Rat(sign) * delta);
  TensorOp<SmapVal> out(ctx.N, {1, 2}, smap_zero(caps), smap_one(caps));
  for (size_t p = 0; p < shifted.size(); ++p) {
    Rat sp = (p % 2 == 0 || sign > 0) ? Rat(1) : Rat(-1);
    for (auto& [rc, val] : shifted[p].entries()) {
      Rat base = val * sp;
      if (base == 0) continue;
      if (p == 0) {
        SmapVal sv = smap_zero(caps);
        sv.add({{}, {}}, ZKey{0, 0, 0, 0}, base);
        out.add(rc.first, rc.second, sv);
        continue;
      }
      // (z + u - v)^{-p} = sum_k binom(-p,k) z^{-p-k} (u-v)^k
      SmapVal sv = smap_zero(caps);
      for (int k = 0; k <= caps.ucap + caps.vcap; ++k) {
        Rat bk = binomial(Rat(-static_cast<long>(p)), k);
        for (int t = 0; t <= k; ++t) {
          int ue = k - t, ve = t;
          if (ue > caps.ucap || ve > caps.vcap) continue;
          Rat sgn = (t % 2 == 0) ? Rat(1) : Rat(-1);
          sv.add({{}, {}},
                 ZKey{-static_cast<int>(p) - k, ue, ve, static_cast<int>(p)},
                 base * bk * Rat(binom_ll(k, t)) * sgn);
        }
      }
      out.add(rc.first, rc.second, sv);
    }
  }
  return out;
}

// Creation-series factor: on the first leg with variable u filling module
// factor 1, or on the second leg with variable v filling module factor 2.
TensorOp<SmapVal> tplus_zuv(const AlgebraContext& ctx, const SmapCaps& caps, bool first_factor) {
  TensorOp<SmapVal> out(ctx.N, {1, 2}, smap_zero(caps), smap_one(caps));
  int leg = first_factor ? 1 : 2;
  int other = first_factor ? 2 : 1;
  for (int a = 1; a <= ctx.N; ++a)
    for (int b = 1; b <= ctx.N; ++b)
      for (int d = 1; d <= ctx.N; ++d) {
        SmapVal sv = smap_zero(caps);
        if (a == b) sv.add({{}, {}}, ZKey{}, Rat(1));
        int pmax = first_factor ? caps.ucap : caps.vcap;
        for (int rho = 1; rho <= pmax + 1 && rho <= caps.degcap; ++rho) {
          ZKey k;
          k.h = 1;
          (first_factor ? k.u : k.v) = rho - 1;
          std::pair<QWord, QWord> pw;
          (first_factor ? pw.first : pw.second) = QWord{qmode(-rho, a, b)};
          sv.add(pw, k, Rat(-1));
        }
        std::vector<int> rdig(2), cdig(2);
        rdig[static_cast<size_t>(leg - 1)] = a - 1;
        cdig[static_cast<size_t>(leg - 1)] = b - 1;
        rdig[static_cast<size_t>(other - 1)] = d - 1;
        cdig[static_cast<size_t>(other - 1)] = d - 1;
        out.add(out.index(rdig), out.index(cdig), sv);
      }
  return out;
}

// canonical form: words straightened, coefficients merged
std::map<std::pair<QWord, QWord>, Zuv> smap_normalize(YangianEngine& eng, const SmapVal& v) {
  std::map<std::pair<QWord, QWord>, Zuv> out;
  const int K = v.caps.hord;
  for (auto& [pw, cell] : v.t) {
    auto n1 = eng.normal_form(pw.first);
    auto n2 = eng.normal_form(pw.second);
    for (int h1 = 0; h1 < K; ++h1)
      for (auto& [w1, c1] : n1.layer(h1))
        for (int h2 = 0; h2 + h1 < K; ++h2)
          for (auto& [w2, c2] : n2.layer(h2))
            for (auto& [k, c] : cell) {
              if (k.h + h1 + h2 >= K) continue;
              ZKey nk = k;
              nk.h += h1 + h2;
              auto& dst = out[{w1, w2}];
              auto it = dst.find(nk);
              if (it == dst.end())
                dst.emplace(nk, c * c1 * c2);
              else {
                it->second += c * c1 * c2;
                if (it->second == 0) dst.erase(it);
              }
            }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

CheckOutcome verify_smap_fixed(YangianEngine& eng, bool degenerate_control) {
  const auto& ctx = eng.ctx();
  SmapCaps caps;
  caps.hord = ctx.trunc.hord;
  caps.degcap = ctx.trunc.deg;
  caps.ucap = ctx.trunc.deg - 1;
  caps.vcap = ctx.trunc.deg - 1;

  Rat sc = Rat(ctx.sigma) * ctx.level;
  // factors of the explicit braiding expression at one leg per side
  auto A = rbar_zuv(ctx, caps, Rat(0), +1, degenerate_control);
  auto Ainv = rbar_zuv(ctx, caps, -sc, -1, degenerate_control);
  auto Aprime =
      rbar_zuv(ctx, caps, -ctx.kappa - sc, +1, degenerate_control).prime_transposed(1, ctx.eps);
  auto T1 = tplus_zuv(ctx, caps, true);
  auto T2 = tplus_zuv(ctx, caps, false);

  auto W = A * T1 * Ainv * T2 * A;
  auto Z = compose_mixed(Aprime, W, {2});
  auto outv = Z.partial_trace({1, 2}).at(0, 0);
  auto inv = (T1 * T2).partial_trace({1, 2}).at(0, 0);

  auto lhs = smap_normalize(eng, outv);
  auto rhs = smap_normalize(eng, inv);

  CheckOutcome out;
  out.pass = true;
  std::set<std::pair<QWord, QWord>> keys;
  for (auto& [k, v] : lhs) keys.insert(k);
  for (auto& [k, v] : rhs) keys.insert(k);
  for (auto& pw : keys) {
    Zuv diff;
    if (lhs.count(pw)) diff = lhs.at(pw);
    if (rhs.count(pw))
      for (auto& [k, c] : rhs.at(pw)) {
        diff[k] -= c;
        if (diff[k] == 0) diff.erase(k);
      }
    ++out.probes;
    if (!diff.empty()) {
      out.pass = false;
      auto& [k, c] = *diff.begin();
      std::ostringstream where;
      where << "words (" << word_str(eng, pw.first) << ") (x) (" << word_str(eng, pw.second)
            << ") at z^" << k.z << " u^" << k.u << " v^" << k.v << " h^" << k.h;
      out.witnesses.push_back({where.str(), rat_str(c)});
    }
  }
  return out;
}

// ---------- operator series on the module ----------

namespace {

void ufam_add(UFamily& dst, const UFamily& src, int hord, int upshift, int hshift, const Rat& c) {
  for (auto& [p, e] : src) {
    auto& cell = dst.try_emplace(p + upshift, ModuleElement(hord)).first->second;
    cell.add_scaled(e, hshift, c);
  }
}

void ufam_prune(UFamily& f) {
  for (auto it = f.begin(); it != f.end();)
    it = it->second.is_zero() ? f.erase(it) : std::next(it);
}

// action of the series entry t_{ab}(u + e h) on a family
UFamily t_entry_action(YangianEngine& eng, const Rat& e, int a, int b, const UFamily& x) {
  const auto& ctx = eng.ctx();
  const int K = ctx.trunc.hord;
  UFamily out;
  int rmax = ctx.trunc.deg + ctx.trunc.hord + 1;
  for (int rho = 1; rho <= rmax; ++rho) {
    UFamily acted;
    for (auto& [p, me] : x) {
      ModuleElement r = eng.act(rho, a, b, me);
      if (!r.is_zero()) acted.try_emplace(p, ModuleElement(K)).first->second += r;
    }
    if (acted.empty()) continue;
    // (u + e h)^{-rho} = sum_j binom(-rho, j) e^j h^j u^{-rho-j}
    for (int j = 0; j < K; ++j) {
      Rat ep(1);
      for (int t = 0; t < j; ++t) ep *= e;
      Rat coef = binomial(Rat(-rho), j) * ep;
      if (coef == 0) continue;
      ufam_add(out, acted, K, -rho - j, j, coef);
    }
  }
  ufam_prune(out);
  return out;
}

// entries of (1 + h t(u + e h))^{-1} acting on a fixed family: the result is
// indexed by the matrix entry (a, b)
std::vector<std::vector<UFamily>> inverse_entries_action(YangianEngine& eng, const Rat& e,
                                                         const UFamily& x) {
  const auto& ctx = eng.ctx();
  const int n = ctx.N, K = ctx.trunc.hord;
  // layer q = 0
  std::vector<std::vector<UFamily>> out(static_cast<size_t>(n),
                                        std::vector<UFamily>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a) out[static_cast<size_t>(a)][static_cast<size_t>(a)] = x;
  // F_q[p][b] = (t^q)_{p b}(x); accumulate (-h)^q F_q
  std::vector<std::vector<UFamily>> fq(static_cast<size_t>(n),
                                       std::vector<UFamily>(static_cast<size_t>(n)));
  for (int b = 0; b < n; ++b) fq[static_cast<size_t>(b)][static_cast<size_t>(b)] = x;
  for (int q = 1; q < K; ++q) {
    std::vector<std::vector<UFamily>> nf(static_cast<size_t>(n),
                                         std::vector<UFamily>(static_cast<size_t>(n)));
    for (int p = 0; p < n; ++p)
      for (int b = 0; b < n; ++b) {
        UFamily acc;
        for (int pp = 0; pp < n; ++pp) {
          const UFamily& inner = fq[static_cast<size_t>(pp)][static_cast<size_t>(b)];
          if (inner.empty()) continue;
          UFamily t = t_entry_action(eng, e, p + 1, pp + 1, inner);
          ufam_add(acc, t, K, 0, 0, Rat(1));
        }
        ufam_prune(acc);
        nf[static_cast<size_t>(p)][static_cast<size_t>(b)] = std::move(acc);
      }
    fq = std::move(nf);
    Rat sign = (q % 2 == 0) ? Rat(1) : Rat(-1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        ufam_add(out[static_cast<size_t>(a)][static_cast<size_t>(b)],
                 fq[static_cast<size_t>(a)][static_cast<size_t>(b)], K, 0, q, sign);
  }
  for (auto& row : out)
    for (auto& f : row) ufam_prune(f);
  return out;
}

}  // namespace

UFamily t_operator_apply(YangianEngine& eng, int m, const ModuleElement& x) {
  const auto& ctx = eng.ctx();
  const int K = ctx.trunc.hord, D = ctx.trunc.deg, n = ctx.N;
  if (m == 0) {
    UFamily out;
    if (!x.is_zero()) out[0] = x;
    return out;
  }
  auto bundle = symmetrizer(ctx, m);
  auto shifts = leg_shifts(m, family_order(ctx));

  // inverse-product entries, iterated leg by leg from the innermost factor
  // (leg 1) outwards: entries indexed by the per-leg (k_i, r_i) pairs
  UFamily base;
  base[0] = x;
  std::map<std::vector<int>, UFamily> ystage;  // key: pairs (k_1, r_1, ..., k_leg, r_leg)
  ystage[{}] = base;
  for (int leg = 1; leg <= m; ++leg) {
    std::map<std::vector<int>, UFamily> next;
    Rat e = shifts[static_cast<size_t>(leg - 1)] - ctx.kappa;
    for (auto& [key, fam] : ystage) {
      auto entries = inverse_entries_action(eng, e, fam);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (entries[static_cast<size_t>(a)][static_cast<size_t>(b)].empty()) continue;
          std::vector<int> nk = key;
          nk.push_back(a);
          nk.push_back(b);
          next[std::move(nk)] = entries[static_cast<size_t>(a)][static_cast<size_t>(b)];
        }
    }
    ystage = std::move(next);
  }

  // creation-product entries times the inverse-stage families, traced with
  // the symmetrizer
  UFamily out;
  for (auto& [rc, sval] : bundle.S.entries()) {
    auto rd = bundle.S.digits(rc.first), cd = bundle.S.digits(rc.second);
    for (auto& [key, fam] : ystage) {
      // key holds (k_i, r_i); require r_i to match the trace row
      bool ok = true;
      for (int leg = 0; leg < m; ++leg)
        if (key[static_cast<size_t>(2 * leg + 1)] != rd[static_cast<size_t>(leg)]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      // expand the creation factors with entries (c_i, k_i)
      struct Frame {
        int upow, hpow;
        QWord w;
        Rat c;
      };
      std::vector<Frame> cur{{0, 0, {}, sval}};
      for (int leg = 0; leg < m; ++leg) {
        std::vector<Frame> nxt;
        int a = cd[static_cast<size_t>(leg)] + 1;
        int b = key[static_cast<size_t>(2 * leg)] + 1;
        for (auto& f : cur) {
          if (a == b) nxt.push_back(f);
          for (int rho = 1; rho <= D; ++rho)
            for (int k = 0; k <= rho - 1; ++k) {
              int hp = f.hpow + 1 + k;
              if (hp >= K) continue;
              Rat sp(1);
              for (int t = 0; t < k; ++t) sp *= shifts[static_cast<size_t>(leg)];
              Rat coef = f.c * Rat(-1) * Rat(binom_ll(rho - 1, k)) * sp;
              if (coef == 0) continue;
              Frame g = f;
              g.upow += rho - 1 - k;
              g.hpow = hp;
              g.w.push_back(qmode(-rho, a, b));
              g.c = coef;
              nxt.push_back(std::move(g));
            }
        }
        cur = std::move(nxt);
      }
      for (auto& f : cur) {
        for (auto& [p, me] : fam) {
          // left-multiply the word in order
          ModuleElement cur_me = me;
          for (size_t t = f.w.size(); t-- > 0;) cur_me = eng.left_mult(f.w[t], cur_me);
          if (cur_me.is_zero()) continue;
          auto& dst = out.try_emplace(p + f.upow, ModuleElement(K)).first->second;
          dst.add_scaled(cur_me, f.hpow, f.c);
        }
      }
    }
  }
  ufam_prune(out);
  return out;
}

CheckOutcome verify_completed_centrality(YangianEngine& eng, int m, int r, int maxdeg) {
  const auto& ctx = eng.ctx();
  CheckOutcome out;
  out.pass = true;
  auto compare = [&](const UFamily& a, const UFamily& b, const std::string& where) {
    std::set<int> keys;
    for (auto& [k, v] : a) keys.insert(k);
    for (auto& [k, v] : b) keys.insert(k);
    for (int k : keys) {
      ++out.probes;
      ModuleElement d =
          a.count(k) ? a.at(k) : ModuleElement(ctx.trunc.hord);
      if (b.count(k)) d -= b.at(k);
      if (!d.is_zero()) {
        out.pass = false;
        describe_nonzero(eng, d, where + " at power " + std::to_string(k), out);
      }
    }
  };
  for (auto& w : eng.basis_words(maxdeg)) {
    ModuleElement x = eng.normal_form(w);
    UFamily tx = t_operator_apply(eng, m, x);
    for (int i = 1; i <= ctx.N; ++i)
      for (int j = 1; j <= ctx.N; ++j) {
        // creation commutator
        if (word_degree(w) + r <= ctx.trunc.deg) {
          QWord gw = w;
          gw.insert(gw.begin(), qmode(-r, i, j));
          UFamily lhs = t_operator_apply(eng, m, eng.normal_form(gw));
          UFamily rhs;
          for (auto& [p, me] : tx) {
            ModuleElement le = eng.left_mult(qmode(-r, i, j), me);
            if (!le.is_zero()) rhs.try_emplace(p, ModuleElement(ctx.trunc.hord)).first->second += le;
          }
          std::ostringstream where;
          where << "[T_" << m << "(u), t[-" << r << "](" << i << "," << j << ")] on "
                << word_str(eng, w);
          compare(lhs, rhs, where.str());
        }
        // annihilation commutator
        {
          UFamily lhs;
          ModuleElement ax = eng.act(r, i, j, x);
          if (!ax.is_zero()) lhs = t_operator_apply(eng, m, ax);
          UFamily rhs;
          for (auto& [p, me] : tx) {
            ModuleElement ae = eng.act(r, i, j, me);
            if (!ae.is_zero()) rhs.try_emplace(p, ModuleElement(ctx.trunc.hord)).first->second += ae;
          }
          std::ostringstream where;
          where << "[T_" << m << "(u), t[+" << r << "](" << i << "," << j << ")] on "
                << word_str(eng, w);
          compare(lhs, rhs, where.str());
        }
      }
  }
  return out;
}

CheckOutcome verify_commutativity_probe(YangianEngine& eng) {
  CheckOutcome out;
  out.pass = true;
  auto t1 = build_t_plus(eng, 1);
  int top = eng.ctx().max_fusion_m();
  auto t2 = top >= 2 ? build_t_plus(eng, 2) : build_t_plus(eng, 1);
  auto product = [&](const ModuleElement& a, const ModuleElement& b) {
    ModuleElement r(eng.ctx().trunc.hord);
    for (auto& [wa, pa] : a.terms())
      for (auto& [wb, pb] : b.terms()) {
        QWord w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        ModuleElement nf = eng.normal_form(w);
        for (int ka = 0; ka < a.hord(); ++ka) {
          if (pa[static_cast<size_t>(ka)] == 0) continue;
          for (int kb = 0; ka + kb < b.hord(); ++kb) {
            if (pb[static_cast<size_t>(kb)] == 0) continue;
            r.add_scaled(nf, ka + kb, pa[static_cast<size_t>(ka)] * pb[static_cast<size_t>(kb)]);
          }
        }
      }
    return r;
  };
  for (auto& [pa, xa] : t1.coeffs)
    for (auto& [pb, xb] : t2.coeffs) {
      if (pa > 1 || pb > 1) continue;  // low modes only
      ++out.probes;
      ModuleElement d = product(xa, xb);
      d -= product(xb, xa);
      if (!d.is_zero()) {
        out.pass = false;
        describe_nonzero(eng, d,
                         "series coefficients u^" + std::to_string(pa) + ", u^" + std::to_string(pb),
                         out);
      }
    }
  return out;
}

}  // namespace bcdy
