#include "bcdy/rmatrix.hpp"

namespace bcdy {

std::pair<TensorOp<Rat>, TensorOp<Rat>> build_pq(const AlgebraContext& ctx, int leg1, int leg2) {
  int n = ctx.N;
  TensorOp<Rat> p(n, {leg1, leg2}, Rat(0), Rat(1));
  TensorOp<Rat> q(n, {leg1, leg2}, Rat(0), Rat(1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // P: e_ij on leg1, e_ji on leg2.
      p.add(p.index({i, j}), p.index({j, i}), Rat(1));
      // Q: e_ij on leg1, e_i'j' on leg2.
      int ip = n - 1 - i, jp = n - 1 - j;
      Rat s(ctx.eps_i(i + 1) * ctx.eps_i(j + 1));
      q.add(q.index({i, ip}), q.index({j, jp}), s);
    }
  return {p, q};
}

TensorOp<RatFun> to_ratfun_op(const TensorOp<Rat>& op, const VarCtxPtr& vctx) {
  return op.map_entries([&](const Rat& c) { return RatFun::constant(vctx, c); }, rf_zero(vctx),
                        rf_one(vctx));
}

TensorOp<RatFun> build_R(const AlgebraContext& ctx, const VarCtxPtr& vctx, int leg1, int leg2,
                         const RatFun& arg) {
  auto [p, q] = build_pq(ctx, leg1, leg2);
  RatFun h = RatFun::variable(vctx, "h");
  RatFun kap = RatFun::constant(vctx, ctx.kappa);
  auto one = TensorOp<RatFun>::identity(ctx.N, {leg1, leg2}, rf_zero(vctx), rf_one(vctx));
  auto P = to_ratfun_op(p, vctx);
  auto Q = to_ratfun_op(q, vctx);
  return one - P.scaled(h / arg) + Q.scaled(h / (arg - h * kap));
}

FSeries f_series(const AlgebraContext& ctx, int M) {
  if (M < 0) throw RangeError("negative normalization series order");
  FSeries fs;
  fs.kappa = ctx.kappa;
  fs.f.assign(static_cast<size_t>(M) + 1, Rat(0));
  fs.f[0] = Rat(1);
  // g_r = sum_{s<=r} binom(-s, r-s) kappa^{r-s} f_s are the coefficients of
  // f(u+kappa); the defining product with f(u) is the geometric series in
  // u^{-2}. Solving the u^{-n} coefficient gives 2 f_n in terms of f_{<n}.
  std::vector<Rat> g(static_cast<size_t>(M) + 1, Rat(0));
  g[0] = Rat(1);
  for (int n = 1; n <= M; ++n) {
    Rat target = (n % 2 == 0) ? Rat(1) : Rat(0);
    Rat acc(0);  // part of g_n known from f_{<n}
    for (int s = 1; s <= n - 1; ++s) {
      Rat kpow(1);
      for (int t = 0; t < n - s; ++t) kpow *= ctx.kappa;
      acc += binomial(Rat(-s), n - s) * kpow * fs.f[static_cast<size_t>(s)];
    }
    Rat cross(0);
    for (int a = 1; a <= n - 1; ++a) cross += fs.f[static_cast<size_t>(a)] * g[static_cast<size_t>(n - a)];
    Rat fn = (target - acc - cross) / 2;
    fs.f[static_cast<size_t>(n)] = fn;
    g[static_cast<size_t>(n)] = fn + acc;
  }
  return fs;
}

RatFun f_at(const FSeries& fs, const VarCtxPtr& vctx, const RatFun& arg) {
  // sum_r f_r h^r arg^{M-r} over the single denominator arg^M
  RatFun h = RatFun::variable(vctx, "h");
  RatFun acc = rf_zero(vctx);
  int M = fs.order();
  for (int r = 0; r <= M; ++r) {
    if (fs.f[static_cast<size_t>(r)] == 0) continue;
    RatFun term = RatFun::constant(vctx, fs.f[static_cast<size_t>(r)]);
    for (int t = 0; t < r; ++t) term *= h;
    for (int t = 0; t < M - r; ++t) term *= arg;
    acc += term;
  }
  RatFun den = rf_one(vctx);
  for (int t = 0; t < M; ++t) den *= arg;
  return acc / den;
}

TensorOp<RatFun> build_Rbar(const AlgebraContext& ctx, const FSeries& fs, const VarCtxPtr& vctx,
                            int leg1, int leg2, const RatFun& arg) {
  if (ctx.trunc.hord > fs.order())
    throw RangeError("insufficient f-series order for the requested h truncation");
  return build_R(ctx, vctx, leg1, leg2, arg).scaled(f_at(fs, vctx, arg));
}

bool vanishes_mod_h(const RatFun& f, int K) {
  if (f.is_zero()) return true;
  return f.valuation("h") >= K;
}

bool op_vanishes_mod_h(const TensorOp<RatFun>& op, int K) {
  for (auto& [k, v] : op.entries())
    if (!vanishes_mod_h(v, K)) return false;
  return true;
}

TensorOp<RatFun> build_R_product(const AlgebraContext& ctx, const FSeries& fs,
                                 const VarCtxPtr& vctx, const std::vector<int>& legsA,
                                 const std::vector<int>& legsB, const std::vector<RatFun>& argsA,
                                 const std::vector<RatFun>& argsB, const RatFun& z, bool forward,
                                 bool normalized) {
  if (legsA.empty() || legsB.empty()) throw RangeError("R-product needs nonempty leg groups");
  if (legsA.size() != argsA.size() || legsB.size() != argsB.size())
    throw RangeError("R-product arguments must match legs");
  std::vector<int> all = legsA;
  all.insert(all.end(), legsB.begin(), legsB.end());
  auto acc = TensorOp<RatFun>::identity(ctx.N, all, rf_zero(vctx), rf_one(vctx));
  auto factor = [&](size_t i, size_t j) {
    RatFun arg = z + argsA[i] - argsB[j];
    auto r = normalized ? build_Rbar(ctx, fs, vctx, legsA[i], legsB[j], arg)
                        : build_R(ctx, vctx, legsA[i], legsB[j], arg);
    return r.embed(acc.legs());
  };
  if (forward) {
    for (size_t i = 0; i < legsA.size(); ++i)
      for (size_t j = legsB.size(); j-- > 0;) acc = acc * factor(i, j);
  } else {
    for (size_t i = legsA.size(); i-- > 0;)
      for (size_t j = 0; j < legsB.size(); ++j) acc = acc * factor(i, j);
  }
  return acc;
}

std::vector<RatFun> u_points(const AlgebraContext& ctx, int m, const RatFun& u, const RatFun& h) {
  std::vector<RatFun> pts;
  for (int i = 1; i <= m; ++i) {
    int shift = ctx.orthogonal() ? (m - i) : (i - 1);
    pts.push_back(u - h * Rat(shift));
  }
  return pts;
}


std::vector<TensorOp<Rat>> rbar_pole_matrices(const AlgebraContext& ctx, int qmax,
                                              bool trivial_r) {
  auto fs = f_series(ctx, qmax);
  auto [p, q] = build_pq(ctx, 1, 2);
  auto one = TensorOp<Rat>::identity(ctx.N, {1, 2}, Rat(0), Rat(1));
  std::vector<TensorOp<Rat>> out;
  for (int qq = 0; qq <= qmax; ++qq) {
    if (trivial_r && qq >= 1) {
      out.push_back(TensorOp<Rat>(ctx.N, {1, 2}, Rat(0), Rat(1)));
      continue;
    }
    auto mat = one.scaled(fs.f[static_cast<size_t>(qq)]);
    if (qq >= 1) {
      mat = mat - p.scaled(fs.f[static_cast<size_t>(qq - 1)]);
      Rat qc(0), kpow(1);
      for (int r = qq - 1; r >= 0; --r) {
        qc += fs.f[static_cast<size_t>(r)] * kpow;
        kpow *= ctx.kappa;
      }
      mat = mat + q.scaled(qc);
    }
    out.push_back(mat);
  }
  return out;
}

std::vector<TensorOp<Rat>> shift_pole_matrices(const std::vector<TensorOp<Rat>>& m,
                                               const Rat& delta) {
  std::vector<TensorOp<Rat>> out;
  for (size_t qq = 0; qq < m.size(); ++qq) {
    auto acc = m[0].skeleton();
    for (size_t p = 0; p <= qq; ++p) {
      Rat dpow(1);
      for (size_t t = 0; t < qq - p; ++t) dpow *= delta;
      acc = acc + m[p].scaled(binomial(Rat(-static_cast<long>(p)), static_cast<long>(qq - p)) * dpow);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace bcdy

