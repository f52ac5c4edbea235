#include "bcdy/brauer.hpp"

namespace bcdy {

namespace {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

// Basis of the null space of m (with n columns), as vectors of length n.
std::vector<Vec> nullspace(Mat m, size_t n) {
  auto pivots = rref(m);
  std::vector<char> is_pivot(n, 0);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = 1;
  std::vector<Vec> basis;
  for (size_t freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    Vec v(n, Rat(0));
    v[freec] = Rat(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr) {
      size_t pc = static_cast<size_t>(pivots[pr]);
      v[pc] = -m[pr][freec];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the span of the given vectors (the nonzero rows of the rref).
std::vector<Vec> span_basis(std::vector<Vec> vs) {
  if (vs.empty()) return vs;
  auto pivots = rref(vs);
  vs.resize(pivots.size());
  return vs;
}

Mat invert(Mat b) {
  size_t n = b.size();
  for (size_t i = 0; i < n; ++i) {
    b[i].resize(2 * n, Rat(0));
    b[i][n + i] = Rat(1);
  }
  auto pivots = rref(b);
  if (pivots.size() != n || static_cast<size_t>(pivots.back()) != n - 1)
    throw RangeError("singular basis matrix in projector solve");
  Mat inv(n, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = b[i][n + j];
  return inv;
}

void check_range(const AlgebraContext& ctx, int m) {
  int top = ctx.max_fusion_m();
  if (m < 1 || m > top)
    throw RangeError("symmetrizer index " + std::to_string(m) + " out of range 1.." +
                     std::to_string(top) + " for " + ctx.name());
}

std::string points_desc(const AlgebraContext& ctx, int m) {
  std::string s = "(";
  for (int i = 1; i <= m; ++i) {
    int shift = ctx.orthogonal() ? (m - i) : (i - 1);
    s += shift == 0 ? std::string("u") : "u-" + std::to_string(shift) + "h";
    if (i < m) s += ", ";
  }
  return s + ")";
}

}  // namespace

SymmetrizerBundle symmetrizer(const AlgebraContext& ctx, int m) {
  check_range(ctx, m);
  SymmetrizerBundle out;
  out.m = m;
  out.points_desc = points_desc(ctx, m);

  std::vector<int> legs;
  for (int i = 1; i <= m; ++i) legs.push_back(i);
  if (m == 1) {
    out.S = TensorOp<Rat>::identity(ctx.N, legs, Rat(0), Rat(1));
    out.dim_image = ctx.N;
    out.dim_kernel = 0;
    return out;
  }

  size_t n = 1;
  for (int i = 0; i < m; ++i) n *= static_cast<size_t>(ctx.N);
  Rat rep_sign = ctx.orthogonal() ? Rat(1) : Rat(-1);

  Mat constraints;
  std::vector<Vec> kernel_cols;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      auto [p, q] = build_pq(ctx, i, j);
      auto pe = p.embed(legs);
      auto qe = q.embed(legs);
      Mat sm(n, Vec(n, Rat(0))), em(n, Vec(n, Rat(0)));
      for (auto& [k, v] : pe.entries()) sm[k.first][k.second] = rep_sign * v;
      for (size_t d = 0; d < n; ++d) sm[d][d] -= 1;
      for (auto& [k, v] : qe.entries()) em[k.first][k.second] = rep_sign * v;
      for (size_t r = 0; r < n; ++r) {
        constraints.push_back(sm[r]);
        constraints.push_back(em[r]);
      }
      for (size_t c = 0; c < n; ++c) {
        Vec col1(n), col2(n);
        for (size_t r = 0; r < n; ++r) {
          col1[r] = sm[r][c];
          col2[r] = em[r][c];
        }
        kernel_cols.push_back(std::move(col1));
        kernel_cols.push_back(std::move(col2));
      }
    }

  auto wbasis = nullspace(std::move(constraints), n);
  auto kbasis = span_basis(std::move(kernel_cols));
  out.dim_image = static_cast<int>(wbasis.size());
  out.dim_kernel = static_cast<int>(kbasis.size());
  if (wbasis.size() + kbasis.size() != n)
    throw RangeError("image and kernel do not decompose the tensor space");

  Mat b(n, Vec(n, Rat(0)));
  for (size_t c = 0; c < wbasis.size(); ++c)
    for (size_t r = 0; r < n; ++r) b[r][c] = wbasis[c][r];
  for (size_t c = 0; c < kbasis.size(); ++c)
    for (size_t r = 0; r < n; ++r) b[r][wbasis.size() + c] = kbasis[c][r];
  Mat binv = invert(std::move(b));

  // S = [W | 0] B^{-1}
  out.S = TensorOp<Rat>(ctx.N, legs, Rat(0), Rat(1));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      Rat acc(0);
      for (size_t k = 0; k < wbasis.size(); ++k) acc += wbasis[k][r] * binv[k][c];
      out.S.add(r, c, acc);
    }
  return out;
}

TensorOp<Rat> fusion_eval(const AlgebraContext& ctx, int m) {
  check_range(ctx, m);
  std::vector<int> legs;
  for (int i = 1; i <= m; ++i) legs.push_back(i);
  auto vctx = make_ctx({"h", "u"});
  auto pts = u_points(ctx, m, RatFun::variable(vctx, "u"), RatFun::variable(vctx, "h"));
  auto acc = TensorOp<RatFun>::identity(ctx.N, legs, rf_zero(vctx), rf_one(vctx));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      RatFun arg = pts[static_cast<size_t>(i - 1)] - pts[static_cast<size_t>(j - 1)];
      if (arg.is_zero()) throw RangeError("fusion evaluation hits a pole");
      acc = acc * build_R(ctx, vctx, i, j, arg).embed(legs);
    }
  Rat fact(1);
  for (int i = 2; i <= m; ++i) fact *= i;
  acc = acc.scaled(RatFun::constant(vctx, 1 / fact));
  for (auto& [k, v] : acc.entries())
    if (!v.is_constant()) throw RangeError("fusion evaluation left symbolic dependence");
  return acc.map_entries([](const RatFun& v) { return v.constant_value(); }, Rat(0), Rat(1));
}

Rat trace_reduce_coeff(AlgebraKind kind, int N, int m) {
  if (m < 1) throw RangeError("trace reduction needs m >= 1");
  if (m == 1) return Rat(N);
  long s = kind == AlgebraKind::orthogonal ? 1 : -1;
  Rat den = Rat(m) * Rat(s * N + 2 * m - 4);
  if (den == 0) throw RangeError("degenerate trace-reduction parameter");
  return Rat(s) * Rat(s * N + m - 3) * Rat(s * N + 2 * m - 2) / den;
}

TraceReduceResult trace_reduce(const AlgebraContext& ctx, int m) {
  check_range(ctx, m);
  TraceReduceResult r;
  r.a_m = trace_reduce_coeff(ctx.kind, ctx.N, m);
  if (m == 1) {
    r.matches = symmetrizer(ctx, 1).S.trace() == Rat(ctx.N);
    return r;
  }
  auto sm = symmetrizer(ctx, m).S;
  auto sm1 = symmetrizer(ctx, m - 1).S;
  r.matches = sm.partial_trace({m}) == sm1.scaled(r.a_m);
  return r;
}

bool verify_conjugation(const AlgebraContext& ctx, int m, const Rat& alpha, bool wrong_spacing) {
  check_range(ctx, m);
  auto vctx = make_ctx({"h", "v", "u"});
  RatFun h = RatFun::variable(vctx, "h");
  RatFun u = RatFun::variable(vctx, "u");
  RatFun v = RatFun::variable(vctx, "v");
  auto fs = f_series(ctx, std::max(ctx.trunc.forder, ctx.trunc.hord));
  auto pts = u_points(ctx, m, u, wrong_spacing ? -h : h);
  std::vector<int> mod_legs;
  for (int i = 1; i <= m; ++i) mod_legs.push_back(i);
  std::vector<int> all = mod_legs;
  all.push_back(0);
  auto s = to_ratfun_op(symmetrizer(ctx, m).S, vctx).embed(all);
  RatFun arg0 = v + h * alpha;
  auto fwd = build_R_product(ctx, fs, vctx, {0}, mod_legs, {arg0}, pts, rf_zero(vctx), true, true);
  auto bwd = build_R_product(ctx, fs, vctx, {0}, mod_legs, {arg0}, pts, rf_zero(vctx), false, true);
  return op_vanishes_mod_h(s * fwd - bwd * s, ctx.trunc.hord);
}

}  // namespace bcdy
