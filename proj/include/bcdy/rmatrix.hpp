// The two-leg operators P and Q, the rational R-matrix, the normalization
// series f, the normalized R-matrix, and ordered multi-leg R-products.
#pragma once

#include "bcdy/context.hpp"
#include "bcdy/ratfun.hpp"
#include "bcdy/tensorop.hpp"

namespace bcdy {

// P = sum e_ij (x) e_ji and Q = sum eps_i eps_j e_ij (x) e_i'j' on two legs.
std::pair<TensorOp<Rat>, TensorOp<Rat>> build_pq(const AlgebraContext& ctx, int leg1, int leg2);

TensorOp<RatFun> to_ratfun_op(const TensorOp<Rat>& op, const VarCtxPtr& vctx);

// R(a) = 1 - h P / a + h Q / (a - h kappa) with an arbitrary argument
// expression; the variable context must contain "h".
TensorOp<RatFun> build_R(const AlgebraContext& ctx, const VarCtxPtr& vctx, int leg1, int leg2,
                         const RatFun& arg);

// Coefficients f_0..f_M of the normalization series, f_0 = 1. The defining
// relation forces f_1 = 0, f_2 = 1/2, f_3 = kappa/2, f_4 = 3/8, ...
struct FSeries {
  Rat kappa;
  std::vector<Rat> f;
  int order() const { return static_cast<int>(f.size()) - 1; }
};
FSeries f_series(const AlgebraContext& ctx, int M);

// f evaluated at arg/h: 1 + sum_r f_r h^r arg^{-r}, truncated at the series
// order (exact as a rational function).
RatFun f_at(const FSeries& fs, const VarCtxPtr& vctx, const RatFun& arg);

// Normalized R-matrix f(arg/h) R(arg). Requires the f-series order to be at
// least the h-truncation order of the context.
TensorOp<RatFun> build_Rbar(const AlgebraContext& ctx, const FSeries& fs, const VarCtxPtr& vctx,
                            int leg1, int leg2, const RatFun& arg);

// Checks that a rational function vanishes modulo h^K (h-adic valuation of
// the exact difference at least K).
bool vanishes_mod_h(const RatFun& f, int K);
bool op_vanishes_mod_h(const TensorOp<RatFun>& op, int K);

// Ordered two-group product of R-matrices: factors R_{a_i b_j}(z + argA_i -
// argB_j). Forward order runs the first group ascending and the second group
// descending; backward is the reverse.
TensorOp<RatFun> build_R_product(const AlgebraContext& ctx, const FSeries& fs,
                                 const VarCtxPtr& vctx, const std::vector<int>& legsA,
                                 const std::vector<int>& legsB, const std::vector<RatFun>& argsA,
                                 const std::vector<RatFun>& argsB, const RatFun& z, bool forward,
                                 bool normalized);

// Evaluation points for the fusion family: descending spacing ending at u in
// the orthogonal case, starting at u in the symplectic case.
std::vector<RatFun> u_points(const AlgebraContext& ctx, int m, const RatFun& u, const RatFun& h);

// Pole-form coefficients of the normalized R-matrix on two legs (1,2): with
// the normalization series truncated, Rbar(x) = sum_q h^q M_q x^{-q} with one
// pole order per h order. Entry q of the result is M_q, up to q = qmax.
// `trivial_r` zeroes every M_q with q >= 1 (the degenerate control).
std::vector<TensorOp<Rat>> rbar_pole_matrices(const AlgebraContext& ctx, int qmax,
                                              bool trivial_r = false);

// Argument shift x -> x + delta h preserves the pole form:
// N_q = sum_{p<=q} binom(-p, q-p) delta^{q-p} M_p.
std::vector<TensorOp<Rat>> shift_pole_matrices(const std::vector<TensorOp<Rat>>& m,
                                               const Rat& delta);

}  // namespace bcdy
