// Symmetrizers on m tensor legs built two independent ways: as the projector
// onto the joint invariant subspace of the transposition images with the
// contraction images annihilated, and by evaluating the ordered R-matrix
// product at the staggered points. The two constructions are compared exactly
// by the fusion checks.
#pragma once

#include "bcdy/rmatrix.hpp"

#include <string>

namespace bcdy {

struct SymmetrizerBundle {
  int m = 0;
  TensorOp<Rat> S;          // on legs 1..m, constant rational entries
  std::string points_desc;  // evaluation point pattern used by the fusion route
  int dim_image = 0;
  int dim_kernel = 0;
};

// Projector route. Image: vectors fixed by every transposition image and
// annihilated by every contraction image; kernel: the span of the
// complementary images. Throws RangeError when m is out of the admissible
// range (m <= N orthogonal, m <= N/2 symplectic).
SymmetrizerBundle symmetrizer(const AlgebraContext& ctx, int m);

// Fusion route: (1/m!) prod_{i<j} R_ij(u_i - u_j) evaluated at the staggered
// points, computed with symbolic u and h. Asserts that all u and h dependence
// cancels and returns the constant matrix.
TensorOp<Rat> fusion_eval(const AlgebraContext& ctx, int m);

// Trace-reduction coefficient: tr_m S_[m] = a_m S_[m-1]. The formula path is
// m >= 2; m = 1 returns N (full trace of the identity). Throws RangeError on
// a degenerate denominator.
Rat trace_reduce_coeff(AlgebraKind kind, int N, int m);

struct TraceReduceResult {
  Rat a_m;
  bool matches = false;  // entrywise identity tr_m S_[m] == a_m S_[m-1]
};
TraceReduceResult trace_reduce(const AlgebraContext& ctx, int m);

// Conjugation identity: S^1 times the forward one-to-many product of
// normalized R-matrices at arguments v + alpha h - u_j equals the backward
// product times S^1, modulo h^K. `wrong_spacing` flips the staggering sign
// and serves as a negative control.
bool verify_conjugation(const AlgebraContext& ctx, int m, const Rat& alpha,
                        bool wrong_spacing = false);

}  // namespace bcdy
