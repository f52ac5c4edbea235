#include "bcdy/context.hpp"

namespace bcdy {

AlgebraContext make_context(AlgebraKind kind, int N, bool critical_level, const Rat& level,
                            const Truncations& trunc) {
  if (N < 2) throw ConfigError("N must be at least 2");
  if (kind == AlgebraKind::symplectic && N % 2 != 0)
    throw ConfigError("symplectic algebra requires even N");
  if (trunc.hord < 1 || trunc.deg < 0 || trunc.udeg < 0 || trunc.forder < 0)
    throw ConfigError("truncation orders must be positive");

  AlgebraContext ctx;
  ctx.kind = kind;
  ctx.N = N;
  ctx.eps.assign(static_cast<size_t>(N), 1);
  if (kind == AlgebraKind::symplectic)
    for (int i = N / 2 + 1; i <= N; ++i) ctx.eps[static_cast<size_t>(i - 1)] = -1;
  ctx.kappa = rat(N, 2) + (kind == AlgebraKind::orthogonal ? Rat(-1) : Rat(1));
  ctx.sigma = kind == AlgebraKind::orthogonal ? 1 : 2;
  ctx.trunc = trunc;
  ctx.level_is_critical = critical_level;
  ctx.level = critical_level ? ctx.c_crit() : level;
  return ctx;
}

}  // namespace bcdy
