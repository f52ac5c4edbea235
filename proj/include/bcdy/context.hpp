// Fixed parameters of a run: the algebra family and size, the derived sign
// data, the level, and all truncation caps.
#pragma once

#include "bcdy/rat.hpp"

#include <string>
#include <vector>

namespace bcdy {

enum class AlgebraKind { orthogonal, symplectic };

inline std::string kind_str(AlgebraKind k) {
  return k == AlgebraKind::orthogonal ? "o" : "sp";
}

struct Truncations {
  int hord = 2;    // exclusive h-order K
  int deg = 3;     // module degree bound D
  int udeg = 2;    // power bound U for series outputs
  int forder = 8;  // normalization series order M
};

struct AlgebraContext {
  AlgebraKind kind = AlgebraKind::orthogonal;
  int N = 3;
  std::vector<int> eps;  // eps[i-1] for i = 1..N
  Rat kappa;
  int sigma = 1;
  Rat level;             // the value of the central element
  bool level_is_critical = true;
  Truncations trunc;

  int prime(int i) const { return N - i + 1; }
  int eps_i(int i) const { return eps[static_cast<size_t>(i - 1)]; }

  Rat c_crit() const { return Rat(-2) * kappa / Rat(sigma); }

  bool orthogonal() const { return kind == AlgebraKind::orthogonal; }

  // Largest m admitted by the symmetrizer family.
  int max_fusion_m() const { return orthogonal() ? N : N / 2; }

  std::string name() const { return kind_str(kind) + std::to_string(N); }
};

// Validates and derives all dependent fields. Throws ConfigError on invalid
// combinations (symplectic with odd N, N < 2, nonpositive truncations).
AlgebraContext make_context(AlgebraKind kind, int N, bool critical_level, const Rat& level,
                            const Truncations& trunc);

}  // namespace bcdy
