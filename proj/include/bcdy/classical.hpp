// Classical side: the orthogonal/symplectic Lie algebra presented by its
// matrix generators, the enveloping algebra of the negative loop modes with
// PBW straightening, the affine vacuum module action at a fixed level, and
// the trace polynomials whose constant terms give the classical central
// vectors. Everything here is an independent oracle for the quantum engine:
// structure constants are derived from the defining matrix relation, never
// entered by hand.
#pragma once

#include "bcdy/brauer.hpp"
#include "bcdy/context.hpp"

#include <map>
#include <tuple>

namespace bcdy {

class LieBasis {
 public:
  explicit LieBasis(const AlgebraContext& ctx);

  const AlgebraContext& ctx() const { return ctx_; }
  int dim() const { return static_cast<int>(pairs_.size()); }
  std::pair<int, int> pair_of(int b) const { return pairs_[static_cast<size_t>(b)]; }
  std::string gen_name(int b) const;

  // Expresses the generator with row i, column j (1-based) in the independent
  // basis: returns (basis index, coefficient); coefficient 0 marks the
  // generators that vanish under the symmetry identification.
  std::pair<int, Rat> resolve(int i, int j) const;

  // Raw bracket [x_ij, x_kl] of the matrix generators as a combination of
  // matrix generators, extracted from the defining relation (second-leg
  // form). Agrees with the first-leg form only after the symmetry
  // identification.
  std::map<std::pair<int, int>, Rat> raw_bracket(int i, int j, int k, int l) const;

  // First-leg extraction of the same bracket, the shape that mode-by-mode
  // coefficient matching of the current relation produces; this is the
  // symbol-level oracle for the quantum engine's leading rules.
  std::map<std::pair<int, int>, Rat> raw_bracket_current(int i, int j, int k, int l) const;

  // Bracket of independent basis elements: list of (basis index, coefficient).
  const std::vector<std::pair<int, Rat>>& bracket(int a, int b) const {
    return table_[static_cast<size_t>(a) * static_cast<size_t>(dim()) + static_cast<size_t>(b)];
  }

  // Coefficient of the central element in [x_a(r), x_b(-r)] divided by
  // (sigma r): the pairing extracted from the affine relation.
  const Rat& central_pairing(int a, int b) const {
    return central_[static_cast<size_t>(a) * static_cast<size_t>(dim()) + static_cast<size_t>(b)];
  }

 private:
  AlgebraContext ctx_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> pair_index_;  // (i-1)*N + (j-1) -> basis index or -1
  std::vector<std::vector<std::pair<int, Rat>>> table_;
  std::vector<Rat> central_;
};

// A creation mode x_b(-d) packed as (d << 16) | b. Canonical word order: mode
// exponent ascending (deeper modes first), then basis index.
using CMode = uint32_t;
inline CMode cmode(int depth, int b) {
  return static_cast<CMode>((depth << 16) | b);
}
inline int cmode_depth(CMode m) { return static_cast<int>(m >> 16); }
inline int cmode_basis(CMode m) { return static_cast<int>(m & 0xffff); }
bool cmode_less(CMode a, CMode b);

using CWord = std::vector<CMode>;

struct CWordLess {
  bool operator()(const CWord& a, const CWord& b) const;
};

// Element of the enveloping algebra of the negative modes, in the PBW basis.
class ClassicalElement {
 public:
  std::map<CWord, Rat, CWordLess> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const CWord& w, const Rat& c);
  ClassicalElement& operator+=(const ClassicalElement& o);
  ClassicalElement& operator-=(const ClassicalElement& o);
  ClassicalElement operator*(const Rat& s) const;
  bool operator==(const ClassicalElement& o) const { return terms == o.terms; }
  int degree() const;  // max sum of mode exponents; 0 for scalars, -1 for zero
  std::string str(const LieBasis& basis) const;
};

// Straightens an arbitrary product of creation modes into the PBW basis.
// The straightener is shared and memoized; reduction order does not affect
// the result (checked by the randomized confluence tests).
class Straightener {
 public:
  explicit Straightener(const LieBasis& basis) : basis_(&basis) {}
  ClassicalElement normal_form(const CWord& word);
  // randomized-order variant for the confluence oracle
  ClassicalElement normal_form_randomized(const CWord& word, unsigned seed);

  const LieBasis& basis() const { return *basis_; }

 private:
  ClassicalElement reduce(const CWord& word, bool randomized, unsigned* state);
  const LieBasis* basis_;
  std::map<CWord, ClassicalElement, CWordLess> memo_;
};

// Bracket of two modes including the central term: [x_a(r), x_b(s)] =
// bracket(a,b)(r+s) + sigma r delta_{r+s,0} pairing(a,b) C.
struct ModeBracket {
  int mode = 0;                            // r + s
  std::vector<std::pair<int, Rat>> linear;  // basis combinations at that mode
  Rat central;                              // multiplies C
};
ModeBracket lie_bracket_parts(const LieBasis& basis, int a, int r, int b, int s);

// Same bracket as a module element at a fixed level; requires the output
// modes to be creation modes (both inputs negative).
ClassicalElement lie_bracket(const LieBasis& basis, int a, int r, int b, int s, const Rat& level);

// Action of the annihilation or zero mode x_b(r), r >= 0, on the vacuum
// module at the given level.
ClassicalElement classical_act(Straightener& st, int r, int b, const ClassicalElement& x,
                               const Rat& level);

// Translation derivation: 1 -> 0, x(-d) -> d x(-d-1) termwise.
ClassicalElement classical_translate(Straightener& st, const ClassicalElement& x);

// Coefficients phi_{m,0..m} of the trace polynomial in the grading operator:
// the last entry is the classical central vector of weight m.
std::vector<ClassicalElement> segal_sugawara(const AlgebraContext& ctx, Straightener& st, int m);

// Word of quantum-side generator modes (exponent r <= -1, row i, column j)
// mapped generator-wise into the classical PBW basis.
ClassicalElement classical_from_modes(Straightener& st,
                                      const std::vector<std::tuple<int, int, int>>& modes,
                                      const Rat& coeff);

}  // namespace bcdy
