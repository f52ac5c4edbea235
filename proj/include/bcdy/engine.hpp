// The rewriting engine for the vacuum module of the double Yangian under
// truncation in the deformation order (K, exclusive), the module degree (D)
// and, for series outputs, the power bound (U).
//
// Mode-level rules are compiled from the defining matrix relations by
// clearing denominators and matching coefficients. The creation-creation
// system is overdetermined; its boundary chain determines the commutators
// degree by degree, and the leftover equations hold only after the symmetry
// identification of the generators, which is therefore compiled in as an
// elimination pass (the quotient by the transposition relation). The engine
// consequently works on the identified generator set: pairs (i,j) with
// (i,j) <= (j',i') lexicographically, minus the vanishing orthogonal
// diagonal, matching the classical basis. Leftover coefficient equations and
// the leading-layer match with the classical oracle are verified at compile
// time.
#pragma once

#include "bcdy/classical.hpp"
#include "bcdy/context.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace bcdy {

// Generator mode t^{(r)}_{ij}: r <= -1 creation, r >= 1 annihilation.
// Packed with a bias so that unsigned comparison is (r, i, j) ascending, the
// canonical word order.
using QMode = uint32_t;
constexpr int kModeBias = 1 << 14;
inline QMode qmode(int r, int i, int j) {
  if (r == 0) throw RangeError("mode exponent must be nonzero");
  return static_cast<QMode>(((r + kModeBias) << 16) | (i << 8) | j);
}
inline int qmode_r(QMode m) { return static_cast<int>(m >> 16) - kModeBias; }
inline int qmode_i(QMode m) { return static_cast<int>((m >> 8) & 0xff); }
inline int qmode_j(QMode m) { return static_cast<int>(m & 0xff); }

using QWord = std::vector<QMode>;

struct QWordLess {
  bool operator()(const QWord& a, const QWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Truncated polynomial in the deformation parameter (exclusive order K).
using HPoly = std::vector<Rat>;

class ModuleElement {
 public:
  ModuleElement() = default;
  explicit ModuleElement(int hord) : hord_(hord) {}

  int hord() const { return hord_; }
  const std::map<QWord, HPoly, QWordLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const QWord& w, int hpow, const Rat& c);
  void add_scaled(const ModuleElement& o, int hshift, const Rat& c);
  ModuleElement& operator+=(const ModuleElement& o) {
    add_scaled(o, 0, Rat(1));
    return *this;
  }
  ModuleElement& operator-=(const ModuleElement& o) {
    add_scaled(o, 0, Rat(-1));
    return *this;
  }
  bool operator==(const ModuleElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const ModuleElement& o) const { return !(*this == o); }

  // Coefficient layer at a fixed power of the deformation parameter.
  std::map<QWord, Rat, QWordLess> layer(int hpow) const;
  int degree() const;  // max word degree present, -1 when zero

  static ModuleElement vacuum(int hord) {
    ModuleElement e(hord);
    e.add({}, 0, Rat(1));
    return e;
  }

 private:
  int hord_ = 0;
  std::map<QWord, HPoly, QWordLess> terms_;
};

int word_degree(const QWord& w);

// One correction term of a compiled rule: h^hpow * c * (word as written).
struct RuleTerm {
  int hpow = 0;
  Rat c;
  QWord w;
};

struct RelationTable {
  // creation-creation commutators [t^{(-a)}_{ij}, t^{(-b)}_{kl}]
  std::map<std::pair<QMode, QMode>, std::vector<RuleTerm>> creation;
  // mixed commutators [t^{(r)}_{ij}, t^{(-s)}_{kl}]
  std::map<std::pair<QMode, QMode>, std::vector<RuleTerm>> mixed;
  // elimination of non-kept creation generators
  std::map<QMode, std::vector<RuleTerm>> eliminate;
};

class YangianEngine {
 public:
  // Compiles the relation tables. `trivial_r` replaces the R-matrix content
  // by the identity (a degenerate control: the module becomes a commutative
  // polynomial algebra on all generators, with no elimination).
  explicit YangianEngine(const AlgebraContext& ctx, bool trivial_r = false);

  const AlgebraContext& ctx() const { return ctx_; }
  const RelationTable& table() const { return table_; }
  bool kept(int i, int j) const;

  // Canonical form of a product of creation modes applied to the vacuum.
  ModuleElement normal_form(const QWord& word);
  ModuleElement normalize(const ModuleElement& e);

  // Same reduction with a randomized choice of reduction site at every step;
  // agreement with normal_form is the empirical confluence check.
  ModuleElement normal_form_randomized(const QWord& word, unsigned seed);

  // Left multiplication by a creation mode (or word prefix).
  ModuleElement left_mult(QMode creation, const ModuleElement& x);

  // Action of the annihilation mode t^{(r)}_{ij}, r >= 1.
  ModuleElement act(int r, int i, int j, const ModuleElement& x);

  // The h-divided annihilation tail of the current: coefficients of
  // sum_{r>=1} v^{-r} t^{(r)}_{ij} x, keyed by r. The full current action is
  // delta_ij x + h times this series.
  std::map<int, ModuleElement> act_t_series(int i, int j, const ModuleElement& x);

  // Translation operator: vacuum -> 0, modes bumped one step deeper.
  // Requires degree(x) < D.
  ModuleElement apply_translation(const ModuleElement& x);

  // All canonically ordered kept words of degree <= maxdeg (with at most
  // maxlen modes, 0 = no limit).
  std::vector<QWord> basis_words(int maxdeg, int maxlen = 0) const;

  std::string mode_name(QMode m) const;

 private:
  // Compiles the creation-creation rules and verifies, in the implemented
  // module, every coefficient equation of the cleared relation (including
  // the ones the triangular solve does not use) plus the match of the
  // leading layer with the classical oracle.
  void compile_creation_rules();
  void compile_elimination();
  void compile_mixed_rules();

  ModuleElement nf_impl(const QWord& word);
  ModuleElement apply_terms(const std::vector<RuleTerm>& terms, const QWord& pre,
                            const QWord& post, int hshift, const Rat& scale);

  AlgebraContext ctx_;
  bool trivial_r_;
  RelationTable table_;
  std::map<QWord, ModuleElement, QWordLess> nf_memo_;
  std::map<std::pair<QMode, QWord>, ModuleElement> act_memo_;
};

// u-polynomial families of module elements (key: power of u, possibly
// negative for operator outputs).
using UFamily = std::map<int, ModuleElement>;

// Substitution u -> u + a h by binomial expansion; requires powers <= U.
UFamily substitute_shift(const UFamily& x, const Rat& a, int hord, int udeg);

// Generator-wise classical image of the leading layer: each word maps mode
// by mode into the classical enveloping algebra and is straightened there.
ClassicalElement classical_limit(Straightener& st, const ModuleElement& x);

}  // namespace bcdy
