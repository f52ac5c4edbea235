#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcdy/engine.hpp"

#include <random>

using namespace bcdy;

namespace {

AlgebraContext ctx_of(AlgebraKind k, int n, int K = 2, int D = 4, bool crit = true, Rat lvl = Rat(0)) {
  Truncations t;
  t.hord = K;
  t.deg = D;
  t.udeg = 2;
  t.forder = 8;
  return make_context(k, n, crit, lvl, t);
}

// classical image of the leading layer of a module element
ClassicalElement leading_image(Straightener& st, const ModuleElement& e) {
  ClassicalElement out;
  for (auto& [w, c] : e.layer(0)) {
    std::vector<std::tuple<int, int, int>> modes;
    for (QMode m : w) modes.push_back({qmode_r(m), qmode_i(m), qmode_j(m)});
    out += classical_from_modes(st, modes, c);
  }
  return out;
}

}  // namespace

TEST_CASE("engine compiles with internal consistency checks") {
  // construction runs the full coefficient-equation verification and the
  // classical-oracle comparison of the leading layer
  CHECK_NOTHROW(YangianEngine(ctx_of(AlgebraKind::orthogonal, 3)));
  CHECK_NOTHROW(YangianEngine(ctx_of(AlgebraKind::symplectic, 4, 2, 3)));
  CHECK_NOTHROW(YangianEngine(ctx_of(AlgebraKind::orthogonal, 3, 3, 3)));
  CHECK_NOTHROW(YangianEngine(ctx_of(AlgebraKind::orthogonal, 4, 2, 3)));
}

TEST_CASE("normal form: sorted words are fixed and reduction is idempotent") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3);
  YangianEngine eng(ctx);
  for (auto& w : eng.basis_words(3, 2)) {
    auto nf = eng.normal_form(w);
    auto l0 = nf.layer(0);
    REQUIRE(l0.size() == 1);
    CHECK(l0.begin()->first == w);
    CHECK(l0.begin()->second == Rat(1));
    CHECK(eng.normalize(nf) == nf);
  }
}

TEST_CASE("leading normal forms match the classical straightening oracle") {
  for (auto ctx : {ctx_of(AlgebraKind::orthogonal, 3), ctx_of(AlgebraKind::symplectic, 4)}) {
    CAPTURE(ctx.name());
    YangianEngine eng(ctx);
    LieBasis basis(ctx);
    Straightener st(basis);
    // all products of <= 3 kept modes of degree <= 4, in arbitrary order
    auto words = eng.basis_words(4, 3);
    std::mt19937 rng(7);
    int checked = 0;
    for (auto& w : words) {
      if (w.size() < 2) continue;
      QWord shuffled = w;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      auto quantum = leading_image(st, eng.normal_form(shuffled));
      std::vector<std::tuple<int, int, int>> modes;
      for (QMode m : shuffled) modes.push_back({qmode_r(m), qmode_i(m), qmode_j(m)});
      auto classical = classical_from_modes(st, modes, Rat(1));
      CHECK(quantum == classical);
      ++checked;
    }
    CHECK(checked > 50);
  }
}

TEST_CASE("randomized reduction orders agree") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3, 2, 4);
  YangianEngine eng(ctx);
  std::mt19937 rng(99);
  auto words = eng.basis_words(4, 3);
  std::shuffle(words.begin(), words.end(), rng);
  int done = 0;
  for (auto& w : words) {
    if (w.size() < 2) continue;
    QWord shuffled = w;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto ref = eng.normal_form(shuffled);
    for (unsigned seed = 1; seed <= 2; ++seed)
      CHECK(eng.normal_form_randomized(shuffled, seed) == ref);
    if (++done == 25) break;
  }
  CHECK(done == 25);
}

TEST_CASE("vacuum annihilation and the full current on the vacuum") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3);
  YangianEngine eng(ctx);
  auto vac = ModuleElement::vacuum(ctx.trunc.hord);
  for (int r = 1; r <= 3; ++r)
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) CHECK(eng.act(r, i, j, vac).is_zero());
  // t_ij(v) 1 = delta_ij 1: the annihilation tail is empty
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(eng.act_t_series(i, j, vac).empty());
}

TEST_CASE("leading annihilation action matches the classical affine action") {
  // The annihilation series pairs t^{(r)} with u^{-r} while the classical
  // current pairs the mode with u^{-r-1}, so t^{(r)} corresponds to the
  // classical mode r-1 (creation modes align without a shift).
  for (auto ctx : {ctx_of(AlgebraKind::orthogonal, 3, 2, 3), ctx_of(AlgebraKind::symplectic, 4, 2, 3)}) {
    CAPTURE(ctx.name());
    YangianEngine eng(ctx);
    LieBasis basis(ctx);
    Straightener st(basis);
    Rat c = ctx.level;
    for (auto& w : eng.basis_words(3, 2)) {
      if (w.empty()) continue;
      auto x = eng.normal_form(w);
      ClassicalElement cx = leading_image(st, x);
      for (int r = 1; r <= 3; ++r)
        for (int i = 1; i <= ctx.N; ++i)
          for (int j = 1; j <= ctx.N; ++j) {
            auto [bi, ci] = basis.resolve(i, j);
            auto quantum = leading_image(st, eng.act(r, i, j, x));
            ClassicalElement classical;
            if (ci != 0) classical = classical_act(st, r - 1, bi, cx, c) * ci;
            CHECK(quantum == classical);
          }
    }
  }
}

TEST_CASE("mixed rule central term shape") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3, 2, 3);
  YangianEngine eng(ctx);
  auto [p, q] = build_pq(ctx, 1, 2);
  auto pq = p - q;
  // [t^{(s+1)}_{ij}, t^{(-s)}_{kl}] has leading constant s sigma c (P-Q)_{(ik),(jl)}
  for (int s = 1; s <= 2; ++s)
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
          for (int l = 1; l <= 3; ++l) {
            if (!eng.kept(k, l)) continue;
            Rat expect = Rat(s) * Rat(ctx.sigma) * ctx.level *
                         pq.at(pq.index({i - 1, k - 1}), pq.index({j - 1, l - 1}));
            auto it = eng.table().mixed.find({qmode(s + 1, i, j), qmode(-s, k, l)});
            Rat got(0);
            if (it != eng.table().mixed.end())
              for (auto& t : it->second)
                if (t.hpow == 0 && t.w.empty()) got += t.c;
            CHECK(got == expect);
          }
}

TEST_CASE("annihilation finiteness sweep") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3, 2, 3);
  YangianEngine eng(ctx);
  const int K = ctx.trunc.hord;
  for (auto& w : eng.basis_words(2)) {
    auto x = eng.normal_form(w);
    int deg = word_degree(w);
    // beyond degree + K every annihilation mode acts as zero
    for (int r = deg + K + 1; r <= ctx.trunc.deg + K + 1; ++r)
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(eng.act(r, i, j, x).is_zero());
  }
  // and the bound is sharp: some mode beyond degree + 1 acts nonzero through
  // the deformation tail
  bool nonzero = false;
  for (auto& w : eng.basis_words(2)) {
    if (word_degree(w) == 0) continue;
    auto x = eng.normal_form(w);
    int r = word_degree(w) + 2;
    for (int i = 1; i <= 3 && !nonzero; ++i)
      for (int j = 1; j <= 3 && !nonzero; ++j)
        if (!eng.act(r, i, j, x).is_zero()) nonzero = true;
  }
  CHECK(nonzero);
}

TEST_CASE("degenerate control: trivialized R-matrix gives a commutative module") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3, 2, 3);
  YangianEngine eng(ctx, /*trivial_r=*/true);
  CHECK(eng.table().creation.empty());
  CHECK(eng.table().mixed.empty());
  CHECK(eng.table().eliminate.empty());
  // swapping any two modes changes nothing
  QWord w{qmode(-1, 2, 1), qmode(-1, 1, 2)};
  QWord v{qmode(-1, 1, 2), qmode(-1, 2, 1)};
  CHECK(eng.normal_form(w) == eng.normal_form(v));
  auto x = eng.normal_form(w);
  for (int r = 1; r <= 3; ++r) CHECK(eng.act(r, 1, 1, x).is_zero());
}

TEST_CASE("translation operator") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3, 2, 3);
  YangianEngine eng(ctx);
  auto vac = ModuleElement::vacuum(ctx.trunc.hord);
  CHECK(eng.apply_translation(vac).is_zero());

  auto x = eng.normal_form({qmode(-1, 1, 2)});
  auto dx = eng.apply_translation(x);
  CHECK(dx == eng.normal_form({qmode(-2, 1, 2)}));

  // compatibility with the classical translation on sampled words
  LieBasis basis(ctx);
  Straightener st(basis);
  for (auto& w : eng.basis_words(2, 2)) {
    if (w.empty()) continue;
    auto e = eng.normal_form(w);
    auto lhs = leading_image(st, eng.apply_translation(e));
    auto rhs = classical_translate(st, leading_image(st, e));
    CHECK(lhs == rhs);
  }

  // degree overflow is an error
  auto deep = eng.normal_form({qmode(-3, 1, 2)});
  CHECK_THROWS_AS(eng.apply_translation(deep), TruncationError);
}

TEST_CASE("shift substitution") {
  auto ctx = ctx_of(AlgebraKind::orthogonal, 3, 2, 3);
  YangianEngine eng(ctx);
  auto x = eng.normal_form({qmode(-1, 1, 2)});
  UFamily fam;
  fam[0] = x;
  fam[1] = x;
  // a = 0 is the identity
  CHECK(substitute_shift(fam, Rat(0), ctx.trunc.hord, ctx.trunc.udeg) == fam);
  // constants are unchanged
  UFamily c0;
  c0[0] = x;
  CHECK(substitute_shift(c0, Rat(-5), ctx.trunc.hord, ctx.trunc.udeg) == c0);
  // u x with a = -1 gives u x - h x
  UFamily ux;
  ux[1] = x;
  auto shifted = substitute_shift(ux, Rat(-1), ctx.trunc.hord, ctx.trunc.udeg);
  REQUIRE(shifted.count(1) == 1);
  REQUIRE(shifted.count(0) == 1);
  CHECK(shifted.at(1) == x);
  ModuleElement expect(ctx.trunc.hord);
  expect.add_scaled(x, 1, Rat(-1));
  CHECK(shifted.at(0) == expect);
}
