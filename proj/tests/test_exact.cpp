#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcdy/hseries.hpp"
#include "bcdy/laurent.hpp"
#include "bcdy/mpoly.hpp"
#include "bcdy/ratfun.hpp"

#include <random>

using namespace bcdy;

namespace {

MPoly random_poly(const VarCtxPtr& ctx, std::mt19937& rng, int max_terms = 5, int max_deg = 6) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<int> coef(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  int terms = nt(rng);
  MPoly p(ctx);
  for (int t = 0; t < terms; ++t) {
    Expo e(ctx->size(), 0);
    int budget = max_deg;
    for (size_t k = 0; k < e.size(); ++k) {
      std::uniform_int_distribution<int> d(0, budget);
      e[k] = d(rng) % 3;
      budget -= e[k];
    }
    p.add_term(e, rat(coef(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("rational scalar basics") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat_str(rat(-6, 4)) == "-3/2");
  CHECK(rat_from_string("5/3") == rat(5, 3));
  CHECK(rat_from_string("-7") == rat(-7));
  CHECK_THROWS_AS(rat(1, 0), ZeroDenominatorError);
  CHECK(binomial(Rat(-2), 3) == rat(-4));  // C(-2,3) = -4
  CHECK(binomial(Rat(-1), 1) == rat(-1));
}

TEST_CASE("mpoly ring axioms on random instances") {
  auto ctx = make_ctx({"h", "u", "v", "z"});
  std::mt19937 rng(12345);
  for (int it = 0; it < 60; ++it) {
    MPoly a = random_poly(ctx, rng), b = random_poly(ctx, rng), c = random_poly(ctx, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == MPoly(ctx));
  }
}

TEST_CASE("mpoly exact division and content") {
  auto ctx = make_ctx({"u", "v"});
  MPoly u = MPoly::variable(ctx, "u"), v = MPoly::variable(ctx, "v");
  MPoly p = (u + v) * (u - v);
  auto q = p.divide_exact(u - v);
  REQUIRE(q.has_value());
  CHECK(*q == u + v);
  CHECK_FALSE((u * u + v).divide_exact(u - v).has_value());
  MPoly s = MPoly::constant(ctx, rat(4, 3)) * u + MPoly::constant(ctx, rat(2, 3)) * v;
  CHECK(s.content() == rat(2, 3));
}

TEST_CASE("ratfun normalization examples") {
  auto ctx = make_ctx({"h", "u", "v"});
  RatFun u = RatFun::variable(ctx, "u");
  RatFun v = RatFun::variable(ctx, "v");
  RatFun h = RatFun::variable(ctx, "h");

  // (2u)/(4v) -> u/(2v)
  RatFun a(MPoly::variable(ctx, "u") * Rat(2), MPoly::variable(ctx, "v") * Rat(4));
  CHECK(a.num() == MPoly::variable(ctx, "u"));
  CHECK(a.den() == MPoly::variable(ctx, "v") * Rat(2));

  // (u^2 - v^2)/(u - v) -> (u + v)/1, with cross-multiplication as the oracle
  RatFun b = (u * u - v * v) / (u - v);
  CHECK(b == u + v);
  CHECK(b.identical(u + v));

  // 0/(u - h k) -> 0/1
  RatFun c = rf_zero(ctx) / (u - h * rat(1, 2));
  CHECK(c.is_zero());
  CHECK(c.den() == MPoly::constant(ctx, Rat(1)));

  // p/q and (s p)/(s q) normalize identically for scalar s
  RatFun d1((u + v).num(), (u - v).num());
  RatFun d2((u + v).num() * rat(7, 3), (u - v).num() * rat(7, 3));
  CHECK(d1.identical(d2));

  CHECK_THROWS_AS(RatFun(MPoly::variable(ctx, "u"), MPoly(ctx)), ZeroDenominatorError);
}

TEST_CASE("ratfun field axioms on random instances") {
  auto ctx = make_ctx({"u", "v"});
  std::mt19937 rng(777);
  for (int it = 0; it < 25; ++it) {
    MPoly pa = random_poly(ctx, rng), pb = random_poly(ctx, rng);
    MPoly qa = random_poly(ctx, rng), qb = random_poly(ctx, rng);
    if (qa.is_zero() || qb.is_zero()) continue;
    RatFun a(pa, qa), b(pb, qb);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * a == a * a + b * a);
    CHECK(a - a == rf_zero(ctx));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("ratfun substitution and derivative") {
  auto ctx = make_ctx({"h", "u"});
  RatFun u = RatFun::variable(ctx, "u");
  RatFun h = RatFun::variable(ctx, "h");
  RatFun f = rf_one(ctx) / u;
  // u -> u + 2h
  RatFun g = f.subst_poly("u", (u + h * Rat(2)).num());
  CHECK(g == rf_one(ctx) / (u + h * Rat(2)));
  CHECK(f.derivative("u") == -(rf_one(ctx) / (u * u)));
}

TEST_CASE("expand_ratfun examples") {
  auto ctx = make_ctx({"h", "u", "v"});
  RatFun u = RatFun::variable(ctx, "u");
  RatFun v = RatFun::variable(ctx, "v");

  ExpandDirective dir{"u", {"v", "h"}};

  SUBCASE("1/(u-v) with v small") {
    auto s = expand_ratfun(rf_one(ctx) / (u - v), dir, -5, 0);
    for (int k = 0; k <= 4; ++k) {
      RatFun expect = RatFun(MPoly::variable(ctx, "v", k));
      CHECK(s.at(-1 - k) == expect);
    }
    CHECK(s.at(0).is_zero());
  }

  SUBCASE("1/(u-v)^2 with v small") {
    auto s = expand_ratfun(rf_one(ctx) / ((u - v) * (u - v)), dir, -6, 0);
    for (int k = 0; k <= 4; ++k) {
      RatFun expect = RatFun(MPoly::variable(ctx, "v", k)) * Rat(k + 1);
      CHECK(s.at(-2 - k) == expect);
    }
  }

  SUBCASE("polynomial expands to itself") {
    RatFun p = u * u + v;
    auto s = expand_ratfun(p, dir, 0, 3);
    CHECK(s.at(2) == rf_one(ctx));
    CHECK(s.at(0) == v);
    CHECK(s.at(1).is_zero());
    CHECK(s.at(3).is_zero());
  }

  SUBCASE("window and directive errors") {
    CHECK_THROWS_AS(expand_ratfun(u, dir, 2, 1), RangeError);
    CHECK_THROWS_AS(expand_ratfun(u, ExpandDirective{"u", {"u"}}, 0, 1), RangeError);
    CHECK_THROWS_AS(expand_ratfun(u, ExpandDirective{"w", {}}, 0, 1), RangeError);
  }
}

TEST_CASE("expand_ratfun is a ring homomorphism on the overlap window") {
  auto ctx = make_ctx({"u", "v"});
  RatFun u = RatFun::variable(ctx, "u");
  RatFun v = RatFun::variable(ctx, "v");
  ExpandDirective dir{"u", {"v"}};
  std::vector<RatFun> samples = {
      rf_one(ctx) / (u - v), (u + v) / (u - v), rf_one(ctx) / ((u - v) * u),
      (u * u + v) / (u * (u + v)),
  };
  for (auto& f : samples)
    for (auto& g : samples) {
      auto sf = expand_ratfun(f, dir, -8, 2);
      auto sg = expand_ratfun(g, dir, -8, 2);
      auto prod = laurent_mul(sf, sg);
      auto direct = expand_ratfun(f * g, dir, prod.lo, prod.hi);
      for (int e = prod.lo; e <= prod.hi; ++e) CHECK(prod.at(e) == direct.at(e));
      auto sum = laurent_add(sf, sg);
      auto dsum = expand_ratfun(f + g, dir, sum.lo, sum.hi);
      for (int e = sum.lo; e <= sum.hi; ++e) CHECK(sum.at(e) == dsum.at(e));
    }
}

TEST_CASE("re-expansion at a larger window agrees on overlap") {
  auto ctx = make_ctx({"u", "v"});
  RatFun u = RatFun::variable(ctx, "u");
  RatFun v = RatFun::variable(ctx, "v");
  RatFun f = (u + Rat(2) * v) / ((u - v) * (u - Rat(3) * v));
  ExpandDirective dir{"u", {"v"}};
  auto small = expand_ratfun(f, dir, -4, -2);
  auto big = expand_ratfun(f, dir, -9, 0);
  for (int e = -4; e <= -2; ++e) CHECK(small.at(e) == big.at(e));
}

TEST_CASE("evaluation agrees with the summed expansion plus a window-degree remainder") {
  auto ctx = make_ctx({"u", "v"});
  RatFun u = RatFun::variable(ctx, "u");
  RatFun v = RatFun::variable(ctx, "v");
  RatFun f = (u + RatFun::constant(ctx, Rat(2))) / ((u - v) * u);
  int lo = -6, hi = -1;
  ExpandDirective dir{"u", {"v"}};
  auto s = expand_ratfun(f, dir, lo, hi);

  // partial sum as an exact rational function
  RatFun partial = rf_zero(ctx);
  for (auto& [e, c] : s.coeff) {
    RatFun up = e >= 0 ? RatFun(MPoly::variable(ctx, "u", e))
                       : RatFun(MPoly::constant(ctx, Rat(1)), MPoly::variable(ctx, "u", -e));
    partial += c * up;
  }
  RatFun rem = f - partial;
  // the remainder has no support on the window
  auto rs = expand_ratfun(rem, dir, lo, hi);
  CHECK(rs.coeff.empty());

  // numeric: at u large, v = 1/100 the remainder is dominated by u^{lo-1}
  for (long uval : {100L, 1000L}) {
    std::vector<Rat> pt = {Rat(uval), rat(1, 100)};
    Rat fv = f.eval_all(pt);
    Rat pv = partial.eval_all(pt);
    Rat diff = fv - pv;
    if (diff < 0) diff = -diff;
    Rat bound = rat(1, 1);
    for (int t = 0; t < -(lo - 1); ++t) bound /= Rat(uval);
    CHECK(diff <= bound * Rat(2));
  }
}

TEST_CASE("hseries arithmetic and inverse") {
  const int K = 6;

  SUBCASE("geometric inverse of 1 - h x") {
    auto ctx = make_ctx({"x"});
    HSeries<RatFun> s(K, rf_zero(ctx));
    s[0] = rf_one(ctx);
    s[1] = -RatFun::variable(ctx, "x");
    auto inv = hseries_inverse(s);
    for (int k = 0; k < K; ++k) CHECK(inv[k] == RatFun(MPoly::variable(ctx, "x", k)));
    CHECK((s * inv) == HSeries<RatFun>::constant(K, rf_one(ctx), rf_zero(ctx)));
  }

  SUBCASE("inverse of 1 is 1") {
    HSeries<Rat> one = HSeries<Rat>::constant(K, Rat(1));
    CHECK(hseries_inverse(one) == one);
  }

  SUBCASE("inverse of 1 + h/(u-v), with the product check") {
    auto ctx = make_ctx({"u", "v"});
    RatFun g = rf_one(ctx) / (RatFun::variable(ctx, "u") - RatFun::variable(ctx, "v"));
    HSeries<RatFun> s(K, rf_zero(ctx));
    s[0] = rf_one(ctx);
    s[1] = g;
    auto inv = hseries_inverse(s);
    RatFun gp = rf_one(ctx);
    for (int k = 0; k < K; ++k) {
      Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
      CHECK(inv[k] == gp * sign);
      gp *= g;
    }
    auto idc = HSeries<RatFun>::constant(K, rf_one(ctx), rf_zero(ctx));
    CHECK(s * inv == idc);
    CHECK(inv * s == idc);
  }

  SUBCASE("non-unit rejected") {
    HSeries<Rat> s(K);
    s[1] = Rat(3);
    CHECK_THROWS_AS(hseries_inverse(s), NotAUnitError);
  }

  SUBCASE("randomized units: two-sided inverse") {
    auto ctx = make_ctx({"x"});
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int it = 0; it < 10; ++it) {
      HSeries<RatFun> s(K, rf_zero(ctx));
      s[0] = RatFun::constant(ctx, rat(coef(rng) * 2 + 1, 1 + (it % 3)));
      for (int k = 1; k < K; ++k)
        s[k] = RatFun::constant(ctx, rat(coef(rng), 1 + (it % 2))) *
               RatFun(MPoly::variable(ctx, "x", k % 3));
      auto inv = hseries_inverse(s);
      auto idc = HSeries<RatFun>::constant(K, rf_one(ctx), rf_zero(ctx));
      CHECK(s * inv == idc);
      CHECK(inv * s == idc);
    }
  }
}

TEST_CASE("hseries product truncation is associative") {
  auto mkrand = [](std::mt19937& rng, int K) {
    std::uniform_int_distribution<int> coef(-5, 5);
    HSeries<Rat> s(K);
    for (int k = 0; k < K; ++k) s[k] = rat(coef(rng), 1 + k % 3);
    return s;
  };
  std::mt19937 rng(4242);
  for (int it = 0; it < 30; ++it) {
    auto a = mkrand(rng, 5), b = mkrand(rng, 5), c = mkrand(rng, 5);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}
