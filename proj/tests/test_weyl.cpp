#include <catch2/catch_amalgamated.hpp>

#include "ghz/weyl.hpp"

using ghz::Axis;
using ghz::CommuteKind;
using ghz::Party;
using ghz::Rational;
using ghz::WeylWord;

namespace {

WeylWord xa(const Rational& e) { return ghz::generator(Party::A, Axis::x, e); }
WeylWord pa(const Rational& e) { return ghz::generator(Party::A, Axis::p, e); }

}  // namespace

TEST_CASE("reordering phase matches the hand-derived canonical form") {
  // P X = e^{+i pi} X P, so the product P*X canonicalizes with phase pi
  const WeylWord px = ghz::mul(pa(Rational(1)), xa(Rational(1)));
  CHECK(px.phase == Rational(1));
  CHECK(px[Party::A].alpha == Rational(1));
  CHECK(px[Party::A].beta == Rational(1));

  const WeylWord xp = ghz::mul(xa(Rational(1)), pa(Rational(1)));
  CHECK(xp.phase == Rational(0));

  // P^b X^a = e^{+i pi a b} X^a P^b for fractional exponents too
  const WeylWord frac = ghz::mul(pa(Rational(1, 2)), xa(Rational(1, 3)));
  CHECK(frac.phase == Rational(1, 6));
}

TEST_CASE("inverse and adjoint close the group") {
  const WeylWord w = ghz::make_word({{Party::A, Axis::x, Rational(3, 2)},
                                     {Party::B, Axis::p, Rational(-1)},
                                     {Party::A, Axis::p, Rational(1, 2)}});
  const WeylWord wd = ghz::dagger(w);
  CHECK(ghz::mul(w, wd).is_identity());
  CHECK(ghz::mul(wd, w).is_identity());
  CHECK(ghz::dagger(wd) == w);

  // (X P)^dag = P^-1 X^-1 = e^{+i pi} X^-1 P^-1
  const WeylWord xp = ghz::mul(xa(Rational(1)), pa(Rational(1)));
  const WeylWord xpd = ghz::dagger(xp);
  CHECK(xpd.phase == Rational(1));
  CHECK(xpd[Party::A].alpha == Rational(-1));
  CHECK(xpd[Party::A].beta == Rational(-1));
}

TEST_CASE("scalar commutation classification") {
  CHECK(ghz::commute_relation(xa(Rational(1)), pa(Rational(1))) ==
        CommuteKind::anticommute);
  CHECK(ghz::commute_relation(xa(Rational(1)), pa(Rational(2))) ==
        CommuteKind::commute);
  CHECK(ghz::commute_relation(xa(Rational(1)), xa(Rational(5))) ==
        CommuteKind::commute);
  CHECK(ghz::commute_relation(xa(Rational(1)), pa(Rational(1, 2))) ==
        CommuteKind::non_scalar);
  // different parties always commute
  CHECK(ghz::commutes(xa(Rational(1)),
                      ghz::generator(Party::B, Axis::p, Rational(1))));
}

TEST_CASE("anticommutation is consistent with explicit word products") {
  // w1 w2 = e^{i pi (symplectic form)} w2 w1: compare canonical forms
  const std::array<WeylWord, 4> words = {
      xa(Rational(1)), pa(Rational(1)),
      ghz::make_word({{Party::A, Axis::x, Rational(2)},
                      {Party::B, Axis::p, Rational(1)}}),
      ghz::make_word({{Party::A, Axis::p, Rational(1)},
                      {Party::C, Axis::x, Rational(3)}})};
  for (const WeylWord& w1 : words) {
    for (const WeylWord& w2 : words) {
      const WeylWord lhs = ghz::mul(w1, w2);
      WeylWord rhs = ghz::mul(w2, w1);
      const auto kind = ghz::commute_relation(w1, w2);
      REQUIRE(kind != CommuteKind::non_scalar);
      if (kind == CommuteKind::anticommute)
        rhs.phase = (rhs.phase + Rational(1)).mod2();
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("the four three-party operators satisfy the paradox algebra") {
  const ghz::GhzFamily f = ghz::ghz_family();

  for (int i = 0; i < 4; ++i) {
    CHECK(ghz::mul(f[i], ghz::dagger(f[i])).is_identity());
    for (int j = i + 1; j < 4; ++j)
      CHECK(ghz::commutes(f[i], f[j]));
  }

  // hand-derived canonical forms of the partial products
  const WeylWord p12 = ghz::mul(f.v1, f.v2);
  CHECK(p12.phase == Rational(0));
  CHECK(p12[Party::A].alpha == Rational(0));
  CHECK(p12[Party::B].alpha == Rational(1));
  CHECK(p12[Party::B].beta == Rational(1));
  CHECK(p12[Party::C].beta == Rational(-1));

  const WeylWord p123 = ghz::mul(p12, f.v3);
  CHECK(p123.phase == Rational(1));

  const WeylWord product = ghz::mul(p123, f.v4);
  CHECK(product.phase == Rational(1));  // scalar -1
  for (int j = 0; j < 3; ++j) {
    CHECK(product.exps[j].alpha == Rational(0));
    CHECK(product.exps[j].beta == Rational(0));
  }

  // the product is invariant under cyclic reordering of the commuting family
  const WeylWord rotated =
      ghz::mul(ghz::mul(ghz::mul(f.v2, f.v3), f.v4), f.v1);
  CHECK(rotated == product);
}

TEST_CASE("canonical text form") {
  const WeylWord w = ghz::make_word({{Party::A, Axis::x, Rational(1)},
                                     {Party::B, Axis::p, Rational(-1, 2)}});
  CHECK(ghz::to_string(w) == "0*pi | A:(1,0) B:(0,-1/2) C:(0,0)");
  const WeylWord px = ghz::mul(pa(Rational(1)), xa(Rational(1)));
  CHECK(ghz::to_string(px) == "1*pi | A:(1,1) B:(0,0) C:(0,0)");
}
