#pragma once

#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "ghz/rational.hpp"

namespace ghz {

enum class Party : int { A = 0, B = 1, C = 2 };
enum class Axis { x, p };

inline const char* party_name(Party j) {
  switch (j) {
    case Party::A: return "A";
    case Party::B: return "B";
    default: return "C";
  }
}

// A word in the translation operators exp(i*pi*alpha*x_j), exp(i*pi*beta*p_j)
// over parties A,B,C, kept in canonical form: per party the x-factor precedes
// the p-factor, parties ordered A,B,C, and the scalar collected into `phase`
// (units of pi, reduced to [0,2)).  Reordering uses the exact identity
//   exp(i*pi*b*p) exp(i*pi*a*x) = exp(+i*pi*a*b) exp(i*pi*a*x) exp(i*pi*b*p),
// so every operation below is pure rational arithmetic.
struct WeylWord {
  struct Exponents {
    Rational alpha;  // x exponent
    Rational beta;   // p exponent
  };
  std::array<Exponents, 3> exps;
  Rational phase;

  const Exponents& operator[](Party j) const {
    return exps[static_cast<int>(j)];
  }
  Exponents& operator[](Party j) { return exps[static_cast<int>(j)]; }

  bool is_identity() const {
    for (const auto& e : exps)
      if (!e.alpha.is_zero() || !e.beta.is_zero()) return false;
    return phase.is_zero();
  }

  bool operator==(const WeylWord& o) const {
    if (!(phase == o.phase)) return false;
    for (int j = 0; j < 3; ++j)
      if (!(exps[j].alpha == o.exps[j].alpha && exps[j].beta == o.exps[j].beta))
        return false;
    return true;
  }
};

inline WeylWord identity_word() { return {}; }

inline WeylWord mul(const WeylWord& w1, const WeylWord& w2) {
  WeylWord r;
  Rational phase = w1.phase + w2.phase;
  for (int j = 0; j < 3; ++j) {
    // X^a1 P^b1 X^a2 P^b2 = e^{+i pi a2 b1} X^{a1+a2} P^{b1+b2}
    phase += w2.exps[j].alpha * w1.exps[j].beta;
    r.exps[j].alpha = w1.exps[j].alpha + w2.exps[j].alpha;
    r.exps[j].beta = w1.exps[j].beta + w2.exps[j].beta;
  }
  r.phase = phase.mod2();
  return r;
}

inline WeylWord generator(Party j, Axis axis, const Rational& exponent) {
  WeylWord w;
  if (axis == Axis::x)
    w[j].alpha = exponent;
  else
    w[j].beta = exponent;
  return w;
}

inline WeylWord make_word(
    const std::vector<std::tuple<Party, Axis, Rational>>& factors) {
  WeylWord w;
  for (const auto& [j, axis, e] : factors) w = mul(w, generator(j, axis, e));
  return w;
}

inline WeylWord dagger(const WeylWord& w) {
  WeylWord r;
  Rational phase = -w.phase;
  for (int j = 0; j < 3; ++j) {
    // (X^a P^b)^dag = P^{-b} X^{-a} = e^{+i pi a b} X^{-a} P^{-b}
    phase += w.exps[j].alpha * w.exps[j].beta;
    r.exps[j].alpha = -w.exps[j].alpha;
    r.exps[j].beta = -w.exps[j].beta;
  }
  r.phase = phase.mod2();
  return r;
}

enum class CommuteKind { commute, anticommute, non_scalar };

// Symplectic form sum_j (a1 b2 - b1 a2): even integer => commute, odd =>
// anticommute, non-integer => the commutator is not a scalar multiple.
inline CommuteKind commute_relation(const WeylWord& w1, const WeylWord& w2) {
  Rational s;
  for (int j = 0; j < 3; ++j)
    s += w1.exps[j].alpha * w2.exps[j].beta -
         w1.exps[j].beta * w2.exps[j].alpha;
  if (!s.is_integer()) return CommuteKind::non_scalar;
  return (s.num % 2 == 0) ? CommuteKind::commute : CommuteKind::anticommute;
}

inline bool commutes(const WeylWord& w1, const WeylWord& w2) {
  return commute_relation(w1, w2) == CommuteKind::commute;
}

struct GhzFamily {
  WeylWord v1, v2, v3, v4;

  const WeylWord& operator[](int i) const {
    switch (i) {
      case 0: return v1;
      case 1: return v2;
      case 2: return v3;
      default: return v4;
    }
  }
};

// V1 = X_A X_B X_C, V2 = X_A^dag Y_B Y_C^dag,
// V3 = Y_A^dag X_B^dag Y_C, V4 = Y_A Y_B^dag X_C^dag.
inline GhzFamily ghz_family() {
  const auto X = [](Party j) { return generator(j, Axis::x, Rational(1)); };
  const auto Y = [](Party j) { return generator(j, Axis::p, Rational(1)); };
  const auto Xd = [&](Party j) { return dagger(X(j)); };
  const auto Yd = [&](Party j) { return dagger(Y(j)); };
  using P = Party;
  GhzFamily f;
  f.v1 = mul(mul(X(P::A), X(P::B)), X(P::C));
  f.v2 = mul(mul(Xd(P::A), Y(P::B)), Yd(P::C));
  f.v3 = mul(mul(Yd(P::A), Xd(P::B)), Y(P::C));
  f.v4 = mul(mul(Y(P::A), Yd(P::B)), Xd(P::C));
  return f;
}

// Canonical text form: `phase*pi | A:(alpha,beta) B:(...) C:(...)`.
inline std::string to_string(const WeylWord& w) {
  std::string s = w.phase.str() + "*pi |";
  for (int j = 0; j < 3; ++j) {
    s += " ";
    s += party_name(static_cast<Party>(j));
    s += ":(" + w.exps[j].alpha.str() + "," + w.exps[j].beta.str() + ")";
  }
  return s;
}

}  // namespace ghz
