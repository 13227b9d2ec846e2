#include <catch2/catch_amalgamated.hpp>

#include "ghz/modular.hpp"

using ghz::Axis;
using ghz::DigitOperator;
using ghz::LatticeParams;
using ghz::Matrix;
using ghz::ModularOperator;
using ghz::Party;
using ghz::Rational;

TEST_CASE("modular residues take the nonnegative branch") {
  // quarter-integer grid values need s=4 (spacing 1/s)
  const LatticeParams params = ghz::make_lattice(4);
  const ModularOperator m2 = ghz::mod_op(Axis::x, 1, params);
  CHECK(m2.diag[params.index_of(Rational(-7, 4))] == Rational(1, 4));
  CHECK(m2.diag[params.index_of(Rational(-1, 4))] == Rational(7, 4));
  CHECK(m2.diag[params.index_of(Rational(0))] == Rational(0));
  CHECK(m2.diag[params.index_of(Rational(3, 2))] == Rational(3, 2));

  const ModularOperator m1 = ghz::mod_op(Axis::x, 0, params);
  CHECK(m1.diag[params.index_of(Rational(-7, 4))] == Rational(1, 4));
  CHECK(m1.diag[params.index_of(Rational(3, 2))] == Rational(1, 2));
  CHECK(m1.diag[params.index_of(Rational(7, 4))] == Rational(3, 4));

  for (const Rational& r : m2.diag) {
    CHECK(Rational(0) <= r);
    CHECK(r < Rational(2));
  }

  const LatticeParams small = ghz::make_lattice(2);
  const ModularOperator s2 = ghz::mod_op(Axis::x, 1, small);
  CHECK(s2.diag[small.index_of(Rational(-3, 2))] == Rational(1, 2));
  CHECK(s2.diag[small.index_of(Rational(-1, 2))] == Rational(3, 2));
}

TEST_CASE("digit operators read the binary expansion of the residue") {
  const LatticeParams params = ghz::make_lattice(4);
  const DigitOperator d0 = ghz::digit_op(Axis::x, 0, params);
  const DigitOperator dm1 = ghz::digit_op(Axis::x, -1, params);
  // z = -1: residue 1
  CHECK(d0.diag[params.index_of(Rational(-1))] == 1);
  CHECK(dm1.diag[params.index_of(Rational(-1))] == 0);
  // z = 1/4: residue 1/4 = 0*2^0 + 0*2^-1 + 1*2^-2
  CHECK(d0.diag[params.index_of(Rational(1, 4))] == 0);
  CHECK(dm1.diag[params.index_of(Rational(1, 4))] == 0);
  // z = 5/4: residue 5/4 = 1*2^0 + 0*2^-1 + 1*2^-2
  CHECK(d0.diag[params.index_of(Rational(5, 4))] == 1);
  CHECK(dm1.diag[params.index_of(Rational(5, 4))] == 0);
  // z = 1/2: [z]_-1 = 1
  CHECK(dm1.diag[params.index_of(Rational(1, 2))] == 1);
  // z = 7/4: residue 7/4 = 1*2^0 + 1*2^-1 + 1*2^-2
  CHECK(d0.diag[params.index_of(Rational(7, 4))] == 1);
  CHECK(dm1.diag[params.index_of(Rational(7, 4))] == 1);
  // z = -7/4: residue 1/4
  CHECK(d0.diag[params.index_of(Rational(-7, 4))] == 0);
  CHECK(dm1.diag[params.index_of(Rational(-7, 4))] == 0);
}

TEST_CASE("index windows are enforced") {
  const LatticeParams params = ghz::make_lattice(2);  // m = 1
  CHECK_NOTHROW(ghz::mod_op(Axis::x, 2, params));
  CHECK_NOTHROW(ghz::mod_op(Axis::x, -1, params));
  CHECK_THROWS_AS(ghz::mod_op(Axis::x, 3, params), std::invalid_argument);
  CHECK_THROWS_AS(ghz::mod_op(Axis::x, -2, params), std::invalid_argument);
  CHECK_NOTHROW(ghz::digit_op(Axis::p, 0, params));
  CHECK_NOTHROW(ghz::digit_op(Axis::p, -1, params));
  CHECK_THROWS_AS(ghz::digit_op(Axis::p, 1, params), std::invalid_argument);
  CHECK_THROWS_AS(ghz::digit_op(Axis::p, -2, params), std::invalid_argument);
}

TEST_CASE("residue splitting and digit recomposition are exact") {
  for (int s : {1, 2, 4}) {
    const LatticeParams params = ghz::make_lattice(s);
    const int m = params.m;
    // (z) mod 2^{n+1} = (z) mod 2^n + 2^n [z]_n, grid point by grid point
    for (int n = -m; n <= 0; ++n) {
      const ModularOperator hi = ghz::mod_op(Axis::x, n + 1, params);
      const ModularOperator lo = ghz::mod_op(Axis::x, n, params);
      const DigitOperator bit = ghz::digit_op(Axis::x, n, params);
      for (int k = 0; k < params.d; ++k) {
        REQUIRE(hi.diag[k] ==
                lo.diag[k] + ghz::detail::pow2(n) * Rational(bit.diag[k]));
      }
    }
    // grid residues terminate at 2^-m, so the windowed digit sum recovers
    // the full residue mod 2
    const ModularOperator full = ghz::mod_op(Axis::x, 1, params);
    for (int k = 0; k < params.d; ++k) {
      Rational acc;
      for (int n = -m; n <= 0; ++n)
        acc += ghz::detail::pow2(n) *
               Rational(ghz::digit_op(Axis::x, n, params).diag[k]);
      REQUIRE(acc == full.diag[k]);
    }
  }
}

TEST_CASE("exponentiated residue reproduces the translation generators") {
  const LatticeParams params = ghz::make_lattice(2);
  const ghz::LocalOperator f = ghz::dft(params);
  // e^{i pi (z mod 2)} = e^{i pi z}: the modular phase equals the exact
  // translation operator in the same basis
  const Matrix ex =
      ghz::exp_i_pi_matrix(ghz::mod_op(Axis::x, 1, params), params, f).mat;
  const Matrix x = ghz::weyl_matrix(
      ghz::generator(Party::A, Axis::x, Rational(1)), Party::A, params, f).mat;
  CHECK(ghz::op_norm(ex - x) <= 1e-12);
  const Matrix ep =
      ghz::exp_i_pi_matrix(ghz::mod_op(Axis::p, 1, params), params, f).mat;
  const Matrix y = ghz::weyl_matrix(
      ghz::generator(Party::A, Axis::p, Rational(1)), Party::A, params, f).mat;
  CHECK(ghz::op_norm(ep - y) <= 1e-12);
}

TEST_CASE("unit digit splits off the residue multiplicatively") {
  // e^{i pi (z mod 2)} = e^{i pi (z mod 1)} e^{i pi [z]_0} on both axes
  for (int s : {1, 2, 4}) {
    const LatticeParams params = ghz::make_lattice(s);
    const ghz::LocalOperator f = ghz::dft(params);
    for (Axis axis : {Axis::x, Axis::p}) {
      const Matrix whole =
          ghz::exp_i_pi_matrix(ghz::mod_op(axis, 1, params), params, f).mat;
      const Matrix frac =
          ghz::exp_i_pi_matrix(ghz::mod_op(axis, 0, params), params, f).mat;
      const Matrix bit =
          ghz::exp_i_pi_matrix(ghz::digit_op(axis, 0, params), params, f).mat;
      CHECK(ghz::op_norm(whole - frac * bit) <= 1e-12);
    }
  }
}

TEST_CASE("residues stay inside their modulus window") {
  for (int s : {1, 2, 4}) {
    const LatticeParams params = ghz::make_lattice(s);
    for (int k = -params.m; k <= params.m + 1; ++k) {
      const Rational modulus = ghz::detail::pow2(k);
      for (Axis axis : {Axis::x, Axis::p}) {
        const ModularOperator op = ghz::mod_op(axis, k, params);
        for (const Rational& v : op.diag) {
          CHECK(Rational(0) <= v);
          CHECK(v < modulus);
        }
      }
    }
  }
}

TEST_CASE("commutation rules hold across the full index windows") {
  const LatticeParams params = ghz::make_lattice(2);
  const auto cells = ghz::commutation_table(params, -params.m, params.m + 1,
                                            -params.m, params.m + 1);
  REQUIRE(!cells.empty());
  int nonzero_cells = 0;
  for (const ghz::CommutationCell& cell : cells) {
    INFO(cell.kind << " i=" << cell.i << " j=" << cell.j
                   << " norm=" << cell.commutator_norm);
    CHECK(cell.pass);
    if (!cell.expected_zero) ++nonzero_cells;
  }
  CHECK(nonzero_cells > 0);
  for (const ghz::CommutationCell& cell : cells)
    if (cell.kind == "digit-digit" && cell.i == 0 && cell.j == 0)
      CHECK(cell.commutator_norm > 0.1);
}

TEST_CASE("binary spin triple closes") {
  for (int s : {1, 2, 4}) {
    const LatticeParams params = ghz::make_lattice(s);
    const ghz::Su2Triple t = ghz::su2_ops(params);  // throws on failure
    const Matrix anti = t.x0.mat * t.y0.mat + t.y0.mat * t.x0.mat;
    CHECK(ghz::op_norm(anti) <= 1e-12);
    CHECK(std::abs(t.x0.mat.trace()) <= 1e-12);
    CHECK(std::abs(t.y0.mat.trace()) <= 1e-12);
  }
}
