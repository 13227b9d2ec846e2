#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ghz/lattice.hpp"

namespace ghz {

namespace detail {
inline Rational pow2(int k) {
  return k >= 0 ? Rational(std::int64_t(1) << k)
                : Rational(1, std::int64_t(1) << (-k));
}
}  // namespace detail

// Diagonal operator (z)mod 2^k: each grid value replaced by its nonnegative
// residue in [0, 2^k).  Representable iff 2^k divides the torus period 2s
// (k <= m+1) and the residue is resolvable on the grid (k >= -m).
struct ModularOperator {
  Axis basis = Axis::x;
  int k = 0;
  std::vector<Rational> diag;
};

inline ModularOperator mod_op(Axis basis, int k, const LatticeParams& params) {
  if (k < -params.m || k > params.m + 1)
    throw std::invalid_argument("mod_op: exponent k=" + std::to_string(k) +
                                " outside [-log2 s, 1+log2 s]");
  ModularOperator op;
  op.basis = basis;
  op.k = k;
  const Rational modulus = detail::pow2(k);
  op.diag.reserve(params.d);
  for (const Rational& z : params.x_grid) op.diag.push_back(z.mod(modulus));
  return op;
}

// Diagonal digit operator [z]_n = floor((z mod 2^{n+1}) / 2^n) in {0,1}:
// the coefficient of 2^n in the terminating binary expansion of the
// nonnegative residue.  Resolvable and single-valued iff -log2 s <= n <= 0.
struct DigitOperator {
  Axis basis = Axis::x;
  int n = 0;
  std::vector<int> diag;
};

inline DigitOperator digit_op(Axis basis, int n, const LatticeParams& params) {
  if (n < -params.m || n > 0)
    throw std::invalid_argument("digit_op: index n=" + std::to_string(n) +
                                " outside [-log2 s, 0]");
  DigitOperator op;
  op.basis = basis;
  op.n = n;
  const Rational unit = detail::pow2(n);
  const Rational modulus = detail::pow2(n + 1);
  op.diag.reserve(params.d);
  for (const Rational& z : params.x_grid) {
    const Rational r = z.mod(modulus);
    op.diag.push_back(r >= unit ? 1 : 0);
  }
  return op;
}

// Realize a modular/digit operator as a position-basis matrix: diagonal for
// the x basis, F^dag diag F for the p basis.
inline LocalOperator as_matrix(const ModularOperator& op,
                               const LatticeParams& params,
                               const LocalOperator& f) {
  const int d = params.d;
  Matrix diag = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) diag(k, k) = op.diag[k].value();
  if (op.basis == Axis::x) return {std::move(diag), OpTag::diag_x};
  return {f.mat.adjoint() * diag * f.mat, OpTag::diag_p};
}

inline LocalOperator as_matrix(const DigitOperator& op,
                               const LatticeParams& params,
                               const LocalOperator& f) {
  const int d = params.d;
  Matrix diag = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) diag(k, k) = static_cast<double>(op.diag[k]);
  if (op.basis == Axis::x) return {std::move(diag), OpTag::diag_x};
  return {f.mat.adjoint() * diag * f.mat, OpTag::diag_p};
}

inline LocalOperator exp_i_pi_matrix(const ModularOperator& op,
                                     const LatticeParams& params,
                                     const LocalOperator& f) {
  const int d = params.d;
  Matrix diag = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) diag(k, k) = exp_i_pi(op.diag[k]);
  if (op.basis == Axis::x) return {std::move(diag), OpTag::diag_x};
  return {f.mat.adjoint() * diag * f.mat, OpTag::diag_p};
}

inline LocalOperator exp_i_pi_matrix(const DigitOperator& op,
                                     const LatticeParams& params,
                                     const LocalOperator& f) {
  const int d = params.d;
  Matrix diag = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    diag(k, k) = op.diag[k] ? Complex(-1.0) : Complex(1.0);
  if (op.basis == Axis::x) return {std::move(diag), OpTag::diag_x};
  return {f.mat.adjoint() * diag * f.mat, OpTag::diag_p};
}

// One cell of the commutation report: operator norm of the commutator of an
// x-basis operator with a p-basis operator, classified against the rule for
// its kind.  The four rules, in terms of indices (i, j):
//   mod-mod      [(x)mod2^i, (p)mod2^j]   zero iff i + j <= 1
//   modx-digitp  [(x)mod2^i, [p]_j]       zero iff i + j <= 0
//   modp-digitx  [(p)mod2^i, [x]_j]       zero iff i + j <= 0
//   digit-digit  [[x]_i, [p]_j]           zero iff i + j <= -1
struct CommutationCell {
  std::string kind;
  int i = 0;
  int j = 0;
  double commutator_norm = 0.0;
  bool expected_zero = false;
  bool pass = false;
};

inline std::vector<CommutationCell> commutation_table(
    const LatticeParams& params, int k_min, int k_max, int l_min, int l_max) {
  const LocalOperator f = dft(params);
  const double zero_tol = 1e-12;
  const double nonzero_floor = 1e-6;
  std::vector<CommutationCell> cells;
  const auto clamp = [&](int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
  };
  const int mk_lo = clamp(k_min, -params.m, params.m + 1);
  const int mk_hi = clamp(k_max, -params.m, params.m + 1);
  const int ml_lo = clamp(l_min, -params.m, params.m + 1);
  const int ml_hi = clamp(l_max, -params.m, params.m + 1);
  const int dk_lo = clamp(k_min, -params.m, 0);
  const int dk_hi = clamp(k_max, -params.m, 0);
  const int dl_lo = clamp(l_min, -params.m, 0);
  const int dl_hi = clamp(l_max, -params.m, 0);

  const auto emit = [&](const std::string& kind, int i, int j,
                        const Matrix& a, const Matrix& b, bool expect_zero) {
    CommutationCell cell;
    cell.kind = kind;
    cell.i = i;
    cell.j = j;
    cell.commutator_norm = op_norm(a * b - b * a);
    cell.expected_zero = expect_zero;
    cell.pass = expect_zero ? cell.commutator_norm <= zero_tol
                            : cell.commutator_norm > nonzero_floor;
    cells.push_back(cell);
  };

  for (int k = mk_lo; k <= mk_hi; ++k) {
    const Matrix a = as_matrix(mod_op(Axis::x, k, params), params, f).mat;
    for (int l = ml_lo; l <= ml_hi; ++l) {
      const Matrix b = as_matrix(mod_op(Axis::p, l, params), params, f).mat;
      emit("mod-mod", k, l, a, b, k + l <= 1);
    }
  }
  for (int k = mk_lo; k <= mk_hi; ++k) {
    const Matrix a = as_matrix(mod_op(Axis::x, k, params), params, f).mat;
    for (int n = dl_lo; n <= dl_hi; ++n) {
      const Matrix b = as_matrix(digit_op(Axis::p, n, params), params, f).mat;
      emit("modx-digitp", k, n, a, b, k + n <= 0);
    }
  }
  for (int l = ml_lo; l <= ml_hi; ++l) {
    const Matrix a = as_matrix(mod_op(Axis::p, l, params), params, f).mat;
    for (int n = dk_lo; n <= dk_hi; ++n) {
      const Matrix b = as_matrix(digit_op(Axis::x, n, params), params, f).mat;
      emit("modp-digitx", l, n, a, b, l + n <= 0);
    }
  }
  for (int n = dk_lo; n <= dk_hi; ++n) {
    const Matrix a = as_matrix(digit_op(Axis::x, n, params), params, f).mat;
    for (int m = dl_lo; m <= dl_hi; ++m) {
      const Matrix b = as_matrix(digit_op(Axis::p, m, params), params, f).mat;
      emit("digit-digit", n, m, a, b, n + m <= -1);
    }
  }
  return cells;
}

// X0 = exp(i*pi*[x]_0), Y0 = exp(i*pi*[p]_0), Z0 = -i X0 Y0: involutions
// satisfying [X0,Y0] = 2i Z0.  Construction verifies all three relations.
struct Su2Triple {
  LocalOperator x0, y0, z0;
};

inline Su2Triple su2_ops(const LatticeParams& params) {
  const LocalOperator f = dft(params);
  Su2Triple t;
  t.x0 = exp_i_pi_matrix(digit_op(Axis::x, 0, params), params, f);
  t.y0 = exp_i_pi_matrix(digit_op(Axis::p, 0, params), params, f);
  t.z0 = {Complex(0.0, -1.0) * (t.x0.mat * t.y0.mat), OpTag::generic};
  const Matrix id = Matrix::Identity(params.d, params.d);
  const double tol = 1e-12;
  if (op_norm(t.x0.mat * t.x0.mat - id) > tol ||
      op_norm(t.y0.mat * t.y0.mat - id) > tol ||
      op_norm(t.z0.mat * t.z0.mat - id) > tol)
    throw std::logic_error("su2_ops: involution check failed");
  const Matrix comm = t.x0.mat * t.y0.mat - t.y0.mat * t.x0.mat;
  if (op_norm(comm - Complex(0.0, 2.0) * t.z0.mat) > tol)
    throw std::logic_error("su2_ops: [X0,Y0] = 2iZ0 check failed");
  return t;
}

}  // namespace ghz
