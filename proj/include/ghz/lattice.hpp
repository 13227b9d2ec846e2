#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ghz/rational.hpp"
#include "ghz/weyl.hpp"

namespace ghz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Complex exp_i_pi(double t) {
  return Complex(std::cos(std::numbers::pi * t),
                 std::sin(std::numbers::pi * t));
}
inline Complex exp_i_pi(const Rational& r) { return exp_i_pi(r.value()); }

// d = 2s^2 points x_k = (k - s^2)/s covering [-s, s) with spacing 1/s.
// The momentum grid is the same set of values; spacing product is 2/d, the
// unique choice making exp(i*pi*x) and exp(i*pi*p) exact lattice translations.
struct LatticeParams {
  int s = 0;
  int d = 0;
  int m = 0;  // log2 s
  double L = 1.0;
  std::vector<Rational> x_grid;
  std::vector<Rational> p_grid;

  // Grid index of a value in [-s, s) that is a multiple of 1/s.
  int index_of(const Rational& v) const {
    const Rational t = v * Rational(s);
    if (!t.is_integer()) throw std::invalid_argument("value not on grid");
    const std::int64_t k = t.num + static_cast<std::int64_t>(s) * s;
    if (k < 0 || k >= d) throw std::out_of_range("value outside grid");
    return static_cast<int>(k);
  }
};

inline std::int64_t default_max_dim() { return std::int64_t(1) << 21; }

inline LatticeParams make_lattice(int s,
                                  std::int64_t max_dim = default_max_dim()) {
  if (s < 1 || (s & (s - 1)) != 0)
    throw std::invalid_argument("lattice size s must be a power of two");
  LatticeParams params;
  params.s = s;
  params.d = 2 * s * s;
  const std::int64_t d3 =
      static_cast<std::int64_t>(params.d) * params.d * params.d;
  if (d3 > max_dim)
    throw std::invalid_argument("lattice too large: d^3 exceeds the cap of " +
                                std::to_string(max_dim) + " amplitudes");
  params.m = 0;
  while ((1 << params.m) < s) ++params.m;
  params.x_grid.reserve(params.d);
  for (int k = 0; k < params.d; ++k)
    params.x_grid.emplace_back(k - s * s, s);
  params.p_grid = params.x_grid;
  return params;
}

enum class OpTag { diag_x, diag_p, generic };

struct LocalOperator {
  Matrix mat;
  OpTag tag = OpTag::generic;
};

inline double op_norm(const Matrix& mat) {
  if (mat.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(mat).singularValues()(0);
}

// F[l,k] = d^{-1/2} exp(i*pi*p_l*x_k); exactly unitary on this grid.
inline LocalOperator dft(const LatticeParams& params) {
  const int d = params.d;
  Matrix f(d, d);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      f(l, k) = exp_i_pi(params.p_grid[l] * params.x_grid[k]);
  f /= std::sqrt(static_cast<double>(d));
  return {std::move(f), OpTag::generic};
}

inline LocalOperator identity_op(const LatticeParams& params) {
  return {Matrix::Identity(params.d, params.d), OpTag::diag_x};
}

// Single-party word -> d x d unitary: diag(exp(i*pi*alpha*x)) composed with
// F^dag diag(exp(i*pi*beta*p)) F, times the word's scalar phase.  Only
// integer exponents are single-valued on the torus.
inline LocalOperator weyl_matrix(const WeylWord& w, Party j,
                                 const LatticeParams& params,
                                 const LocalOperator& f) {
  for (int k = 0; k < 3; ++k)
    if (static_cast<Party>(k) != j &&
        (!w.exps[k].alpha.is_zero() || !w.exps[k].beta.is_zero()))
      throw std::invalid_argument("weyl_matrix: word touches other parties");
  const Rational alpha = w[j].alpha;
  const Rational beta = w[j].beta;
  if (!alpha.is_integer() || !beta.is_integer())
    throw std::invalid_argument(
        "weyl_matrix: non-integer exponent is not single-valued on the torus");
  const int d = params.d;
  const Complex scalar = exp_i_pi(w.phase);
  if (beta.is_zero()) {
    Matrix mat = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
      mat(k, k) = scalar * exp_i_pi(alpha * params.x_grid[k]);
    return {std::move(mat), OpTag::diag_x};
  }
  Matrix diag_p = Matrix::Zero(d, d);
  for (int l = 0; l < d; ++l)
    diag_p(l, l) = exp_i_pi(beta * params.p_grid[l]);
  Matrix y = f.mat.adjoint() * diag_p * f.mat;
  if (alpha.is_zero()) return {scalar * y, OpTag::diag_p};
  Matrix mat = scalar * y;
  for (int k = 0; k < d; ++k)
    mat.row(k) *= exp_i_pi(alpha * params.x_grid[k]);
  return {std::move(mat), OpTag::generic};
}

inline LocalOperator weyl_matrix(const WeylWord& w, Party j,
                                 const LatticeParams& params) {
  return weyl_matrix(w, j, params, dft(params));
}

// Split a three-party word into per-party single-party words; the scalar
// phase is returned separately (it multiplies the tensor product once).
struct PartyFactors {
  std::array<WeylWord, 3> words;
  Rational phase;
};

inline PartyFactors party_factors(const WeylWord& w) {
  PartyFactors f;
  for (int j = 0; j < 3; ++j) f.words[j].exps[j] = w.exps[j];
  f.phase = w.phase;
  return f;
}

// Three-party state, position basis, A-major index (a*d + b)*d + c.
struct StateVector {
  int d = 0;
  Vector amp;

  double norm() const { return amp.norm(); }
};

inline StateVector basis_state(const LatticeParams& params, int a, int b,
                               int c) {
  StateVector psi;
  psi.d = params.d;
  psi.amp = Vector::Zero(static_cast<Eigen::Index>(params.d) * params.d *
                         params.d);
  psi.amp((static_cast<Eigen::Index>(a) * params.d + b) * params.d + c) = 1.0;
  return psi;
}

// Apply a d x d operator to one tensor factor by index arithmetic; the
// d^3 x d^3 matrix is never formed.
inline StateVector apply_local(const LocalOperator& op, Party party,
                               const StateVector& state) {
  const int d = state.d;
  if (op.mat.rows() != d || op.mat.cols() != d)
    throw std::invalid_argument("apply_local: dimension mismatch");
  StateVector out;
  out.d = d;
  out.amp = Vector::Zero(state.amp.size());
  const int j = static_cast<int>(party);
  const Eigen::Index strides[3] = {static_cast<Eigen::Index>(d) * d, d, 1};
  const Eigen::Index stride = strides[j];
  // Iterate over the d^2 fibers orthogonal to `party`.
  const int o1 = (j == 0) ? 1 : 0;
  const int o2 = (j == 2) ? 1 : 2;
  for (int u = 0; u < d; ++u) {
    for (int v = 0; v < d; ++v) {
      const Eigen::Index base = strides[o1] * u + strides[o2] * v;
      for (int r = 0; r < d; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < d; ++c)
          acc += op.mat(r, c) * state.amp(base + stride * c);
        out.amp(base + stride * r) = acc;
      }
    }
  }
  return out;
}

// <state| op_0 op_1 ... op_{n-1} |state>; the rightmost factor acts first.
inline Complex expectation(
    const std::vector<std::pair<const LocalOperator*, Party>>& ops,
    const StateVector& state) {
  StateVector bra = state;
  const double n = bra.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    std::cerr << "expectation: state norm " << n << ", renormalizing\n";
    bra.amp /= n;
  }
  StateVector ket = bra;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    ket = apply_local(*it->first, it->second, ket);
  return bra.amp.dot(ket.amp);
}

}  // namespace ghz
