#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz/lattice.hpp"
#include "ghz/modular.hpp"

namespace ghz {

// The four measurement settings and the sign patterns of the corresponding
// modular-sum lines:
//   ( x_A + x_B + x_C) mod 2
//   (-x_A + p_B - p_C) mod 2
//   (-p_A - x_B + p_C) mod 2
//   ( p_A - p_B - x_C) mod 2
inline constexpr std::array<std::array<Axis, 3>, 4> setting_axes = {{
    {Axis::x, Axis::x, Axis::x},
    {Axis::x, Axis::p, Axis::p},
    {Axis::p, Axis::x, Axis::p},
    {Axis::p, Axis::p, Axis::x},
}};

inline constexpr std::array<std::array<int, 3>, 4> line_signs = {{
    {+1, +1, +1},
    {-1, +1, -1},
    {-1, -1, +1},
    {+1, -1, -1},
}};

inline const char* setting_name(int i) {
  static constexpr const char* names[4] = {"xxx", "xpp", "pxp", "ppx"};
  return names[i];
}

inline int setting_from_name(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == setting_name(i)) return i;
  throw std::invalid_argument("unknown setting '" + s + "'");
}

struct CombLabel {
  Rational x0;
  Rational p0;
};

enum class Spin { up, down };

inline void validate_label(const CombLabel& label, const LatticeParams& params) {
  for (const Rational* v : {&label.x0, &label.p0}) {
    if (*v < Rational(0) || !(*v < Rational(1)))
      throw std::invalid_argument("comb label outside [0,1)");
    if (!(*v * Rational(params.s)).is_integer())
      throw std::invalid_argument("comb label not a multiple of 1/s");
  }
}

// Lattice comb |up>/|down>: 2s teeth at x0 + n (torus-wrapped), amplitude
// iota_n exp(-i*pi*n*p0)/sqrt(2s) with iota_n = 1 on even teeth and +/-i on
// odd teeth.  The sign of the momentum phase matches the DFT kernel above,
// placing the momentum-representation teeth at p0 + integers; with it the
// su(2) action table (X0|up> = |down>, Y0|up> = i|down>, Z0|up> = |up>)
// holds for every label.
inline Vector comb_state(Spin spin, const CombLabel& label,
                         const LatticeParams& params) {
  validate_label(label, params);
  const int s = params.s;
  Vector v = Vector::Zero(params.d);
  const Rational period(2 * s);
  const Complex odd_factor =
      spin == Spin::up ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  for (int n = 0; n < 2 * s; ++n) {
    const Rational pos =
        (label.x0 + Rational(n) + Rational(s)).mod(period) - Rational(s);
    Complex amp = exp_i_pi(-(Rational(n) * label.p0));
    if (n % 2 == 1) amp *= odd_factor;
    v(params.index_of(pos)) = amp;
  }
  v /= std::sqrt(2.0 * s);
  return v;
}

struct BVector {
  std::array<int, 4> b = {0, 0, 0, 0};

  int parity() const { return (b[0] + b[1] + b[2] + b[3]) % 2; }
  bool operator==(const BVector& o) const { return b == o.b; }
};

// |psi(b,z)> = (|b2>|b3>|b4> + (-1)^{b1} |b2+1>|b3+1>|b4+1>)/sqrt(2),
// with |0> = |up>, |1> = |down> and per-party comb labels z.  Only
// odd-parity b admits a common eigenstate of all four lines, so even
// parity is rejected.
inline StateVector psi_bz(const BVector& b,
                          const std::array<CombLabel, 3>& labels,
                          const LatticeParams& params) {
  if (b.parity() != 1)
    throw std::invalid_argument(
        "psi_bz: (b1+b2+b3+b4) mod 2 must be 1; even-parity b admits no "
        "common eigenstate with the required product eigenvalue");
  std::array<Vector, 3> kets, flipped;
  for (int j = 0; j < 3; ++j) {
    const Spin spin = b.b[j + 1] == 0 ? Spin::up : Spin::down;
    const Spin anti = b.b[j + 1] == 0 ? Spin::down : Spin::up;
    kets[j] = comb_state(spin, labels[j], params);
    flipped[j] = comb_state(anti, labels[j], params);
  }
  const double sign = b.b[0] == 0 ? 1.0 : -1.0;
  const int d = params.d;
  StateVector psi;
  psi.d = d;
  psi.amp = Vector::Zero(static_cast<Eigen::Index>(d) * d * d);
  Eigen::Index idx = 0;
  for (int a = 0; a < d; ++a)
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c, ++idx)
        psi.amp(idx) = kets[0](a) * kets[1](bb) * kets[2](c) +
                       sign * flipped[0](a) * flipped[1](bb) * flipped[2](c);
  psi.amp /= psi.amp.norm();
  return psi;
}

struct EigenSolution {
  BVector b;
  // (x0_A, x0_B, x0_C, p0_A, p0_B, p0_C)
  std::array<Rational, 6> z;
  std::array<Rational, 4> eta;

  std::array<CombLabel, 3> labels() const {
    return {CombLabel{z[0], z[3]}, CombLabel{z[1], z[4]},
            CombLabel{z[2], z[5]}};
  }
};

// The residues predicted for |psi(b,z)| by the four lines: line i carries
// sign sigma_ij on party j's label for the axis it measures, plus b_i.
inline std::array<Rational, 4> eta_of(const BVector& b,
                                      const std::array<Rational, 6>& z) {
  std::array<Rational, 4> eta;
  for (int i = 0; i < 4; ++i) {
    Rational acc(b.b[i]);
    for (int j = 0; j < 3; ++j) {
      const Rational& label = setting_axes[i][j] == Axis::x ? z[j] : z[3 + j];
      acc += Rational(line_signs[i][j]) * label;
    }
    eta[i] = acc.mod2();
  }
  return eta;
}

// All grid-quantized z with the prescribed residues.  Three labels are free;
// the x-line fixes x0_C, the second line fixes p0_C, the fourth fixes p0_A,
// and the third is then automatic given (sum eta - sum b) even.  A candidate
// survives only if the forced value lands back in [0,1).
inline std::vector<EigenSolution> solve_constraints(
    const BVector& b, const std::array<Rational, 4>& eta,
    const LatticeParams& params) {
  for (const Rational& e : eta)
    if (e < Rational(0) || !(e < Rational(2)) ||
        !(e * Rational(params.s)).is_integer())
      throw std::invalid_argument("eta values must be grid rationals in [0,2)");
  std::vector<EigenSolution> out;
  Rational parity_gap = -Rational(b.b[0] + b.b[1] + b.b[2] + b.b[3]);
  for (const Rational& e : eta) parity_gap += e;
  if (!(parity_gap.mod2() == Rational(0))) return out;
  const int s = params.s;
  const Rational one(1);
  std::vector<Rational> grid;
  for (int i = 0; i < s; ++i) grid.emplace_back(i, s);
  const auto in_unit = [&](const Rational& v) { return v < one; };
  for (const Rational& u1 : grid)
    for (const Rational& u2 : grid)
      for (const Rational& v2 : grid) {
        const Rational u3 = (eta[0] - Rational(b.b[0]) - u1 - u2).mod2();
        if (!in_unit(u3)) continue;
        const Rational v3 = (-u1 + v2 - eta[1] + Rational(b.b[1])).mod2();
        if (!in_unit(v3)) continue;
        const Rational v1 = (eta[3] - Rational(b.b[3]) + v2 + u3).mod2();
        if (!in_unit(v1)) continue;
        EigenSolution sol;
        sol.b = b;
        sol.z = {u1, u2, u3, v1, v2, v3};
        sol.eta = eta_of(b, sol.z);
        if (!(sol.eta == eta))
          throw std::logic_error("solve_constraints: residual line mismatch");
        out.push_back(sol);
      }
  std::sort(out.begin(), out.end(),
            [](const EigenSolution& a, const EigenSolution& c) {
              for (int i = 0; i < 6; ++i) {
                if (a.z[i] < c.z[i]) return true;
                if (c.z[i] < a.z[i]) return false;
              }
              return false;
            });
  return out;
}

// Normalized weighted superposition of solution eigenstates.  All entries
// must carry the same eta, otherwise the sum is no common eigenstate.
inline StateVector eigenstate(
    const std::vector<std::pair<EigenSolution, Complex>>& weighted,
    const LatticeParams& params) {
  if (weighted.empty())
    throw std::invalid_argument("eigenstate: empty solution list");
  const auto& eta0 = weighted.front().first.eta;
  for (const auto& [sol, w] : weighted)
    if (!(sol.eta == eta0))
      throw std::invalid_argument("eigenstate: mixed eta in superposition");
  StateVector acc;
  acc.d = params.d;
  acc.amp = Vector::Zero(static_cast<Eigen::Index>(params.d) * params.d *
                         params.d);
  for (const auto& [sol, w] : weighted) {
    if (w == Complex(0.0)) continue;
    const StateVector psi = psi_bz(sol.b, sol.labels(), params);
    acc.amp += w * psi.amp;
  }
  const double n = acc.amp.norm();
  if (n < 1e-12)
    throw std::invalid_argument("eigenstate: weights sum to the zero vector");
  acc.amp /= n;
  return acc;
}

enum class System { v_ops, modular_ghz, ghz_mod_bin, binary1_ghz, binary_ghz };

inline const char* system_name(System s) {
  switch (s) {
    case System::v_ops: return "V-ops";
    case System::modular_ghz: return "modularGHZ";
    case System::ghz_mod_bin: return "GHZmodbin";
    case System::binary1_ghz: return "binary1GHZ";
    default: return "binaryGHZ";
  }
}

inline System system_from_name(const std::string& s) {
  for (System sys : {System::v_ops, System::modular_ghz, System::ghz_mod_bin,
                     System::binary1_ghz, System::binary_ghz})
    if (s == system_name(sys)) return sys;
  throw std::invalid_argument("unknown system '" + s + "'");
}

struct LineResult {
  Complex eigenvalue;
  double residual = 0.0;
  Rational snapped;     // eta for modular lines, b for digit lines
  bool snapped_ok = false;
};

struct EigenReport {
  System system = System::v_ops;
  std::array<LineResult, 4> lines;
  double max_residual = 0.0;
  bool eta_sum_ok = false;  // (sum of snapped values) mod 2 == 1
};

namespace detail {

// Diagonal eigenvalue of line i of `system` at the grid point (za, zb, zc)
// of the line's measurement bases.
inline Complex line_value(System system, int i, const Rational& za,
                          const Rational& zb, const Rational& zc) {
  const std::array<const Rational*, 3> z = {&za, &zb, &zc};
  const auto digit0 = [](const Rational& v) {
    return v.mod2() >= Rational(1) ? 1 : 0;
  };
  switch (system) {
    case System::v_ops: {
      Rational acc;
      for (int j = 0; j < 3; ++j) acc += Rational(line_signs[i][j]) * *z[j];
      return exp_i_pi(acc.mod2());
    }
    case System::modular_ghz: {
      Rational acc;
      for (int j = 0; j < 3; ++j) acc += Rational(line_signs[i][j]) * *z[j];
      return Complex(acc.mod2().value());
    }
    case System::ghz_mod_bin: {
      Rational acc;
      for (int j = 0; j < 3; ++j)
        acc += Rational(line_signs[i][j]) * z[j]->mod(Rational(1)) +
               Rational(digit0(*z[j]));
      return Complex(acc.mod2().value());
    }
    case System::binary1_ghz: {
      int dsum = 0;
      for (int j = 0; j < 3; ++j) dsum += digit0(*z[j]);
      return Complex(static_cast<double>(dsum % 2));
    }
    default: {  // binary_ghz
      int dsum = 0;
      for (int j = 0; j < 3; ++j) dsum += digit0(*z[j]);
      return Complex(dsum % 2 == 0 ? 1.0 : -1.0);
    }
  }
}

inline StateVector rotate_to_setting(const StateVector& state, int i,
                                     const LocalOperator& f, bool inverse) {
  StateVector out = state;
  for (int j = 0; j < 3; ++j) {
    if (setting_axes[i][j] != Axis::p) continue;
    if (inverse) {
      LocalOperator fd{f.mat.adjoint(), OpTag::generic};
      out = apply_local(fd, static_cast<Party>(j), out);
    } else {
      out = apply_local(f, static_cast<Party>(j), out);
    }
  }
  return out;
}

// Op psi for line i: rotate p-parties, scale by the diagonal, rotate back.
inline StateVector apply_line(System system, int i, const StateVector& state,
                              const LatticeParams& params,
                              const LocalOperator& f) {
  StateVector rot = rotate_to_setting(state, i, f, false);
  const int d = params.d;
  Eigen::Index idx = 0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c, ++idx)
        rot.amp(idx) *= line_value(system, i, params.x_grid[a],
                                   params.x_grid[b], params.x_grid[c]);
  return rotate_to_setting(rot, i, f, true);
}

}  // namespace detail

// Spectral verification: each line of every system is diagonal in its
// setting's mixed position/momentum product basis, so Op = R^dag diag R.
// Reports <Op>, the residual, and the eigenvalue snapped to the exact grid.
inline EigenReport verify_eigensystem(const StateVector& state, System system,
                                      const LatticeParams& params) {
  const LocalOperator f = dft(params);
  EigenReport report;
  report.system = system;
  const double snap_tol = 1e-8;
  Rational snap_sum;
  bool all_snapped = true;
  for (int i = 0; i < 4; ++i) {
    const StateVector op_psi = detail::apply_line(system, i, state, params, f);
    const Complex ev = state.amp.dot(op_psi.amp);
    LineResult& line = report.lines[i];
    line.eigenvalue = ev;
    line.residual = (op_psi.amp - ev * state.amp).norm();
    report.max_residual = std::max(report.max_residual, line.residual);
    const bool exponential =
        system == System::v_ops || system == System::binary_ghz;
    if (exponential) {
      // unit-circle eigenvalue e^{i*pi*eta}: snap the phase
      const double arg = std::arg(ev) / std::numbers::pi;
      const auto snapped =
          Rational(std::llround(arg * params.s), params.s).mod2();
      line.snapped = snapped;
      line.snapped_ok = std::abs(ev - exp_i_pi(snapped)) <= snap_tol;
    } else {
      const double target = ev.real();
      const auto snapped =
          Rational(std::llround(target * params.s), params.s).mod2();
      line.snapped = snapped;
      line.snapped_ok = std::abs(ev - Complex(snapped.value())) <= snap_tol;
    }
    all_snapped = all_snapped && line.snapped_ok;
    snap_sum += line.snapped;
  }
  report.eta_sum_ok = all_snapped && snap_sum.mod2() == Rational(1);
  return report;
}

// Columns: the 2s^2 comb states over all grid labels and both spins;
// orthonormal and complete on the single-party space.
inline Matrix comb_basis(const LatticeParams& params) {
  const int s = params.s;
  Matrix basis(params.d, params.d);
  int col = 0;
  for (int xi = 0; xi < s; ++xi)
    for (int pi = 0; pi < s; ++pi)
      for (Spin spin : {Spin::up, Spin::down})
        basis.col(col++) =
            comb_state(spin, CombLabel{Rational(xi, s), Rational(pi, s)},
                       params);
  return basis;
}

}  // namespace ghz
