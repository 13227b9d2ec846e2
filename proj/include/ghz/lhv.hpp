#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "ghz/measurement.hpp"
#include "ghz/states.hpp"

namespace ghz {

// Pre-assigned unit digits ([x_A]_0,[x_B]_0,[x_C]_0,[p_A]_0,[p_B]_0,[p_C]_0).
using DigitAssignment = std::array<int, 6>;

// Pre-assigned residues in [0,2) for (x_j)mod2 and (p_j)mod2, exact rationals.
using RealAssignment = std::array<Rational, 6>;

struct DigitLhvReport {
  BVector b;
  int assignments_checked = 0;
  int full_solutions = 0;
  int max_satisfied = 0;
  std::array<int, 5> satisfied_histogram = {0, 0, 0, 0, 0};
  int parity_identity_violations = 0;
};

// Exhaustive search over all 2^6 digit assignments.  Each digit enters
// exactly two of the four parity constraints, so the four left-hand parities
// always sum to 0 mod 2; odd-parity b therefore admits no full solution.
inline DigitLhvReport enumerate_digit_lhv(const BVector& b) {
  DigitLhvReport report;
  report.b = b;
  for (int mask = 0; mask < 64; ++mask) {
    DigitAssignment a;
    for (int j = 0; j < 6; ++j) a[j] = (mask >> j) & 1;
    int satisfied = 0;
    int lhs_parity_sum = 0;
    for (int i = 0; i < 4; ++i) {
      int lhs = 0;
      for (int j = 0; j < 3; ++j)
        lhs += setting_axes[i][j] == Axis::x ? a[j] : a[3 + j];
      lhs %= 2;
      lhs_parity_sum += lhs;
      if (lhs == b.b[i]) ++satisfied;
    }
    if (lhs_parity_sum % 2 != 0) ++report.parity_identity_violations;
    ++report.satisfied_histogram[satisfied];
    report.max_satisfied = std::max(report.max_satisfied, satisfied);
    if (satisfied == 4) ++report.full_solutions;
    ++report.assignments_checked;
  }
  return report;
}

struct RealLhvReport {
  std::array<Rational, 4> eta;
  long assignments_checked = 0;
  long full_solutions = 0;
  long parity_identity_violations = 0;
};

// Randomized search over real assignments drawn from the 2^-32 grid in [0,2)
// and handled as exact rationals (floating-point mod near cell boundaries
// would create false positives).  The four signed residue sums always add to
// 0 mod 2 because every variable enters two lines with cancelling effect,
// while the quantum spectrum requires the sum to be 1; so no draw can match
// all four eta.
inline RealLhvReport random_real_lhv(const std::array<Rational, 4>& eta,
                                     long n, std::uint64_t seed) {
  RealLhvReport report;
  report.eta = eta;
  constexpr std::int64_t denom = std::int64_t(1) << 32;
  for (long t = 0; t < n; ++t) {
    RealAssignment a;
    for (int j = 0; j < 6; ++j) {
      const std::uint64_t w = rng::word(seed, 6 * uint64_t(t) + j);
      a[j] = Rational(static_cast<std::int64_t>(w >> 31), denom);
    }
    Rational residue_sum;
    bool all_match = true;
    for (int i = 0; i < 4; ++i) {
      Rational lhs;
      for (int j = 0; j < 3; ++j) {
        const Rational& v = setting_axes[i][j] == Axis::x ? a[j] : a[3 + j];
        lhs += Rational(line_signs[i][j]) * v;
      }
      const Rational r = lhs.mod2();
      residue_sum += r;
      all_match = all_match && r == eta[i];
    }
    if (!(residue_sum.mod2() == Rational(0)))
      ++report.parity_identity_violations;
    if (all_match) ++report.full_solutions;
    ++report.assignments_checked;
  }
  return report;
}

struct AssocGapReport {
  std::vector<Complex> xy_spectrum;
  std::vector<Complex> yx_spectrum;
  bool spectra_negated = false;  // spectrum(XY) == -spectrum(YX) as multisets
  double anticommutator_norm = 0.0;
  bool diagonal_control_ok = false;
};

// Operator witness that c-number mod-2 bookkeeping cannot be lifted to
// non-commuting operators: XY and YX have opposite spectra (they differ by
// the scalar -1), while sums of commuting even-integer diagonals stay
// even-integer.
inline AssocGapReport check_associativity_gap(const LatticeParams& params) {
  const LocalOperator f = dft(params);
  const Matrix x =
      weyl_matrix(generator(Party::A, Axis::x, Rational(1)), Party::A, params,
                  f)
          .mat;
  const Matrix y =
      weyl_matrix(generator(Party::A, Axis::p, Rational(1)), Party::A, params,
                  f)
          .mat;
  AssocGapReport report;
  const auto spectrum = [](const Matrix& mat) {
    Eigen::ComplexEigenSolver<Matrix> solver(mat, false);
    std::vector<Complex> ev(solver.eigenvalues().data(),
                            solver.eigenvalues().data() +
                                solver.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
      if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    return ev;
  };
  report.xy_spectrum = spectrum(x * y);
  report.yx_spectrum = spectrum(y * x);
  std::vector<Complex> negated;
  for (Complex v : report.yx_spectrum) negated.push_back(-v);
  std::sort(negated.begin(), negated.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  report.spectra_negated = true;
  for (size_t i = 0; i < negated.size(); ++i)
    if (std::abs(report.xy_spectrum[i] - negated[i]) > 1e-9)
      report.spectra_negated = false;
  report.anticommutator_norm = op_norm(x * y + y * x);

  // control: diagonal (commuting) even-integer operators add to even-integer
  const int d = params.d;
  Matrix a = Matrix::Zero(d, d), bmat = Matrix::Zero(d, d);
  const DigitOperator dx = digit_op(Axis::x, 0, params);
  for (int k = 0; k < d; ++k) {
    a(k, k) = 2.0 * dx.diag[k];
    bmat(k, k) = 2.0 * (1 - dx.diag[k]);
  }
  const Matrix sum = a + bmat;
  report.diagonal_control_ok = true;
  for (int k = 0; k < d; ++k) {
    const double half = sum(k, k).real() / 2.0;
    if (std::abs(half - std::round(half)) > 1e-12 ||
        std::abs(sum(k, k).imag()) > 1e-12)
      report.diagonal_control_ok = false;
  }
  return report;
}

}  // namespace ghz
