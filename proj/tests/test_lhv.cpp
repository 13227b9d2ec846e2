#include <catch2/catch_amalgamated.hpp>

#include "ghz/lhv.hpp"

using ghz::BVector;
using ghz::Rational;

namespace {

// Independent constraint evaluation with the index triples written out:
// digits a = ([x_A],[x_B],[x_C],[p_A],[p_B],[p_C]).
std::array<int, 4> line_parities(const std::array<int, 6>& a) {
  return {(a[0] + a[1] + a[2]) % 2, (a[0] + a[4] + a[5]) % 2,
          (a[3] + a[1] + a[5]) % 2, (a[3] + a[4] + a[2]) % 2};
}

}  // namespace

TEST_CASE("digit enumeration agrees with direct counting") {
  for (int mask = 0; mask < 16; ++mask) {
    const BVector b{{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1,
                     (mask >> 3) & 1}};
    const ghz::DigitLhvReport report = ghz::enumerate_digit_lhv(b);
    CHECK(report.assignments_checked == 64);

    int full = 0, best = 0;
    std::array<int, 5> hist = {0, 0, 0, 0, 0};
    for (int bits = 0; bits < 64; ++bits) {
      std::array<int, 6> a;
      for (int j = 0; j < 6; ++j) a[j] = (bits >> j) & 1;
      const auto lines = line_parities(a);
      int sat = 0;
      for (int i = 0; i < 4; ++i)
        if (lines[i] == b.b[i]) ++sat;
      ++hist[sat];
      best = std::max(best, sat);
      if (sat == 4) ++full;
    }
    CHECK(report.full_solutions == full);
    CHECK(report.max_satisfied == best);
    CHECK(report.satisfied_histogram == hist);
    CHECK(report.parity_identity_violations == 0);

    if (b.parity() == 1) {
      CHECK(report.full_solutions == 0);
      CHECK(report.max_satisfied == 3);
    } else {
      CHECK(report.full_solutions >= 1);
    }
  }
}

TEST_CASE("every digit enters exactly two constraints") {
  // flipping any single digit flips exactly two line parities
  for (int j = 0; j < 6; ++j) {
    std::array<int, 6> base = {0, 0, 0, 0, 0, 0};
    const auto before = line_parities(base);
    base[j] = 1;
    const auto after = line_parities(base);
    int flips = 0;
    for (int i = 0; i < 4; ++i)
      if (before[i] != after[i]) ++flips;
    CHECK(flips == 2);
  }
}

TEST_CASE("random real assignments never reproduce an odd spectrum") {
  const std::array<Rational, 4> eta = {Rational(1), Rational(0), Rational(0),
                                       Rational(0)};
  const ghz::RealLhvReport report = ghz::random_real_lhv(eta, 5000, 123);
  CHECK(report.assignments_checked == 5000);
  CHECK(report.full_solutions == 0);
  CHECK(report.parity_identity_violations == 0);

  const ghz::RealLhvReport again = ghz::random_real_lhv(eta, 5000, 123);
  CHECK(again.full_solutions == report.full_solutions);
  CHECK(again.parity_identity_violations == report.parity_identity_violations);
}

TEST_CASE("operator spectra witness the bookkeeping obstruction") {
  for (int s : {1, 2}) {
    const ghz::AssocGapReport report =
        ghz::check_associativity_gap(ghz::make_lattice(s));
    CHECK(report.spectra_negated);
    CHECK(report.anticommutator_norm <= 1e-12);
    CHECK(report.diagonal_control_ok);
    REQUIRE(report.xy_spectrum.size() == static_cast<size_t>(2 * s * s));
    for (ghz::Complex ev : report.xy_spectrum)
      CHECK(std::abs(std::abs(ev) - 1.0) <= 1e-9);
  }
}
