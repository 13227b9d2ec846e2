#pragma once

#include <string>
#include <vector>

#include "ghz/io.hpp"
#include "ghz/lhv.hpp"
#include "ghz/measurement.hpp"
#include "ghz/modular.hpp"
#include "ghz/states.hpp"
#include "ghz/weyl.hpp"

// The verification battery behind `report --all`.  Every block returns its
// findings as JSON plus a pass flag; run_all stitches them together.  Block
// output carries no timestamps or timings, so identical configurations
// produce byte-identical reports.

namespace ghz {

struct Block {
  Json details;
  bool pass = true;
};

// Exact certificates for the translation-operator family: pairwise
// commutation of V1..V4, ordered product equal to minus the identity, and
// per-party anticommutation, all in rational arithmetic.
inline Block algebra_block() {
  Block block;
  const GhzFamily family = ghz_family();
  Json pairs = Json::array();
  bool all_commute = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const bool ok = commutes(family[i], family[j]);
      all_commute = all_commute && ok;
      pairs.push_back({{"pair", {i + 1, j + 1}}, {"commute", ok}});
    }
  WeylWord product = identity_word();
  for (int i = 0; i < 4; ++i) product = mul(product, family[i]);
  WeylWord minus_identity = identity_word();
  minus_identity.phase = Rational(1);
  const bool product_ok = product == minus_identity;

  bool anticommute_ok = true;
  for (Party j : {Party::A, Party::B, Party::C}) {
    const WeylWord x = generator(j, Axis::x, Rational(1));
    const WeylWord y = generator(j, Axis::p, Rational(1));
    const WeylWord xy = mul(x, y);
    const WeylWord yx = mul(y, x);
    const bool phase_flip = (xy.phase - yx.phase).mod2() == Rational(1);
    anticommute_ok = anticommute_ok && phase_flip &&
                     commute_relation(x, y) == CommuteKind::anticommute &&
                     commute_relation(x, dagger(y)) ==
                         CommuteKind::anticommute;
  }
  bool unitary_ok = true;
  for (int i = 0; i < 4; ++i)
    unitary_ok =
        unitary_ok && mul(family[i], dagger(family[i])).is_identity();

  block.details = {{"v1", to_string(family.v1)},
                   {"v2", to_string(family.v2)},
                   {"v3", to_string(family.v3)},
                   {"v4", to_string(family.v4)},
                   {"pairwise_commute", std::move(pairs)},
                   {"product", to_string(product)},
                   {"product_is_minus_identity", product_ok},
                   {"anticommutation", anticommute_ok},
                   {"unitarity", unitary_ok}};
  block.pass = all_commute && product_ok && anticommute_ok && unitary_ok;
  return block;
}

// Numerical bridge at one lattice size: DFT unitarity, the anticommutator,
// the reordering phase identity over small integer exponents, the exact
// translation structure of Y, and the word-to-matrix homomorphism.
inline Block lattice_block(int s, std::uint64_t seed = 7) {
  Block block;
  const LatticeParams params = make_lattice(s);
  const LocalOperator f = dft(params);
  const int d = params.d;
  const Matrix id = Matrix::Identity(d, d);

  const double unitarity = op_norm(f.mat * f.mat.adjoint() - id);

  const auto party_matrix = [&](const WeylWord& w) {
    return weyl_matrix(w, Party::A, params, f).mat;
  };
  const Matrix x = party_matrix(generator(Party::A, Axis::x, Rational(1)));
  const Matrix y = party_matrix(generator(Party::A, Axis::p, Rational(1)));
  const double anticommutator = op_norm(x * y + y * x);

  double phase_identity = 0.0;
  for (int a : {-1, 0, 1, 2})
    for (int b : {-1, 0, 1, 2}) {
      const Matrix xa = party_matrix(generator(Party::A, Axis::x, Rational(a)));
      const Matrix yb = party_matrix(generator(Party::A, Axis::p, Rational(b)));
      const Complex reorder = exp_i_pi(Rational(-a * b).mod2());
      phase_identity =
          std::max(phase_identity, op_norm(xa * yb - reorder * yb * xa));
    }

  // Y must permute position-basis vectors: one unit-modulus entry per
  // column, at cyclic offset s.
  bool shift_ok = true;
  double shift_dev = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int r = 0; r < d; ++r) {
      const double mag = std::abs(y(r, k));
      if (r == (k + s) % d)
        shift_dev = std::max(shift_dev, std::abs(mag - 1.0));
      else
        shift_dev = std::max(shift_dev, mag);
    }
  }
  shift_ok = shift_dev <= 1e-12;

  double homomorphism = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const auto exponent = [&](int slot) {
      return Rational(static_cast<std::int64_t>(
                          rng::word(seed, 4 * uint64_t(trial) + slot) % 5) -
                      2);
    };
    const WeylWord w1 = make_word({{Party::A, Axis::x, exponent(0)},
                                   {Party::A, Axis::p, exponent(1)}});
    const WeylWord w2 = make_word({{Party::A, Axis::x, exponent(2)},
                                   {Party::A, Axis::p, exponent(3)}});
    homomorphism = std::max(
        homomorphism, op_norm(party_matrix(mul(w1, w2)) -
                              party_matrix(w1) * party_matrix(w2)));
  }

  block.details = {{"s", s},
                   {"dft_unitarity", unitarity},
                   {"anticommutator_norm", anticommutator},
                   {"reorder_phase_identity", phase_identity},
                   {"translation_offset_ok", shift_ok},
                   {"homomorphism", homomorphism}};
  block.pass = unitarity <= 1e-12 && anticommutator <= 1e-12 &&
               phase_identity <= 1e-12 && shift_ok && homomorphism <= 1e-12;
  return block;
}

// s=1 reduction: the comb construction collapses to the qubit GHZ state and
// the V eigenvalues are (-1,+1,+1,+1).
inline Block spin_ghz_block() {
  Block block;
  const LatticeParams params = make_lattice(1);
  const CombLabel origin{Rational(0), Rational(0)};
  const StateVector psi =
      psi_bz(BVector{{1, 0, 0, 0}}, {origin, origin, origin}, params);

  const Vector up = comb_state(Spin::up, origin, params);
  const Vector down = comb_state(Spin::down, origin, params);
  StateVector ref;
  ref.d = params.d;
  ref.amp = Vector::Zero(8);
  Eigen::Index idx = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c, ++idx)
        ref.amp(idx) = (up(a) * up(b) * up(c) - down(a) * down(b) * down(c)) /
                       std::sqrt(2.0);
  const double distance = (psi.amp - ref.amp).norm();

  const EigenReport report = verify_eigensystem(psi, System::v_ops, params);
  const std::array<double, 4> expected = {-1.0, 1.0, 1.0, 1.0};
  double eigen_dev = 0.0;
  for (int i = 0; i < 4; ++i)
    eigen_dev = std::max(
        eigen_dev, std::abs(report.lines[i].eigenvalue - Complex(expected[i])));
  Complex product = 1.0;
  for (int i = 0; i < 4; ++i) product *= report.lines[i].eigenvalue;

  block.details = {{"state_distance", distance},
                   {"v_report", to_json(report)},
                   {"eigenvalue_deviation", eigen_dev},
                   {"eigenvalue_product", {product.real(), product.imag()}}};
  block.pass = distance <= 1e-10 && eigen_dev <= 1e-10 &&
               report.max_residual <= 1e-10 &&
               std::abs(product - Complex(-1.0)) <= 1e-10;
  return block;
}

// Every odd-parity b with seeded random labels: the constructed state is a
// common eigenstate of the three digit/modular systems, the snapped residues
// sum to 1 mod 2 exactly, and they match the affine prediction.
inline Block coverage_block(int s = 2, int tuples_per_b = 20,
                            std::uint64_t seed = 20240817) {
  Block block;
  const LatticeParams params = make_lattice(s);
  double worst_residual = 0.0;
  bool all_eta_ok = true;
  bool all_match = true;
  int states_checked = 0;
  std::uint64_t counter = 0;
  for (int mask = 0; mask < 16; ++mask) {
    BVector b{{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1}};
    if (b.parity() != 1) continue;
    for (int tuple = 0; tuple < tuples_per_b; ++tuple) {
      std::array<Rational, 6> z;
      for (int j = 0; j < 6; ++j)
        z[j] = Rational(
            static_cast<std::int64_t>(rng::word(seed, counter++) % s), s);
      const std::array<CombLabel, 3> labels = {CombLabel{z[0], z[3]},
                                               CombLabel{z[1], z[4]},
                                               CombLabel{z[2], z[5]}};
      const StateVector psi = psi_bz(b, labels, params);
      const std::array<Rational, 4> predicted = eta_of(b, z);
      ++states_checked;
      for (System system : {System::binary_ghz, System::binary1_ghz,
                            System::ghz_mod_bin}) {
        const EigenReport report = verify_eigensystem(psi, system, params);
        worst_residual = std::max(worst_residual, report.max_residual);
        all_eta_ok = all_eta_ok && report.eta_sum_ok;
        for (int i = 0; i < 4; ++i) {
          const Rational want = system == System::ghz_mod_bin
                                    ? predicted[i]
                                    : Rational(b.b[i]);
          all_match = all_match && report.lines[i].snapped_ok &&
                      report.lines[i].snapped == want;
        }
      }
    }
  }
  block.details = {{"s", s},
                   {"states_checked", states_checked},
                   {"systems", {"binaryGHZ", "binary1GHZ", "GHZmodbin"}},
                   {"worst_residual", worst_residual},
                   {"eta_sum_odd_all", all_eta_ok},
                   {"snapped_match_prediction", all_match}};
  block.pass = worst_residual <= 1e-10 && all_eta_ok && all_match &&
               states_checked == 8 * tuples_per_b;
  return block;
}

// Dual-route solver check: the parametric enumeration must equal brute-force
// substitution over all s^6 grid tuples, case by case.
inline Block solver_block(int s = 2, int cases = 10,
                          std::uint64_t seed = 99) {
  Block block;
  const LatticeParams params = make_lattice(s);
  std::vector<Rational> grid;
  for (int i = 0; i < s; ++i) grid.emplace_back(i, s);
  Json case_list = Json::array();
  bool all_equal = true;
  std::uint64_t counter = 0;
  for (int c = 0; c < cases; ++c) {
    BVector b;
    for (int i = 0; i < 4; ++i)
      b.b[i] = static_cast<int>(rng::word(seed, counter++) % 2);
    std::array<Rational, 4> eta;
    for (int i = 0; i < 4; ++i)
      eta[i] = Rational(
          static_cast<std::int64_t>(rng::word(seed, counter++) % (2 * s)), s);

    const std::vector<EigenSolution> fast = solve_constraints(b, eta, params);

    std::vector<std::array<Rational, 6>> brute;
    std::array<int, 6> idx = {0, 0, 0, 0, 0, 0};
    for (;;) {
      std::array<Rational, 6> z;
      for (int j = 0; j < 6; ++j) z[j] = grid[idx[j]];
      if (eta_of(b, z) == eta) brute.push_back(z);
      int j = 5;
      while (j >= 0 && ++idx[j] == s) idx[j--] = 0;
      if (j < 0) break;
    }

    bool equal = fast.size() == brute.size();
    if (equal)
      for (size_t i = 0; i < fast.size(); ++i)
        equal = equal && fast[i].z == brute[i];
    all_equal = all_equal && equal;
    Json eta_json = Json::array();
    for (const Rational& e : eta) eta_json.push_back(rational_json(e));
    case_list.push_back({{"b", b.b},
                         {"eta", std::move(eta_json)},
                         {"solutions", fast.size()},
                         {"brute_force", brute.size()},
                         {"identical", equal}});
  }
  block.details = {{"s", s}, {"cases", std::move(case_list)}};
  block.pass = all_equal;
  return block;
}

// Sampling on the s=1 reference eigenstate: deterministic digit parity per
// setting, the exact Mermin value -4, and the sampled estimate within five
// standard errors of it.
inline Block measurement_block(int shots = 10000, std::uint64_t seed = 42) {
  Block block;
  const LatticeParams params = make_lattice(1);
  const CombLabel origin{Rational(0), Rational(0)};
  const BVector b{{1, 0, 0, 0}};
  const StateVector psi = psi_bz(b, {origin, origin, origin}, params);

  Json settings = Json::array();
  bool deterministic = true;
  double sampled_m = 0.0;
  double variance_sum = 0.0;
  const MerminResult exact = mermin_statistic(psi, params, b);
  for (int i = 0; i < 4; ++i) {
    RunConfig config;
    config.shots = shots;
    config.seed = seed;
    config.policy = SettingPolicy::fixed;
    config.fixed_setting = i;
    const std::vector<ShotRecord> records = sample(psi, config, params);
    const SettingStats stats = setting_statistics(records, b.b[i]);
    deterministic = deterministic && stats.match_fraction == 1.0;
    const double e_hat =
        (static_cast<double>(stats.parity_counts[0]) - stats.parity_counts[1]) /
        static_cast<double>(stats.n);
    sampled_m += exact.signs[i] * e_hat;
    variance_sum += (1.0 - e_hat * e_hat) / static_cast<double>(stats.n);
    Json j = to_json(stats);
    j["target_parity"] = b.b[i];
    j["sampled_expectation"] = e_hat;
    settings.push_back(std::move(j));
  }
  const double five_sigma = 5.0 * std::sqrt(variance_sum);
  const bool mermin_ok = std::abs(std::abs(exact.statistic) - 4.0) <= 1e-10;
  const bool sampled_ok =
      std::abs(sampled_m - exact.statistic) <= five_sigma + 1e-12;

  block.details = {{"shots_per_setting", shots},
                   {"seed", seed},
                   {"settings", std::move(settings)},
                   {"mermin", to_json(exact)},
                   {"sampled_mermin", sampled_m},
                   {"five_sigma", five_sigma},
                   {"parity_deterministic", deterministic}};
  block.pass = deterministic && mermin_ok && sampled_ok;
  return block;
}

// No digit assignment satisfies all four parity constraints for any
// odd-parity b (and at most three of four); no random real assignment is
// compatible with an odd residue-sum spectrum; the operator-level witness is
// the sign flip between the spectra of XY and YX.
inline Block lhv_block(long samples = 100000, std::uint64_t seed = 5) {
  Block block;
  Json digit_reports = Json::array();
  bool digits_ok = true;
  for (int mask = 0; mask < 16; ++mask) {
    BVector b{{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1}};
    if (b.parity() != 1) continue;
    const DigitLhvReport report = enumerate_digit_lhv(b);
    digits_ok = digits_ok && report.full_solutions == 0 &&
                report.max_satisfied == 3 &&
                report.parity_identity_violations == 0 &&
                report.assignments_checked == 64;
    digit_reports.push_back(to_json(report));
  }
  const BVector control{{0, 0, 0, 0}};
  const DigitLhvReport control_report = enumerate_digit_lhv(control);
  const bool control_ok = control_report.full_solutions >= 1;

  const std::array<Rational, 4> eta = {Rational(1), Rational(0), Rational(0),
                                       Rational(0)};
  const RealLhvReport real_report = random_real_lhv(eta, samples, seed);
  const bool real_ok = real_report.full_solutions == 0 &&
                       real_report.parity_identity_violations == 0 &&
                       real_report.assignments_checked == samples;

  const AssocGapReport assoc1 = check_associativity_gap(make_lattice(1));
  const AssocGapReport assoc2 = check_associativity_gap(make_lattice(2));
  const bool assoc_ok = assoc1.spectra_negated && assoc2.spectra_negated &&
                        assoc2.anticommutator_norm <= 1e-12 &&
                        assoc1.diagonal_control_ok &&
                        assoc2.diagonal_control_ok;

  block.details = {{"digit_reports", std::move(digit_reports)},
                   {"even_parity_control", to_json(control_report)},
                   {"real_report", to_json(real_report)},
                   {"assoc_s1", to_json(assoc1)},
                   {"assoc_s2", to_json(assoc2)}};
  block.pass = digits_ok && control_ok && real_ok && assoc_ok;
  return block;
}

// Modular/digit structure at s=4: the full commutation table with at least
// one supra-threshold violating cell per rule, the digit decomposition
// identities in exact arithmetic, and the su(2) triple with its action on
// the comb states at every label.
inline Block modular_block(int s = 4) {
  Block block;
  const LatticeParams params = make_lattice(s);
  const int m = params.m;

  const std::vector<CommutationCell> cells =
      commutation_table(params, -m, m + 1, -m, m + 1);
  bool table_ok = true;
  std::map<std::string, double> max_violation = {{"mod-mod", 0.0},
                                                 {"modx-digitp", 0.0},
                                                 {"modp-digitx", 0.0},
                                                 {"digit-digit", 0.0}};
  Json cell_list = Json::array();
  for (const CommutationCell& cell : cells) {
    table_ok = table_ok && cell.pass;
    if (!cell.expected_zero)
      max_violation[cell.kind] =
          std::max(max_violation[cell.kind], cell.commutator_norm);
    cell_list.push_back(to_json(cell));
  }
  bool violations_ok = true;
  Json violation_json = Json::object();
  for (const auto& [kind, norm] : max_violation) {
    violations_ok = violations_ok && norm > 0.1;
    violation_json[kind] = norm;
  }

  bool digit_identities_ok = true;
  for (Axis basis : {Axis::x, Axis::p}) {
    for (int n = -m; n <= 0; ++n) {
      const ModularOperator lo = mod_op(basis, n, params);
      const ModularOperator hi = mod_op(basis, n + 1, params);
      const DigitOperator dig = digit_op(basis, n, params);
      const Rational unit = detail::pow2(n);
      for (int k = 0; k < params.d; ++k)
        digit_identities_ok =
            digit_identities_ok &&
            hi.diag[k] == lo.diag[k] + unit * Rational(dig.diag[k]);
    }
    // recomposition: the grid residue has no digits below -m, so the
    // windowed digit sum reproduces (z) mod 2 exactly
    const ModularOperator full = mod_op(basis, 1, params);
    for (int k = 0; k < params.d; ++k) {
      Rational acc;
      for (int n = -m; n <= 0; ++n)
        acc += detail::pow2(n) *
               Rational(digit_op(basis, n, params).diag[k]);
      digit_identities_ok = digit_identities_ok && acc == full.diag[k];
    }
  }

  const Su2Triple triple = su2_ops(params);  // throws if relations fail
  double action_dev = 0.0;
  for (int xi = 0; xi < s; ++xi)
    for (int pi = 0; pi < s; ++pi) {
      const CombLabel label{Rational(xi, s), Rational(pi, s)};
      const Vector up = comb_state(Spin::up, label, params);
      const Vector down = comb_state(Spin::down, label, params);
      const Complex i_unit(0.0, 1.0);
      action_dev = std::max(
          {action_dev, (triple.x0.mat * up - down).norm(),
           (triple.x0.mat * down - up).norm(),
           (triple.y0.mat * up - i_unit * down).norm(),
           (triple.y0.mat * down + i_unit * up).norm(),
           (triple.z0.mat * up - up).norm(),
           (triple.z0.mat * down + down).norm()});
    }

  block.details = {{"s", s},
                   {"commutation_table", std::move(cell_list)},
                   {"max_violating_norms", std::move(violation_json)},
                   {"digit_identities_exact", digit_identities_ok},
                   {"su2_constructed", true},
                   {"action_table_deviation", action_dev}};
  block.pass = table_ok && violations_ok && digit_identities_ok &&
               action_dev <= 1e-12;
  return block;
}

// The 2s^2 comb states over all labels and spins are an orthonormal basis.
inline Block basis_block(int s = 2) {
  Block block;
  const LatticeParams params = make_lattice(s);
  const Matrix basis = comb_basis(params);
  const double gram_dev =
      (basis.adjoint() * basis - Matrix::Identity(params.d, params.d))
          .cwiseAbs()
          .maxCoeff();
  block.details = {{"s", s}, {"gram_deviation", gram_dev}};
  block.pass = gram_dev <= 1e-10;
  return block;
}

struct FullReport {
  Json json;
  bool pass = true;
};

inline FullReport run_all() {
  FullReport report;
  Json criteria = Json::array();
  const auto add = [&](int id, const std::string& name, Block block) {
    criteria.push_back({{"id", id},
                        {"name", name},
                        {"pass", block.pass},
                        {"details", std::move(block.details)}});
    report.pass = report.pass && block.pass;
  };
  add(1, "exact-algebra-certificate", algebra_block());
  {
    Block merged;
    Json per_s = Json::array();
    for (int s : {1, 2, 4}) {
      Block b = lattice_block(s);
      merged.pass = merged.pass && b.pass;
      per_s.push_back(std::move(b.details));
    }
    merged.details = std::move(per_s);
    add(2, "lattice-anticommutation", std::move(merged));
  }
  add(3, "spin-ghz-reduction", spin_ghz_block());
  add(4, "eigensystem-coverage", coverage_block());
  add(5, "constraint-solver-soundness", solver_block());
  add(6, "measurement-determinism", measurement_block());
  add(7, "lhv-falsification", lhv_block());
  add(8, "modular-binary-structure", modular_block());
  add(9, "basis-completeness", basis_block());
  report.json = {{"report", "all"},
                 {"criteria", std::move(criteria)},
                 {"all_pass", report.pass}};
  return report;
}

}  // namespace ghz
