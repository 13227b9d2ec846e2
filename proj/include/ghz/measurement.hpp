#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ghz/states.hpp"

namespace ghz {

// Counter-based splitmix64: stream word t is the splitmix64 finalizer applied
// to seed + (t+1)*golden.  Stateless, platform-independent, and safe to
// evaluate in any order, which keeps sampling deterministic under any
// parallel partitioning.
namespace rng {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t t) {
  return mix(seed + (t + 1) * golden);
}

// uniform double in [0,1) from the top 53 bits
inline double uniform(std::uint64_t seed, std::uint64_t t) {
  return static_cast<double>(word(seed, t) >> 11) * 0x1.0p-53;
}

}  // namespace rng

enum class SettingPolicy { fixed, cycle_all_four, random_choice };

struct RunConfig {
  int shots = 10000;
  std::uint64_t seed = 42;
  SettingPolicy policy = SettingPolicy::fixed;
  int fixed_setting = 0;
};

struct ShotRecord {
  int setting = 0;
  std::array<Rational, 3> raw;      // measured grid value per party
  std::array<Rational, 3> residue;  // raw mod 2
  std::array<Rational, 3> mod1;     // raw mod 1
  std::array<int, 3> digit;         // unit digit of the residue
  int parity = 0;                   // (sum of digits) mod 2
  Rational eta_hat;                 // signed residue sum mod 2 for the line
};

namespace detail {

struct SettingDistribution {
  std::vector<double> cdf;  // unnormalized cumulative |amplitude|^2
  double total = 0.0;
};

inline SettingDistribution born_cdf(const StateVector& state, int setting,
                                    const LocalOperator& f) {
  const StateVector rotated = rotate_to_setting(state, setting, f, false);
  SettingDistribution dist;
  dist.cdf.resize(rotated.amp.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rotated.amp.size(); ++i) {
    acc += std::norm(rotated.amp(i));
    dist.cdf[i] = acc;
  }
  dist.total = acc;
  return dist;
}

inline Eigen::Index draw_index(const SettingDistribution& dist, double u) {
  const double target = u * dist.total;
  const auto it =
      std::upper_bound(dist.cdf.begin(), dist.cdf.end(), target);
  return it == dist.cdf.end()
             ? static_cast<Eigen::Index>(dist.cdf.size()) - 1
             : static_cast<Eigen::Index>(it - dist.cdf.begin());
}

}  // namespace detail

inline ShotRecord make_record(int setting, Eigen::Index joint_index,
                              const LatticeParams& params) {
  const int d = params.d;
  ShotRecord rec;
  rec.setting = setting;
  const int idx[3] = {static_cast<int>(joint_index / (d * d)),
                      static_cast<int>((joint_index / d) % d),
                      static_cast<int>(joint_index % d)};
  int digit_sum = 0;
  Rational signed_sum;
  for (int j = 0; j < 3; ++j) {
    rec.raw[j] = params.x_grid[idx[j]];
    rec.residue[j] = rec.raw[j].mod2();
    rec.mod1[j] = rec.raw[j].mod(Rational(1));
    rec.digit[j] = rec.residue[j] >= Rational(1) ? 1 : 0;
    digit_sum += rec.digit[j];
    signed_sum += Rational(line_signs[setting][j]) * rec.residue[j];
  }
  rec.parity = digit_sum % 2;
  rec.eta_hat = signed_sum.mod2();
  return rec;
}

// Exact Born sampling by inverse CDF over the d^3 joint distribution of the
// setting's measurement bases.  Shot t consumes stream words 2t (setting
// choice, reserved even when the policy is deterministic) and 2t+1 (sample).
inline std::vector<ShotRecord> sample(const StateVector& state,
                                      const RunConfig& config,
                                      const LatticeParams& params) {
  if (std::abs(state.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("sample: state is not normalized");
  const LocalOperator f = dft(params);
  std::array<std::optional<detail::SettingDistribution>, 4> dists;
  const auto dist_for = [&](int i) -> const detail::SettingDistribution& {
    if (!dists[i]) dists[i] = detail::born_cdf(state, i, f);
    return *dists[i];
  };
  std::vector<ShotRecord> records;
  records.reserve(config.shots);
  for (int t = 0; t < config.shots; ++t) {
    const double u_setting = rng::uniform(config.seed, 2 * uint64_t(t));
    const double u_sample = rng::uniform(config.seed, 2 * uint64_t(t) + 1);
    int setting = config.fixed_setting;
    if (config.policy == SettingPolicy::cycle_all_four)
      setting = t % 4;
    else if (config.policy == SettingPolicy::random_choice)
      setting = std::min(3, static_cast<int>(u_setting * 4.0));
    const Eigen::Index joint = detail::draw_index(dist_for(setting), u_sample);
    records.push_back(make_record(setting, joint, params));
  }
  return records;
}

struct SettingStats {
  int setting = 0;
  long n = 0;
  std::array<long, 2> parity_counts = {0, 0};
  std::map<Rational, long> eta_counts;
  // fraction of shots whose parity (resp. eta_hat) equals the target
  double match_fraction = 0.0;
  bool has_target = false;
};

inline SettingStats setting_statistics(
    const std::vector<ShotRecord>& records,
    std::optional<int> target_parity = std::nullopt,
    std::optional<Rational> target_eta = std::nullopt) {
  if (records.empty())
    throw std::invalid_argument("setting_statistics: no records");
  SettingStats stats;
  stats.setting = records.front().setting;
  long matches = 0;
  for (const ShotRecord& rec : records) {
    if (rec.setting != stats.setting)
      throw std::invalid_argument("setting_statistics: mixed settings");
    ++stats.n;
    ++stats.parity_counts[rec.parity];
    ++stats.eta_counts[rec.eta_hat];
    if (target_parity && rec.parity == *target_parity) ++matches;
    if (target_eta && rec.eta_hat == *target_eta) ++matches;
  }
  stats.has_target = target_parity.has_value() || target_eta.has_value();
  if (stats.has_target)
    stats.match_fraction =
        static_cast<double>(matches) / static_cast<double>(stats.n);
  return stats;
}

// M = sum_i sigma_i E_i with E_i the exact expectation of the digit-parity
// observable exp(i*pi*(sum of unit digits)) under setting i, and signs
// sigma_i = +1 where b_i = 1, -1 where b_i = 0 (so the reference
// b = (1,0,0,0) uses (+,-,-,-) and reaches M = -4).  Any fixed sign pattern
// obeys |M| <= 2 for local-hidden-variable models.
struct MerminResult {
  std::array<double, 4> expectations = {0, 0, 0, 0};
  std::array<int, 4> signs = {0, 0, 0, 0};
  double statistic = 0.0;
};

inline MerminResult mermin_statistic(const StateVector& state,
                                     const LatticeParams& params,
                                     const BVector& b = BVector{{1, 0, 0, 0}}) {
  const LocalOperator f = dft(params);
  MerminResult result;
  for (int i = 0; i < 4; ++i) {
    const StateVector op_psi =
        detail::apply_line(System::binary_ghz, i, state, params, f);
    result.expectations[i] = state.amp.dot(op_psi.amp).real();
    result.signs[i] = b.b[i] == 1 ? 1 : -1;
    result.statistic += result.signs[i] * result.expectations[i];
  }
  return result;
}

}  // namespace ghz
