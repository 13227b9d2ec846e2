#pragma once

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ghz/lhv.hpp"
#include "ghz/measurement.hpp"
#include "ghz/states.hpp"

namespace ghz {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return Rational::parse(j.get<std::string>());
}

// ---- state vectors ----

inline Json state_to_json(const StateVector& state, const LatticeParams& params) {
  Json j;
  j["header"] = {{"s", params.s},
                 {"parties", 3},
                 {"basis", "position"},
                 {"ordering", "A-major"}};
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < state.amp.size(); ++i)
    amps.push_back({state.amp(i).real(), state.amp(i).imag()});
  j["amplitudes"] = std::move(amps);
  return j;
}

struct StateFile {
  LatticeParams params;
  StateVector state;
  std::optional<BVector> b;
  std::optional<std::array<Rational, 4>> eta;
};

inline StateFile state_from_json(const Json& j,
                                 std::int64_t max_dim = default_max_dim()) {
  const auto& header = j.at("header");
  if (header.at("parties") != 3 || header.at("basis") != "position" ||
      header.at("ordering") != "A-major")
    throw std::invalid_argument("state file: unsupported header");
  StateFile file;
  file.params = make_lattice(header.at("s").get<int>(), max_dim);
  const auto& amps = j.at("amplitudes");
  const Eigen::Index want = static_cast<Eigen::Index>(file.params.d) *
                            file.params.d * file.params.d;
  if (static_cast<Eigen::Index>(amps.size()) != want)
    throw std::invalid_argument("state file: amplitude count mismatch");
  file.state.d = file.params.d;
  file.state.amp = Vector(want);
  for (Eigen::Index i = 0; i < want; ++i)
    file.state.amp(i) =
        Complex(amps[i][0].get<double>(), amps[i][1].get<double>());
  if (j.contains("b")) {
    BVector b;
    for (int i = 0; i < 4; ++i) b.b[i] = j["b"][i].get<int>();
    file.b = b;
  }
  if (j.contains("eta")) {
    std::array<Rational, 4> eta;
    for (int i = 0; i < 4; ++i) eta[i] = rational_from_json(j["eta"][i]);
    file.eta = eta;
  }
  return file;
}

// ---- reports ----

inline Json to_json(const WeylWord& w) { return to_string(w); }

inline Json to_json(const CommutationCell& cell) {
  return Json{{"kind", cell.kind},
              {"indices", {cell.i, cell.j}},
              {"commutator_norm", cell.commutator_norm},
              {"expected_zero", cell.expected_zero},
              {"pass", cell.pass}};
}

inline Json to_json(const EigenReport& report) {
  Json lines = Json::array();
  for (const LineResult& line : report.lines)
    lines.push_back({{"eigenvalue", {line.eigenvalue.real(),
                                     line.eigenvalue.imag()}},
                     {"residual", line.residual},
                     {"snapped", rational_json(line.snapped)},
                     {"snapped_ok", line.snapped_ok}});
  return Json{{"system", system_name(report.system)},
              {"lines", std::move(lines)},
              {"max_residual", report.max_residual},
              {"eta_sum_odd", report.eta_sum_ok}};
}

inline Json to_json(const EigenSolution& sol) {
  Json z = Json::array(), eta = Json::array();
  for (const Rational& v : sol.z) z.push_back(rational_json(v));
  for (const Rational& v : sol.eta) eta.push_back(rational_json(v));
  return Json{{"b", sol.b.b}, {"z", std::move(z)}, {"eta", std::move(eta)}};
}

inline Json to_json(const DigitLhvReport& report) {
  return Json{{"mode", "digits"},
              {"b", report.b.b},
              {"assignments_checked", report.assignments_checked},
              {"full_solutions", report.full_solutions},
              {"max_satisfied", report.max_satisfied},
              {"satisfied_histogram", report.satisfied_histogram},
              {"parity_identity_violations",
               report.parity_identity_violations}};
}

inline Json to_json(const RealLhvReport& report) {
  Json eta = Json::array();
  for (const Rational& v : report.eta) eta.push_back(rational_json(v));
  return Json{{"mode", "real"},
              {"eta", std::move(eta)},
              {"assignments_checked", report.assignments_checked},
              {"full_solutions", report.full_solutions},
              {"parity_identity_violations",
               report.parity_identity_violations}};
}

inline Json to_json(const AssocGapReport& report) {
  Json xy = Json::array(), yx = Json::array();
  for (Complex v : report.xy_spectrum) xy.push_back({v.real(), v.imag()});
  for (Complex v : report.yx_spectrum) yx.push_back({v.real(), v.imag()});
  return Json{{"mode", "assoc"},
              {"xy_spectrum", std::move(xy)},
              {"yx_spectrum", std::move(yx)},
              {"spectra_negated", report.spectra_negated},
              {"anticommutator_norm", report.anticommutator_norm},
              {"diagonal_control_ok", report.diagonal_control_ok}};
}

inline Json to_json(const MerminResult& result) {
  return Json{{"expectations", result.expectations},
              {"signs", result.signs},
              {"M", result.statistic}};
}

inline Json to_json(const SettingStats& stats) {
  Json eta_counts = Json::object();
  for (const auto& [eta, count] : stats.eta_counts)
    eta_counts[eta.str()] = count;
  Json j{{"setting", setting_name(stats.setting)},
         {"shots", stats.n},
         {"parity_counts", stats.parity_counts},
         {"eta_hat_counts", std::move(eta_counts)}};
  if (stats.has_target) j["match_fraction"] = stats.match_fraction;
  return j;
}

// ---- shot CSV ----

inline std::string shots_csv(const std::vector<ShotRecord>& records) {
  std::ostringstream out;
  out << "shot,setting,rawA,rawB,rawC,digitA,digitB,digitC,parity,eta_hat\n";
  long t = 0;
  for (const ShotRecord& rec : records) {
    out << t++ << ',' << setting_name(rec.setting);
    for (int j = 0; j < 3; ++j) out << ',' << rec.raw[j].str();
    for (int j = 0; j < 3; ++j) out << ',' << rec.digit[j];
    out << ',' << rec.parity << ',' << rec.eta_hat.str() << '\n';
  }
  return out.str();
}

inline Json shots_summary(const std::vector<ShotRecord>& records) {
  Json per_setting = Json::array();
  std::array<std::vector<ShotRecord>, 4> by_setting;
  for (const ShotRecord& rec : records) by_setting[rec.setting].push_back(rec);
  for (int i = 0; i < 4; ++i)
    if (!by_setting[i].empty())
      per_setting.push_back(to_json(setting_statistics(by_setting[i])));
  return Json{{"shots", records.size()}, {"settings", std::move(per_setting)}};
}

// ---- files ----

inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out.flush())
      throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Json j;
  in >> j;
  return j;
}

}  // namespace ghz
