// Command-line driver: every verification and simulation as a subcommand
// with JSON (or CSV, for shot streams) output.  Exit codes: 0 all checks in
// scope pass, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "ghz/io.hpp"
#include "ghz/report.hpp"

namespace {

using ghz::Json;
using ghz::Rational;

std::int64_t max_dim_from_env() {
  const char* raw = std::getenv("GHZ_MAX_DIM");
  if (!raw) return ghz::default_max_dim();
  try {
    const std::int64_t v = std::stoll(raw);
    if (v <= 0) throw std::invalid_argument("nonpositive");
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError("GHZ_MAX_DIM",
                               "must be a positive integer amplitude cap");
  }
}

// Config files are JSON mirroring the flags, either flat ({"s": 2}) or
// grouped by subcommand ({"measure": {"shots": 500}}); command-line flags
// win on conflict.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::vector<std::string> subcommands)
      : subcommands_(std::move(subcommands)) {}

  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    input >> j;
    if (!j.is_object())
      throw CLI::FileError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    const auto as_string = [](const Json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        for (const auto& [name, inner] : value.items()) {
          CLI::ConfigItem item;
          item.parents = {key};
          item.name = name;
          item.inputs = {as_string(inner)};
          items.push_back(std::move(item));
        }
      } else {
        // flat key: offer it to every subcommand that takes the option
        for (const std::string& sub : subcommands_) {
          CLI::ConfigItem item;
          item.parents = {sub};
          item.name = key;
          item.inputs = {as_string(value)};
          items.push_back(std::move(item));
        }
      }
    }
    return items;
  }

 private:
  std::vector<std::string> subcommands_;
};

ghz::BVector parse_b(const std::string& text) {
  ghz::BVector b;
  std::stringstream ss(text);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 4 || (tok != "0" && tok != "1"))
      throw CLI::ValidationError("--b", "expects four comma-separated bits");
    b.b[i++] = tok == "1" ? 1 : 0;
  }
  if (i != 4)
    throw CLI::ValidationError("--b", "expects four comma-separated bits");
  return b;
}

std::array<Rational, 4> parse_eta(const std::string& text) {
  std::array<Rational, 4> eta;
  std::stringstream ss(text);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 4)
      throw CLI::ValidationError("--eta", "expects four rationals");
    eta[i++] = Rational::parse(tok);
  }
  if (i != 4) throw CLI::ValidationError("--eta", "expects four rationals");
  return eta;
}

// "x0,p0;x0,p0;x0,p0" with rationals as num/den
std::array<ghz::CombLabel, 3> parse_labels(const std::string& text) {
  std::array<ghz::CombLabel, 3> labels;
  std::stringstream parties(text);
  std::string party;
  int j = 0;
  while (std::getline(parties, party, ';')) {
    if (j >= 3)
      throw CLI::ValidationError("--labels", "expects three x0,p0 pairs");
    const auto comma = party.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--labels", "each party needs x0,p0");
    labels[j].x0 = Rational::parse(party.substr(0, comma));
    labels[j].p0 = Rational::parse(party.substr(comma + 1));
    ++j;
  }
  if (j != 3)
    throw CLI::ValidationError("--labels", "expects three x0,p0 pairs");
  return labels;
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
  } else {
    ghz::atomic_write(output_path, content);
  }
}

void emit_json(const Json& j, const std::string& output_path) {
  emit(j.dump(2), output_path);
}

int finish(bool pass) { return pass ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-variable GHZ verification laboratory"};
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON config file mirroring the flags");

  std::string output_path;
  app.add_option("--output", output_path,
                 "write results to this file (atomic) instead of stdout")
      ->configurable(false);

  int s = 2;
  std::string b_text = "1,0,0,0";
  std::string eta_text;
  std::string labels_text;
  std::string state_path;
  std::string settings_text = "all";
  std::string format = "json";
  std::string mode = "digits";
  int shots = 10000;
  long samples = 100000;
  std::uint64_t seed = 42;
  bool expect_deterministic = false;

  CLI::App* verify = app.add_subcommand(
      "verify-algebra", "exact certificates for the operator family");

  CLI::App* lattice = app.add_subcommand(
      "lattice-checks", "unitarity, anticommutation, translation structure");
  lattice->add_option("--s", s, "lattice size (power of two)")
      ->default_val("2");

  CLI::App* build = app.add_subcommand(
      "build-state", "construct an eigenstate and verify its spectrum");
  build->add_option("--s", s)->default_val("2");
  build->add_option("--b", b_text, "four bits, odd parity")
      ->default_val("1,0,0,0");
  build->add_option("--labels", labels_text,
                    "per-party x0,p0 pairs as 'x0,p0;x0,p0;x0,p0'");

  CLI::App* solve = app.add_subcommand(
      "solve", "enumerate label tuples with prescribed residues");
  solve->add_option("--s", s)->default_val("2");
  solve->add_option("--b", b_text)->default_val("1,0,0,0");
  solve->add_option("--eta", eta_text, "four rationals, e.g. 3/2,1/2,1/2,1/2")
      ->required();

  CLI::App* measure = app.add_subcommand(
      "measure", "Born-rule sampling of local x/p measurements");
  measure->add_option("--state", state_path, "state file from build-state")
      ->required();
  measure->add_option("--settings", settings_text, "xxx|xpp|pxp|ppx|all")
      ->default_val("all");
  measure->add_option("--shots", shots)->default_val("10000");
  measure->add_option("--seed", seed)->default_val("42");
  measure->add_option("--format", format, "json|csv")->default_val("json");
  measure->add_flag("--expect-deterministic", expect_deterministic,
                    "fail (exit 1) unless every shot matches the target "
                    "parity of its setting");

  CLI::App* mermin =
      app.add_subcommand("mermin", "exact parity correlators and M");
  mermin->add_option("--state", state_path)->required();
  mermin->add_option("--b", b_text,
                     "sign-pattern source; default: the state file's b");

  CLI::App* lhv = app.add_subcommand(
      "lhv", "local-hidden-variable falsification");
  lhv->add_option("--mode", mode, "digits|real|assoc")->default_val("digits");
  lhv->add_option("--b", b_text)->default_val("1,0,0,0");
  lhv->add_option("--eta", eta_text)->default_val("1,0,0,0");
  lhv->add_option("--samples", samples)->default_val("100000");
  lhv->add_option("--seed", seed)->default_val("42");
  lhv->add_option("--s", s)->default_val("2");

  CLI::App* report = app.add_subcommand("report", "verification batteries");
  bool report_all = false;
  report->add_flag("--all", report_all, "run the full battery");

  for (CLI::App* sub : {verify, lattice, build, solve, measure, mermin, lhv,
                        report})
    sub->fallthrough();

  const std::vector<std::string> sub_names = {
      "verify-algebra", "lattice-checks", "build-state", "solve",
      "measure",        "mermin",         "lhv",         "report"};
  app.config_formatter(std::make_shared<JsonConfig>(sub_names));
  app.allow_config_extras(true);

  try {
    app.parse(argc, argv);

    const std::int64_t max_dim = max_dim_from_env();

    if (*verify) {
      const ghz::Block block = ghz::algebra_block();
      Json j = block.details;
      j["pass"] = block.pass;
      emit_json(j, output_path);
      return finish(block.pass);
    }

    if (*lattice) {
      ghz::Block block = ghz::lattice_block(s);
      const ghz::LatticeParams params = ghz::make_lattice(s, max_dim);
      Json cells = Json::array();
      bool table_ok = true;
      for (const ghz::CommutationCell& cell : ghz::commutation_table(
               params, -params.m, params.m + 1, -params.m, params.m + 1)) {
        table_ok = table_ok && cell.pass;
        cells.push_back(ghz::to_json(cell));
      }
      Json j = block.details;
      j["commutation_table"] = std::move(cells);
      j["pass"] = block.pass && table_ok;
      emit_json(j, output_path);
      return finish(block.pass && table_ok);
    }

    if (*build) {
      const ghz::LatticeParams params = ghz::make_lattice(s, max_dim);
      const ghz::BVector b = parse_b(b_text);
      std::array<ghz::CombLabel, 3> labels{};
      if (!labels_text.empty()) labels = parse_labels(labels_text);
      for (ghz::CombLabel& label : labels)
        ghz::validate_label(label, params);
      const ghz::StateVector psi = ghz::psi_bz(b, labels, params);
      const std::array<Rational, 6> z = {labels[0].x0, labels[1].x0,
                                         labels[2].x0, labels[0].p0,
                                         labels[1].p0, labels[2].p0};
      const std::array<Rational, 4> eta = ghz::eta_of(b, z);

      Json j = ghz::state_to_json(psi, params);
      j["b"] = b.b;
      Json label_json = Json::array();
      for (const ghz::CombLabel& label : labels)
        label_json.push_back({label.x0.str(), label.p0.str()});
      j["labels"] = std::move(label_json);
      Json eta_json = Json::array();
      for (const Rational& e : eta) eta_json.push_back(e.str());
      j["eta"] = std::move(eta_json);

      bool pass = true;
      Json reports = Json::array();
      for (ghz::System system :
           {ghz::System::v_ops, ghz::System::modular_ghz,
            ghz::System::ghz_mod_bin, ghz::System::binary1_ghz,
            ghz::System::binary_ghz}) {
        const ghz::EigenReport rep =
            ghz::verify_eigensystem(psi, system, params);
        pass = pass && rep.max_residual <= 1e-10 && rep.eta_sum_ok;
        reports.push_back(ghz::to_json(rep));
      }
      j["reports"] = std::move(reports);
      j["pass"] = pass;
      emit_json(j, output_path);
      return finish(pass);
    }

    if (*solve) {
      const ghz::LatticeParams params = ghz::make_lattice(s, max_dim);
      const ghz::BVector b = parse_b(b_text);
      const std::array<Rational, 4> eta = parse_eta(eta_text);
      const std::vector<ghz::EigenSolution> solutions =
          ghz::solve_constraints(b, eta, params);
      Json list = Json::array();
      for (const ghz::EigenSolution& sol : solutions)
        list.push_back(ghz::to_json(sol));
      emit_json(Json{{"b", b.b},
                     {"solution_count", solutions.size()},
                     {"solutions", std::move(list)}},
                output_path);
      return 0;
    }

    if (*measure) {
      const ghz::StateFile file =
          ghz::state_from_json(ghz::read_json_file(state_path), max_dim);
      std::vector<int> chosen;
      if (settings_text == "all")
        chosen = {0, 1, 2, 3};
      else
        chosen = {ghz::setting_from_name(settings_text)};

      std::vector<ghz::ShotRecord> records;
      Json summaries = Json::array();
      long mismatches = 0;
      for (int i : chosen) {
        ghz::RunConfig config;
        config.shots = shots;
        config.seed = seed;
        config.policy = ghz::SettingPolicy::fixed;
        config.fixed_setting = i;
        std::vector<ghz::ShotRecord> batch =
            ghz::sample(file.state, config, file.params);

        std::optional<int> target;
        if (file.b) target = file.b->b[i];
        else if (expect_deterministic) {
          const ghz::MerminResult exact =
              ghz::mermin_statistic(file.state, file.params);
          target = exact.expectations[i] < 0.0 ? 1 : 0;
        }
        const ghz::SettingStats stats = ghz::setting_statistics(batch, target);
        if (target)
          mismatches += stats.n - std::llround(stats.match_fraction * stats.n);
        Json stats_json = ghz::to_json(stats);
        if (target) stats_json["target_parity"] = *target;
        summaries.push_back(std::move(stats_json));
        records.insert(records.end(), batch.begin(), batch.end());
      }

      if (format == "csv") {
        emit(ghz::shots_csv(records), output_path);
      } else if (format == "json") {
        Json j{{"shots", records.size()}, {"seed", seed}};
        j["per_setting"] = std::move(summaries);
        if (expect_deterministic) j["mismatches"] = mismatches;
        emit_json(j, output_path);
      } else {
        throw CLI::ValidationError("--format", "expects json or csv");
      }
      return finish(!expect_deterministic || mismatches == 0);
    }

    if (*mermin) {
      const ghz::StateFile file =
          ghz::state_from_json(ghz::read_json_file(state_path), max_dim);
      ghz::BVector b{{1, 0, 0, 0}};
      if (mermin->count("--b"))
        b = parse_b(b_text);
      else if (file.b)
        b = *file.b;
      const ghz::MerminResult result =
          ghz::mermin_statistic(file.state, file.params, b);
      Json j = ghz::to_json(result);
      j["b"] = b.b;
      emit_json(j, output_path);
      return 0;
    }

    if (*lhv) {
      if (mode == "digits") {
        const ghz::DigitLhvReport rep = ghz::enumerate_digit_lhv(parse_b(b_text));
        Json j = ghz::to_json(rep);
        const bool pass = rep.parity_identity_violations == 0 &&
                          (rep.b.parity() == 0 || rep.full_solutions == 0);
        j["pass"] = pass;
        emit_json(j, output_path);
        return finish(pass);
      }
      if (mode == "real") {
        const ghz::RealLhvReport rep =
            ghz::random_real_lhv(parse_eta(eta_text), samples, seed);
        Json j = ghz::to_json(rep);
        const bool pass = rep.full_solutions == 0 &&
                          rep.parity_identity_violations == 0;
        j["pass"] = pass;
        emit_json(j, output_path);
        return finish(pass);
      }
      if (mode == "assoc") {
        const ghz::AssocGapReport rep =
            ghz::check_associativity_gap(ghz::make_lattice(s, max_dim));
        Json j = ghz::to_json(rep);
        const bool pass = rep.spectra_negated && rep.diagonal_control_ok;
        j["pass"] = pass;
        emit_json(j, output_path);
        return finish(pass);
      }
      throw CLI::ValidationError("--mode", "expects digits, real, or assoc");
    }

    if (*report) {
      if (!report_all)
        throw CLI::ValidationError("report", "only --all is available");
      const ghz::FullReport full = ghz::run_all();
      emit_json(full.json, output_path);
      return finish(full.pass);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
