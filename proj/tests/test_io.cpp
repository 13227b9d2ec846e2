#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "ghz/io.hpp"

using ghz::BVector;
using ghz::CombLabel;
using ghz::Json;
using ghz::LatticeParams;
using ghz::Rational;
using ghz::StateVector;

TEST_CASE("rational json forms") {
  CHECK(ghz::rational_json(Rational(3, 2)) == Json("3/2"));
  CHECK(ghz::rational_json(Rational(-4)) == Json("-4"));
  CHECK(ghz::rational_from_json(Json("3/2")) == Rational(3, 2));
  CHECK(ghz::rational_from_json(Json(5)) == Rational(5));
}

TEST_CASE("state files round trip") {
  const LatticeParams params = ghz::make_lattice(2);
  const CombLabel origin{Rational(0), Rational(1, 2)};
  const StateVector psi = ghz::psi_bz(BVector{{0, 0, 0, 1}},
                                      {origin, origin, origin}, params);
  Json j = ghz::state_to_json(psi, params);
  j["b"] = std::array<int, 4>{0, 0, 0, 1};
  j["eta"] = {"1/2", "0", "3/2", "1"};

  const ghz::StateFile file = ghz::state_from_json(j);
  CHECK(file.params.s == 2);
  REQUIRE(file.state.amp.size() == psi.amp.size());
  CHECK((file.state.amp - psi.amp).norm() <= 1e-12);
  REQUIRE(file.b.has_value());
  CHECK(file.b->b == std::array<int, 4>{0, 0, 0, 1});
  REQUIRE(file.eta.has_value());
  CHECK((*file.eta)[0] == Rational(1, 2));
  CHECK((*file.eta)[2] == Rational(3, 2));
}

TEST_CASE("state files are validated") {
  const LatticeParams params = ghz::make_lattice(1);
  const StateVector psi = ghz::basis_state(params, 0, 0, 0);
  Json good = ghz::state_to_json(psi, params);

  Json bad_header = good;
  bad_header["header"]["parties"] = 2;
  CHECK_THROWS_AS(ghz::state_from_json(bad_header), std::invalid_argument);

  Json bad_count = good;
  bad_count["amplitudes"].erase(0);
  CHECK_THROWS_AS(ghz::state_from_json(bad_count), std::invalid_argument);

  Json big = good;
  big["header"]["s"] = 64;
  CHECK_THROWS_AS(ghz::state_from_json(big, 1000), std::invalid_argument);
}

TEST_CASE("shot csv layout") {
  const LatticeParams params = ghz::make_lattice(1);
  const std::vector<ghz::ShotRecord> records = {
      ghz::make_record(0, 0, params), ghz::make_record(2, 7, params)};
  const std::string csv = ghz::shots_csv(records);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "shot,setting,rawA,rawB,rawC,digitA,digitB,digitC,parity,eta_hat");
  std::getline(lines, line);
  // joint index 0 = (-1,-1,-1): digits 1,1,1, parity 1, line 0 sum -3 mod 2
  CHECK(line == "0,xxx,-1,-1,-1,1,1,1,1,1");
  std::getline(lines, line);
  // joint index 7 = (0,0,0) under setting pxp
  CHECK(line == "1,pxp,0,0,0,0,0,0,0,0");
  CHECK(!std::getline(lines, line));
}

TEST_CASE("atomic write leaves no temporary behind") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::filesystem::path target = dir / "ghz_io_test_output.json";
  std::filesystem::remove(target);
  ghz::atomic_write(target, "{\"k\": 1}\n");
  CHECK(std::filesystem::exists(target));
  CHECK(!std::filesystem::exists(target.string() + ".tmp"));
  const Json j = ghz::read_json_file(target);
  CHECK(j["k"] == 1);
  ghz::atomic_write(target, "{\"k\": 2}\n");
  CHECK(ghz::read_json_file(target)["k"] == 2);
  std::filesystem::remove(target);
}

TEST_CASE("word serialization in reports") {
  const ghz::GhzFamily family = ghz::ghz_family();
  CHECK(ghz::to_json(family.v1) == Json("0*pi | A:(1,0) B:(1,0) C:(1,0)"));
}
