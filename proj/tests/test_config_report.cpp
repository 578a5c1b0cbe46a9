// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qtomo/config.hpp"
#include "qtomo/curves.hpp"
#include "qtomo/errors.hpp"
#include "qtomo/report.hpp"

using namespace qtomo;
using std::numbers::pi;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string error_of(std::string_view json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_angle") {
  CHECK(parse_angle("pi") == doctest::Approx(pi));
  CHECK(parse_angle("pi/4") == doctest::Approx(pi / 4));
  CHECK(parse_angle("3pi/4") == doctest::Approx(3 * pi / 4));
  CHECK(parse_angle("3*pi/4") == doctest::Approx(3 * pi / 4));
  CHECK(parse_angle("-pi/2") == doctest::Approx(-pi / 2));
  CHECK(parse_angle("0.25") == 0.25);
  CHECK_THROWS_AS(parse_angle("tau"), ConfigError);
  CHECK_THROWS_AS(parse_angle(""), ConfigError);
}

TEST_CASE("parse_config full schema") {
  const ExperimentConfig c = parse_config(R"({
    // comment lines are allowed
    "state": {"spherical": {"r": 0.99, "theta": "pi/4", "phi": "pi/4"}},
    "povm": "xyz",
    "n_grid": {"min": 10, "max": 1000, "points": 5},
    "sequences": 123,
    "seed": 9,
    "losses": ["if"],
    "outputs": ["approx", "crb"],
    "mle": {"max_iterations": 50, "linear_fast_path": false}
  })");
  CHECK(c.state.bloch().norm() == doctest::Approx(0.99));
  CHECK(c.n_grid.front() == 10);
  CHECK(c.n_grid.back() == 1000);
  CHECK(c.n_grid.size() == 5);
  CHECK(c.sequences == 123);
  CHECK(c.seed == 9);
  CHECK(c.wants(LossKind::kInfidelity));
  CHECK_FALSE(c.wants(LossKind::kHilbertSchmidt));
  CHECK_FALSE(c.wants(OutputKind::kEmpirical));
  CHECK(c.mle.max_iterations == 50);
  CHECK_FALSE(c.mle.linear_fast_path);
}

TEST_CASE("parse_config defaults") {
  const ExperimentConfig c = parse_config(R"({"state": {"cartesian": [0.1, 0.2, 0.3]}})");
  CHECK(c.n_grid == default_n_grid());
  CHECK(c.n_grid.size() == 20);
  CHECK(c.n_grid.front() == 10);
  CHECK(c.n_grid.back() == 1000000);
  CHECK(c.sequences == 10000);
  CHECK(c.losses.size() == 2);
  CHECK(c.outputs.size() == 4);
}

TEST_CASE("parse_config errors carry the key path") {
  CHECK(error_of(R"({"state": {"cartesian": [0,0,0]}, "sequence": 5})").find("sequence") !=
        std::string::npos);
  CHECK(error_of(R"({"state": {"cartesian": [0,0,0]}, "mle": {"tol": 1}})")
            .find("config.mle") != std::string::npos);
  CHECK(error_of(R"({"state": {"cartesian": [0.9, 0.9, 0]}})").find("config.state") !=
        std::string::npos);
  CHECK(error_of(R"({"state": {"cartesian": [0,0,0]}, "losses": ["l2"]})")
            .find("config.losses[0]") != std::string::npos);
  CHECK(error_of(R"({"state": {"cartesian": [0,0,0]}, "n_grid": [10, 5]})")
            .find("config.n_grid") != std::string::npos);
  CHECK(error_of(R"({"povm": "xyz"})").find("config.state") != std::string::npos);
  CHECK(error_of(R"({"state": {"spherical": {"theta": 0}}})").find("r") != std::string::npos);
  CHECK(error_of("{not json") != "");
  const std::string bad_povm = R"({"state": {"cartesian": [0,0,0]},
      "povm": {"effects": [{"v": 0.5, "w": [0,0,0.5]}, {"v": 0.5, "w": [0,0,-0.5]}]}})";
  CHECK(error_of(bad_povm).find("config.povm") != std::string::npos);
}

TEST_CASE("config echo parses back to the same experiment") {
  const ExperimentConfig c = parse_config(R"({
    "state": {"spherical": {"r": 0.5, "theta": 1.0, "phi": 2.0}},
    "n_grid": [10, 20], "sequences": 5, "seed": 3, "losses": ["hs"]})");
  const ExperimentConfig d = parse_config(config_to_json(c));
  CHECK(d.state.bloch() == c.state.bloch());
  CHECK(d.n_grid == c.n_grid);
  CHECK(d.seed == c.seed);
  CHECK(d.losses == c.losses);
  CHECK(config_to_json(d) == config_to_json(c));
}

TEST_CASE("CSV value encoding") {
  CHECK(format_value(std::nullopt) == "NA");
  CHECK(format_value(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(!parse_value("NA").has_value());
  CHECK(std::isinf(*parse_value("inf")));
  CHECK_THROWS_AS(parse_value("1.5x"), ConfigError);
}

TEST_CASE("every curve row round-trips losslessly") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-30, 5);
  std::vector<LossCurveRecord> rows;
  for (int i = 0; i < 2000; ++i) {
    LossCurveRecord r;
    r.loss_kind = i % 2 ? LossKind::kInfidelity : LossKind::kHilbertSchmidt;
    r.n = 1 + i * 37;
    auto maybe = [&](int k) -> std::optional<double> {
      if ((i + k) % 5 == 0) return std::nullopt;
      return std::pow(10.0, u(rng)) * (k == 0 ? 1.0 : 1.0 / 3.0);
    };
    r.empirical_mean = maybe(0);
    r.empirical_stderr = maybe(1);
    r.approx = maybe(2);
    r.crb = maybe(3);
    r.n_star = i % 7 == 0 ? std::optional<double>(std::numeric_limits<double>::infinity())
                          : maybe(4);
    CHECK(parse_curve_row(format_curve_row(r)) == r);
    rows.push_back(r);
  }
  const Metadata meta{{"tool", std::string(kToolVersion)}, {"seed", "1"}};
  const CurveTable t = parse_curve_csv(format_curve_csv(meta, rows));
  CHECK(t.metadata == meta);
  CHECK(t.rows == rows);
  CHECK_THROWS_AS(parse_curve_csv("a,b\n"), ConfigError);
  CHECK_THROWS_AS(parse_curve_row("hs,10,1,2,3"), ConfigError);
}

TEST_CASE("nstar_report") {
  const Povm xyz = xyz_povm();
  CHECK(nstar_report(bloch_from_spherical({0.9, 0, 0}), xyz).floor == 114);
  CHECK(nstar_report(bloch_from_spherical({0.99, pi / 4, pi / 4}), xyz).floor == 37947);
  const auto pure = nstar_report(bloch_from_spherical({1, pi / 4, pi / 4}), xyz);
  CHECK(pure.text == "infinity");
  CHECK_FALSE(pure.floor.has_value());
  CHECK_THROWS_AS(nstar_report(BlochVector(), xyz), UndefinedDirectionError);
}

TEST_CASE("regime selection is total") {
  CHECK(select_regime(BlochVector()) == Regime::kMaximallyMixed);
  CHECK(select_regime(BlochVector(0, 0, 1 - 2e-9)) == Regime::kMixed);
  CHECK(select_regime(BlochVector(0, 0, 1 - 5e-10)) == Regime::kPure);
  CHECK(select_regime(BlochVector(0, 0, 1)) == Regime::kPure);
}

TEST_CASE("compute_curves per regime") {
  ExperimentConfig c;
  c.n_grid = {100, 1000};
  c.sequences = 200;

  SUBCASE("mixed") {
    c.state = StateSpec::from_spherical({0.9, pi / 4, pi / 4});
    const CurveSet cs = compute_curves(c);
    CHECK(cs.regime == Regime::kMixed);
    REQUIRE(cs.records.size() == 4);
    for (const auto& r : cs.records) {
      CHECK(r.empirical_mean.has_value());
      CHECK(r.approx.has_value());
      CHECK(r.crb.has_value());
      CHECK(*r.n_star == doctest::Approx(417.75));
    }
  }
  SUBCASE("pure: infidelity bound undefined, HS bound drawn") {
    c.state = StateSpec::from_spherical({1, pi / 4, pi / 4});
    const CurveSet cs = compute_curves(c);
    CHECK(cs.regime == Regime::kPure);
    for (const auto& r : cs.records) {
      CHECK(std::isinf(*r.n_star));
      CHECK(r.approx.has_value());
      CHECK(r.crb.has_value() == (r.loss_kind == LossKind::kHilbertSchmidt));
    }
    CHECK(*cs.records[0].approx == doctest::Approx(1.25625e-2));
  }
  SUBCASE("maximally mixed: N* undefined, curves still produced") {
    c.state = StateSpec::from_cartesian(Vec3::Zero());
    const CurveSet cs = compute_curves(c);
    CHECK_FALSE(cs.n_star.has_value());
    CHECK_FALSE(cs.warnings.empty());
    for (const auto& r : cs.records) {
      CHECK(r.empirical_mean.has_value());
      CHECK_FALSE(r.n_star.has_value());
      CHECK(r.crb.has_value());
    }
  }
  SUBCASE("only requested series are computed") {
    c.state = StateSpec::from_spherical({0.9, 0, 0});
    c.outputs = {OutputKind::kCrb};
    const CurveSet cs = compute_curves(c);
    for (const auto& r : cs.records) {
      CHECK_FALSE(r.empirical_mean.has_value());
      CHECK_FALSE(r.approx.has_value());
      CHECK_FALSE(r.n_star.has_value());
      CHECK(r.crb.has_value());
    }
  }
}

TEST_CASE("curve files carry metadata and parse back") {
  ExperimentConfig c;
  c.state = StateSpec::from_spherical({0.9, 0, 0});
  c.n_grid = {10, 100};
  c.sequences = 50;
  c.seed = 4242;
  const CurveSet cs = compute_curves(c);
  const auto dir = std::filesystem::temp_directory_path() / "qtomo_curve_test";
  std::filesystem::remove_all(dir);
  const auto files = write_curve_files(cs, dir);
  CHECK(files.size() == 3);
  const CurveTable t = parse_curve_csv(read_file(dir / "curves_hs.csv"));
  CHECK(t.rows.size() == 2);
  bool has_seed = false, has_threshold = false, has_config = false;
  for (const auto& [k, v] : t.metadata) {
    has_seed |= k == "seed" && v == "4242";
    has_threshold |= k == "pure_regime_threshold";
    has_config |= k == "config";
  }
  CHECK(has_seed);
  CHECK(has_threshold);
  CHECK(has_config);
  // The config echo is itself a valid config.
  for (const auto& [k, v] : t.metadata) {
    if (k == "config") CHECK(parse_config(v).seed == 4242);
  }
  CHECK(read_file(dir / "series.tsv").find("empirical\ths\t10\t") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("figure configurations") {
  CHECK(figure_ids().size() == 8);
  const ExperimentConfig c = figure_config("EIF-4");
  CHECK(c.state.bloch().norm() == doctest::Approx(0.99));
  CHECK(c.sequences == 10000);
  CHECK(c.losses == std::vector<LossKind>{LossKind::kInfidelity});
  CHECK(figure_config("EHS-2").state.bloch().pure());
  try {
    figure_config("EIF-9");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("EIF-pure") != std::string::npos);
  }
  CHECK_THROWS_AS(figure_config("TypN"), ConfigError);
}

TEST_CASE("TypN table") {
  const auto rows = typn_table();
  REQUIRE(rows.size() == 999);
  CHECK(rows.front().r == doctest::Approx(0.001));
  CHECK(rows.back().r == doctest::Approx(0.999));
  for (const auto& row : rows) {
    const double r = row.r;
    CHECK(row.axis == doctest::Approx(6 * (1 + r) / (1 - r)).epsilon(1e-12));
    CHECK(row.diagonal ==
          doctest::Approx(6 * ((1 + r) / (1 - r) + 0.625 * r * r / ((1 - r) * (1 - r))))
              .epsilon(1e-12));
  }
}

TEST_CASE("dry-run plan text") {
  const std::string plan = describe_plan(figure_config("EHS-1"));
  CHECK(plan.find("regime mixed") != std::string::npos);
  CHECK(plan.find("sequences: 10000") != std::string::npos);
}
