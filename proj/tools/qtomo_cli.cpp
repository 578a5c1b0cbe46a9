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

// qtomo: finite-sample error analysis of one-qubit tomography.
//
//   qtomo nstar --spherical 0.9,0,0
//   qtomo curves --config run.json --out results/
//   qtomo reproduce EIF-4 --sequences 2000
//   qtomo validate-povm --config custom.json

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtomo/config.hpp"
#include "qtomo/curves.hpp"
#include "qtomo/errors.hpp"

namespace {

using namespace qtomo;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

StateSpec state_from_flags(const std::string& spherical, const std::string& cartesian) {
  if (!spherical.empty()) {
    const auto f = split_commas(spherical);
    if (f.size() != 3) throw ConfigError("--spherical expects r,theta,phi");
    return StateSpec::from_spherical({parse_angle(f[0]), parse_angle(f[1]), parse_angle(f[2])});
  }
  const auto f = split_commas(cartesian);
  if (f.size() != 3) throw ConfigError("--cartesian expects s1,s2,s3");
  return StateSpec::from_cartesian(Vec3(parse_angle(f[0]), parse_angle(f[1]), parse_angle(f[2])));
}

struct RunFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> sequences;
  std::string out = ".";
  bool dry_run = false;
  int threads = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed (overrides the config)");
  cmd->add_option("--sequences", f.sequences, "Simulated data sets per N (overrides the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
  cmd->add_flag("--dry-run", f.dry_run, "Validate and print the plan without sampling");
  cmd->add_option("--threads", f.threads, "OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
}

void apply_overrides(ExperimentConfig& c, const RunFlags& f) {
  if (f.seed) c.seed = *f.seed;
  if (f.sequences) c.sequences = *f.sequences;
  validate_config(c);
}

int run_curves(const ExperimentConfig& c, const RunFlags& f) {
  if (f.dry_run) {
    std::cout << describe_plan(c);
    return 0;
  }
  const CurveSet curves = compute_curves(c, ParallelOptions{f.threads});
  for (const auto& w : curves.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& p : write_curve_files(curves, f.out)) std::cout << "wrote " << p.string() << '\n';
  return 0;
}

int cmd_nstar(const std::string& config, const std::string& spherical,
              const std::string& cartesian) {
  ExperimentConfig c;
  c.n_grid = default_n_grid();
  if (!config.empty()) c = load_config(config);
  if (!spherical.empty() || !cartesian.empty()) {
    c.state = state_from_flags(spherical, cartesian);
    validate_config(c);
  }
  const BlochVector s = c.state.bloch();
  if (s.norm() == 0.0) {
    throw UndefinedDirectionError(
        "N* is undefined for the maximally mixed state s = 0: it has no boundary direction");
  }
  const NStarReport rep = nstar_report(s, c.povm.povm);
  std::cout << "state: " << c.state.describe() << '\n' << "N* = " << rep.text << '\n';
  return 0;
}

int cmd_validate_povm(const std::string& config) {
  ExperimentConfig c;
  if (!config.empty()) {
    // Parse without validating so that a broken POVM is reported, not thrown.
    std::ifstream in(config);
    if (!in) throw ConfigError("cannot open config file " + config);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      c = parse_config(buf.str());
    } catch (const ConfigError& e) {
      if (std::string(e.what()).rfind("config.povm: ", 0) != 0) throw;
      std::cout << "povm: invalid\n  " << e.what() << '\n';
      return 1;
    }
  }
  const Povm& p = c.povm.povm;
  const PovmValidation v = validate_povm(p);
  std::cout << "povm: " << c.povm.name << " (" << p.size() << " outcomes)\n"
            << "  complete: " << (v.complete ? "yes" : "no") << '\n'
            << "  positive: " << (v.positive ? "yes" : "no") << '\n'
            << "  informationally complete: " << (v.informationally_complete ? "yes" : "no")
            << " (rank " << v.w_rank << ")\n";
  for (const auto& f : v.failures) std::cout << "  failure: " << f << '\n';
  std::cout << (v.ok() ? "valid" : "invalid") << '\n';
  return v.ok() ? 0 : 1;
}

int cmd_reproduce(const std::string& id, const RunFlags& f) {
  if (id == "TypN") {
    if (f.dry_run) {
      std::cout << "TypN: N*(r) for (r,0,0) and (r,pi/4,pi/4), r = 0.001..0.999\n";
      return 0;
    }
    std::cout << "wrote " << write_typn(typn_table(), f.out).string() << '\n';
    return 0;
  }
  ExperimentConfig c = figure_config(id);
  apply_overrides(c, f);
  RunFlags g = f;
  g.out = (std::filesystem::path(f.out) / id).string();
  return run_curves(c, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-sample error analysis of one-qubit state tomography"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string nstar_config, spherical, cartesian;
  auto* nstar = app.add_subcommand("nstar", "Print the boundary threshold N* of a state");
  nstar->add_option("--config", nstar_config, "Config file (state and povm)")
      ->check(CLI::ExistingFile);
  auto* sph = nstar->add_option("--spherical", spherical, "r,theta,phi (angles accept pi/4)");
  auto* car = nstar->add_option("--cartesian", cartesian, "s1,s2,s3");
  sph->excludes(car);

  std::string curves_config;
  RunFlags curves_flags;
  auto* curves = app.add_subcommand("curves", "Expected-loss curves for a configuration");
  curves->add_option("--config", curves_config, "Config file")
      ->required()
      ->check(CLI::ExistingFile);
  add_run_flags(curves, curves_flags);

  std::string figure;
  RunFlags repro_flags;
  auto* repro = app.add_subcommand("reproduce", "Data for one canonical figure panel");
  repro->add_option("figure", figure, "EHS-1, EHS-2, EIF-1..4, EIF-pure or TypN")->required();
  add_run_flags(repro, repro_flags);

  std::string povm_config;
  auto* vpovm = app.add_subcommand("validate-povm", "Check completeness, positivity and IC");
  vpovm->add_option("--config", povm_config, "Config file (default: the XYZ measurement)")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nstar) {
      if (nstar_config.empty() && spherical.empty() && cartesian.empty()) {
        throw ConfigError("nstar needs --config, --spherical or --cartesian");
      }
      return cmd_nstar(nstar_config, spherical, cartesian);
    }
    if (*curves) {
      ExperimentConfig c = load_config(curves_config);
      apply_overrides(c, curves_flags);
      return run_curves(c, curves_flags);
    }
    if (*repro) return cmd_reproduce(figure, repro_flags);
    if (*vpovm) return cmd_validate_povm(povm_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
