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

#include "qtomo/curves.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qtomo/boundary_approx.hpp"
#include "qtomo/errors.hpp"
#include "qtomo/information.hpp"

namespace qtomo {

namespace {

constexpr double kPi = std::numbers::pi;

// N* is floored for display; absorb round-off so that e.g. 114 - 1e-14 does
// not print as 113.
constexpr double kFloorSlack = 1e-9;

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("error writing " + path.string());
}

}  // namespace

Regime select_regime(const BlochVector& s) {
  const double r = s.norm();
  if (r == 0.0) return Regime::kMaximallyMixed;
  if (r >= 1.0 - kPureRegimeThreshold) return Regime::kPure;
  return Regime::kMixed;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kMaximallyMixed: return "maximally-mixed";
    case Regime::kMixed: return "mixed";
    case Regime::kPure: return "pure";
  }
  return "";
}

NStarReport nstar_report(const BlochVector& s, const Povm& p) {
  NStarReport rep;
  rep.value = n_star(p, s);
  if (std::isinf(rep.value)) {
    rep.text = "infinity";
    return rep;
  }
  rep.floor = static_cast<std::int64_t>(std::floor(rep.value * (1.0 + kFloorSlack)));
  rep.text = fixed(rep.value, 6) + " (floor " + std::to_string(*rep.floor) + ")";
  return rep;
}

std::string describe_plan(const ExperimentConfig& c) {
  const BlochVector s = c.state.bloch();
  std::ostringstream os;
  os << "state: " << c.state.describe() << " -> s = (" << s.s1() << ", " << s.s2() << ", "
     << s.s3() << "), |s| = " << s.norm() << ", regime " << to_string(select_regime(s)) << '\n';
  os << "povm: " << c.povm.name << " (" << c.povm.povm.size() << " outcomes)\n";
  os << "losses:";
  for (auto l : c.losses) os << ' ' << to_string(l);
  os << "\noutputs:";
  for (auto o : c.outputs) os << ' ' << to_string(o);
  os << "\nn_grid (" << c.n_grid_description << "):";
  for (auto n : c.n_grid) os << ' ' << n;
  os << "\nsequences: " << c.sequences << "\nseed: " << c.seed << '\n';
  if (c.wants(OutputKind::kEmpirical)) {
    os << "mle fits to run: " << c.sequences * static_cast<std::int64_t>(c.n_grid.size())
       << '\n';
  }
  return os.str();
}

CurveSet compute_curves(const ExperimentConfig& c, const ParallelOptions& par) {
  validate_config(c);
  CurveSet out;
  out.s = c.state.bloch();
  out.regime = select_regime(out.s);
  const Povm& povm = c.povm.povm;

  out.metadata = {
      {"tool", std::string(kToolVersion)},
      {"config", config_to_json(c)},
      {"state", c.state.describe()},
      {"bloch_vector", format_value(out.s.s1()) + " " + format_value(out.s.s2()) + " " +
                           format_value(out.s.s3())},
      {"regime", std::string(to_string(out.regime))},
      {"pure_regime_threshold", "|s| >= 1 - 1e-9"},
      {"seed", std::to_string(c.seed)},
      {"sequences", std::to_string(c.sequences)},
      {"n_grid", c.n_grid_description},
  };

  // Point at which the closed forms and the bounds are evaluated.
  const BlochVector s_eval =
      out.regime == Regime::kPure ? BlochVector(out.s.direction()) : out.s;
  std::optional<FisherMatrix> fisher;
  try {
    fisher = fisher_matrix(povm, s_eval);
    if (!fisher->invertible()) {
      out.warnings.push_back("Fisher matrix is singular; approx and crb omitted");
      fisher.reset();
    }
  } catch (const DivergentInformationError& e) {
    out.warnings.push_back(std::string(e.what()) + "; approx and crb omitted");
  }

  if (c.wants(OutputKind::kNstar)) {
    if (out.regime == Regime::kMaximallyMixed) {
      out.warnings.push_back("N* undefined for s = 0");
    } else if (out.regime == Regime::kPure) {
      out.n_star = std::numeric_limits<double>::infinity();
    } else if (fisher) {
      out.n_star = n_star(out.s, *fisher);
    }
  }
  out.metadata.emplace_back("n_star", out.n_star ? format_value(out.n_star) : "undefined");

  std::vector<EmpiricalLossPoint> empirical;
  if (c.wants(OutputKind::kEmpirical)) {
    SimulationPlan plan;
    plan.povm = povm;
    plan.s_true = out.s;
    plan.n_grid = c.n_grid;
    plan.sequences = c.sequences;
    plan.seed = c.seed;
    plan.losses = c.losses;
    plan.mle = c.mle;
    empirical = empirical_expected_loss(plan, par);
    for (const auto& p : empirical) {
      if (p.flagged) {
        out.warnings.push_back("N=" + std::to_string(p.estimate.n) + ": " +
                               std::to_string(p.failed_sequences) +
                               " MLE fits did not converge");
      }
    }
  }

  std::size_t idx = 0;
  for (std::size_t k = 0; k < c.n_grid.size(); ++k) {
    const std::int64_t n = c.n_grid[k];
    for (LossKind loss : c.losses) {
      LossCurveRecord r;
      r.loss_kind = loss;
      r.n = n;
      r.n_star = out.n_star;
      if (!empirical.empty()) {
        const auto& e = empirical.at(idx++).estimate;
        r.empirical_mean = e.mean;
        r.empirical_stderr = e.std_error;
      }
      if (fisher && c.wants(OutputKind::kApprox)) {
        if (out.regime == Regime::kMixed) {
          const ApproxLossInputs in{out.s, *fisher, n};
          r.approx = loss == LossKind::kHilbertSchmidt ? expected_hs_mixed(in)
                                                       : expected_if_mixed(in);
        } else if (out.regime == Regime::kPure) {
          r.approx = loss == LossKind::kHilbertSchmidt ? expected_hs_pure(s_eval, *fisher, n)
                                                       : expected_if_pure(s_eval, *fisher, n);
        }
      }
      if (fisher && c.wants(OutputKind::kCrb)) {
        if (loss == LossKind::kHilbertSchmidt) {
          r.crb = cramer_rao_bound(hesse_hs(), *fisher, n);
        } else if (out.regime != Regime::kPure) {
          r.crb = cramer_rao_bound(hesse_if(out.s), *fisher, n);
        }
      }
      out.records.push_back(r);
    }
  }
  for (const auto& w : out.warnings) out.metadata.emplace_back("warning", w);
  return out;
}

std::vector<std::filesystem::path> write_curve_files(const CurveSet& curves,
                                                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  for (LossKind loss : {LossKind::kHilbertSchmidt, LossKind::kInfidelity}) {
    std::vector<LossCurveRecord> rows;
    for (const auto& r : curves.records) {
      if (r.loss_kind == loss) rows.push_back(r);
    }
    if (rows.empty()) continue;
    const auto path = out_dir / ("curves_" + std::string(to_string(loss)) + ".csv");
    write_text(path, format_curve_csv(curves.metadata, rows));
    written.push_back(path);
  }

  std::ostringstream tsv;
  for (const auto& [k, v] : curves.metadata) tsv << "# " << k << ": " << v << '\n';
  tsv << "series\tloss_kind\tN\tvalue\n";
  auto emit = [&](std::string_view name, const LossCurveRecord& r,
                  const std::optional<double>& v) {
    if (v) tsv << name << '\t' << to_string(r.loss_kind) << '\t' << r.n << '\t'
               << format_value(v) << '\n';
  };
  for (const auto& r : curves.records) {
    emit("empirical", r, r.empirical_mean);
    emit("approx", r, r.approx);
    emit("crb", r, r.crb);
  }
  if (curves.n_star) tsv << "nstar\tall\tNA\t" << format_value(curves.n_star) << '\n';
  const auto path = out_dir / "series.tsv";
  write_text(path, tsv.str());
  written.push_back(path);
  return written;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"EHS-1", "EHS-2", "EIF-1",    "EIF-2",
                                               "EIF-3", "EIF-4", "EIF-pure", "TypN"};
  return ids;
}

ExperimentConfig figure_config(std::string_view id) {
  struct Panel {
    std::string_view id;
    SphericalCoords state;
    LossKind loss;
  };
  static const Panel panels[] = {
      {"EHS-1", {0.99, kPi / 4, kPi / 4}, LossKind::kHilbertSchmidt},
      {"EHS-2", {1.0, kPi / 4, kPi / 4}, LossKind::kHilbertSchmidt},
      {"EIF-1", {0.9, 0.0, 0.0}, LossKind::kInfidelity},
      {"EIF-2", {0.9, kPi / 4, kPi / 4}, LossKind::kInfidelity},
      {"EIF-3", {0.99, 0.0, 0.0}, LossKind::kInfidelity},
      {"EIF-4", {0.99, kPi / 4, kPi / 4}, LossKind::kInfidelity},
      {"EIF-pure", {1.0, kPi / 4, kPi / 4}, LossKind::kInfidelity},
  };
  for (const auto& p : panels) {
    if (p.id != id) continue;
    ExperimentConfig c;
    c.state = StateSpec::from_spherical(p.state);
    c.losses = {p.loss};
    c.n_grid = default_n_grid();
    c.n_grid_description = "reproduce " + std::string(id) + ": log-spaced 20 points in [10, 1e6]";
    c.sequences = 10000;
    return c;
  }
  std::string msg = "unknown figure id '" + std::string(id) + "'; valid ids:";
  for (const auto& v : figure_ids()) msg += " " + v;
  if (id == "TypN") msg = "TypN is a table, not a curve panel; use typn_table()";
  throw ConfigError(msg);
}

std::vector<TypNRow> typn_table(double r_max, double step) {
  std::vector<TypNRow> rows;
  const auto count = static_cast<int>(std::llround(r_max / step));
  for (int k = 1; k <= count; ++k) {
    const double r = k * step;
    TypNRow row;
    row.r = r;
    row.axis = n_star_xyz(bloch_from_spherical({r, 0.0, 0.0}));
    row.diagonal = n_star_xyz(bloch_from_spherical({r, kPi / 4, kPi / 4}));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path write_typn(const std::vector<TypNRow>& rows,
                                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ostringstream os;
  os << "# tool: " << kToolVersion << '\n'
     << "# content: N* of the XYZ measurement versus Bloch radius\n"
     << "# families: axis = (r, 0, 0), diagonal = (r, pi/4, pi/4)\n"
     << "# grid: r = 0.001, 0.002, ..., 0.999 (N* undefined at r = 0)\n"
     << "r,n_star_axis,n_star_diagonal\n";
  for (const auto& row : rows) {
    os << format_value(row.r) << ',' << format_value(row.axis) << ','
       << format_value(row.diagonal) << '\n';
  }
  const auto path = out_dir / "typn.csv";
  write_text(path, os.str());
  return path;
}

}  // namespace qtomo
