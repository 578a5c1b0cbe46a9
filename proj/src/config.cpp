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

#include "qtomo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qtomo/errors.hpp"

namespace qtomo {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(path + "." + key, "unknown key");
    }
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::int64_t integer_at(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::floor(v) == v && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  }
  fail(path, "expected an integer");
}

double angle_at(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_angle(j.get<std::string>());
    } catch (const ConfigError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected a number or an angle expression such as \"pi/4\"");
}

Vec3 vec3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected an array of three numbers");
  return Vec3(number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"),
              number_at(j[2], path + "[2]"));
}

StateSpec parse_state(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with 'spherical' or 'cartesian'");
  reject_unknown(j, path, {"spherical", "cartesian"});
  if (j.contains("spherical") == j.contains("cartesian")) {
    fail(path, "give exactly one of 'spherical' or 'cartesian'");
  }
  if (j.contains("cartesian")) {
    return StateSpec::from_cartesian(vec3_at(j["cartesian"], path + ".cartesian"));
  }
  const json& sph = j["spherical"];
  const std::string sp = path + ".spherical";
  if (!sph.is_object()) fail(sp, "expected an object {r, theta, phi}");
  reject_unknown(sph, sp, {"r", "theta", "phi"});
  SphericalCoords c;
  if (!sph.contains("r")) fail(sp, "missing 'r'");
  c.r = number_at(sph["r"], sp + ".r");
  c.theta = sph.contains("theta") ? angle_at(sph["theta"], sp + ".theta") : 0.0;
  c.phi = sph.contains("phi") ? angle_at(sph["phi"], sp + ".phi") : 0.0;
  return StateSpec::from_spherical(c);
}

PovmSpec parse_povm(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() != "xyz") fail(path, "unknown named POVM (only \"xyz\")");
    return PovmSpec{};
  }
  if (!j.is_object()) fail(path, "expected \"xyz\" or {\"effects\": [...]}");
  reject_unknown(j, path, {"effects"});
  if (!j.contains("effects") || !j["effects"].is_array() || j["effects"].empty()) {
    fail(path + ".effects", "expected a non-empty array");
  }
  std::vector<PovmEffect> effects;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j["effects"].size(); ++i) {
    const json& e = j["effects"][i];
    const std::string ep = path + ".effects[" + std::to_string(i) + "]";
    if (!e.is_object()) fail(ep, "expected an object {v, w, label?}");
    reject_unknown(e, ep, {"v", "w", "label"});
    if (!e.contains("v") || !e.contains("w")) fail(ep, "effects need 'v' and 'w'");
    PovmEffect eff;
    eff.v = number_at(e["v"], ep + ".v");
    eff.w = vec3_at(e["w"], ep + ".w");
    effects.push_back(eff);
    if (e.contains("label")) {
      if (!e["label"].is_string()) fail(ep + ".label", "expected a string");
      labels.push_back(e["label"].get<std::string>());
    } else {
      labels.push_back(std::to_string(i));
    }
  }
  return PovmSpec{"custom", Povm(std::move(effects), std::move(labels))};
}

void parse_n_grid(const json& j, const std::string& path, ExperimentConfig& c) {
  if (j.is_array()) {
    if (j.empty()) fail(path, "n_grid is empty");
    c.n_grid.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto v = integer_at(j[i], path + "[" + std::to_string(i) + "]");
      if (v < 1) fail(path + "[" + std::to_string(i) + "]", "trial counts must be >= 1");
      if (!c.n_grid.empty() && v <= c.n_grid.back()) {
        fail(path, "n_grid must be strictly increasing");
      }
      c.n_grid.push_back(v);
    }
    c.n_grid_description = "explicit list";
    return;
  }
  if (!j.is_object()) fail(path, "expected a list or {min, max, points}");
  reject_unknown(j, path, {"min", "max", "points"});
  for (const char* k : {"min", "max", "points"}) {
    if (!j.contains(k)) fail(path, std::string("missing '") + k + "'");
  }
  const double lo = number_at(j["min"], path + ".min");
  const double hi = number_at(j["max"], path + ".max");
  const auto pts = integer_at(j["points"], path + ".points");
  if (!(lo >= 1.0) || !(hi >= lo)) fail(path, "need 1 <= min <= max");
  if (pts < 1 || pts > 10000) fail(path + ".points", "need 1 <= points <= 10000");
  c.n_grid = log_spaced_grid(lo, hi, static_cast<int>(pts));
  std::ostringstream os;
  os << "log-spaced " << pts << " points in [" << lo << ", " << hi << "]";
  c.n_grid_description = os.str();
}

OutputKind output_from_string(const std::string& s, const std::string& path) {
  if (s == "empirical") return OutputKind::kEmpirical;
  if (s == "approx") return OutputKind::kApprox;
  if (s == "crb") return OutputKind::kCrb;
  if (s == "nstar") return OutputKind::kNstar;
  fail(path, "unknown output '" + s + "' (empirical, approx, crb, nstar)");
}

}  // namespace

StateSpec StateSpec::from_spherical(const SphericalCoords& c) {
  StateSpec s;
  s.form = Form::kSpherical;
  s.spherical = c;
  return s;
}

StateSpec StateSpec::from_cartesian(const Vec3& v) {
  StateSpec s;
  s.form = Form::kCartesian;
  s.cartesian = v;
  return s;
}

BlochVector StateSpec::bloch() const {
  if (form == Form::kSpherical) return bloch_from_spherical(spherical);
  return BlochVector(cartesian);
}

std::string StateSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (form == Form::kSpherical) {
    os << "spherical(r=" << spherical.r << ", theta=" << spherical.theta
       << ", phi=" << spherical.phi << ")";
  } else {
    os << "cartesian(" << cartesian.x() << ", " << cartesian.y() << ", " << cartesian.z()
       << ")";
  }
  return os.str();
}

std::string_view to_string(OutputKind k) {
  switch (k) {
    case OutputKind::kEmpirical: return "empirical";
    case OutputKind::kApprox: return "approx";
    case OutputKind::kCrb: return "crb";
    case OutputKind::kNstar: return "nstar";
  }
  return "";
}

bool ExperimentConfig::wants(OutputKind k) const {
  return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

bool ExperimentConfig::wants(LossKind k) const {
  return std::find(losses.begin(), losses.end(), k) != losses.end();
}

std::vector<std::int64_t> log_spaced_grid(double lo, double hi, int points) {
  std::vector<std::int64_t> grid;
  if (points == 1) {
    grid.push_back(static_cast<std::int64_t>(std::llround(lo)));
    return grid;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    const double x = a + (b - a) * i / (points - 1);
    const auto v = static_cast<std::int64_t>(std::llround(std::pow(10.0, x)));
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  return grid;
}

std::vector<std::int64_t> default_n_grid() { return log_spaced_grid(10.0, 1e6, 20); }

double parse_angle(std::string_view text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ') t.push_back(ch);
  }
  if (t.empty()) throw ConfigError("empty angle");
  double sign = 1.0;
  if (t.front() == '-') {
    sign = -1.0;
    t.erase(t.begin());
  }
  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse angle '" + std::string(text) + "'");
    }
    if (used != t.size()) throw ConfigError("cannot parse angle '" + std::string(text) + "'");
    return sign * v;
  }
  double factor = 1.0;
  std::string head = t.substr(0, pi_pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (!head.empty()) {
    std::size_t used = 0;
    try {
      factor = std::stod(head, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != head.size()) throw ConfigError("cannot parse angle '" + std::string(text) + "'");
  }
  std::string tail = t.substr(pi_pos + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("cannot parse angle '" + std::string(text) + "'");
    std::size_t used = 0;
    try {
      divisor = std::stod(tail.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size() - 1 || divisor == 0.0) {
      throw ConfigError("cannot parse angle '" + std::string(text) + "'");
    }
  }
  return sign * factor * std::numbers::pi / divisor;
}

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) fail("config", "top level must be an object");
  reject_unknown(root, "config",
                 {"state", "povm", "n_grid", "sequences", "seed", "losses", "outputs", "mle"});

  ExperimentConfig c;
  if (!root.contains("state")) fail("config.state", "missing");
  c.state = parse_state(root["state"], "config.state");
  if (root.contains("povm")) c.povm = parse_povm(root["povm"], "config.povm");

  if (root.contains("n_grid")) {
    parse_n_grid(root["n_grid"], "config.n_grid", c);
  } else {
    c.n_grid = default_n_grid();
    c.n_grid_description = "default: log-spaced 20 points in [10, 1e6]";
  }

  if (root.contains("sequences")) {
    c.sequences = integer_at(root["sequences"], "config.sequences");
    if (c.sequences < 1) fail("config.sequences", "must be >= 1");
  }
  if (root.contains("seed")) {
    const json& s = root["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      fail("config.seed", "expected a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (root.contains("losses")) {
    const json& l = root["losses"];
    if (!l.is_array() || l.empty()) fail("config.losses", "expected a non-empty list");
    c.losses.clear();
    for (std::size_t i = 0; i < l.size(); ++i) {
      const std::string p = "config.losses[" + std::to_string(i) + "]";
      if (!l[i].is_string()) fail(p, "expected \"hs\" or \"if\"");
      LossKind k;
      try {
        k = loss_kind_from_string(l[i].get<std::string>());
      } catch (const ConfigError& e) {
        fail(p, e.what());
      }
      if (!c.wants(k)) c.losses.push_back(k);
    }
  }
  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    if (!o.is_array() || o.empty()) fail("config.outputs", "expected a non-empty list");
    c.outputs.clear();
    for (std::size_t i = 0; i < o.size(); ++i) {
      const std::string p = "config.outputs[" + std::to_string(i) + "]";
      if (!o[i].is_string()) fail(p, "expected a string");
      const OutputKind k = output_from_string(o[i].get<std::string>(), p);
      if (!c.wants(k)) c.outputs.push_back(k);
    }
  }
  if (root.contains("mle")) {
    const json& m = root["mle"];
    if (!m.is_object()) fail("config.mle", "expected an object");
    reject_unknown(m, "config.mle",
                   {"step_tolerance", "loglik_tolerance", "max_iterations", "linear_fast_path"});
    if (m.contains("step_tolerance")) {
      c.mle.step_tolerance = number_at(m["step_tolerance"], "config.mle.step_tolerance");
    }
    if (m.contains("loglik_tolerance")) {
      c.mle.loglik_tolerance = number_at(m["loglik_tolerance"], "config.mle.loglik_tolerance");
    }
    if (m.contains("max_iterations")) {
      c.mle.max_iterations =
          static_cast<int>(integer_at(m["max_iterations"], "config.mle.max_iterations"));
      if (c.mle.max_iterations < 1) fail("config.mle.max_iterations", "must be >= 1");
    }
    if (m.contains("linear_fast_path")) {
      if (!m["linear_fast_path"].is_boolean()) {
        fail("config.mle.linear_fast_path", "expected true or false");
      }
      c.mle.linear_fast_path = m["linear_fast_path"].get<bool>();
    }
  }

  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void validate_config(const ExperimentConfig& c) {
  const PovmValidation v = validate_povm(c.povm.povm);
  if (!v.ok()) {
    std::string msg = "POVM failed validation:";
    for (const auto& f : v.failures) msg += " " + f + ";";
    throw ConfigError("config.povm: " + msg);
  }
  BlochVector s;
  try {
    s = c.state.bloch();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config.state: ") + e.what());
  }
  if (!s.physical()) {
    throw ConfigError("config.state: |s| = " + std::to_string(s.norm()) + " exceeds 1");
  }
  if (c.n_grid.empty()) throw ConfigError("config.n_grid: empty");
  if (c.sequences < 1) throw ConfigError("config.sequences: must be >= 1");
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  if (c.state.form == StateSpec::Form::kSpherical) {
    j["state"]["spherical"] = {{"r", c.state.spherical.r},
                               {"theta", c.state.spherical.theta},
                               {"phi", c.state.spherical.phi}};
  } else {
    j["state"]["cartesian"] = {c.state.cartesian.x(), c.state.cartesian.y(),
                               c.state.cartesian.z()};
  }
  if (c.povm.name == "xyz") {
    j["povm"] = "xyz";
  } else {
    json effects = json::array();
    for (std::size_t x = 0; x < c.povm.povm.size(); ++x) {
      const auto& e = c.povm.povm.effect(x);
      effects.push_back({{"label", c.povm.povm.label(x)},
                         {"v", e.v},
                         {"w", {e.w.x(), e.w.y(), e.w.z()}}});
    }
    j["povm"]["effects"] = effects;
  }
  j["n_grid"] = c.n_grid;
  j["sequences"] = c.sequences;
  j["seed"] = c.seed;
  json losses = json::array();
  for (auto l : c.losses) losses.push_back(std::string(to_string(l)));
  j["losses"] = losses;
  json outputs = json::array();
  for (auto o : c.outputs) outputs.push_back(std::string(to_string(o)));
  j["outputs"] = outputs;
  j["mle"] = {{"step_tolerance", c.mle.step_tolerance},
              {"loglik_tolerance", c.mle.loglik_tolerance},
              {"max_iterations", c.mle.max_iterations},
              {"linear_fast_path", c.mle.linear_fast_path}};
  return j.dump();
}

}  // namespace qtomo
