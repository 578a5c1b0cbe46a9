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

#include "qtomo/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "qtomo/errors.hpp"

namespace qtomo {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string format_value(const std::optional<double>& v) {
  if (!v) return "NA";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  if (std::isnan(*v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::optional<double> parse_value(std::string_view field) {
  field = trim(field);
  if (field == "NA") return std::nullopt;
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  const std::string s(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError("malformed numeric field '" + s + "'");
  }
  return v;
}

std::string format_curve_row(const LossCurveRecord& r) {
  std::ostringstream os;
  os << to_string(r.loss_kind) << ',' << r.n << ',' << format_value(r.empirical_mean) << ','
     << format_value(r.empirical_stderr) << ',' << format_value(r.approx) << ','
     << format_value(r.crb) << ',' << format_value(r.n_star);
  return os.str();
}

LossCurveRecord parse_curve_row(std::string_view line) {
  const auto f = split(trim(line), ',');
  if (f.size() != 7) {
    throw ConfigError("curve row needs 7 fields, got " + std::to_string(f.size()));
  }
  LossCurveRecord r;
  r.loss_kind = loss_kind_from_string(trim(f[0]));
  const auto n = parse_value(f[1]);
  if (!n || *n < 1 || std::floor(*n) != *n) throw ConfigError("malformed N field");
  r.n = static_cast<std::int64_t>(*n);
  r.empirical_mean = parse_value(f[2]);
  r.empirical_stderr = parse_value(f[3]);
  r.approx = parse_value(f[4]);
  r.crb = parse_value(f[5]);
  r.n_star = parse_value(f[6]);
  return r;
}

std::string format_curve_csv(const Metadata& meta, const std::vector<LossCurveRecord>& rows) {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  os << kCurveCsvHeader << '\n';
  for (const auto& r : rows) os << format_curve_row(r) << '\n';
  return os.str();
}

CurveTable parse_curve_csv(std::string_view text) {
  CurveTable t;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(": ");
      if (colon == std::string_view::npos) {
        t.metadata.emplace_back(std::string(body), "");
      } else {
        t.metadata.emplace_back(std::string(body.substr(0, colon)),
                                std::string(body.substr(colon + 2)));
      }
      continue;
    }
    if (!header_seen) {
      if (line != kCurveCsvHeader) throw ConfigError("unexpected CSV header: " + std::string(line));
      header_seen = true;
      continue;
    }
    t.rows.push_back(parse_curve_row(line));
  }
  if (!header_seen) throw ConfigError("CSV header missing");
  return t;
}

}  // namespace qtomo
