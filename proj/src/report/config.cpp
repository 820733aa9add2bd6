// SPDX-License-Identifier: MIT
// Run configuration: validation, the key-value config file and the echo.
#include "qcv/errors.hpp"
#include "qcv/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qcv {

namespace {

const std::vector<std::pair<Suite, std::string>>& suite_names() {
  static const std::vector<std::pair<Suite, std::string>> names{
      {Suite::CriticalPoint, "critical-point"}, {Suite::Tau, "tau"},
      {Suite::SphereLemmas, "sphere-lemmas"},   {Suite::Bubble, "bubble"},
      {Suite::Curvature, "curvature"},          {Suite::ResidualDecay, "residual-decay"},
      {Suite::Convolution, "convolution"},      {Suite::GluingSchedule, "gluing-schedule"},
  };
  return names;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_int(const std::string& field, const std::string& v) {
  try {
    size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError(field + ": expected an integer, got '" + v + "'");
  }
}

double parse_double(const std::string& field, const std::string& v) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError(field + ": expected a number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& field, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw UsageError(field + ": expected true or false, got '" + v + "'");
}

// A decimal such as 0.95 or a fraction such as 19/20.
BigRational parse_rational(const std::string& field, const std::string& v) {
  try {
    const auto dot = v.find('.');
    if (dot == std::string::npos) {
      BigRational q(v, 10);
      q.canonicalize();
      return q;
    }
    std::string digits = v.substr(0, dot) + v.substr(dot + 1);
    BigInt den = 1;
    for (size_t i = dot + 1; i < v.size(); ++i) den *= 10;
    return rat(BigInt(digits, 10), den);
  } catch (const std::exception&) {
    throw UsageError(field + ": expected a rational, got '" + v + "'");
  }
}

}  // namespace

std::string suite_name(Suite s) {
  for (const auto& [k, n] : suite_names())
    if (k == s) return n;
  throw std::logic_error("unnamed suite");
}

Suite suite_from_name(const std::string& name) {
  for (const auto& [k, n] : suite_names())
    if (n == name) return k;
  throw UsageError("suite: unknown suite '" + name + "'");
}

const std::vector<Suite>& default_suites() {
  static const std::vector<Suite> all{Suite::CriticalPoint, Suite::SphereLemmas, Suite::Bubble,
                                      Suite::Curvature,     Suite::ResidualDecay, Suite::Convolution,
                                      Suite::GluingSchedule};
  return all;
}

Format format_from_name(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "markdown") return Format::Markdown;
  throw UsageError("format: unknown format '" + name + "'");
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Markdown: return "markdown";
  }
  return "json";
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"flat_residual", 1e-9},   // relative, bubble equation
      {"derivative_fd", 1e-6},   // relative, closed forms against differences
      {"mc_sigma", 3},           // standard errors
      {"quadrature", 1e-12},     // relative, energy constant at N = 5
      {"quadrature_n25", 1e-10}, // relative, energy constant at N = 25
      {"radial_kernel", 1e-10},  // relative, closed form against quadrature
      {"tau_digits", 50},        // significant digits of root agreement
      {"metric_det", 1e-12},     // |det g - 1|
      {"ricci_trace", 1e-10},    // |g^ij Ric_ij - S|
      {"paneitz_flat", 1e-9},    // relative, h = 0
      {"scaling_spread", 2},     // largest over smallest error ratio along mu
      {"halving", 0.15},         // relative, against 2^10
      {"decay_slope", 0.75},     // absolute, against -(N - 10)
      {"convolution", 0.15},     // absolute exponent
      {"ball", 0.2},             // absolute exponent
      {"log_spread", 4},         // largest over smallest ratio in the t = N case
  };
  return t;
}

double RunConfig::tolerance(const std::string& key) const {
  if (auto it = tol.find(key); it != tol.end()) return it->second;
  return default_tolerances().at(key);
}

void RunConfig::validate() const {
  if (n_min > n_max) throw UsageError("n-range: lower end above upper end");
  if (n_min < 5 || n_max > 200) throw UsageError("n-range: must lie in [5, 200]");
  for (int N : sphere_dims)
    if (N < 5 || N > 12) throw UsageError("sphere.dims: each dimension must lie in [5, 12]");
  if (weyl_forms < 1) throw UsageError("sphere.weyl_forms: must be positive");
  if (samples < 1000) throw UsageError("samples: at least 1000");
  for (const auto& [k, v] : tol) {
    if (!default_tolerances().count(k)) throw UsageError("tolerance: unknown key '" + k + "'");
    if (!(v > 0)) throw UsageError("tolerance." + k + ": must be positive");
  }
  const auto grid = scan_grid();
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > BigRational(1, 2) && grid[i] < BigRational(3, 2)))
      throw UsageError("scan.lambda_grid: points must lie in (1/2, 3/2)");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("scan.lambda_grid: must increase strictly");
  }
  if (!(scan_window > 0)) throw UsageError("scan.window: must be positive");
  if (jobs < 0) throw UsageError("jobs: must be nonnegative");
}

std::vector<BigRational> RunConfig::scan_grid() const {
  if (!lambda_grid.empty()) return lambda_grid;
  std::vector<BigRational> g;
  for (int k = 60; k <= 140; ++k) g.push_back(rat(k, 100));
  return g;
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  j["n_range"] = {n_min, n_max};
  j["sphere_dims"] = sphere_dims;
  j["weyl_forms"] = weyl_forms;
  std::vector<std::string> grid;
  for (const auto& q : scan_grid()) grid.push_back(q.get_str());
  j["lambda_grid"] = grid;
  j["scan_window"] = scan_window.get_str();
  nlohmann::ordered_json t;
  for (const auto& [k, v] : default_tolerances()) t[k] = tolerance(k);
  j["tolerances"] = t;
  j["samples"] = samples;
  j["seed"] = seed;
  std::vector<std::string> s;
  for (Suite x : suites) s.push_back(suite_name(x));
  j["suites"] = s;
  j["format"] = format_name(format);
  return j;
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  RunConfig c = std::move(base);
  std::string section;
  bool suites_seen = false;
  std::stringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError("config line " + std::to_string(line_no) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string field = section + "." + key;
    if (section == "range" && key == "n_min") {
      c.n_min = static_cast<int>(parse_int(field, value));
    } else if (section == "range" && key == "n_max") {
      c.n_max = static_cast<int>(parse_int(field, value));
    } else if (section == "sphere" && key == "dims") {
      c.sphere_dims.clear();
      for (const auto& v : split(value, ',')) c.sphere_dims.push_back(static_cast<int>(parse_int(field, v)));
    } else if (section == "sphere" && key == "weyl_forms") {
      c.weyl_forms = static_cast<int>(parse_int(field, value));
    } else if (section == "scan" && key == "lambda_grid") {
      c.lambda_grid.clear();
      for (const auto& v : split(value, ',')) c.lambda_grid.push_back(parse_rational(field, v));
    } else if (section == "scan" && key == "window") {
      c.scan_window = parse_rational(field, value);
    } else if (section == "tolerance") {
      if (!default_tolerances().count(key)) throw UsageError(field + ": unknown tolerance");
      c.tol[key] = parse_double(field, value);
    } else if (section == "monte_carlo" && key == "samples") {
      c.samples = static_cast<std::uint64_t>(parse_int(field, value));
    } else if (section == "monte_carlo" && key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(field, value));
    } else if (section == "suites") {
      if (!suites_seen) c.suites.clear();
      suites_seen = true;
      const Suite s = suite_from_name(key);
      if (parse_bool(field, value)) c.suites.insert(s);
    } else if (section == "output" && key == "format") {
      c.format = format_from_name(value);
    } else if (section == "output" && key == "path") {
      c.out = value;
    } else if (section == "output" && key == "jobs") {
      c.jobs = static_cast<int>(parse_int(field, value));
    } else {
      throw UsageError(field + ": unknown setting");
    }
  }
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

}  // namespace qcv
