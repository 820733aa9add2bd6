// SPDX-License-Identifier: MIT
// Report serialisation: canonical json, flat csv and a markdown summary.
#include "qcv/errors.hpp"
#include "qcv/report.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <gmp.h>
#include <mpfr.h>

#include <sstream>

namespace qcv {

using nlohmann::ordered_json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "skipped";
}

Status status_from_name(const std::string& name) {
  if (name == "pass") return Status::Pass;
  if (name == "fail") return Status::Fail;
  if (name == "skipped") return Status::Skipped;
  throw ParseError("unknown status '" + name + "'");
}

bool CheckRecord::operator==(const CheckRecord& o) const {
  return suite == o.suite && id == o.id && N == o.N && anchor == o.anchor && status == o.status &&
         residual == o.residual && tolerance == o.tolerance && detail == o.detail && runtime_s == o.runtime_s;
}

bool SignRow::operator==(const SignRow& o) const {
  return N == o.N && tau == o.tau && I1 == o.I1 && I2 == o.I2 && J1 == o.J1 && J2 == o.J2 && verdict == o.verdict;
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status != Status::Pass) return false;
  return !checks.empty();
}

int VerificationReport::count(Status s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

bool VerificationReport::operator==(const VerificationReport& o) const {
  return version == o.version && timestamp == o.timestamp && environment == o.environment && config == o.config &&
         checks == o.checks && sign_table == o.sign_table;
}

int exit_code(const VerificationReport& r) { return r.all_pass() ? 0 : 1; }

std::map<std::string, std::string> environment_stamp() {
  std::map<std::string, std::string> e;
  e["compiler"] = __VERSION__;
  e["gmp"] = gmp_version;
  e["mpfr"] = mpfr_get_version();
  e["boost"] = std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." +
               std::to_string(BOOST_VERSION % 100);
  e["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  e["working_precision_digits"] = std::to_string(std::numeric_limits<Real>::digits10);
  return e;
}

namespace {

// Everything that is reproducible for a fixed configuration sits outside the
// "timestamp" object; wall-clock data, including per-check runtimes, sits in it.
ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["version"] = r.version;
  ordered_json ts;
  ts["started"] = r.timestamp;
  std::vector<double> rt;
  for (const auto& c : r.checks) rt.push_back(c.runtime_s);
  ts["runtimes_s"] = rt;
  j["timestamp"] = ts;
  ordered_json env = ordered_json::object();
  for (const auto& [k, v] : r.environment) env[k] = v;
  j["environment"] = env;
  j["config"] = r.config;
  ordered_json summary;
  summary["checks"] = r.checks.size();
  summary["pass"] = r.count(Status::Pass);
  summary["fail"] = r.count(Status::Fail);
  summary["skipped"] = r.count(Status::Skipped);
  j["summary"] = summary;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json x;
    x["suite"] = c.suite;
    x["check"] = c.id;
    x["n"] = c.N;
    x["anchor"] = c.anchor;
    x["status"] = status_name(c.status);
    x["residual"] = c.residual;
    x["tolerance"] = c.tolerance;
    x["detail"] = c.detail;
    checks.push_back(x);
  }
  j["checks"] = checks;
  ordered_json rows = ordered_json::array();
  for (const auto& s : r.sign_table) {
    ordered_json x;
    x["n"] = s.N;
    x["tau"] = s.tau;
    x["I(1)"] = s.I1;
    x["I''(1)"] = s.I2;
    x["J1(1)"] = s.J1;
    x["J2(1)"] = s.J2;
    x["verdict"] = s.verdict;
    rows.push_back(x);
  }
  j["sign_table"] = rows;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string emit_csv(const VerificationReport& r) {
  std::ostringstream o;
  o << "suite,check,n,anchor,status,residual,tolerance,detail,runtime_s\n";
  for (const auto& c : r.checks) {
    o << csv_field(c.suite) << ',' << csv_field(c.id) << ',' << c.N << ',' << csv_field(c.anchor) << ','
      << status_name(c.status) << ',' << csv_field(c.residual) << ',' << csv_field(c.tolerance) << ','
      << csv_field(c.detail) << ',' << c.runtime_s << '\n';
  }
  return o.str();
}

std::string md_cell(std::string s) {
  for (size_t p = s.find('|'); p != std::string::npos; p = s.find('|', p + 2)) s.replace(p, 1, "\\|");
  return s;
}

std::string emit_markdown(const VerificationReport& r) {
  std::ostringstream o;
  o << "# Verification report\n\n";
  o << "Started " << r.timestamp << ". " << r.checks.size() << " checks: " << r.count(Status::Pass) << " pass, "
    << r.count(Status::Fail) << " fail, " << r.count(Status::Skipped) << " skipped.\n\n";
  if (!r.sign_table.empty()) {
    o << "## Sign table at lambda' = 1\n\n";
    o << "| N | tau | I(1) | I''(1) | J1(1) | J2(1) | verdict |\n";
    o << "|---|---|---|---|---|---|---|\n";
    for (const auto& s : r.sign_table)
      o << "| " << s.N << " | " << s.tau << " | " << s.I1 << " | " << s.I2 << " | " << s.J1 << " | " << s.J2 << " | "
        << (s.verdict ? "all four hold" : "fails") << " |\n";
    o << "\n";
  }
  o << "## Checks\n\n";
  o << "| suite | check | N | status | residual | tolerance | detail |\n";
  o << "|---|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks)
    o << "| " << c.suite << " | " << c.id << " | " << (c.N ? std::to_string(c.N) : "") << " | "
      << (c.status == Status::Pass ? "pass" : c.status == Status::Fail ? "**fail**" : "skipped") << " | "
      << md_cell(c.residual) << " | " << md_cell(c.tolerance) << " | " << md_cell(c.detail) << " |\n";
  return o.str();
}

}  // namespace

std::string emit(const VerificationReport& r, Format f) {
  switch (f) {
    case Format::Json: return to_json(r).dump(2) + "\n";
    case Format::Csv: return emit_csv(r);
    case Format::Markdown: return emit_markdown(r);
  }
  throw UsageError("format: unknown");
}

VerificationReport parse_report_json(const std::string& text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    VerificationReport r;
    r.version = j.at("version").get<int>();
    if (r.version != VerificationReport::kSchemaVersion)
      throw ParseError("report version " + std::to_string(r.version) + " is not supported");
    r.timestamp = j.at("timestamp").at("started").get<std::string>();
    const auto rt = j.at("timestamp").at("runtimes_s").get<std::vector<double>>();
    for (const auto& [k, v] : j.at("environment").items()) r.environment[k] = v.get<std::string>();
    r.config = j.at("config");
    for (const auto& x : j.at("checks")) {
      CheckRecord c;
      c.suite = x.at("suite").get<std::string>();
      c.id = x.at("check").get<std::string>();
      c.N = x.at("n").get<int>();
      c.anchor = x.at("anchor").get<std::string>();
      c.status = status_from_name(x.at("status").get<std::string>());
      c.residual = x.at("residual").get<std::string>();
      c.tolerance = x.at("tolerance").get<std::string>();
      c.detail = x.at("detail").get<std::string>();
      r.checks.push_back(c);
    }
    if (rt.size() != r.checks.size()) throw ParseError("runtimes do not match the checks");
    for (size_t i = 0; i < rt.size(); ++i) r.checks[i].runtime_s = rt[i];
    for (const auto& x : j.at("sign_table")) {
      SignRow s;
      s.N = x.at("n").get<int>();
      s.tau = x.at("tau").get<std::string>();
      s.I1 = x.at("I(1)").get<std::string>();
      s.I2 = x.at("I''(1)").get<std::string>();
      s.J1 = x.at("J1(1)").get<std::string>();
      s.J2 = x.at("J2(1)").get<std::string>();
      s.verdict = x.at("verdict").get<bool>();
      r.sign_table.push_back(s);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
}

}  // namespace qcv
