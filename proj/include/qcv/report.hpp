// SPDX-License-Identifier: MIT
// Verification runs: configuration, the check suites, the aggregated report
// and its json, csv and markdown renderings.
#pragma once

#include "qcv/exact_scalars.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcv {

enum class Suite {
  CriticalPoint,
  Tau,
  SphereLemmas,
  Bubble,
  Curvature,
  ResidualDecay,
  Convolution,
  GluingSchedule,
};

std::string suite_name(Suite s);
Suite suite_from_name(const std::string& name);  // throws UsageError
// The suites of a full run; Tau is a subset of CriticalPoint and runs alone.
const std::vector<Suite>& default_suites();

enum class Format { Json, Csv, Markdown };
Format format_from_name(const std::string& name);  // throws UsageError
std::string format_name(Format f);

// Bad flags or configuration; the message names the offending field.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int n_min = 25;  // critical-point suites
  int n_max = 60;
  std::vector<int> sphere_dims{5, 6, 7};
  int weyl_forms = 3;
  std::vector<BigRational> lambda_grid;  // scan of F(0, lambda'); empty means 0.60, 0.61, ..., 1.40
  BigRational scan_window{1, 10};
  std::map<std::string, double> tol;     // overrides of default_tolerances()
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::set<Suite> suites;
  std::string out;                       // empty means stdout
  Format format = Format::Json;
  int jobs = 0;                          // 0 means one per hardware thread

  // Throws UsageError naming the field.
  void validate() const;
  double tolerance(const std::string& key) const;
  std::vector<BigRational> scan_grid() const;
  nlohmann::ordered_json echo() const;
};

const std::map<std::string, double>& default_tolerances();

// Flat key = value text with [section] headers; '#' starts a comment.
//   [range] n_min, n_max      [sphere] dims, weyl_forms
//   [scan] lambda_grid, window [tolerance] <key> = <value>
//   [monte_carlo] samples, seed [suites] <suite> = true|false
//   [output] format, path, jobs
// Values overlay `base`; unknown sections or keys raise UsageError.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

enum class Status { Pass, Fail, Skipped };
std::string status_name(Status s);
Status status_from_name(const std::string& name);

struct CheckRecord {
  std::string suite;
  std::string id;
  int N = 0;              // 0 when the check is not tied to one dimension
  std::string anchor;     // what the check establishes
  Status status = Status::Skipped;
  std::string residual;   // exact or numeric measure compared against the tolerance
  std::string tolerance;
  std::string detail;
  double runtime_s = 0;

  bool operator==(const CheckRecord& o) const;
};

// One row of the sign table at lambda' = 1.
struct SignRow {
  int N = 0;
  std::string tau;  // 30 significant digits
  std::string I1, I2, J1, J2;
  bool verdict = false;

  bool operator==(const SignRow& o) const;
};

struct VerificationReport {
  static constexpr int kSchemaVersion = 1;
  int version = kSchemaVersion;
  std::string timestamp;  // ISO 8601, UTC
  std::map<std::string, std::string> environment;
  nlohmann::ordered_json config;
  std::vector<CheckRecord> checks;
  std::vector<SignRow> sign_table;

  bool all_pass() const;
  int count(Status s) const;
  bool operator==(const VerificationReport& o) const;
};

// Runs the selected suites.  A check that throws is recorded as a failure
// with the exception text and the run continues.
VerificationReport run(const RunConfig& config);

// Library and precision details that affect results.
std::map<std::string, std::string> environment_stamp();

std::string emit(const VerificationReport& r, Format f);
// Inverse of emit(r, Format::Json); throws ParseError on malformed input.
VerificationReport parse_report_json(const std::string& text);

// 0 when every check passed, 1 when any failed or nothing ran.
int exit_code(const VerificationReport& r);

}  // namespace qcv
