// SPDX-License-Identifier: MIT
// Unit tests for run configuration, report serialisation and exit codes.
#include <doctest.h>

#include "qcv/errors.hpp"
#include "qcv/report.hpp"

#include <algorithm>

using namespace qcv;

namespace {

RunConfig tau_config(int lo, int hi) {
  RunConfig c;
  c.n_min = lo;
  c.n_max = hi;
  c.suites = {Suite::Tau};
  c.jobs = 1;
  return c;
}

size_t line_count(const std::string& s) {
  size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("config file overlays defaults") {
  const RunConfig c = parse_config_text(R"(
# comment line
[range]
n_min = 26
n_max = 30   # trailing comment
[sphere]
dims = 5, 8
weyl_forms = 2
[scan]
lambda_grid = 0.9, 19/20, 1, 1.05
window = 0.05
[tolerance]
mc_sigma = 4
[monte_carlo]
samples = 5000
seed = 9
[suites]
bubble = true
tau = yes
[output]
format = csv
jobs = 1
)");
  CHECK(c.n_min == 26);
  CHECK(c.n_max == 30);
  CHECK(c.sphere_dims == std::vector<int>{5, 8});
  CHECK(c.weyl_forms == 2);
  REQUIRE(c.scan_grid().size() == 4);
  CHECK(c.scan_grid()[0] == BigRational(9, 10));
  CHECK(c.scan_grid()[3] == BigRational(21, 20));
  CHECK(c.scan_window == BigRational(1, 20));
  CHECK(c.tolerance("mc_sigma") == 4);
  CHECK(c.tolerance("flat_residual") == 1e-9);
  CHECK(c.samples == 5000);
  CHECK(c.seed == 9);
  CHECK(c.suites == std::set<Suite>{Suite::Bubble, Suite::Tau});
  CHECK(c.format == Format::Csv);
  CHECK(c.jobs == 1);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("config errors name the field") {
  auto message = [](const std::string& text) {
    try {
      parse_config_text(text).validate();
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("[range]\nn_min = x\n").find("range.n_min") != std::string::npos);
  CHECK(message("[tolerance]\nbogus = 1\n").find("tolerance.bogus") != std::string::npos);
  CHECK(message("[suites]\nnope = true\n").find("nope") != std::string::npos);
  CHECK(message("[range]\nn_min = 3\n").find("n-range") != std::string::npos);
  CHECK(message("[range]\nn_min = 30\nn_max = 26\n").find("n-range") != std::string::npos);
  CHECK(message("[sphere]\ndims = 4\n").find("sphere.dims") != std::string::npos);
  CHECK(message("[scan]\nlambda_grid = 1, 0.9\n").find("lambda_grid") != std::string::npos);
  CHECK(message("[tolerance]\nhalving = -1\n").find("halving") != std::string::npos);
  CHECK(message("[output]\nformat = xml\n").find("format") != std::string::npos);
  CHECK(message("no equals sign\n").find("line 1") != std::string::npos);
  CHECK(message("").empty());
}

TEST_CASE("suite and format names round trip") {
  for (Suite s : {Suite::CriticalPoint, Suite::Tau, Suite::SphereLemmas, Suite::Bubble, Suite::Curvature,
                  Suite::ResidualDecay, Suite::Convolution, Suite::GluingSchedule})
    CHECK(suite_from_name(suite_name(s)) == s);
  for (Format f : {Format::Json, Format::Csv, Format::Markdown}) CHECK(format_from_name(format_name(f)) == f);
  CHECK_THROWS_AS(suite_from_name("everything"), UsageError);
  CHECK(std::find(default_suites().begin(), default_suites().end(), Suite::Tau) == default_suites().end());
}

TEST_CASE("tau suite report round trips through json") {
  const RunConfig c = tau_config(25, 27);
  const VerificationReport r = run(c);
  REQUIRE(r.checks.size() == 3);
  CHECK(r.all_pass());
  CHECK(exit_code(r) == 0);
  CHECK(r.config == c.echo());
  CHECK(r.environment.count("working_precision_digits"));
  const VerificationReport back = parse_report_json(emit(r, Format::Json));
  CHECK(back == r);
  CHECK(emit(back, Format::Json) == emit(r, Format::Json));

  // Reruns differ only inside the timestamp object.
  VerificationReport again = run(c);
  again.timestamp = r.timestamp;
  for (size_t i = 0; i < again.checks.size(); ++i) again.checks[i].runtime_s = r.checks[i].runtime_s;
  CHECK(again == r);
}

TEST_CASE("csv and markdown renderings") {
  const VerificationReport r = run(tau_config(25, 26));
  const std::string csv = emit(r, Format::Csv);
  CHECK(line_count(csv) == r.checks.size() + 1);
  CHECK(csv.rfind("suite,check,n,anchor,status,residual,tolerance,detail,runtime_s\n", 0) == 0);
  // Details contain commas, so they are quoted.
  CHECK(csv.find("\"root ") != std::string::npos);
  const std::string md = emit(r, Format::Markdown);
  CHECK(md.find("| tau | tau-root | 25 | pass |") != std::string::npos);
}

TEST_CASE("a failing dimension is reported without stopping the run") {
  const VerificationReport r = run(tau_config(24, 25));
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].N == 24);
  CHECK(r.checks[0].status == Status::Fail);
  CHECK(r.checks[0].detail.find("N >= 25") != std::string::npos);
  CHECK(r.checks[1].status == Status::Pass);
  CHECK(exit_code(r) == 1);
}

TEST_CASE("an empty selection runs nothing and exits nonzero") {
  RunConfig c = tau_config(25, 25);
  c.suites.clear();
  const VerificationReport r = run(c);
  CHECK(r.checks.empty());
  CHECK_FALSE(r.all_pass());
  CHECK(exit_code(r) == 1);
}

TEST_CASE("tolerance overrides reach the checks") {
  RunConfig c = tau_config(25, 25);
  c.tol["tau_digits"] = 90;  // beyond the working precision
  const VerificationReport r = run(c);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].status == Status::Fail);
  CHECK(r.config["tolerances"]["tau_digits"] == 90.0);
}

TEST_CASE("malformed report json is rejected") {
  CHECK_THROWS_AS(parse_report_json("{"), ParseError);
  CHECK_THROWS_AS(parse_report_json(R"({"version": 2})"), ParseError);
  CHECK_THROWS_AS(parse_report_json(R"({"version": 1})"), ParseError);
  const VerificationReport r = run(tau_config(25, 25));
  std::string text = emit(r, Format::Json);
  const std::string status = "\"status\": \"pass\"";
  text.replace(text.find(status), status.size(), "\"status\": \"great\"");
  CHECK_THROWS_AS(parse_report_json(text), ParseError);
}
