// SPDX-License-Identifier: MIT
// Command-line driver: runs verification suites and writes the report.
#include "qcv/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::string config_path;
  std::string n_range;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<std::string> tol;
  std::string format;
  std::string out;
  std::string suites;
  int jobs = -1;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path, "Key-value config file");
  app->add_option("--n", f.n, "Single dimension N");
  app->add_option("--n-range", f.n_range, "Dimension range lo:hi");
  app->add_option("--seed", f.seed, "Master seed");
  app->add_option("--samples", f.samples, "Monte Carlo samples per estimate");
  app->add_option("--tol", f.tol, "Tolerance override key=value (repeatable)");
  app->add_option("--format", f.format, "json, csv or markdown");
  app->add_option("--out", f.out, "Output file (default stdout)");
  app->add_option("--jobs", f.jobs, "Worker threads (0 = hardware)");
}

qcv::RunConfig build_config(const Flags& f, const std::vector<qcv::Suite>& suites) {
  qcv::RunConfig c;
  c.suites = {suites.begin(), suites.end()};
  if (!f.config_path.empty()) c = qcv::load_config_file(f.config_path, c);
  if (!f.suites.empty()) {
    c.suites.clear();
    std::stringstream in(f.suites);
    std::string item;
    while (std::getline(in, item, ','))
      if (!item.empty() && item != "none") c.suites.insert(qcv::suite_from_name(item));
  }
  if (f.n) c.n_min = c.n_max = f.n;
  if (!f.n_range.empty()) {
    const auto colon = f.n_range.find(':');
    if (colon == std::string::npos) throw qcv::UsageError("n-range: expected lo:hi");
    try {
      c.n_min = std::stoi(f.n_range.substr(0, colon));
      c.n_max = std::stoi(f.n_range.substr(colon + 1));
    } catch (const std::exception&) {
      throw qcv::UsageError("n-range: expected integers lo:hi");
    }
  }
  if (f.seed) c.seed = f.seed;
  if (f.samples) c.samples = f.samples;
  for (const auto& t : f.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw qcv::UsageError("tol: expected key=value, got '" + t + "'");
    try {
      c.tol[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw qcv::UsageError("tol: bad value in '" + t + "'");
    }
  }
  if (!f.format.empty()) c.format = qcv::format_from_name(f.format);
  if (!f.out.empty()) c.out = f.out;
  if (f.jobs >= 0) c.jobs = f.jobs;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for the blow-up construction on S^N"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::vector<qcv::Suite>>> commands{
      {"verify-critical-point", {qcv::Suite::CriticalPoint}},
      {"verify-sphere-lemmas", {qcv::Suite::SphereLemmas}},
      {"verify-bubble", {qcv::Suite::Bubble}},
      {"verify-curvature", {qcv::Suite::Curvature}},
      {"verify-residual", {qcv::Suite::ResidualDecay}},
      {"verify-convolution", {qcv::Suite::Convolution}},
      {"solve-tau", {qcv::Suite::Tau}},
      {"verify-all", qcv::default_suites()},
  };
  std::map<CLI::App*, std::vector<qcv::Suite>> chosen;
  for (const auto& [name, suites] : commands) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name.substr(name.find('-') + 1) + " checks");
    add_common(sub, flags);
    if (name == "verify-all")
      sub->add_option("--suites", flags.suites, "Comma-separated suite list; 'none' selects nothing");
    chosen[sub] = suites;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    std::vector<qcv::Suite> suites;
    for (const auto& [sub, s] : chosen)
      if (sub->parsed()) suites = s;
    const qcv::RunConfig config = build_config(flags, suites);
    const qcv::VerificationReport report = qcv::run(config);
    const std::string text = qcv::emit(report, config.format);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out);
      if (!out) throw qcv::UsageError("out: cannot write '" + config.out + "'");
      out << text;
    }
    if (report.checks.empty()) std::cerr << "nothing ran: the suite selection is empty\n";
    std::cerr << report.count(qcv::Status::Pass) << " pass, " << report.count(qcv::Status::Fail) << " fail\n";
    return qcv::exit_code(report);
  } catch (const qcv::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
