// SPDX-License-Identifier: MIT
// Acceptance run: one PASS or FAIL line per criterion, with the measured values.
#include "qcv/bubble.hpp"
#include "qcv/cross_check.hpp"
#include "qcv/reduced_energy.hpp"
#include "qcv/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace qcv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  // Criteria that the engine shows cannot hold as stated.  They still print
  // FAIL; the exit status only flags outcomes that differ from this list.
  bool expected_red;
  std::function<Outcome()> body;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Runs one suite through the report pipeline with the criterion thresholds pinned.
VerificationReport run_suite(Suite s, const std::map<std::string, double>& tol = {}) {
  RunConfig c;
  c.suites = {s};
  c.seed = 1;
  c.samples = 1000000;
  c.jobs = 1;
  c.tol = tol;
  return run(c);
}

const CheckRecord& find(const VerificationReport& r, const std::string& id, int N = -1) {
  for (const auto& c : r.checks)
    if (c.id == id && (N < 0 || c.N == N)) return c;
  throw std::runtime_error("check " + id + " missing from the report");
}

// Conjunction of a list of checks, naming the failures.
Outcome all_of(const VerificationReport& r, const std::vector<std::pair<std::string, int>>& ids) {
  Outcome o{true, ""};
  for (const auto& [id, N] : ids) {
    const CheckRecord& c = find(r, id, N);
    const bool ok = c.status == Status::Pass;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + id + (N > 0 ? "@" + std::to_string(N) : "") + " " +
                (ok ? "ok" : "FAIL") + " (" + c.residual + " vs " + c.tolerance + ")";
  }
  return o;
}

// ------------------------------------------------------------------ 1

Outcome criterion_identity() {
  const auto t0 = Clock::now();
  bool I_ok = true, J_ok = true, resolution_ok = true, scaled_ok = true;
  std::string j_detail;
  for (int N : {25, 26, 27, 30}) {
    const ReducedEnergy F = assemble_F0(N);
    I_ok = I_ok && F.poly.mismatched_exponents(paper_I(N)).empty() && F.prefactor.sign() > 0;
    // The other reading of f's linear coefficient must not reproduce I.
    const ReducedEnergy alt = assemble_F0(N, FPoly::with_linear(BigRational(-1200)));
    resolution_ok = resolution_ok && !alt.poly.mismatched_exponents(paper_I(N)).empty();
    const HessianPolys h = assemble_hessian(N);
    const auto b1 = h.J1.mismatched_exponents(paper_J1(N));
    const auto b2 = h.J2.mismatched_exponents(paper_J2(N));
    J_ok = J_ok && b1.empty() && b2.empty();
    if (N == 25) j_detail = std::to_string(b1.size()) + " J1 and " + std::to_string(b2.size()) + " J2 exponents differ";
    // Independent route, and the one change that reproduces the printed J.
    const FirstPrinciples fp = first_principles(N);
    scaled_ok = scaled_ok && fp.J1.mismatched_exponents(h.J1).empty() && fp.J2.mismatched_exponents(h.J2).empty();
    const BigRational drop(N - 1, N);
    const TauPoly j1 = fp.J1 - fp.J1_terms.at("T3") * drop, j2 = fp.J2 - fp.J2_terms.at("T3") * drop;
    scaled_ok = scaled_ok && j1.mismatched_exponents(paper_J1(N)).empty() &&
                j2.mismatched_exponents(paper_J2(N)).empty();
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = I_ok && J_ok && resolution_ok && t <= 120;
  o.detail = std::string("linear coefficient resolved to -12000 (-1200 does not reproduce I)") +
             (resolution_ok ? "" : " [resolution check FAILED]") + "; I " + (I_ok ? "matches" : "MISMATCH") +
             "; J " + (J_ok ? "matches" : "MISMATCH, " + j_detail) +
             (scaled_ok ? "; independent derivation agrees with the derived J, and the printed J equals it with "
                          "the a_N curvature term divided by N"
                        : "; independent derivation check FAILED") +
             "; " + fmt("%.1f s (limit 120 s)", t);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome criterion_tau() {
  const TauSolution s = solve_tau(25);
  const Real residual(s.residual_at_printed);
  Outcome o;
  o.pass = s.printed_exact_match && s.agreement_digits >= 50 && residual < Real("1e-30");
  o.detail = "printed root equals derived root " + std::to_string(s.printed_root_index) + " of " +
             std::to_string(s.roots.size()) + " (" + std::to_string(s.agreement_digits) +
             " digits agree, need 50); |I'(1)| at the printed root = " + s.residual_at_printed + " (need < 1e-30)";
  return o;
}

// ------------------------------------------------------------------ 3

Outcome criterion_signs() {
  const auto t0 = Clock::now();
  std::string bad;
  for (int N = 25; N <= 60; ++N) {
    const CriticalPointReport r = verify_lemma81(N);
    bool ok = r.accepted_count == 1 && r.accepted >= 0;
    if (ok) {
      const RootReport& a = r.roots[static_cast<size_t>(r.accepted)];
      for (const SignDecision* d : {&a.I1, &a.I2, &a.J1, &a.J2}) ok = ok && d->digits > 0 && d->exact_agrees;
    }
    if (!ok) bad += " " + std::to_string(N);
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = bad.empty() && t <= 60;
  o.detail = "N = 25..60, exactly one root with all four signs, each decided by intervals and confirmed exactly" +
             (bad.empty() ? std::string() : "; failing N:" + bad) + "; " + fmt("%.1f s (limit 60 s)", t);
  return o;
}

// ------------------------------------------------------------------ 4

Outcome criterion_hessian() {
  const CriticalPointReport r = verify_lemma81(25);
  if (r.accepted < 0) return {false, "no accepted tau root"};
  const QuadSurd& tau = r.roots[static_cast<size_t>(r.accepted)].tau;
  Outcome o{true, ""};
  for (std::uint64_t seed : {1, 2, 3}) {
    const HessianReport h = hessian_matrix(25, tau, random_weyl(25, seed));
    const bool ok = h.symmetric && h.positive_definite && h.min_eigenvalue > 0 && h.F01 < 0;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + ": min eigenvalue " +
                fmt("%.4e", h.min_eigenvalue.convert_to<double>()) + ", F(0,1) " +
                fmt("%.4e", h.F01.convert_to<double>()) + (ok ? "" : " FAIL");
  }
  return o;
}

// ------------------------------------------------------------------ 5 and 7

const VerificationReport& sphere_report() {
  static const VerificationReport r = run_suite(Suite::SphereLemmas, {{"mc_sigma", 3}, {"quadrature", 1e-12}});
  return r;
}

Outcome criterion_sphere() {
  const auto t0 = Clock::now();
  const VerificationReport& r = sphere_report();
  const double t = seconds_since(t0);
  Outcome o{true, ""};
  int checks = 0;
  double worst = 0;
  for (const auto& c : r.checks) {
    if (c.id != "moment-identities" && c.id != "monte-carlo") continue;
    ++checks;
    if (c.status != Status::Pass) {
      o.pass = false;
      o.detail += c.id + "@" + std::to_string(c.N) + " FAIL (" + c.detail + "); ";
    }
    if (c.id == "monte-carlo") worst = std::max(worst, std::stod(c.residual));
  }
  o.pass = o.pass && checks == 18 && t <= 180;
  o.detail += std::to_string(checks) + " checks over N = 5, 6, 7 and 3 forms, largest Monte Carlo gap " +
              fmt("%.3f", worst) + " sigma (limit 3); " + fmt("%.1f s (limit 180 s)", t);
  return o;
}

Outcome criterion_energy_constant() {
  return all_of(sphere_report(), {{"energy-constant-exact", 0}, {"energy-constant-quadrature", 5}});
}

// ------------------------------------------------------------------ 6

Outcome criterion_bubble() {
  const VerificationReport r = run_suite(Suite::Bubble, {{"flat_residual", 1e-9}, {"derivative_fd", 1e-6}});
  Outcome o = all_of(r, {{"flat-residual-printed", 5},
                         {"flat-residual-printed", 25},
                         {"derivative-fd", 5},
                         {"derivative-fd", 25}});
  o.detail += "; with the constant the equation forces the residual is " +
              find(r, "flat-residual-equation", 5).residual + " (N = 5) and " +
              find(r, "flat-residual-equation", 25).residual + " (N = 25)";
  return o;
}

// ------------------------------------------------------------------ 8

Outcome criterion_curvature() {
  const VerificationReport r = run_suite(
      Suite::Curvature, {{"paneitz_flat", 1e-9}, {"metric_det", 1e-12}, {"ricci_trace", 1e-10}, {"scaling_spread", 2}});
  return all_of(r, {{"paneitz-flat", 25},
                    {"metric-det", 25},
                    {"ricci-trace", 25},
                    {"ricci-linear-scaling", 25},
                    {"ricci-quadratic-scaling", 25},
                    {"scalar-scaling", 25},
                    {"laplacian-scalar-scaling", 25},
                    {"q-scaling", 25}});
}

// ------------------------------------------------------------------ 9

Outcome criterion_residual() {
  const VerificationReport r = run_suite(Suite::ResidualDecay, {{"halving", 0.15}, {"decay_slope", 0.75}});
  return all_of(r, {{"epsilon-halving", 25}, {"decay-slope", 25}});
}

// ------------------------------------------------------------------ 10

Outcome criterion_convolution() {
  const VerificationReport r = run_suite(Suite::Convolution, {{"convolution", 0.15}, {"ball", 0.2}});
  return all_of(r, {{"t-above-n", 5}, {"t-below-n", 5}, {"t-equals-n", 5}, {"ball-prefactor", 5}});
}

// ------------------------------------------------------------------ 11

Outcome criterion_gluing() {
  long first_bad = -1;
  for (long n = 10; n <= 400 && first_bad < 0; ++n)
    if (!gluing_schedule_check(25, n).decreasing) first_bad = n;
  const long threshold = gluing_decrease_threshold(25);
  Outcome o;
  o.pass = first_bad < 0 && threshold <= 10;
  o.detail = "first n >= 10 without a strict decrease: " + (first_bad < 0 ? std::string("none") : std::to_string(first_bad)) +
             "; the schedule decreases strictly only from n = " + std::to_string(threshold);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "transcribed I, J1, J2 equal the derived polynomials", true, criterion_identity},
      {2, "tau root agrees to 50 digits and solves I'(1) = 0", false, criterion_tau},
      {3, "sign table for N = 25..60", false, criterion_signs},
      {4, "Hessian positive definite and F(0,1) < 0 at N = 25", false, criterion_hessian},
      {5, "sphere identities exact and by Monte Carlo", false, criterion_sphere},
      {6, "bubble solves the flat equation; derivatives match differences", true, criterion_bubble},
      {7, "energy constant exact and by quadrature", false, criterion_energy_constant},
      {8, "curvature lab identities and mu-scaling", false, criterion_curvature},
      {9, "residual eps-halving and spatial decay slope", true, criterion_residual},
      {10, "convolution and ball scaling exponents", false, criterion_convolution},
      {11, "gluing schedule decreasing from n = 10", true, criterion_gluing},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const bool surprise = o.pass == c.expected_red;
    unexpected += surprise;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << c.title << " | " << o.detail
              << " | " << fmt("%.1f s", seconds_since(t0))
              << (surprise ? (o.pass ? " | UNEXPECTED PASS (expected red)" : " | UNEXPECTED FAIL") : "")
              << (!o.pass && !surprise ? " | expected red" : "") << std::endl;
  }
  std::cout << (unexpected ? std::to_string(unexpected) + " criteria differ from their expected outcome"
                           : std::string("all criteria match their expected outcome"))
            << std::endl;
  return unexpected ? 1 : 0;
}
