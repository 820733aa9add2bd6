// SPDX-License-Identifier: MIT
// The reduced energy F(0, lambda') and its Hessian in xi': exact assembly
// from radial integrals, comparison against the printed polynomials, the
// critical-point equation for tau, and the sign conditions at lambda' = 1.
#pragma once

#include "qcv/exact_scalars.hpp"
#include "qcv/radial_integrals.hpp"
#include "qcv/weyl_algebra.hpp"

#include "qcv/eigen_real.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcv {

// Even polynomial in lambda' whose coefficients are quadratics in tau.
struct TauPoly {
  int dim = 0;
  std::map<int, TauQ> coeffs;  // lambda' exponent -> coefficient

  bool operator==(const TauPoly& o) const;
  bool operator!=(const TauPoly& o) const { return !(*this == o); }
  TauPoly operator+(const TauPoly& o) const;
  TauPoly operator-(const TauPoly& o) const;
  TauPoly operator*(const BigRational& c) const;
  TauPoly derivative() const;
  // Sum of coefficients, i.e. the value at lambda' = 1 as a tau-quadratic.
  TauQ at_one() const;
  TauQ derivative_at_one(int k) const;
  BigRational eval(const BigRational& lambda, const BigRational& tau) const;
  Real eval_real(const Real& lambda, const Real& tau) const;
  // Exponents at which the two polynomials differ.
  std::vector<int> mismatched_exponents(const TauPoly& o) const;
  bool has_tau_power(int k) const;
};

// ---------------------------------------------------------------- printed data

// Directory holding the transcription files; QCV_DATA_DIR overrides the
// build-time default.
std::string data_dir();

// One "key: expression" line of a transcription file.
struct TranscriptionLine {
  std::string key;
  std::string expr;
  int line_no = 0;
};
std::vector<TranscriptionLine> load_transcription(const std::string& path);

// Evaluate a transcription expression in Q[tau] with N substituted.
// A vanishing denominator raises DenominatorZeroError naming the factor.
TauQ evaluate_transcription(const std::string& expr, int N);

TauPoly transcribed_poly(const std::string& file_stem, int N);
TauPoly paper_I(int N);
TauPoly paper_J1(int N);
TauPoly paper_J2(int N);

struct PrintedTauData {
  TauQ dI1;  // printed I'(1) as a tau-quadratic
  BigInt A1, A2, A3;
};
PrintedTauData printed_tau_data(int N);

// ---------------------------------------------------------------- derivation

// (N-4)/(16(N^2-4)) |S^{N-1}| Gamma(N/2-9) Gamma(N/2+7) / Gamma(N+1).
SymScalar energy_prefactor(int N);
// (N-4)^2/(32N(N-2)(N-1)(N+2)(N+4)) |S^{N-1}| Gamma(N/2-7) Gamma(N/2+5) / Gamma(N+1).
SymScalar hessian_prefactor(int N);

// F(0, lambda') = prefactor * weyl_quad_norm(W) * poly(lambda').
struct ReducedEnergy {
  TauPoly poly;
  SymScalar prefactor;
};

ReducedEnergy assemble_F0(int N, const FPoly& f = FPoly::standard());

// The radial integrals int_0^inf P(r^2) r^k / (lambda^2 + r^2)^m dr that make
// up I, one per summand.
struct RadialKernel {
  std::string name;
  SPoly P;
  int k = 0;
  int m = 0;
};
std::vector<RadialKernel> energy_kernels(int N, const FPoly& f = FPoly::standard());

// One summand of the definition of F restricted to xi' = 0.
struct LemmaTerm {
  std::string name;
  TauPoly value;        // contribution to I(lambda')
  bool vanishes = false;  // true for the summands that are identically zero at xi' = 0
};
struct LemmaAssembly {
  ReducedEnergy total;
  std::vector<LemmaTerm> terms;
};
LemmaAssembly assemble_F0_from_lemmas(int N, const FPoly& f = FPoly::standard());

// d^2 F / d xi'_p d xi'_q (0, lambda') = prefactor (M_pq J1 + |W|^2 delta_pq J2).
// The lambda'-xi' mixed block is zero by the xi' -> -xi' symmetry and is not
// represented.
struct HessianPolys {
  TauPoly J1;
  TauPoly J2;
  SymScalar prefactor;
};
HessianPolys assemble_hessian(int N, const FPoly& f = FPoly::standard());

// Independent route: differentiate the definition of F under the integral
// after the shift y = z + xi', expand into monomials in z times functions of
// |z|^2, and integrate with exact sphere moments and Beta integrals.  Uses a
// Weyl form embedded from a low-dimensional block so that the expansion
// stays small; the result is normalised exactly like paper_I, paper_J1 and
// paper_J2.
struct FirstPrinciples {
  int N = 0;
  TauPoly I;
  TauPoly J1;
  TauPoly J2;
  std::map<std::string, TauPoly> I_terms;  // per summand of F
  std::map<std::string, TauPoly> J1_terms;
  std::map<std::string, TauPoly> J2_terms;
};
FirstPrinciples first_principles(int N, const FPoly& f = FPoly::standard(),
                                 int block_dim = 4, std::uint64_t seed = 2);

// ---------------------------------------------------------------- tau

struct TauSolution {
  int N = 0;
  TauQ dI1;                    // derived I'(1)
  BigRational discriminant;    // of dI1 as a quadratic in tau
  bool real_roots = false;
  std::vector<QuadSurd> roots;  // smaller root first
  QuadSurd printed;            // (A1 + sqrt A2) / A3
  int printed_root_index = -1;  // which derived root it equals, if any
  bool printed_exact_match = false;
  int agreement_digits = 0;     // decimal digits of agreement with that root
  bool printed_equation_proportional = false;  // printed I'(1) vs derived
  std::string residual_at_printed;  // |I'(1)| at the printed root, 64 digits
};
TauSolution solve_tau(int N);

// Sign of an element of Q(sqrt d), decided by outward-rounded intervals with
// precision escalation, then confirmed exactly.
struct SignDecision {
  int sign = 0;
  int digits = 0;        // interval precision that separated the value from 0
  bool exact_agrees = false;
  std::string value;     // 20-digit decimal
};
SignDecision decide_sign(const TauQ& p, const QuadSurd& tau);

struct RootReport {
  QuadSurd tau;
  std::string tau_decimal;
  SignDecision I1, dI1, I2, J1, J2;
  SignDecision J1_derived, J2_derived;
  bool all_conditions = false;          // with the printed J1, J2
  bool all_conditions_derived = false;  // with J1, J2 from assemble_hessian
};

struct CriticalPointReport {
  int N = 0;
  std::vector<RootReport> roots;
  int accepted = -1;
  int accepted_count = 0;
  bool prefactor_positive = false;
  bool lemma_violation = true;
  std::string dI1_residual;  // at the accepted root
  // Lower bound on the Hessian eigenvalues at (0, 1) per unit |W|^2,
  // min(hessian prefactor * J2(1), energy prefactor * I''(1)); valid when
  // J1(1) >= 0 since M is positive semidefinite.
  Real eigen_lower_bound;
};
CriticalPointReport verify_lemma81(int N);

// ---------------------------------------------------------------- Hessian

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

struct HessianReport {
  int N = 0;
  RealMatrix H;  // (N+1) x (N+1): xi'-block, then lambda'
  Real min_eigenvalue;
  bool symmetric = false;
  bool positive_definite = false;
  bool m_positive_semidefinite = false;
  Real F01;  // F(0, 1)
};

enum class JSource { Printed, Derived };

HessianReport hessian_matrix(int N, const QuadSurd& tau, const WeylForm& w,
                             JSource source = JSource::Printed);

// ---------------------------------------------------------------- scans

struct ScanPoint {
  BigRational lambda;
  Real value;  // F(0, lambda') / weyl_quad_norm(W)
};
struct ScanReport {
  std::vector<ScanPoint> points;
  int argmin = -1;                  // within the window around 1
  bool minimum_at_one = false;      // argmin is the grid point nearest to 1
  bool monotone_each_side = false;  // values rise moving away from 1 inside the window
  bool F01_negative = false;
  // Nearest grid points on either side of 1 where the rise away from 1
  // stops (a local maximum on the grid); absent when the rise continues to
  // the end of the grid.
  std::optional<BigRational> left_turn, right_turn;
};
// The grid must increase strictly and lie in (1/2, 3/2).
ScanReport scan_F0(int N, const QuadSurd& tau, const std::vector<BigRational>& grid,
                   const BigRational& window = BigRational(1, 10));

struct GluingReport {
  int N = 0;
  long n = 0;
  bool decreasing = false;     // value(n+1) < value(n), exactly
  double log2_value = 0;       // log2 of rho^{4-N} mu^{-2} eps^{N-24} at n
  bool balls_disjoint = false;
};
// Safety factor in the disjointness test |x_n - x_{n+1}| > 2 radius * margin.
inline BigRational gluing_margin() { return BigRational(3, 2); }

GluingReport gluing_schedule_check(int N, long n);

// Smallest n from which the schedule value decreases strictly for every
// later n.  The ratio of consecutive values falls monotonically in n, so
// the first decreasing step is the threshold.
long gluing_decrease_threshold(int N);

}  // namespace qcv
