// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qcv/errors.hpp"
#include "qcv/reduced_energy.hpp"

#include <string>

using namespace qcv;

TEST_CASE("transcription expressions") {
  CHECK(evaluate_transcription("-(N-4)^2", 6) == TauQ(-4));
  CHECK(evaluate_transcription("2*tau*N + 3/N", 3) == TauQ(1, 6));
  CHECK(evaluate_transcription("tau^2 - 1", 5) == TauQ(-1, 0, 1));
  CHECK(evaluate_transcription("12 / (N+2) / 2", 4) == TauQ(1));
  // Digit strings are decimal even with a leading zero.
  CHECK(evaluate_transcription("09 + 010", 5) == TauQ(19));
  CHECK_THROWS_AS(evaluate_transcription("(N-1", 5), ParseError);
  CHECK_THROWS_AS(evaluate_transcription("N $ 2", 5), ParseError);
  CHECK_THROWS_AS(evaluate_transcription("1/tau", 5), ParseError);
  try {
    evaluate_transcription("3 / ((N-24)*(N-22))", 24);
    FAIL("expected a denominator-zero error");
  } catch (const DenominatorZeroError& e) {
    CHECK(std::string(e.what()).find("(N-24)") != std::string::npos);
  }
}

TEST_CASE("printed polynomials") {
  const TauPoly I = paper_I(25);
  // lambda'^4 coefficient: -(N-18)(N-16)(N-14)(N-12)(N-10)(N-4)(N-2)^2(N^2-4N-4)
  // / ((N+4)(N+6)(N+8)(N+10)(N+12)) tau^2 at N = 25.
  BigInt num = BigInt(7) * 9 * 11 * 13 * 15 * 21 * 23 * 23 * (625 - 100 - 4);
  BigInt den = BigInt(29) * 31 * 33 * 35 * 37;
  CHECK(I.coeffs.at(4) == TauQ(0, 0, -rat(num, den)));
  CHECK(I.coeffs.size() == 9);
  CHECK_FALSE(paper_J2(25).has_tau_power(2));
  CHECK(paper_J1(25).has_tau_power(2));

  try {
    paper_I(24);
    FAIL("expected a denominator-zero error");
  } catch (const DenominatorZeroError& e) {
    CHECK(std::string(e.what()).find("(N-24)") != std::string::npos);
  }
  for (int N : {16, 18, 20, 22}) CHECK_THROWS_AS(paper_J1(N), DenominatorZeroError);
}

TEST_CASE("derived energy polynomial equals the printed one") {
  for (int N : {25, 26, 27, 30}) {
    CAPTURE(N);
    const ReducedEnergy F = assemble_F0(N);
    CHECK(F.poly == paper_I(N));
    CHECK(F.prefactor.sign() > 0);
  }
  CHECK_THROWS_AS(assemble_F0(24), DivergenceError);
  // The other reading of the linear coefficient of f does not reproduce I.
  CHECK(assemble_F0(25, FPoly::with_linear(-1200)).poly != paper_I(25));
}

TEST_CASE("lemma route") {
  const LemmaAssembly L = assemble_F0_from_lemmas(25);
  CHECK(L.total.poly == assemble_F0(25).poly);
  int vanishing = 0;
  for (const auto& t : L.terms) {
    if (t.vanishes) {
      ++vanishing;
      CHECK(t.value.coeffs.empty());
    }
  }
  CHECK(vanishing == 4);
}

TEST_CASE("first-principles route") {
  const int N = 25;
  const FirstPrinciples fp = first_principles(N);
  const HessianPolys h = assemble_hessian(N);
  CHECK(fp.I == assemble_F0(N).poly);
  CHECK(fp.J1 == h.J1);
  CHECK(fp.J2 == h.J2);
  // Summands that vanish at xi' = 0, and the bracket that vanishes identically.
  for (const char* t : {"T1", "T2", "T5", "T6"}) CHECK(fp.I_terms.at(t).coeffs.empty());
  CHECK(fp.J1_terms.at("T5").coeffs.empty());
  CHECK(fp.J2_terms.at("T5").coeffs.empty());
  CHECK_FALSE(h.J1.has_tau_power(2));
  CHECK_FALSE(h.J2.has_tau_power(2));

  // The printed J1, J2 differ from the derived ones.  They are reproduced
  // exactly when the Hessian of the a_N term alone is divided by N.
  CHECK(h.J1 != paper_J1(N));
  CHECK(h.J2 != paper_J2(N));
  const BigRational shrink = BigRational(1) / N - 1;
  CHECK(fp.J1 + fp.J1_terms.at("T3") * shrink == paper_J1(N));
  CHECK(fp.J2 + fp.J2_terms.at("T3") * shrink == paper_J2(N));
}

TEST_CASE("tau from I'(1) = 0") {
  const TauSolution s = solve_tau(25);
  REQUIRE(s.real_roots);
  REQUIRE(s.roots.size() == 2);
  CHECK(s.discriminant > 0);
  CHECK(s.printed_exact_match);
  CHECK(s.printed_root_index == 1);
  CHECK(s.agreement_digits >= 50);
  CHECK(s.residual_at_printed == "0");
  CHECK(s.printed_equation_proportional);
  CHECK(s.roots[1].to_real().str(20).rfind("17005.133910625468", 0) == 0);
}

TEST_CASE("sign conditions at lambda' = 1") {
  for (int N : {25, 40}) {
    CAPTURE(N);
    const CriticalPointReport r = verify_lemma81(N);
    CHECK(r.accepted_count == 1);
    CHECK_FALSE(r.lemma_violation);
    CHECK(r.prefactor_positive);
    CHECK(r.dI1_residual == "0");
    REQUIRE(r.accepted >= 0);
    const RootReport& a = r.roots[static_cast<size_t>(r.accepted)];
    CHECK(a.I1.sign < 0);
    CHECK(a.I2.sign > 0);
    CHECK(a.J1.sign > 0);
    CHECK(a.J2.sign > 0);
    CHECK(a.all_conditions_derived);
    CHECK(a.I1.exact_agrees);
    CHECK(a.I1.digits == 64);
    CHECK(r.eigen_lower_bound > 0);
  }
}

TEST_CASE("Hessian at (0, 1)") {
  const int N = 25;
  const QuadSurd tau = solve_tau(N).roots[1];
  const WeylForm w = default_weyl(N);
  for (JSource src : {JSource::Printed, JSource::Derived}) {
    const HessianReport h = hessian_matrix(N, tau, w, src);
    CHECK(h.H.rows() == N + 1);
    CHECK(h.symmetric);
    CHECK(h.positive_definite);
    CHECK(h.m_positive_semidefinite);
    CHECK(h.F01 < 0);
    for (int p = 0; p < N; ++p) CHECK(h.H(p, N) == 0);
  }
  CHECK_THROWS_AS(hessian_matrix(N, tau, WeylForm(N, std::vector<BigInt>(
                                                        static_cast<size_t>(N) * N * N * N, 0),
                                                    1)),
                  PreconditionError);
}

TEST_CASE("lambda' scan") {
  const int N = 25;
  const QuadSurd tau = solve_tau(N).roots[1];
  std::vector<BigRational> grid;
  for (int k = 60; k <= 140; ++k) grid.push_back(rat(k, 100));
  // lambda' = 1 is a strict local minimum, but at N = 25 the rise to the
  // right ends near 1.025 and the profile then falls below F(0, 1), so the
  // window [0.9, 1.1] is not monotone on the right.
  const ScanReport wide = scan_F0(N, tau, grid);
  CHECK(wide.F01_negative);
  CHECK_FALSE(wide.monotone_each_side);
  CHECK_FALSE(wide.left_turn.has_value());
  REQUIRE(wide.right_turn.has_value());
  CHECK(*wide.right_turn == rat(102, 100));

  const ScanReport narrow = scan_F0(N, tau, grid, rat(2, 100));
  CHECK(narrow.minimum_at_one);
  CHECK(narrow.monotone_each_side);
  CHECK(grid[static_cast<size_t>(narrow.argmin)] == 1);

  CHECK_THROWS_AS(scan_F0(N, tau, {BigRational(1, 2)}), InputError);
  CHECK_THROWS_AS(scan_F0(N, tau, {BigRational(1), BigRational(9, 10)}), InputError);
}

TEST_CASE("gluing schedule") {
  // value(n) = (4n^2)^{21} 2^{-n/3} at N = 25: the polynomial factor wins
  // until n = 181, the exponential from n = 182 on.
  CHECK(gluing_decrease_threshold(25) == 182);
  CHECK_FALSE(gluing_schedule_check(25, 10).decreasing);
  CHECK_FALSE(gluing_schedule_check(25, 50).decreasing);
  CHECK_FALSE(gluing_schedule_check(25, 181).decreasing);
  for (long n = 182; n <= 400; ++n) CHECK(gluing_schedule_check(25, n).decreasing);
  CHECK(gluing_schedule_check(25, 50).log2_value > 0);
  CHECK(gluing_schedule_check(25, 1450).log2_value < 0);
  CHECK(gluing_schedule_check(25, 10).balls_disjoint);
  CHECK_FALSE(gluing_schedule_check(25, 2).balls_disjoint);
}
